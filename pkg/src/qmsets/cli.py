"""Command-line front end.

Exit status: 0 on success, 1 for usage errors (bad flags, malformed or
unresolved documents), 2 for domain errors (singular dynamics, empty
state, dependent basis, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import specdoc
from .density import join_via_density, measure_density, rho_block, rho_partition
from .dynamics import Dynamics, TwoSlitConfig, two_slit
from .errors import DomainError
from .formatting import dec, frac
from .gf2core import Universe
from .observables import eigenket_labels, is_csca, measure, outcomes
from .partitions import dit_set, enumerate_partitions, logical_entropy
from .sampling import make_rng
from .states import ket_table, standard_basis

BAR_WIDTH = 40


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _bar(p) -> str:
    filled = round(float(p) * BAR_WIDTH)
    return "#" * filled + "." * (BAR_WIDTH - filled)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _param(args, spec, name: str, default=None):
    value = getattr(args, name, None)
    if value is None:
        value = spec.params.get(name, default)
    return value


def _seed_of(args, spec) -> int:
    return args.seed if args.seed is not None else spec.seed


def cmd_ket_table(args, spec) -> str:
    bases = [standard_basis(spec.universe, spec.universe_name)] + list(spec.bases.values())
    table = ket_table(bases)
    if args.format == "csv":
        return table.to_csv()
    if args.format == "ascii":
        return table.to_ascii()
    return table.to_json() + "\n"


def cmd_measure(args, spec) -> str:
    names = args.attribute or spec.params.get("attributes", "").split()
    if not names:
        raise UsageError("no attribute given (use --attribute or params.attributes)")
    attrs = [spec.attribute(n) for n in names]
    state_text = _param(args, spec, "state")
    state = spec.subset(state_text) if state_text is not None else spec.universe.full()
    seed = _seed_of(args, spec)
    rng = make_rng(seed)
    steps = []
    current = state
    for name, f in zip(names, attrs):
        possible = outcomes(f, current)
        chosen = measure(f, current, rng)
        steps.append(
            {
                "attribute": name,
                "state": str(current),
                "distribution": [o.to_dict() for o in possible],
                "outcome": chosen.to_dict(),
            }
        )
        current = chosen.post_state
    record = {
        "state": str(state),
        "seed": seed,
        "steps": steps,
        "final_state": str(current),
        "csca": is_csca(attrs),
    }
    if record["csca"]:
        labels = eigenket_labels(attrs)
        (u,) = current.labels
        record["eigenket"] = {"label": u, "eigenvalues": [frac(x) for x in labels[u]]}
    if args.format == "json":
        return _dump(record)
    if args.format == "csv":
        rows = [["step", "attribute", "state", "eigenvalue", "prob", "decimal", "post_state", "chosen"]]
        for i, step in enumerate(steps, 1):
            for o in step["distribution"]:
                chosen = o["eigenvalue"] == step["outcome"]["eigenvalue"]
                rows.append([i, step["attribute"], step["state"], o["eigenvalue"], o["prob"],
                             f"{o['decimal']:.6f}", o["post_state"], int(chosen)])
        return _csv(rows)
    lines = []
    for i, step in enumerate(steps, 1):
        lines.append(f"step {i}: measure {step['attribute']} in {step['state']}")
        for o in step["distribution"]:
            lines.append(f"  {o['eigenvalue']:>6} | {_bar(o['decimal'])} {o['prob']} ({o['decimal']:.6f}) -> {o['post_state']}")
        out = step["outcome"]
        lines.append(f"  outcome {out['eigenvalue']} -> {out['post_state']}")
    if "eigenket" in record:
        vals = ",".join(record["eigenket"]["eigenvalues"])
        lines.append(f"eigenket |{vals}⟩ = {record['final_state']}")
    else:
        lines.append(f"final state {record['final_state']}")
    return "\n".join(lines) + "\n"


def cmd_two_slit(args, spec) -> str:
    if spec.dynamics is None:
        raise UsageError("document defines no [dynamics]")
    dyn = Dynamics(spec.dynamics)
    slits = spec.subset(_param(args, spec, "slits", "{}"))
    measured = args.measured
    if measured is None:
        measured = spec.params.get("measured", "true").lower() in ("1", "true", "yes")
    trials = args.trials if args.trials is not None else int(spec.params.get("trials", 0))
    periods = args.periods if args.periods is not None else int(spec.params.get("periods", 1))
    seed = _seed_of(args, spec)
    config = TwoSlitConfig(dyn, slits, measured, periods)
    result = two_slit(config, make_rng(seed), trials, seed=seed)
    if args.format == "json":
        return _dump(result.to_dict())
    labels = spec.universe.labels
    if args.format == "csv":
        header = ["position", "exact", "decimal"] + (["sampled", "frequency"] if trials else [])
        rows = [header]
        for u in labels:
            row = [u, frac(result.exact[u]), f"{dec(result.exact[u]):.6f}"]
            if trials:
                row += [result.sampled[u], f"{result.sampled[u] / trials:.6f}"]
            rows.append(row)
        return _csv(rows)
    lines = [f"two-slit ({result.mode}), slits {slits}, seed {seed}"]
    for u in labels:
        p = result.exact[u]
        line = f"{u} | {_bar(p)} {frac(p)} ({dec(p):.6f})"
        if trials:
            line += f"  sampled {result.sampled[u] / trials:.6f}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_density(args, spec) -> str:
    if args.attribute:
        if len(args.attribute) != 1:
            raise UsageError("density takes a single --attribute")
        f = spec.attribute(args.attribute[0])
        state_text = _param(args, spec, "state")
        state = spec.subset(state_text) if state_text is not None else spec.universe.full()
        rho = measure_density(f, state)
    elif args.block is not None:
        rho = rho_block(spec.subset(args.block))
    else:
        ref = args.partition or spec.params.get("partition")
        if ref is None:
            raise UsageError("give --partition, --block, or --attribute")
        pi = spec.partition(ref)
        rho = join_via_density(pi, spec.partition(args.join)) if args.join else rho_partition(pi)
    if args.format == "csv":
        return rho.to_csv()
    if args.format == "ascii":
        return rho.to_ascii()
    return rho.to_json() + "\n"


def cmd_partitions(args, spec) -> str:
    universe = spec.universe
    parts = enumerate_partitions(universe)
    n = universe.n
    if args.format == "json":
        return _dump(
            {
                "n": n,
                "count": len(parts),
                "partitions": [
                    {"partition": str(p), "blocks": len(p), "dits": len(dit_set(p)),
                     "entropy": frac(logical_entropy(p)), "decimal": dec(logical_entropy(p))}
                    for p in parts
                ],
            }
        )
    if args.format == "csv":
        rows = [["partition", "blocks", "dits", "entropy", "decimal"]]
        for p in parts:
            h = logical_entropy(p)
            rows.append([str(p), len(p), len(dit_set(p)), frac(h), f"{dec(h):.6f}"])
        return _csv(rows)
    lines = [f"partition lattice, n={n}, {len(parts)} partitions"]
    for k in range(n, 0, -1):
        level = [p for p in parts if len(p) == k]
        lines.append(f"  {k} block{'s' if k > 1 else ''}:")
        for p in level:
            h = logical_entropy(p)
            lines.append(f"    {str(p):<24} dits={len(dit_set(p)):<4} h={frac(h)}")
    if n <= 4:
        lines.append(f"subset lattice, n={n}, {1 << n} subsets")
        subsets = list(universe.all_subsets())
        for k in range(n, -1, -1):
            level = " ".join(str(s) for s in subsets if len(s) == k)
            lines.append(f"  |S|={k}: {level}")
    return "\n".join(lines) + "\n"


def cmd_orbits(args, spec) -> str:
    if spec.dynamics is None:
        raise UsageError("document defines no [dynamics]")
    cycles = Dynamics(spec.dynamics).orbits()
    if args.format == "json":
        return _dump(
            {"orbits": [{"length": len(c), "cycle": [str(s) for s in c]} for c in cycles]}
        )
    if args.format == "csv":
        rows = [["length", "cycle"]]
        rows += [[len(c), " -> ".join(str(s) for s in c)] for c in cycles]
        return _csv(rows)
    lines = []
    for c in cycles:
        path = " -> ".join(str(s) for s in c + (c[0],))
        lines.append(f"{len(c)}-orbit: {path}")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "ket-table": cmd_ket_table,
    "measure": cmd_measure,
    "two-slit": cmd_two_slit,
    "density": cmd_density,
    "partitions": cmd_partitions,
    "orbits": cmd_orbits,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "ascii"), default="json")
    common.add_argument("--seed", type=_seed, default=None, help="unsigned 64-bit seed (default 0)")
    common.add_argument("--out", type=Path, default=None, help="write results here instead of stdout")

    parser = _Parser(prog="qmsets", description="Quantum mechanics over sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_: str, spec_required: bool = True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if spec_required:
            p.add_argument("spec", type=Path, help="experiment document (INI-style or JSON)")
        else:
            p.add_argument("spec", type=Path, nargs="?", help="experiment document")
        return p

    add("ket-table", "every ket in every declared basis")

    p = add("measure", "measure attributes in sequence")
    p.add_argument("--attribute", "-a", action="append", help="attribute name; repeat for a sequence")
    p.add_argument("--state", help="initial state, e.g. '{a,b,c}' (default: whole universe)")

    p = add("two-slit", "two-slit experiment")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--measured", dest="measured", action="store_true", default=None)
    grp.add_argument("--unmeasured", dest="measured", action="store_false")
    p.add_argument("--slits", help="slit superposition, e.g. '{a,c}'")
    p.add_argument("--trials", type=_nonneg, default=None)
    p.add_argument("--periods", type=_nonneg, default=None)

    p = add("density", "density matrix of a partition, block, or measured state")
    p.add_argument("--partition", help="partition name or literal '{{a,b},{c}}'")
    p.add_argument("--join", help="partition to join with, via projectors")
    p.add_argument("--block", help="pure-state block, e.g. '{a,b}'")
    p.add_argument("--attribute", "-a", action="append")
    p.add_argument("--state")

    p = add("partitions", "partition lattice with dit counts and logical entropies", False)
    p.add_argument("--labels", help="universe labels when no document is given, e.g. 'a,b,c'")

    add("orbits", "orbit decomposition under the dynamics")
    return parser


def _load(args) -> specdoc.ExperimentSpec:
    if args.spec is None:
        labels = getattr(args, "labels", None)
        if not labels:
            raise UsageError("give an experiment document or --labels")
        try:
            return specdoc.ExperimentSpec(Universe(specdoc._split_labels(labels)))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return specdoc.load(args.spec)
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc}") from None


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _load(args)
        text = COMMANDS[args.command](args, spec)
    except (UsageError, specdoc.SpecError) as exc:
        print(f"qmsets: error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"qmsets: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
