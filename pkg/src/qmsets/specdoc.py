"""Experiment documents: one declarative file naming a universe and its objects.

Two encodings are accepted.  The INI-style text form::

    [universe]
    labels = a b c

    [basis U′]
    vectors = {a,b} {b,c} {a,b,c}
    suffix = ′

    [attribute f]
    a = 1
    b = 2
    c = 3

    [partition pi]
    blocks = {a,b} {c}

    [dynamics]
    rows =
        1 1 0
        1 1 1
        0 1 1

    [params]
    state = {a,b,c}
    seed = 0

and the equivalent JSON object with keys ``universe``, ``bases``,
``attributes``, ``partitions``, ``dynamics`` and ``params``.
"""

from __future__ import annotations

import configparser
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from .gf2core import Gf2Matrix, SubsetVector, Universe
from .observables import Attribute
from .partitions import Partition
from .states import Basis, make_basis

_SET_RE = re.compile(r"\{[^{}]*\}|∅")


class SpecError(ValueError):
    """A malformed experiment document or an unresolved name."""


@dataclass
class ExperimentSpec:
    universe: Universe
    universe_name: str = "U"
    bases: dict[str, Basis] = field(default_factory=dict)
    attributes: dict[str, Attribute] = field(default_factory=dict)
    partitions: dict[str, Partition] = field(default_factory=dict)
    dynamics: Optional[Gf2Matrix] = None
    params: dict[str, str] = field(default_factory=dict)
    seed: int = 0

    def attribute(self, name: str) -> Attribute:
        try:
            return self.attributes[name]
        except KeyError:
            known = ", ".join(sorted(self.attributes)) or "none"
            raise SpecError(f"unknown attribute {name!r} (defined: {known})") from None

    def subset(self, text: str) -> SubsetVector:
        try:
            return self.universe.parse(text)
        except (KeyError, ValueError) as exc:
            raise SpecError(f"bad subset {text!r}: {exc}") from None

    def partition(self, ref: str) -> Partition:
        """Resolve a partition by name or literal, e.g. ``{{a,b},{c}}``."""
        if ref in self.partitions:
            return self.partitions[ref]
        if ref.strip().startswith("{"):
            try:
                return Partition.parse(self.universe, ref)
            except (KeyError, ValueError) as exc:
                raise SpecError(f"bad partition {ref!r}: {exc}") from None
        known = ", ".join(sorted(self.partitions)) or "none"
        raise SpecError(f"unknown partition {ref!r} (defined: {known})")


def _split_labels(text: str) -> list[str]:
    return [t for t in re.split(r"[\s,]+", text.strip()) if t]


def _split_sets(text: str) -> list[str]:
    found = _SET_RE.findall(text)
    rest = _SET_RE.sub("", text).replace(",", "").strip()
    if rest:
        raise SpecError(f"unexpected text {rest!r} in set list {text!r}")
    return found


def _rows(value: Union[str, list]) -> list[list[int]]:
    if isinstance(value, str):
        lines = [ln for ln in value.strip().splitlines() if ln.strip()]
        if len(lines) == 1:
            lines = lines[0].split(";")
        rows = []
        for ln in lines:
            toks = [t for t in re.split(r"[\s,]+", ln.strip()) if t]
            if len(toks) == 1 and len(toks[0]) > 1:
                toks = list(toks[0])
            rows.append(toks)
    else:
        rows = value
    try:
        return [[int(x) for x in row] for row in rows]
    except (TypeError, ValueError):
        raise SpecError(f"dynamics rows must be 0/1 integers: {value!r}") from None


def _build(raw: dict[str, Any]) -> ExperimentSpec:
    uni = raw.get("universe")
    if uni is None:
        raise SpecError("document has no universe")
    if isinstance(uni, dict):
        labels, uname = uni.get("labels"), uni.get("name", "U")
    else:
        labels, uname = uni, "U"
    if isinstance(labels, str):
        labels = _split_labels(labels)
    if not labels:
        raise SpecError("universe has no labels")
    try:
        universe = Universe(labels)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    spec = ExperimentSpec(universe, universe_name=uname)

    def subset(text: str) -> SubsetVector:
        return spec.subset(text)

    for name, body in raw.get("bases", {}).items():
        vecs = body.get("vectors", []) if isinstance(body, dict) else body
        if isinstance(vecs, str):
            vecs = _split_sets(vecs)
        opts = body if isinstance(body, dict) else {}
        blabels = opts.get("labels")
        if isinstance(blabels, str):
            blabels = _split_labels(blabels)
        # DependentBasisError propagates: it is a domain error, not a syntax one
        spec.bases[name] = make_basis(
            name, [subset(v) for v in vecs], labels=blabels, suffix=opts.get("suffix", "′")
        )

    for name, values in raw.get("attributes", {}).items():
        try:
            spec.attributes[name] = Attribute(universe, values)
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"attribute {name}: {exc}") from None

    for name, blocks in raw.get("partitions", {}).items():
        if isinstance(blocks, dict):
            blocks = blocks.get("blocks", [])
        if isinstance(blocks, str):
            blocks = _split_sets(blocks)
        try:
            spec.partitions[name] = Partition(universe, [subset(b) for b in blocks])
        except ValueError as exc:
            raise SpecError(f"partition {name}: {exc}") from None

    dyn = raw.get("dynamics")
    if dyn is not None:
        rows = dyn.get("rows") if isinstance(dyn, dict) else dyn
        try:
            spec.dynamics = Gf2Matrix.from_rows(universe, _rows(rows))
        except ValueError as exc:
            raise SpecError(f"dynamics: {exc}") from None

    params = {k: str(v) for k, v in raw.get("params", {}).items()}
    spec.params = params
    seed = raw.get("seed", params.get("seed", 0))
    try:
        spec.seed = int(seed)
    except ValueError:
        raise SpecError(f"seed must be an integer, got {seed!r}") from None
    return spec


def _ini_to_raw(text: str) -> dict[str, Any]:
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise SpecError(f"cannot parse document: {exc}") from None
    raw: dict[str, Any] = {"bases": {}, "attributes": {}, "partitions": {}}
    for section in cp.sections():
        kind, _, name = section.partition(" ")
        name = name.strip()
        body = dict(cp[section])
        if kind == "universe":
            raw["universe"] = {"labels": body.get("labels", ""), "name": body.get("name", "U")}
        elif kind == "basis" and name:
            raw["bases"][name] = body
        elif kind == "attribute" and name:
            raw["attributes"][name] = body
        elif kind == "partition" and name:
            raw["partitions"][name] = body
        elif kind == "dynamics":
            raw["dynamics"] = body
        elif kind == "params":
            raw["params"] = body
        else:
            raise SpecError(f"unknown section [{section}]")
    return raw


def loads(text: str) -> ExperimentSpec:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON: {exc}") from None
    else:
        raw = _ini_to_raw(text)
    return _build(raw)


def load(path: Union[str, Path]) -> ExperimentSpec:
    return loads(Path(path).read_text(encoding="utf-8"))
