"""Quantum mechanics over sets: finite probability as a GF(2) quantum calculus."""
