"""Randomized property oracles with seeded, replayable instances."""

from ..polycore import DomainError
from .core import REGISTRY, CheckFailure, OracleConfig, OracleReport, replay, run_oracle
from . import oracles  # noqa: F401  (registers the oracles)
from .oracles import ORACLE_GROUPS


def oracle_names(group: str | None = None, kind: str | None = None):
    """Registered oracle names, optionally restricted to one group and kind."""
    names = sorted(REGISTRY)
    if group is not None:
        names = [n for n in names if n == group or n.startswith(group + ":")]
    if kind is not None:
        names = [n for n in names if n.endswith(":" + kind)]
    return names


def run_group(group: str, cfg: OracleConfig | None = None, kind: str | None = None):
    return [run_oracle(n, cfg) for n in oracle_names(group, kind)]


def _kinded(group):
    def check(kind: str, cfg: OracleConfig | None = None) -> OracleReport:
        if kind not in ORACLE_GROUPS[group]:
            raise DomainError(f"unknown kind {kind!r} for {group}; choose from {', '.join(ORACLE_GROUPS[group])}")
        return run_oracle(f"{group}:{kind}", cfg)

    check.__name__ = f"check_{group}"
    return check


def _plain(name):
    def check(cfg: OracleConfig | None = None) -> OracleReport:
        return run_oracle(name, cfg)

    check.__name__ = f"check_{name}"
    return check


check_base_change = _kinded("base_change")
check_exterior = _kinded("exterior")
check_exact_sequences = _kinded("exact_sequences")
check_annihilator = _kinded("annihilator")
check_invariance = _kinded("invariance")
check_operator_closure = _kinded("operator_closure")
check_tensor_products = _plain("tensor_products")
check_torsion_preservation = _plain("torsion_preservation")
check_strictness = _plain("strictness")
check_correspondence = _plain("correspondence")
check_smoothness = _plain("smoothness")


__all__ = [
    "REGISTRY",
    "CheckFailure",
    "OracleConfig",
    "OracleReport",
    "ORACLE_GROUPS",
    "oracle_names",
    "replay",
    "run_group",
    "run_oracle",
] + [n for n in list(globals()) if n.startswith("check_")]
