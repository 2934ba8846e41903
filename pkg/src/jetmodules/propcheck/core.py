"""Oracle plumbing: configuration, reports, seeded trial runner, replay."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional

from ..groebner import ResourceError
from ..polycore import DomainError

Instance = Dict[str, str]


class CheckFailure(AssertionError):
    """A property did not hold; ``stage`` names the failing step."""

    def __init__(self, stage: str, detail: str = ""):
        self.stage, self.detail = stage, detail
        super().__init__(f"{stage}: {detail}" if detail else stage)


def require(cond: bool, stage: str, detail: str = ""):
    if not cond:
        raise CheckFailure(stage, detail)


@dataclass(frozen=True)
class OracleConfig:
    seed: int = 0
    trials: int = 20
    max_vars: int = 2
    max_deg: int = 2
    max_order: int = 2
    fiber_samples: int = 3

    def __post_init__(self):
        if not 1 <= self.max_vars <= 3:
            raise DomainError("max_vars must be between 1 and 3")
        if not 1 <= self.max_deg <= 3:
            raise DomainError("max_deg must be between 1 and 3")
        if not 1 <= self.max_order <= 3:
            raise DomainError("max_order must be between 1 and 3")
        if self.fiber_samples < 3:
            raise DomainError("fiber_samples must be at least 3")
        if self.trials < 0:
            raise DomainError("trials must be nonnegative")


@dataclass
class OracleReport:
    oracle: str
    seed: int
    trials: int
    failures: List[dict] = field(default_factory=list)
    millis: int = 0
    resource_errors: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("millis")
        return d

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "OracleReport":
        return cls(**json.loads(text))


@dataclass
class Oracle:
    name: str
    generate: Callable[[random.Random, OracleConfig], Instance]
    run: Callable[[Instance], None]
    golden: List[Instance] = field(default_factory=list)


REGISTRY: Dict[str, Oracle] = {}


def register(name: str, generate, golden=()):
    def deco(run):
        REGISTRY[name] = Oracle(name, generate, run, list(golden))
        return run

    return deco


def trial_rng(seed: int, name: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{i}")


def instance_rng(inst: Instance) -> random.Random:
    """Deterministic randomness derived from an instance (sample points etc.)."""
    return random.Random(json.dumps(inst, sort_keys=True))


def run_instance(oracle: Oracle, inst: Instance) -> Optional[dict]:
    """None on success, else a failure record. ResourceError propagates."""
    try:
        oracle.run(inst)
    except CheckFailure as exc:
        return {"instance": inst, "stage": exc.stage, "detail": exc.detail}
    except ResourceError:
        raise
    except (DomainError, ArithmeticError, AssertionError, ValueError) as exc:
        return {"instance": inst, "stage": "exception", "detail": f"{type(exc).__name__}: {exc}"}
    return None


def run_oracle(name: str, cfg: OracleConfig | None = None, golden: bool = True) -> OracleReport:
    if name not in REGISTRY:
        raise DomainError(f"unknown oracle {name!r}; known: {', '.join(sorted(REGISTRY))}")
    cfg = cfg or OracleConfig()
    oracle = REGISTRY[name]
    start = time.perf_counter()
    instances = list(oracle.golden) if golden else []
    for i in range(cfg.trials):
        instances.append(oracle.generate(trial_rng(cfg.seed, name, i), cfg))
    report = OracleReport(name, cfg.seed, len(instances))
    for inst in instances:
        try:
            fail = run_instance(oracle, inst)
        except ResourceError as exc:
            report.resource_errors.append({"instance": inst, "detail": str(exc)})
            continue
        if fail:
            report.failures.append(fail)
    report.millis = int((time.perf_counter() - start) * 1000)
    return report


def replay(name: str, inst: Instance) -> Optional[dict]:
    """Re-run one serialized instance; returns the failure record or None."""
    return run_instance(REGISTRY[name], inst)
