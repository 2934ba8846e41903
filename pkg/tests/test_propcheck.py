import json

import pytest

from jetmodules.groebner import ResourceError
from jetmodules.jetcore import JetAlgebra, JetModule
from jetmodules.polycore import DomainError
from jetmodules.presentations import AlgebraPresentation, FPModule, is_torsion_element
from jetmodules.propcheck import (
    ORACLE_GROUPS,
    REGISTRY,
    OracleConfig,
    OracleReport,
    check_annihilator,
    check_base_change,
    check_correspondence,
    check_exterior,
    check_operator_closure,
    check_smoothness,
    check_strictness,
    check_tensor_products,
    oracle_names,
    replay,
    run_oracle,
)
from jetmodules.propcheck import oracles
from jetmodules.propcheck.core import register, trial_rng
from jetmodules.syntax import parse_matrix, parse_poly

SMALL = OracleConfig(seed=3, trials=4)


def test_every_group_is_registered():
    for group, kinds in ORACLE_GROUPS.items():
        names = oracle_names(group)
        assert names == sorted([f"{group}:{k}" for k in kinds] if kinds else [group])


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_golden_suite(name):
    oracle = REGISTRY[name]
    assert oracle.golden, f"{name} ships no golden fixtures"
    report = run_oracle(name, OracleConfig(trials=0))
    assert report.failures == []
    assert report.trials == len(oracle.golden)


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_random_trials_pass(name):
    assert run_oracle(name, SMALL).failures == []


@pytest.mark.parametrize("name", ["tensor_products", "exact_sequences:closed_I", "torsion_preservation", "base_change:three"])
def test_determinism(name):
    cfg = OracleConfig(seed=11, trials=3)
    a, b = run_oracle(name, cfg), run_oracle(name, cfg)
    assert a.to_dict(timing=False) == b.to_dict(timing=False)
    gen = REGISTRY[name].generate
    assert gen(trial_rng(5, name, 0), cfg) == gen(trial_rng(5, name, 0), cfg)


def test_config_validation():
    for bad in (dict(max_vars=4), dict(max_deg=0), dict(max_order=4), dict(fiber_samples=2), dict(trials=-1)):
        with pytest.raises(DomainError):
            OracleConfig(**bad)


def test_report_json_roundtrip():
    report = check_smoothness(OracleConfig(trials=2))
    again = OracleReport.from_json(report.to_json())
    assert again == report
    assert set(json.loads(report.to_json())) >= {"oracle", "seed", "trials", "failures", "millis"}


def test_kind_validation():
    with pytest.raises(DomainError):
        check_base_change("four", SMALL)
    with pytest.raises(DomainError):
        run_oracle("no_such_oracle")


def test_failures_replay(monkeypatch):
    """A broken construction is caught, and its serialized instance replays to the same failure."""
    monkeypatch.setattr(oracles, "graded_piece", lambda top: JetModule(top.base, top.N - 1))
    report = run_oracle("exact_sequences:jet_bundle", OracleConfig(seed=1, trials=3))
    assert report.failures
    for f in report.failures:
        again = replay("exact_sequences:jet_bundle", json.loads(json.dumps(f["instance"])))
        assert again == f


def test_resource_errors_are_not_failures():
    def boom(inst):
        raise ResourceError("cap")

    register("_resource_probe", lambda rng, cfg: {"k": "1"}, [{"k": "0"}])(boom)
    try:
        report = run_oracle("_resource_probe", OracleConfig(trials=2))
        assert report.passed
        assert len(report.resource_errors) == 3
    finally:
        del REGISTRY["_resource_probe"]


# -- the oracles notice injected faults --------------------------------------------------------


def test_strictness_detects_wrong_rank(monkeypatch):
    monkeypatch.setattr(oracles, "do_rank_free", lambda n, N, m1=1, m2=1: 1)
    assert not check_strictness(SMALL).passed


def test_correspondence_detects_missing_factorials(monkeypatch):
    real = oracles.op_to_hom

    def sloppy(D, N=None):
        H = real(D, N)
        H.values = {k: [a * (sum(k[0]) + 1) for a in v] for k, v in H.values.items()}
        return H

    monkeypatch.setattr(oracles, "op_to_hom", sloppy)
    assert not check_correspondence(SMALL).passed


def test_tensor_oracle_detects_wrong_target(monkeypatch):
    real = oracles.tensor_theta

    def wrong(M, W, N, over=()):
        cm = real(M, W, N, over)
        cm.right = JetModule(FPModule.free(M.ring, cm.right.ngens), N)
        return cm

    monkeypatch.setattr(oracles, "tensor_theta", wrong)
    assert not check_tensor_products(OracleConfig(trials=0)).passed


def test_base_change_detects_wrong_order(monkeypatch):
    real = oracles.base_change_0

    def wrong(A, A2, N):
        cm = real(A, A2, N)
        cm.right = real(A, A2, N + 1).right
        return cm

    monkeypatch.setattr(oracles, "base_change_0", wrong)
    assert not check_base_change("zero", OracleConfig(trials=0)).passed


def test_exterior_inclusion_is_sharp():
    A, B = AlgebraPresentation(("x",)), AlgebraPresentation(("y",))
    for N in range(3):
        assert oracles.diagonal_power_inclusion(A, B, N)
        assert not oracles.diagonal_power_inclusion(A, B, N, degree=2 * N)


def test_exterior_operator_detects_bad_product(monkeypatch):
    real = oracles.tensor_operators
    monkeypatch.setattr(oracles, "tensor_operators", lambda D, E: real(D, E) + real(D, E))
    assert not check_exterior("operator", OracleConfig(trials=0)).passed


def test_annihilator_golden_dimension():
    R = AlgebraPresentation(("x",))
    J = JetModule(FPModule.cyclic(R, [R.var("x")]), 1)
    assert J.dimension() == 2
    assert not check_annihilator("bound", OracleConfig(trials=0)).failures


def test_torsion_check_is_not_vacuous():
    R = AlgebraPresentation(("t",))
    M = FPModule(R, 2, parse_matrix("[[t^2, 0]]", ("t",)))
    t = R.var("t")
    # the first summand is Q[t]/(t^2), the second is free
    assert is_torsion_element(M, [R.one(), R.zero()])
    assert not is_torsion_element(M, [R.zero(), R.one()])
    assert not is_torsion_element(M, [t, t])


def test_pushforward_of_plain_partial_is_not_well_defined():
    """d/dy does not preserve (y^2 - x), so only the tangent field along the curve descends."""
    from jetmodules.syntax import parse_operator

    B = AlgebraPresentation(("x", "y"), [parse_poly("y^2 - x", ("x", "y"))])
    assert not parse_operator("d(y)", B).is_well_defined()
    assert parse_operator("2*y*d(x) + d(y)", B).is_well_defined()
    assert check_operator_closure("pushforward", OracleConfig(trials=0)).passed


def test_jet_chain_golden():
    x2 = AlgebraPresentation(("x",), [parse_poly("x^2", ("x",))])
    assert [JetAlgebra(x2, N).dimension() for N in range(5)] == [2, 3, 4, 4, 4]
