"""Run the property oracles the way a test suite would, and look at one failure up close.

Each oracle draws seeded random instances, builds a canonical map or an exact sequence,
and checks it with exact Groebner computations.  Reports are plain data, so a failing
instance can be saved and replayed later.
"""

import json

from jetmodules import AlgebraPresentation, JetModule, jacobian_smooth, parse_poly
from jetmodules.propcheck import OracleConfig, oracle_names, replay, run_oracle
from jetmodules.propcheck import oracles

cfg = OracleConfig(seed=7, trials=3)
for name in oracle_names("exact_sequences") + ["tensor_products", "torsion_preservation"]:
    report = run_oracle(name, cfg)
    print(f"{name:32s} {'pass' if report.passed else 'FAIL'}  {report.trials} instances, {report.millis} ms")

vars = ("x", "y")
for label, eq in (("circle", "x^2 + y^2 - 1"), ("node", "y^2 - x^2*(x + 1)")):
    smooth, witness = jacobian_smooth(AlgebraPresentation(vars, [parse_poly(eq, vars)]), 1)
    print(f"\n{label}: smooth = {smooth}" + ("" if smooth else ", singular locus cut out by " + ", ".join(map(str, witness))))

# break the graded piece on purpose: the jet-bundle sequence should no longer add up
real = oracles.graded_piece
oracles.graded_piece = lambda top: JetModule(top.base, top.N - 1)
try:
    report = run_oracle("exact_sequences:jet_bundle", OracleConfig(seed=1, trials=3))
finally:
    oracles.graded_piece = real
print(f"\nwith a sabotaged graded piece: {len(report.failures)} failures")
if report.failures:
    first = report.failures[0]
    print(json.dumps(first, indent=2))
    print("replayed with the real construction:", replay("exact_sequences:jet_bundle", first["instance"]) or "passes")
