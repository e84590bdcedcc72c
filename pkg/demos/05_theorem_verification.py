"""
Empirical verification of the boundedness theorems
==================================================

Each theorem in the catalog asserts a norm inequality for some
time-frequency representation under index constraints.  The harness
draws deterministic sample families, evaluates both sides, and reports
the worst ratio observed; an extremizer search then tries to push the
ratio higher by gradient-free perturbation.
"""

from __future__ import annotations

from tflab import (
    THEOREMS,
    IndexTuple,
    TheoremInstance,
    extremizer_search,
    hypothesis_gaps,
    verify_theorem,
)

print("theorem catalog:", ", ".join(THEOREMS))

# -- a single instance: STFT boundedness on Z_8 -------------------------------------------

inst = TheoremInstance(
    theorem="t1",
    group=(8,),
    indices=IndexTuple.of(q=4, p=3, u=1, v=1, w=1),
    trials=24,
    seed=42,
)
print("unverifiable hypotheses:", hypothesis_gaps(inst) or "none")

report = verify_theorem(inst)
print(f"trials {len(report.trials)}, violations {len(report.violations)}")
worst = max(report.trials, key=lambda t: t["ratio"])
print(f"worst sample kind: {worst['kind']} (trial {worst['trial']})")
print(f"max ratio  {report.max_ratio:.8f}")
print(f"mean ratio {report.mean_ratio:.8f}")

# -- an instance that needs an invertible deformation --------------------------------------

inst2 = TheoremInstance(
    theorem="t3ii",
    group=(9,),
    indices=IndexTuple.of(q=4, p=3, u=1, v=1, w=1),
    tau=((2,),),
    trials=16,
    seed=42,
)
report2 = verify_theorem(inst2)
print(f"t3ii on Z_9 with tau=2: max ratio {report2.max_ratio:.8f}")

# -- searching for extremizers --------------------------------------------------------------

ratio0, _, _ = extremizer_search(inst, budget=0)
ratio, best_f, best_g = extremizer_search(inst, budget=150)
print(f"sweep-only best ratio   {ratio0:.8f}")
print(f"after 150 perturbations {ratio:.8f}")
print("search never lowers the incumbent:", ratio >= ratio0)
