# The two-stage procedure on one batch of hypotheses, plus its FWER bounds.
#
# Stage 1 filters hypotheses that look like the double null; stage 2 applies
# the joint-significance test to the F survivors at threshold alpha/F. The
# filtration-aware variant multiplies the threshold by p0, the survival
# probability at the double null, which restores a finite-sample FWER
# guarantee at level alpha.

import numpy as np

from twostage import (
    EstimatePair,
    FiltrationAware,
    ProductThreshold,
    RandomStream,
    filtration_prob_at_theta0,
    fwer_bound_from_survivors,
    run_two_stage,
)

rng = np.random.default_rng(7)
n, m = 400, 120
sd = 1.0 / np.sqrt(n)

# 100 double nulls, 12 single nulls, 8 alternatives
truths = [(0.0, 0.0)] * 100 + [(0.25, 0.0)] * 12 + [(0.2, 0.2)] * 8
estimates = [
    EstimatePair(rng.normal(g, sd), rng.normal(b, sd), 1.0, 1.0, n) for g, b in truths
]

rule = ProductThreshold(c=2.0, delta=0.9)
out = run_two_stage(estimates, rule, alpha=0.05)
print(f"plain Bonferroni over survivors: F={out.F}, rejected={out.rejected_count}, "
      f"threshold={out.per_hypothesis[0].adjusted_threshold:.2e}")

# p0: how often the double null survives this filter (Monte Carlo + SE)
p0, p0_se = filtration_prob_at_theta0(rule, 1.0, 1.0, n, 100_000, RandomStream(55, 0))
print(f"double-null survival probability p0 = {p0:.4f} (se {p0_se:.4f})")

aware = run_two_stage(estimates, rule, alpha=0.05, adjustment=FiltrationAware(p0))
print(f"filtration-aware threshold alpha*p0/F: rejected={aware.rejected_count}, "
      f"threshold={aware.per_hypothesis[0].adjusted_threshold:.2e}")

# The survivor-count bound: P(any false rejection) <= E[(1-(1-q)^F) 1{F>0}],
# with q bounding the per-hypothesis conditional rejection probability.
f_samples = [out.F] * 10  # one observed batch; a study supplies many
for q in (0.001, 0.01, 0.05):
    print(f"survivor-count FWER bound at q={q}: {fwer_bound_from_survivors(q, f_samples):.4f}")
