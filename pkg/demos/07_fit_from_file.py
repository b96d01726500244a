# From raw observations to an estimate pair.
#
# The mediation model is two regressions: mediator on (covariates, exposure)
# and outcome on (covariates, exposure, mediator). The exposure coefficient
# of the first and the mediator coefficient of the second are the estimate
# pair; their OLS standard errors set the scales. The same fit is available
# as `twostage fit data.csv`.

import numpy as np

from twostage import joint_pvalue, ols_mediation_fit, read_observations, sobel_stat

rng = np.random.default_rng(17)
n = 5_000
x1 = rng.normal(size=n)
a = rng.normal(size=n)
m = 0.3 + 0.2 * x1 + 0.8 * a + rng.normal(size=n)        # true gamma = 0.8
y = -0.1 + 0.5 * x1 + 0.1 * a + 0.5 * m + rng.normal(size=n)  # true beta = 0.5

with open("mediation-demo.csv", "w") as fh:
    fh.write("x1,a,m,y\n")
    for row in zip(x1, a, m, y):
        fh.write(",".join(f"{v:.10g}" for v in row) + "\n")

table = read_observations("mediation-demo.csv")
pair = ols_mediation_fit(table)

print(f"gamma_hat = {pair.gamma_hat:.4f}  (true 0.8), scale {pair.sigma_gamma:.3f}")
print(f"beta_hat  = {pair.beta_hat:.4f}  (true 0.5), scale {pair.sigma_beta:.3f}")
print(f"fitted standard errors: {pair.sigma_gamma / np.sqrt(pair.n):.5f}, "
      f"{pair.sigma_beta / np.sqrt(pair.n):.5f}")
print(f"sobel statistic = {sobel_stat(pair):.4f} "
      f"(z form: {np.sqrt(pair.n) * sobel_stat(pair):.1f})")
print(f"joint p-value   = {joint_pvalue(pair):.3e}")
