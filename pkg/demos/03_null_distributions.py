# # Null distributions and thresholds
#
# Under noise only, the single-frequency statistic is chi-square with 2N
# degrees of freedom. Taking the max over several frequencies gives the
# CDF raised to the number of frequencies; summing gives more degrees of freedom.

import numpy as np
from scipy import integrate

from cyclodetect.distributions import chi2_cdf_even, chi2_quantile_even, chi2_sf_even, max_cdf, max_pdf, max_quantile

# ## Thresholds at a 5% false alarm rate

for dof in (4, 8, 20, 40):
    print(f"dof={dof:2d}: chi2 threshold {chi2_quantile_even(0.95, dof):7.3f}, "
          f"max-of-2 threshold {max_quantile(0.95, dof, 2):7.3f}")

# ## Far tails stay accurate
#
# `1 - cdf` rounds to zero once the tail drops below machine epsilon. The
# survival function is summed directly, so it keeps full relative accuracy.

for x in (50.0, 100.0, 200.0):
    print(f"x={x:5.1f}: 1 - cdf = {1 - chi2_cdf_even(x, 4):.3e}, sf = {chi2_sf_even(x, 4):.3e}, "
          f"exact {np.exp(-x / 2) * (1 + x / 2):.3e}")

# ## The max density integrates to one

mass, _ = integrate.quad(lambda v: max_pdf(v, 4, 3), 0, np.inf)
print("integral of max_pdf(., 4, 3): %.10f" % mass)
print("max_cdf(10, 4, 1) == chi2_cdf_even(10, 4):", max_cdf(10.0, 4, 1) == chi2_cdf_even(10.0, 4))
