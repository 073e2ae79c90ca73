# # Feature vectors and their covariance
#
# The detector works with the vector of cyclic autocorrelation estimates at a
# set of lags, stacked as real and imaginary parts. Its asymptotic
# covariance is estimated from frequency-smoothed cyclic periodograms.

import numpy as np

from cyclodetect import LagSet, SmootherSpec, cyclic_features, feature_covariance, feature_vector, smoothed_cyclic_spectra
from cyclodetect.signal_model import complex_noise

rng = np.random.default_rng(3)
lags = LagSet((32, -32))
smoother = SmootherSpec.kaiser(2049, 10.0)

# ## Pure noise
#
# For unit-variance circular noise and a nonzero cyclic frequency, Q is close
# to zero and Q* close to the identity, so Sigma is about I/2 on the diagonal.

noise = complex_noise(4000, rng)
q, q_star = smoothed_cyclic_spectra(noise, 1 / 40, lags, smoother)
print("Q  =\n", np.round(q, 3))
print("Q* =\n", np.round(q_star, 3))
cov = feature_covariance(q, q_star)
print("Sigma =\n", np.round(cov.sigma, 3))

# ## One feature vector

r = feature_vector(noise, 1 / 40, lags)
print("r =", np.round(r.values, 4), " complex:", np.round(r.complex_values, 4))

# ## Batched evaluation
#
# `cyclic_features` handles several records and frequencies in one FFT pass.

batch = complex_noise((3, 4000), rng)
r_all, sigma_all = cyclic_features(batch, [1 / 40, 2 / 40], lags, smoother)
print("r shape:", r_all.shape, " sigma shape:", sigma_all.shape)
