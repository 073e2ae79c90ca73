# # The cyclic signature of a CP-OFDM signal
#
# A cyclic prefix copies the last `cp_len` samples of every OFDM symbol to
# its front. Samples `useful_len` apart are therefore correlated once per
# symbol, which shows up as a cyclic autocorrelation peak at lag
# `+-useful_len` and cyclic frequencies `k / symbol_len`.

import numpy as np

from cyclodetect import OfdmParams, apply_awgn, cyclic_autocorrelation, generate_ofdm

# ## Generate one record
#
# 32 subcarriers, 32-sample useful part, 8-sample prefix, 16-QAM, 100 symbols.

ofdm = OfdmParams()
rng = np.random.default_rng(1)
clean = generate_ofdm(ofdm, rng)
print("samples:", clean.size, " mean power: %.3f" % np.mean(np.abs(clean) ** 2))

# The prefix really is a copy of the symbol tail:

print("prefix == tail:", np.allclose(clean[:8], clean[32:40]))

# ## Scan lags at the first cyclic frequency
#
# At +10 dB SNR the peaks at +-32 stand far above every other lag.

x = apply_awgn(clean, 10.0, rng)
alpha = 1 / ofdm.symbol_len
lags = np.arange(-50, 51)
mags = np.array([abs(cyclic_autocorrelation(x, alpha, int(tau))) for tau in lags])
for tau in (-32, -1, 0, 1, 32):
    print(f"|R(1/40, {tau:+d})| = {mags[lags == tau][0]:.4f}")
print("median over other lags: %.4f" % np.median(mags[np.abs(lags) != 32]))

# ## A frequency that is not cyclic
#
# Away from the harmonics of 1/40 the same lag shows nothing but estimation noise.

print("|R(0.0137, 32)| = %.4f" % abs(cyclic_autocorrelation(x, 0.0137, 32)))

# ## Rough text plot of |R(1/40, tau)|

for tau, m in zip(lags[::4], mags[::4]):
    print(f"{tau:+4d} " + "#" * int(200 * m))
