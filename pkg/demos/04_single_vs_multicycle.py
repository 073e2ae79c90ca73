# # Single versus multiple cyclic frequencies
#
# Testing two cyclic frequencies at once collects more evidence per record.
# In the low SNR range this lifts the detection probability above the
# single-frequency test at the same false alarm rate.

import numpy as np

from cyclodetect import OfdmParams, apply_awgn, generate_ofdm
from cyclodetect.detectors import decide, multicycle_sum, per_frequency_statistics
from cyclodetect.harness import ScenarioConfig, estimate_detection_curve

# ## One record, step by step

config = ScenarioConfig()
spec = config.detector_spec
rng = np.random.default_rng(5)
x = apply_awgn(generate_ofdm(OfdmParams(), rng), -8.0, rng)
per_freq = per_frequency_statistics(x, spec)
for stat, alpha in zip(per_freq, spec.freq_set):
    print(f"alpha={alpha:.4f}: T={stat.value:7.2f} p={stat.p_value:.2e}")
total = multicycle_sum(per_freq)
print(f"sum statistic {total.value:.2f} on {total.dof} dof, reject: {decide(total, spec)}")

# ## Pd versus SNR
#
# 200 trials per point keeps this quick; the CLI `mc` command runs the full version.

kinds = ("single_cycle", "multi_max", "multi_sum")
table = estimate_detection_curve(config.replace(num_trials=200, snr_grid_db="-14, -12, -10, -8, -6"))
print("snr   " + "  ".join(f"{k:>12s}" for k in kinds))
for i, snr in enumerate(table.curve("multi_sum", 1)[0]):
    row = [table.curve(kind, 1)[1][i] for kind in kinds]
    print(f"{snr:5.0f} " + "  ".join(f"{v:12.3f}" for v in row))
