# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Instantaneous moments of a modulated tone
#
# A Gaussian wave packet is the simplest signal whose frequency content is
# spread in both time and frequency. We form its analytic signal, read off the
# instantaneous frequency and bandwidth, and check that their power-weighted
# time averages reproduce the spectral moments.

# %%
import numpy as np

from bivmoments import RealSeries, SampleGrid, analytic_signal, moment_track

n, period = 4096, 32.0
g = SampleGrid(0.0, 1.0, n)
t = g.times
s = n / 16
env = np.exp(-((t - t[n // 2]) ** 2) / (2 * s ** 2))
x = RealSeries(g, env * np.cos(2 * np.pi * t / period))

xp = analytic_signal(x)
m = moment_track(xp)

# %% [markdown]
# The carrier is a pure linear phase, so the instantaneous frequency is flat.
# The bandwidth is the log-derivative of the envelope, a straight line through
# zero at the packet centre.

# %%
mid = slice(n // 4, 3 * n // 4)
print("frequency spread:", np.ptp(m.frequency.values[mid]))
slope = np.polyfit(t[mid], m.bandwidth.values[mid], 1)[0]
print("bandwidth slope:", slope, "expected:", -1 / s ** 2)

# %% [markdown]
# Weighting by instantaneous power and averaging over time recovers the
# global mean frequency and second central moment of the spectrum.

# %%
w = m.power.values
gm = m.global_moments
print("mean frequency  ", np.sum(w * m.frequency.values) / np.sum(w), gm.mean_frequency)
print("second central  ", np.sum(w * m.second_central.values) / np.sum(w), gm.second_central)

# %% [markdown]
# Pointwise, the second central moment splits into a frequency-deviation part
# and a bandwidth part.

# %%
dev = (m.frequency.values - gm.mean_frequency) ** 2 + m.bandwidth.values ** 2
ok = ~m.second_central.mask
print("largest relative mismatch:",
      np.max(np.abs(dev[ok] - m.second_central.values[ok]) / m.second_central.values[ok]))
