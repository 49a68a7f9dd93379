# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Three ways an ellipse can be modulated
#
# A modulated ellipse can grow, change shape, or precess. Each of these shows
# up as its own term in the bivariate bandwidth. The three `fig3-*` presets
# switch on one term at a time and hold it at 2.5% of the bivariate
# frequency.

# %%
import os
from pathlib import Path

import numpy as np

from bivmoments import bandwidth_decomposition, bivariate_frequency_from_ellipse, fig3_svg, preset

out = Path(os.environ.get("BIVMOMENTS_OUT", "notebook_output"))
out.mkdir(exist_ok=True)

scenarios = [preset(f"fig3-{k}") for k in ("amplitude", "deformation", "precession")]

# %%
for s in scenarios:
    e = s.eddy
    bw = bandwidth_decomposition(e)
    wz = bivariate_frequency_from_ellipse(e).values
    mid = slice(e.grid.n // 10, -e.grid.n // 10)
    ratios = [np.mean(term.values[mid] / wz[mid])
              for term in (bw.amplitude_bw, bw.deformation_bw, bw.precession_bw)]
    print(f"{s.name:18s}", "  ".join(f"{r:+.4f}" for r in ratios))

# %% [markdown]
# The trajectories: the first orbit is drawn heavy, the start is a circle and
# the end a cross.

# %%
(out / "fig3.svg").write_text(fig3_svg(scenarios), encoding="utf-8")
print("wrote", out / "fig3.svg")
