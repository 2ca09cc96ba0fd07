# %% [markdown]
# # Spacing control and its Lyapunov function
#
# Each follower adjusts speed as v = v_nom - kappa tanh(delta), where delta
# is how much closer it is to its predecessor than d_eq along the path. The
# sum of squared errors, V, should only go down once everyone is on the path.

# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from vfswarm import SpacingParams, run, speed_command
from vfswarm.config import load_scenario

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)

params = SpacingParams(v_nom=3.0, kappa=1.0, d_eq=4.0)
for delta in (-10.0, -1.0, 0.0, 1.0, 10.0):
    print(f"delta = {delta:6.1f} m -> v = {speed_command(params, delta):.4f} m/s")

# %%
scenario = load_scenario("straight15.cfg")
frames, summary = run(scenario, decimation=1)
t = np.array([f.t for f in frames])
V = np.array([f.V for f in frames])
on_path = summary.time_to_path
print(f"on the path at t = {on_path} s; largest per-step rise in V afterwards: "
      f"{summary.max_step_dV_on_path:.3g} m^2; final V = {summary.final_V:.3g} m^2")

# %%
after = t >= on_path
rises = np.diff(V[after])
print(f"steps after t = {on_path} s where V went up: {int(np.sum(rises > 0))} of {rises.size}")

fig, ax = plt.subplots(figsize=(6, 3))
ax.semilogy(t, np.maximum(V, 1e-12))
ax.axvline(on_path, color="k", ls=":")
ax.set_xlabel("t [s]")
ax.set_ylabel("V [m^2]")
fig.tight_layout()
fig.savefig(OUT / "lyapunov.svg")
