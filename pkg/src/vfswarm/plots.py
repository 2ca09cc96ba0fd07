"""Static SVG figures: trajectories and control/spacing/separation traces."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

# fixed hash salt keeps the SVG ids stable between runs
matplotlib.rcParams["svg.hashsalt"] = "vfswarm"


def _stack(frames, name):
    return np.array([getattr(f, name) for f in frames])


def plot_trajectories(frames, scenario, out_path, snapshots=(0.0, 20.0, 40.0)):
    x, y = _stack(frames, "x"), _stack(frames, "y")
    t = np.array([f.t for f in frames])
    fig, ax = plt.subplots(figsize=(6, 7))
    ys = np.linspace(y.min() - 2, y.max() + 2, 800)
    px, _ = scenario.path.point_at(ys)
    ax.plot(px, ys, "k--", lw=1, label="path")
    for n in range(x.shape[1]):
        ax.plot(x[:, n], y[:, n], lw=0.8)
    ax.plot(x[0], y[0], "o", mfc="none", mec="k", ms=4, label="start")
    ax.plot(x[-1], y[-1], "s", color="k", ms=3, label="end")
    for ts in snapshots:
        k = int(np.argmin(np.abs(t - ts)))
        if abs(t[k] - ts) < 1e-9 and 0 < k < len(t) - 1:
            ax.plot(x[k], y[k], ".", color="tab:red", ms=4)
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)


def plot_timeseries(frames, scenario, out_path):
    t = np.array([f.t for f in frames])
    fig, axes = plt.subplots(4, 1, figsize=(7, 9), sharex=True)
    axes[0].plot(t, _stack(frames, "omega_total"), lw=0.8)
    axes[0].set_ylabel(r"$\omega$ [rad/s]")
    axes[1].plot(t, _stack(frames, "v"), lw=0.8)
    sp = scenario.spacing
    for bound in (sp.v_nom - sp.kappa, sp.v_nom + sp.kappa):
        axes[1].axhline(bound, color="k", ls=":", lw=0.8)
    axes[1].set_ylabel("v [m/s]")
    axes[2].plot(t, _stack(frames, "delta"), lw=0.8)
    axes[2].set_ylabel(r"$\Delta$ [m]")
    axes[3].plot(t, [f.E_min for f in frames], "k", lw=1)
    axes[3].axhline(scenario.avoidance.d_safe, color="tab:red", ls="--", lw=0.8)
    axes[3].set_ylabel(r"$\mathcal{E}$ [m]")
    axes[3].set_xlabel("t [s]")
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)
