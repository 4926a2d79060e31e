# %% [markdown]
# # Envelopes of a random trigonometric field
#
# A generic smooth support function has a convex envelope made of many thin
# triangles; almost every hull edge is a bending line.  The lower envelope
# carries the left lamination and the upper one the right lamination.

# %%
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from earthquake_lab import corpus, earthquake as eqm, envelope as env, lamination as lamlib

f = corpus.trig_field(3)
e = env.build(f, 2048)
left = lamlib.from_envelope(e, env.Side.LOWER)
right = lamlib.from_envelope(e, env.Side.UPPER)
print("left leaves %d (mass %.3f), right leaves %d (mass %.3f)"
      % (len(left), left.total_mass, len(right), right.total_mass))

# %% [markdown]
# Every bending edge of the lower envelope translates left and every edge of
# the upper envelope translates right.

# %%
for side in eqm.EqSide:
    eq = eqm.EarthquakeField(e, side)
    kinds = {eqm.edge_comparison(eq, edge).orientation.value for edge in eq.hull.edges}
    print(side.value, "side edge orientations:", kinds)

# %% [markdown]
# Near the circle the earthquake approaches the boundary field.

# %%
eq = eqm.EarthquakeField(e)
thetas = np.linspace(0, 2 * np.pi, 64, endpoint=False)
for k in (1, 2, 3):
    print("r = 1 - 1e-%d: sup error %.4f" % (k, eqm.boundary_error(eq, f, thetas, 1 - 10.0 ** -k)))

# %%
fig, axes = plt.subplots(1, 2, figsize=(9, 4.5))
for ax, lam, title in ((axes[0], left, "left lamination"), (axes[1], right, "right lamination")):
    ax.add_patch(plt.Circle((0, 0), 1, fill=False))
    top = lam.weights.max()
    for ends, w in zip(lam.endpoints, lam.weights):
        ax.plot(ends[:, 0], ends[:, 1], color="firebrick", lw=0.2 + 2.5 * w / top)
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_title(title)
out = sys.argv[1] if len(sys.argv) > 1 else "laminations.png"
fig.savefig(out, dpi=120)
print("saved", out)
