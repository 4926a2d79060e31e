# %% [markdown]
# # A simple infinitesimal earthquake
#
# The support function max(0, sin θ) describes the field that is Killing
# above the horizontal diameter and zero below it.  Its convex envelope is
# max(0, η₂): two flat pieces glued along one bending line of weight 1.

# %%
import numpy as np

from earthquake_lab import corpus, envelope as env, earthquake as eqm, lamination as lamlib

f = corpus.simple_earthquake(1.0)
e = env.build(f, 1024)
for piece in env.flat_pieces(e):
    print("flat piece with support plane", np.round(piece.sigma, 12) + 0.0)
(edge,) = env.bending_edges(e)
print("bending edge from angle %.3f to %.3f, weight %.6f" % (edge.a_theta, edge.b_theta, edge.weight))

# %% [markdown]
# The left earthquake is the Killing field of the support plane above each
# point.  On the leaf itself the default policy averages the two planes.

# %%
eq = eqm.EarthquakeField(e, eqm.EqSide.LEFT)
for p in ([0.0, 0.5], [0.0, -0.5], [0.0, 0.0]):
    print(p, "->", np.round(eq(p), 12))

# %% [markdown]
# Crossing the leaf from below to above, the comparison field is the
# hyperbolic Killing field with axis the leaf; it translates to the left.

# %%
cmp = eqm.comparison(eq, [0, -0.5], [0, 0.5])
print("delta", cmp.delta, "axis", np.round(cmp.axis, 12), "orientation", cmp.orientation.value)

# %% [markdown]
# A unit geodesic arc through the leaf picks up its full weight, which is
# also the Thurston norm of this lamination.

# %%
lam = lamlib.from_envelope(e)
print("Thurston norm estimate", lamlib.thurston_norm(lam))
