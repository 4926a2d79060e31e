# %% [markdown]
# # Moving a field by an isometry
#
# Pushing the field forward by a hyperbolic isometry and adding a Killing
# field changes neither the width nor the cross-ratio norm, and the
# earthquake of the moved field is the moved earthquake.

# %%
import numpy as np

from earthquake_lab import corpus, earthquake as eqm, envelope as env, mink, norms
from earthquake_lab.field import act

rng = np.random.default_rng(0)
f = corpus.trig_field(1)
A = mink.random_isometry(rng, 1.0)
v = rng.uniform(-1, 1, 3)
g = act(f, A, v)

e_f, e_g = env.build(f), env.build(g)
print("width before %.6f after %.6f" % (norms.width(e_f, 128, 3)[0], norms.width(e_g, 128, 3)[0]))

# %%
f2 = corpus.simple_earthquake()
g2 = act(f2, A)
p = rng.uniform(-0.5, 0.5, (5, 2))
lhs = eqm.eval_eq(eqm.EarthquakeField(env.build(g2, 512)), mink.klein_action(A, p))
rhs = mink.pushforward(A, p, eqm.eval_eq(eqm.EarthquakeField(env.build(f2, 512)), p))
print("max mismatch of the transported earthquake: %.2e" % np.max(np.abs(lhs - rhs)))
