# %% [markdown]
# # Width, cross-ratio norm and Thurston norm
#
# The width measures how far the field is from being Killing.  It is
# bounded above by 8/3 of the cross-ratio norm, and bounds from above a
# fixed multiple of the Thurston norm of the bending lamination.

# %%
import json

from earthquake_lab import corpus, norms

for name, f in (("simple earthquake", corpus.simple_earthquake()), ("trig field 0", corpus.trig_field(0))):
    rep = norms.verify_th2(f, N=2048, grid_n=128, cr_samples=5000)
    print(name)
    print(json.dumps({k: v for k, v in rep.to_json().items() if not k.endswith(("argmax", "arg"))}, indent=2))

# %% [markdown]
# After subtracting the Killing field that agrees with X at three points,
# the support function is controlled by the cross-ratio norm.  After
# subtracting the support plane at the width maximizer, it is at most twice
# the width; the simple earthquake makes this tight.

# %%
f = corpus.simple_earthquake()
print("Fan-Hu", norms.fan_hu_check(f, 5000))
print("phi <= 2w", norms.phi_vs_width_check(f, N=2048, grid_n=128))
