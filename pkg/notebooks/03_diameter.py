# %% [markdown]
# # Diameter scaling (Figs. 6-7)
#
# Mean diameter of grown networks against N; the model predicts a
# logarithmic trend. Fig. 6 (real grids from the literature) has no
# tabulated data, so only grids present in data/ are measured.

# %%
from gridgrowth import KDistribution, diameter, diameter_scaling, log_fit
from gridgrowth.io import load_edgelist, save_scaling

from _common import OUT, real_grid

# %%
sizes = [250, 500, 1000, 2000, 4000, 8000]
for k in (1, 2, 3):
    rows = diameter_scaling(KDistribution.constant(k), sizes, 10)
    a, b, r2 = log_fit(rows)
    save_scaling(OUT / f"fig07_scaling_k{k}.csv", rows)
    print(f"K={k}: " + ", ".join(f"{n}:{m:.1f}" for n, m, _ in rows)
          + f"  -> {a:.2f} + {b:.2f} ln N (R^2 {r2:.3f})")

# %% [markdown]
# K=1 grows a tree, so its diameter climbs fastest; extra links per birth
# shorten every route but the log-linear shape stays.

# %%
for name in ("western_us", "ercot"):
    path = real_grid(name)
    if path is not None:
        rep = diameter(load_edgelist(path))
        print(f"{name}: diameter {rep.diameter} over {rep.largest_component_size} nodes")

# %% [markdown]
# CLI equivalent:
#
#     gridgrowth scaling --k 2 --sizes 250,500,1000,2000,4000,8000 --seeds 10 --out fig07.csv
#     gridgrowth analyze --metric diameter --input data/western_us.edges
