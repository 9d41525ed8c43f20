# %% [markdown]
# # Betweenness (Figs. 8-11)
#
# Node and edge betweenness count every unordered pair once and spread one
# unit over its shortest paths. Scores are binned raw.

# %%
import numpy as np
from scipy.stats import spearmanr

from gridgrowth import GrowthConfig, KDistribution, betweenness, betweenness_pdf, grow
from gridgrowth.io import load_edgelist, load_admittance, adjacency_from_admittance, save_table

from _common import OUT, real_grid


def dump(path, res, which, bins=30):
    edges, mass = betweenness_pdf(res, bins, which=which)
    save_table(path, ["bin_lo", "bin_hi", "mass"],
               [(float(a), float(b), float(m)) for a, b, m in zip(edges, edges[1:], mass)])


# %%
g = grow(GrowthConfig(node_count=2000, k_dist=KDistribution.uniform([1, 2, 3]), rng_seed=0))
res = betweenness(g)
dump(OUT / "fig08_node_betweenness_model.csv", res, "node")
dump(OUT / "fig09_edge_betweenness_model.csv", res, "edge")
print("node score max / median:", res.node_scores.max() / np.median(res.node_scores))

deg = g.degrees
prod = deg[res.edges[:, 0]] * deg[res.edges[:, 1]]
print("Spearman(edge score, degree product):", round(spearmanr(res.edge_scores, prod).statistic, 3))

# %% [markdown]
# Heavy right tail: a handful of nodes carry most routes.

# %%
for name, fig, which in (("ucte", 10, "node"), ("ercot", 11, "edge")):
    path = real_grid(name)
    if path is None:
        print(f"{name}: not in data/, skipped")
        continue
    grid = adjacency_from_admittance(load_admittance(path)) if path.suffix == ".mtx" \
        else load_edgelist(path)
    dump(OUT / f"fig{fig}_{which}_betweenness_{name}.csv", betweenness(grid), which)

# %% [markdown]
# CLI equivalent:
#
#     gridgrowth analyze --metric betweenness --input k123.edges --bins 30
