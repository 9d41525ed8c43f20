import numpy as np
import pytest

from gridgrowth import (DegreeHistogram, EpidemicConfig, Graph, GrowthConfig, KDistribution,
                        complete_graph, degree_histogram, grow, path_graph, simulate)
from gridgrowth.io import (DataError, adjacency_from_admittance, load_admittance, load_edgelist,
                           load_histogram, load_scaling, load_trace, parse_admittance_triplets,
                           parse_edgelist, read_table, save_graph, save_histogram, save_scaling,
                           save_trace)


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


# ---- edge lists --------------------------------------------------------------

def test_load_path_graph(tmp_path):
    g, rep = load_edgelist(_write(tmp_path, "p.edges", "1 2\n2 3\n"), with_report=True)
    assert (g.n_nodes, g.n_edges) == (3, 2)
    assert g.labels == (1, 2, 3)
    assert g.edge_set() == {(0, 1), (1, 2)}
    assert rep.duplicates == 0 and rep.self_loops == 0


def test_duplicates_and_self_loops(tmp_path):
    g, rep = load_edgelist(_write(tmp_path, "d.edges", "1 2\n2 1\n3 3\n2 3\n"),
                           with_report=True)
    assert g.n_edges == 2
    assert rep.duplicates == 1
    assert rep.self_loops == 1
    assert (rep.nodes, rep.edges) == (3, 2)


def test_comments_isolated_and_weights():
    text = "# header\n\n10 20  # trailing\n5\n20 30 1.5\n"
    g, rep = parse_edgelist(text)
    assert g.labels == (5, 10, 20, 30)
    assert g.degrees.tolist() == [0, 1, 2, 1]


def test_numeric_labels_sorted_numerically():
    g, _ = parse_edgelist("10 9\n100 2\n")
    assert g.labels == (2, 9, 10, 100)


def test_string_labels_first_appearance():
    g, _ = parse_edgelist("bus_b bus_a\nbus_c bus_b\n")
    assert g.labels == ("bus_b", "bus_a", "bus_c")
    assert g.n_edges == 2


def test_malformed_line_reports_line_number(tmp_path):
    p = _write(tmp_path, "bad.edges", "1 2\n2 3 x\n")
    with pytest.raises(DataError, match=r":2:"):
        load_edgelist(p)


def test_empty_file_rejected(tmp_path):
    with pytest.raises(DataError):
        load_edgelist(_write(tmp_path, "empty.edges", "# nothing\n\n"))


def test_missing_file_names_path(tmp_path):
    with pytest.raises(OSError, match="nope.edges"):
        load_edgelist(tmp_path / "nope.edges")


def test_parser_output_always_simple():
    rng = np.random.default_rng(0)
    pairs = rng.integers(0, 15, size=(200, 2))
    g, rep = parse_edgelist("\n".join(f"{a} {b}" for a, b in pairs))
    e = g.edges
    assert np.all(e[:, 0] < e[:, 1])
    assert len(np.unique(e, axis=0)) == len(e)
    assert rep.self_loops == int(np.sum(pairs[:, 0] == pairs[:, 1]))


# ---- round trips -------------------------------------------------------------

def test_k5_round_trip(tmp_path):
    p = tmp_path / "k5.edges"
    save_graph(p, complete_graph(5))
    g = load_edgelist(p)
    assert g.edge_set() == complete_graph(5).edge_set()
    assert np.array_equal(g.indices, complete_graph(5).indices)


@pytest.mark.parametrize("seed", [0, 1])
def test_grown_round_trip(tmp_path, seed):
    g = grow(GrowthConfig(node_count=10 ** 4, k_dist=KDistribution.uniform([1, 2, 3]),
                          rng_seed=seed))
    p = tmp_path / "g.edges"
    save_graph(p, g, header="seed test")
    back = load_edgelist(p)
    assert back.n_nodes == g.n_nodes
    assert back.edge_set() == g.edge_set()


def test_isolated_nodes_round_trip(tmp_path):
    g = Graph.from_edges(5, [(1, 3)])
    p = tmp_path / "iso.edges"
    save_graph(p, g)
    back = load_edgelist(p)
    assert back.n_nodes == 5 and back.edge_set() == {(1, 3)}


def test_string_labels_sidecar(tmp_path):
    g, _ = parse_edgelist("bus_b bus_a\nbus_c bus_b\n")
    p = tmp_path / "s.edges"
    save_graph(p, g)
    rows = read_table(tmp_path / "s.edges.ids.csv")
    assert [(int(r["id"]), r["label"]) for r in rows] == [(0, "bus_b"), (1, "bus_a"),
                                                         (2, "bus_c")]
    back = load_edgelist(p)
    assert back.labels == g.labels and back.edge_set() == g.edge_set()
    # integer labels need no sidecar
    save_graph(tmp_path / "i.edges", path_graph(3))
    assert not (tmp_path / "i.edges.ids.csv").exists()


def test_histogram_csv(tmp_path):
    p = tmp_path / "h.csv"
    save_histogram(p, DegreeHistogram({1: 2, 2: 1}))
    assert p.read_text().splitlines() == ["degree,count", "1,2", "2,1"]
    assert load_histogram(p) == DegreeHistogram({1: 2, 2: 1})
    g = grow(GrowthConfig(node_count=2000, rng_seed=3))
    save_histogram(p, degree_histogram(g))
    assert load_histogram(p) == degree_histogram(g)


def test_trace_csv_round_trip(tmp_path):
    g = grow(GrowthConfig(node_count=200, rng_seed=0))
    for cfg in (EpidemicConfig(model="sis", beta=0.3, delta=0.2, steps=15, trials=37),
                EpidemicConfig(model="sir", beta=0.3, gamma=0.2, steps=15, trials=37)):
        tr = simulate(g, cfg)
        p = tmp_path / f"{cfg.model}.csv"
        save_trace(p, tr)
        back = load_trace(p, trials=37, model=cfg.model)
        for name in ("susceptible", "infected", "removed", "infected_std"):
            assert np.array_equal(getattr(back, name), getattr(tr, name))
        assert back.n_nodes == 200


def test_scaling_csv_round_trip(tmp_path):
    rows = [(250, 11.3, 0.6749485577105528), (500, 13.1, 1.0 / 3.0)]
    p = tmp_path / "s.csv"
    save_scaling(p, rows)
    assert load_scaling(p) == rows


def test_wrong_columns_rejected(tmp_path):
    p = _write(tmp_path, "x.csv", "deg,n\n1,2\n")
    with pytest.raises(DataError):
        load_histogram(p)


def test_unwritable_path_has_context(tmp_path):
    blocker = _write(tmp_path, "file", "")
    with pytest.raises(OSError, match="file"):
        save_histogram(blocker / "sub" / "h.csv", DegreeHistogram({1: 1}))


# ---- admittance --------------------------------------------------------------

def test_admittance_zero_offdiagonal_is_edgeless():
    y = parse_admittance_triplets("1 1 5\n2 2 5\n1 2 0\n2 1 0\n")
    g = adjacency_from_admittance(y)
    assert g.n_nodes == 2 and g.n_edges == 0


def test_admittance_complex_entry_gives_edge():
    y = parse_admittance_triplets("1 1 3-9i\n2 2 3-9i\n1 2 -3+9i\n2 1 -3+9i\n")
    g = adjacency_from_admittance(y)
    assert g.edge_set() == {(0, 1)}
    # re/im columns, one-sided pattern is symmetrised
    y = parse_admittance_triplets("1 2 -3 9\n", n=3)
    assert adjacency_from_admittance(y).edge_set() == {(0, 1)}


def test_admittance_threshold():
    y = parse_admittance_triplets("1 2 0.001\n2 3 -3+9i\n")
    assert adjacency_from_admittance(y).n_edges == 2
    assert adjacency_from_admittance(y, threshold=0.01).edge_set() == {(1, 2)}


def test_admittance_non_numeric_rejected():
    with pytest.raises(DataError, match="line 2"):
        parse_admittance_triplets("1 2 1.0\n2 3 abc\n")


def test_matrix_market_file(tmp_path):
    text = ("%%MatrixMarket matrix coordinate complex general\n"
            "3 3 4\n1 1 1.0 -2.0\n1 2 -3.0 9.0\n2 1 -3.0 9.0\n3 2 0.5 0.0\n")
    y = load_admittance(_write(tmp_path, "y.mtx", text))
    g = adjacency_from_admittance(y)
    assert g.n_nodes == 3 and g.edge_set() == {(0, 1), (1, 2)}


def test_bad_matrix_market_is_data_error(tmp_path):
    with pytest.raises(DataError):
        load_admittance(_write(tmp_path, "bad.mtx", "%%MatrixMarket matrix coordinate\nfoo\n"))
