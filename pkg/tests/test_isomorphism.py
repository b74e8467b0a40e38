"""Canonical labeling and isomorphism (networkx as oracle)."""
import random
import sys
import unittest
from pathlib import Path

import networkx as nx

repo_root = Path(__file__).resolve().parents[1]
sys.path.append(str(repo_root))

from core.cartesian import cartesian_product, graph_power  # noqa: E402
from core.config import config  # noqa: E402
from core.graph import EmptyGraphError, Graph, emit_graph6  # noqa: E402
from core.isomorphism import CanonicalSizeError, are_isomorphic, canonical_form  # noqa: E402


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def shuffled(rng: random.Random, g: Graph) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


class CanonicalFormTest(unittest.TestCase):
    def test_invariant_under_relabeling(self):
        rng = random.Random(1)
        for _ in range(150):
            g = random_graph(rng, rng.randint(1, 12), rng.choice([0.2, 0.5, 0.8]))
            self.assertEqual(canonical_form(g).canon_g6, canonical_form(shuffled(rng, g)).canon_g6)

    def test_perm_produces_canonical_graph(self):
        rng = random.Random(2)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 10), 0.4)
            form = canonical_form(g)
            self.assertEqual(emit_graph6(g.relabel(form.perm)).decode("ascii"), form.canon_g6)

    def test_symmetric_graphs(self):
        rng = random.Random(4)
        cases = [
            from_nx(nx.petersen_graph()),
            graph_power(Graph.complete(2), 5),
            cartesian_product(Graph.complete(3), Graph.complete(3)),
            cartesian_product(Graph.cycle(5), Graph.cycle(5)),
            Graph.complete(9),
            Graph.empty(7),
            from_nx(nx.complete_bipartite_graph(4, 5)),
        ]
        for g in cases:
            with self.subTest(g=g):
                self.assertEqual(canonical_form(g).canon_g6, canonical_form(shuffled(rng, g)).canon_g6)

    def test_strongly_regular_pair_distinguished(self):
        # 4x4 rook graph and the Shrikhande graph share parameters (16, 6, 2, 2)
        rook = cartesian_product(Graph.complete(4), Graph.complete(4))
        shrikhande = Graph.from_edges(16, [
            (4 * a + b, 4 * ((a + da) % 4) + (b + db) % 4)
            for a in range(4) for b in range(4)
            for da, db in ((0, 1), (1, 0), (1, 1))
        ])
        self.assertEqual(rook.degree_sequence(), shrikhande.degree_sequence())
        self.assertFalse(are_isomorphic(rook, shrikhande))
        self.assertTrue(are_isomorphic(shrikhande, shuffled(random.Random(8), shrikhande)))

    def test_size_cap(self):
        saved = config.iso_size_cap
        config.iso_size_cap = 4
        try:
            with self.assertRaises(CanonicalSizeError):
                canonical_form(Graph.path(5))
        finally:
            config.iso_size_cap = saved

    def test_empty_graph_rejected(self):
        with self.assertRaises(EmptyGraphError):
            canonical_form(Graph.empty(0))


class AreIsomorphicTest(unittest.TestCase):
    def test_small_cases(self):
        self.assertTrue(are_isomorphic(Graph.path(3), Graph.star(2)))
        self.assertFalse(are_isomorphic(Graph.path(3), Graph.complete(3)))
        self.assertFalse(are_isomorphic(Graph.cycle(6), Graph.from_edges(6, [(0, 1), (1, 2), (2, 0),
                                                                             (3, 4), (4, 5), (5, 3)])))
        self.assertTrue(are_isomorphic(Graph.empty(0), Graph.empty(0)))

    def test_relabeled_copies(self):
        rng = random.Random(11)
        for _ in range(1000):
            g = random_graph(rng, rng.randint(1, 12), rng.choice([0.2, 0.5, 0.8]))
            self.assertTrue(are_isomorphic(g, shuffled(rng, g)))

    def test_matches_networkx(self):
        rng = random.Random(6)
        for _ in range(300):
            n = rng.randint(1, 8)
            m = rng.randint(0, n * (n - 1) // 2)
            pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
            g = Graph.from_edges(n, rng.sample(pairs, m))
            h = Graph.from_edges(n, rng.sample(pairs, m))
            self.assertEqual(are_isomorphic(g, h), nx.is_isomorphic(to_nx(g), to_nx(h)))


if __name__ == "__main__":
    unittest.main()
