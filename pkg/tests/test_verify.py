"""Family certificates, cross-spectra checks, triplet enumeration and the result store."""
import sys
import tempfile
import unittest
from pathlib import Path

repo_root = Path(__file__).resolve().parents[1]
sys.path.append(str(repo_root))

from core.cartesian import cartesian_product  # noqa: E402
from core.config import config  # noqa: E402
from core.family import CospectralFamily, FamilyError  # noqa: E402
from core.graph import Graph  # noqa: E402
from core.result_store import ResultStore  # noqa: E402
from core.spectrum import SpectrumKind  # noqa: E402
from core.verify import (  # noqa: E402
    Certificate, SpectrumKindMismatch, TripletCapError, enumerate_cospectral_triplets, load_family,
    make_family, verify_cross_spectra, verify_family,
)

ADJ = SpectrumKind.ADJACENCY
LAP = SpectrumKind.LAPLACIAN
K2 = Graph.complete(2)


class VerifyFamilyTest(unittest.TestCase):
    def test_singleton_is_valid(self):
        cert = verify_family([K2], ADJ)
        self.assertTrue(cert.valid)
        self.assertEqual(cert.members, ["A_"])
        self.assertEqual(cert.order, 2)
        self.assertEqual(cert.char_poly, ["-1", "0", "1"])

    def test_isomorphic_pair_has_witness(self):
        cert = verify_family([Graph.path(3), Graph.star(2)], ADJ)
        self.assertFalse(cert.valid)
        self.assertTrue(cert.checks["equal_char_poly"].passed)
        self.assertFalse(cert.checks["non_isomorphic"].passed)
        self.assertIn("members 0 and 1", cert.checks["non_isomorphic"].witness)
        self.assertEqual(cert.failed_checks(), ["non_isomorphic"])

    def test_disconnected_member(self):
        cert = verify_family([Graph.star(4), Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])], ADJ)
        self.assertFalse(cert.valid)
        self.assertEqual(cert.checks["connected"].witness, "member 1 is disconnected")
        self.assertTrue(cert.checks["equal_char_poly"].passed)
        self.assertTrue(cert.checks["non_isomorphic"].passed)

    def test_order_and_polynomial_mismatch(self):
        cert = verify_family([Graph.path(3), Graph.complete(3), Graph.path(4)], ADJ)
        self.assertFalse(cert.checks["equal_order"].passed)
        self.assertIn("member 2 has order 4", cert.checks["equal_order"].witness)
        self.assertFalse(cert.checks["equal_char_poly"].passed)
        self.assertIn("member 1", cert.checks["equal_char_poly"].witness)

    def test_size_cap_is_a_failed_check(self):
        saved = config.iso_size_cap
        config.iso_size_cap = 3
        try:
            cert = verify_family([Graph.path(4)], ADJ)
        finally:
            config.iso_size_cap = saved
        self.assertFalse(cert.valid)
        self.assertTrue(cert.warnings)

    def test_empty_list_rejected(self):
        with self.assertRaises(ValueError):
            verify_family([], ADJ)

    def test_certificate_json_round_trip(self):
        cert = verify_family([Graph.path(3), Graph.star(2)], LAP)
        again = Certificate.from_json(cert.to_json())
        self.assertEqual(again, cert)
        self.assertFalse(again.to_dict()["valid"])


class CrossSpectraTest(unittest.TestCase):
    def test_orders_differ(self):
        g = make_family([Graph.path(3)], ADJ)
        h = make_family([Graph.path(4)], ADJ)
        self.assertEqual(verify_cross_spectra(g, h), (True, "orders differ (3 vs 4)"))

    def test_same_family(self):
        g = make_family([Graph.cycle(5)], ADJ)
        distinct, witness = verify_cross_spectra(g, g)
        self.assertFalse(distinct)
        self.assertIn("x^5", witness)

    def test_equal_orders_distinct_polynomials(self):
        g = make_family([Graph.path(4)], ADJ)
        h = make_family([Graph.star(3)], ADJ)
        self.assertTrue(verify_cross_spectra(g, h)[0])

    def test_kind_mismatch(self):
        with self.assertRaises(SpectrumKindMismatch):
            verify_cross_spectra(make_family([K2], ADJ), make_family([K2], LAP))

    def test_unverified_input(self):
        bad = make_family([Graph.path(3), Graph.star(2)], ADJ)
        self.assertFalse(bad.verified)
        with self.assertRaises(FamilyError):
            verify_cross_spectra(bad, make_family([K2], ADJ))

    def test_recomputes_instead_of_trusting_flags(self):
        forged = CospectralFamily((Graph.path(3),), ADJ, None, True)
        self.assertFalse(verify_cross_spectra(forged, make_family([Graph.path(3)], ADJ))[0])


class TripletTest(unittest.TestCase):
    def test_copies_are_not_triplets(self):
        self.assertEqual(enumerate_cospectral_triplets([Graph.path(4)] * 3, ADJ), 0)

    def test_disconnected_cospectral_graphs_do_not_count(self):
        star = Graph.star(4)
        square_plus_vertex = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
        graphs = [cartesian_product(star, K2), cartesian_product(square_plus_vertex, K2), star, square_plus_vertex]
        self.assertEqual(enumerate_cospectral_triplets(graphs, ADJ), 0)

    def test_fewer_than_three(self):
        self.assertEqual(enumerate_cospectral_triplets([K2, K2], ADJ), 0)

    def test_cap(self):
        saved = config.triplet_cap
        config.triplet_cap = 5
        try:
            with self.assertRaises(TripletCapError):
                enumerate_cospectral_triplets([K2] * 6, ADJ)
        finally:
            config.triplet_cap = saved


class StoreTest(unittest.TestCase):
    def test_family_and_certificate_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            store = ResultStore(Path(tmp) / "families")
            self.assertEqual(store.list_families(), [])
            graphs = [Graph.cycle(5), Graph.path(5)]
            path = store.save_family("pair", graphs, ["two graphs"])
            self.assertTrue(store.has_family("pair"))
            self.assertEqual(path.read_text(encoding="utf-8").splitlines()[0], "# two graphs")
            cert = verify_family(graphs, ADJ)
            store.save_certificate("pair", cert)
            self.assertEqual(store.load_certificate("pair"), cert)
            self.assertIsNone(store.load_certificate("missing"))
            self.assertEqual(store.list_families(), ["pair"])
            family = load_family(path, ADJ)
            self.assertEqual(family.members, tuple(graphs))
            self.assertFalse(family.verified)

    def test_empty_family_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "empty.g6"
            path.write_text("# nothing\n", encoding="utf-8")
            with self.assertRaises(FamilyError):
                load_family(path, ADJ)


if __name__ == "__main__":
    unittest.main()
