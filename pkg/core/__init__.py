"""Core modules for the cospectral family builder."""
from .config import Config, config, load_config
from .graph import (
    Graph, GraphError, EmptyGraphError, GraphTooLargeError, Graph6Error, MalformedSizeError,
    NonZeroPaddingError, InvalidCharacterError, TruncatedPayloadError, ExcessPayloadError,
    UnsupportedFormatError, parse_graph6, emit_graph6, order, edge_count, is_connected,
    read_graph6_lines, format_graph6_lines,
)
from .spectrum import (
    SpectrumKind, CharPoly, CharPolyMethod, EigenvalueError, char_poly, cospectral, spectral_key,
    float_eigenvalues, bareiss_determinant, spanning_tree_count,
)
from .isomorphism import CanonicalForm, CanonicalSizeError, canonical_form, are_isomorphic
from .cartesian import (
    K1, FactorMultiset, CommonFactorDecomposition, FactorizationError, FactorizationInternalError,
    cartesian_product, product_of, graph_power, prime_factorize, is_prime, are_coprime, shared_factors,
    common_factor,
)
from .family import CospectralFamily, FamilyError
from .verify import (
    Certificate, CheckResult, ConditionVerdict, TripletCapError, SpectrumKindMismatch, verify_family,
    make_family, load_family, verify_cross_spectra, enumerate_cospectral_triplets, certify,
)
from .construct import (
    ConstructionError, ConstructionResult, ExponentVector, ProductIndex, diagnose_conditions,
    check_condition1, check_condition2, check_condition3, build_product_family, find_coprime_pair,
    build_relaxed_family, fallback_family, count_new_triplets, triplet_breakdown, weak_compositions,
    build_power_family, power_family_size, extend_by_singleton, construction_universe,
)
from .corpus import (
    Corpus, CorpusEntry, CorpusStats, CorpusError, generate_small_corpus, read_corpus, write_corpus,
    find_seed_families, brute_force_class_counts,
)
from .result_store import ResultStore
from .csv_exporter import CSVExporter
from .parallel_executor import execute_parallel, map_parallel, map_processes
from .logger import RunLogger, init_logger, get_logger, close_logger

__all__ = [
    "Config", "config", "load_config",
    "Graph", "GraphError", "EmptyGraphError", "GraphTooLargeError", "Graph6Error", "MalformedSizeError",
    "NonZeroPaddingError", "InvalidCharacterError", "TruncatedPayloadError", "ExcessPayloadError",
    "UnsupportedFormatError", "parse_graph6", "emit_graph6", "order", "edge_count", "is_connected",
    "read_graph6_lines", "format_graph6_lines",
    "SpectrumKind", "CharPoly", "CharPolyMethod", "EigenvalueError", "char_poly", "cospectral", "spectral_key",
    "float_eigenvalues", "bareiss_determinant", "spanning_tree_count",
    "CanonicalForm", "CanonicalSizeError", "canonical_form", "are_isomorphic",
    "K1", "FactorMultiset", "CommonFactorDecomposition", "FactorizationError", "FactorizationInternalError",
    "cartesian_product", "product_of", "graph_power", "prime_factorize", "is_prime", "are_coprime",
    "shared_factors", "common_factor",
    "CospectralFamily", "FamilyError",
    "Certificate", "CheckResult", "ConditionVerdict", "TripletCapError", "SpectrumKindMismatch",
    "verify_family", "make_family", "load_family", "verify_cross_spectra", "enumerate_cospectral_triplets",
    "certify",
    "ConstructionError", "ConstructionResult", "ExponentVector", "ProductIndex", "diagnose_conditions",
    "check_condition1", "check_condition2", "check_condition3", "build_product_family", "find_coprime_pair",
    "build_relaxed_family", "fallback_family", "count_new_triplets", "triplet_breakdown", "weak_compositions",
    "build_power_family", "power_family_size", "extend_by_singleton", "construction_universe",
    "Corpus", "CorpusEntry", "CorpusStats", "CorpusError", "generate_small_corpus", "read_corpus",
    "write_corpus", "find_seed_families", "brute_force_class_counts",
    "ResultStore", "CSVExporter", "execute_parallel", "map_parallel", "map_processes",
    "RunLogger", "init_logger", "get_logger", "close_logger",
]
