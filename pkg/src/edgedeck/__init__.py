"""Exact edge-deck operators, 1-edge deck reconstruction and Johnson-scheme spectra."""

__version__ = "0.1.0"

from .decks import (
    MultiVector,
    build_lift_matrix,
    build_operator_matrix,
    edge_deck,
    modified_deck,
    perturbed_deck,
)
from .errors import (
    EdgeDeckError,
    Graph6ParseError,
    IdentityMismatchError,
    InvalidPairError,
    InvalidParametersError,
    MalformedDeckError,
    NotRealizableDeckError,
    OutOfRegimeError,
    TooLargeError,
)
from .graph_core import (
    CanonicalCode,
    ClassCatalog,
    LabeledGraph,
    canonicalize,
    complement,
    enumerate_classes,
    graph6_decode,
    graph6_encode,
    pair_index,
)
from .linalg import ExactMatrix
from .polynomial import OperatorPolynomial
from .reconstruction import edge_deck_from_modified, reconstruct_edge_deck, reconstruct_from_delta1

__all__ = [
    "CanonicalCode",
    "ClassCatalog",
    "EdgeDeckError",
    "ExactMatrix",
    "Graph6ParseError",
    "IdentityMismatchError",
    "InvalidPairError",
    "InvalidParametersError",
    "LabeledGraph",
    "MalformedDeckError",
    "MultiVector",
    "NotRealizableDeckError",
    "OperatorPolynomial",
    "OutOfRegimeError",
    "TooLargeError",
    "build_lift_matrix",
    "build_operator_matrix",
    "canonicalize",
    "complement",
    "edge_deck",
    "edge_deck_from_modified",
    "enumerate_classes",
    "graph6_decode",
    "graph6_encode",
    "modified_deck",
    "pair_index",
    "perturbed_deck",
    "reconstruct_edge_deck",
    "reconstruct_from_delta1",
]
