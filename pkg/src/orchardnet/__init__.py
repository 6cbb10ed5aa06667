"""Rooted binary phylogenetic networks, trinets, and orchard reconstruction."""

from .cherries import (ReduciblePair, cut_reticulated_cherry, find_cherries,
                       find_reticulated_cherries, is_orchard, reduce_leaf)
from .enewick import parse_enewick, write_dot, write_enewick
from .errors import (InvalidNetwork, MalformedTrinet, NetworkError, NoIsomorphism,
                     NoReduciblePair, NotOrchardInput)
from .exhibit import exhibit, full_simplification, path_graph, trinet_set
from .generator import random_orchard
from .isomorphism import are_isomorphic, canonical_key, find_isomorphism, trinet_sets_equal
from .network import (PhyloNetwork, TrackedDigraph, is_ancestor, is_recoverable,
                      lowest_stable_ancestor, validate)
from .reconstruct import construct_orchard, find_reducible_pair

__version__ = "0.1.0"
