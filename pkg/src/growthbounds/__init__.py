"""growthbounds: exact counts and rigorous bounds for restricted lattice
walks (connective constants) and restricted lattice manifolds (growth
constants)."""

__version__ = "0.1.0"

from .automata import automata_bound
from .enumeration import count_walks, mu_upper_from_counts
from .lattice import get_lattice
from .manifolds import ManifoldClass, enumerate_fixed
from .twig import twig_bound
from .walk_rules import get_rule

__all__ = [
    "__version__",
    "automata_bound",
    "count_walks",
    "mu_upper_from_counts",
    "get_lattice",
    "get_rule",
    "ManifoldClass",
    "enumerate_fixed",
    "twig_bound",
]
