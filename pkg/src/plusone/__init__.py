"""Free and plus-one generated hyperplane arrangements over Q."""
from .arrangement import Arrangement, Hyperplane, make_arrangement
from .catalog import catalog
from .classify import ClassificationReport, Verdict, classify, is_free
from .combinatorics import char_poly, intersection_lattice

__all__ = [
    "Arrangement",
    "ClassificationReport",
    "Hyperplane",
    "Verdict",
    "catalog",
    "char_poly",
    "classify",
    "intersection_lattice",
    "is_free",
    "make_arrangement",
]
