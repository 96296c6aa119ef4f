"""Exact computation of generators and relations for rings of invariants of
weighted points on the projective line."""

from .tableau_core import (
    LinearCombination,
    Tableau,
    WeightVector,
    lg_degree,
    make_tableau,
    multiweight,
    star_product,
)
from .straightening import ColumnProduct, evaluate_numeric, straighten_product

__all__ = [
    "ColumnProduct",
    "LinearCombination",
    "Tableau",
    "WeightVector",
    "evaluate_numeric",
    "lg_degree",
    "make_tableau",
    "multiweight",
    "star_product",
    "straighten_product",
]
