"""Exact computations in the finite 2-groups G_k = F/N_k over C_2 wr Z_2."""

from .errors import CapacityError, ContextMismatchError, NotNormalError, UndefinedRatioError
from .group import (
    Element,
    GroupContext,
    comm,
    comm_left,
    commutator,
    conj,
    coords,
    depth,
    element_order,
    generator,
    inv,
    mul,
    power,
)
from .series import SeriesTable, get_series, series_kind
from .spectra import (
    NamedSubgroupSpec,
    RatioPoint,
    build_named,
    hdim_ratio,
    spectrum_table,
    the_key_check,
)
from .subgroups import (
    Subgroup,
    commutator_subgroup,
    intersection,
    normal_closure,
    power_subgroup,
    product_subgroup,
    sift,
    subgroup_closure,
    whole_group,
    z_k,
)
from .wreath import WreathElement, collection_identity_check, project, relator_check

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ContextMismatchError", "NotNormalError", "UndefinedRatioError",
    "Element", "GroupContext", "comm", "comm_left", "commutator", "conj", "coords", "depth",
    "element_order", "generator", "inv", "mul", "power",
    "SeriesTable", "get_series", "series_kind",
    "NamedSubgroupSpec", "RatioPoint", "build_named", "hdim_ratio", "spectrum_table",
    "the_key_check",
    "Subgroup", "commutator_subgroup", "intersection", "normal_closure", "power_subgroup",
    "product_subgroup", "sift", "subgroup_closure", "whole_group", "z_k",
    "WreathElement", "collection_identity_check", "project", "relator_check",
]
