from .catalog import (
    CatalogError,
    ProjectionError,
    ProjectionMap,
    catalog_keys,
    catalog_lookup,
    compose,
    from_branching_pairs,
    identity_map,
    invert,
    load_catalog,
    parse_catalog,
    relate,
)
from .series import FAMILIES, SeriesKey, series_gamma, series_instances, series_matrix

__all__ = [
    "CatalogError",
    "FAMILIES",
    "ProjectionError",
    "ProjectionMap",
    "SeriesKey",
    "catalog_keys",
    "catalog_lookup",
    "compose",
    "from_branching_pairs",
    "identity_map",
    "invert",
    "load_catalog",
    "parse_catalog",
    "relate",
    "series_gamma",
    "series_instances",
    "series_matrix",
]
