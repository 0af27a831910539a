"""Isogeny tower toolkit: level-structure isogeny graphs as voltage graphs.

The heavy lifting lives in the C++ extension; this package re-exports the
main operations.
"""

from _isotower import (  # noqa: F401
    CapError,
    CheckError,
    Curve,
    Field,
    ParamError,
    double_intertwine,
    find_ordinary_seeds,
    fundamental_discriminant,
    galois_audit,
    gen_tectonic_crater,
    gen_volcano,
    generator_density,
    gl2_order,
    recognize,
    split_behavior,
    torsion_field_degree,
    tower,
    unit_index,
    y_tower,
)

__all__ = [
    "CapError",
    "CheckError",
    "Curve",
    "Field",
    "ParamError",
    "double_intertwine",
    "find_ordinary_seeds",
    "fundamental_discriminant",
    "galois_audit",
    "gen_tectonic_crater",
    "gen_volcano",
    "generator_density",
    "gl2_order",
    "recognize",
    "split_behavior",
    "torsion_field_degree",
    "tower",
    "unit_index",
    "y_tower",
]

__version__ = "0.1.0"
