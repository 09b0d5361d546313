"""Kac polynomials and cuspidal polynomials of quivers, computed exactly."""

__version__ = "0.1.0"

from .exact import RatFunc, RatPoly, Rational, binomial_poly, mobius, partitions_of, poly_interpolate
from .series import AdamsScope, Box, TruncSeries, adams, pleth_exp, pleth_log, ts_inverse, ts_mul
from .quiver import Quiver, classify_vertices, euler_form, is_totally_negative, reflect, sym_form
from .fforacle import KacTable, gl_classes, h_poly, iso_class_count, kac_tables
from .borcherds import SimpleTable, WeylElement, denominator_series, s_series, univ_env_char, weyl_enumerate
from .cuspidal import (CuspidalTable, c_table, cabs_direct, cabs_from_c, corollary_sum, cuspidal_tables,
                       run_checks, sg_cabs_series, totally_negative_c)
from .hua import hua_a_table

__all__ = [
    "__version__",
    "RatFunc",
    "RatPoly",
    "Rational",
    "binomial_poly",
    "mobius",
    "partitions_of",
    "poly_interpolate",
    "AdamsScope",
    "Box",
    "TruncSeries",
    "adams",
    "pleth_exp",
    "pleth_log",
    "ts_inverse",
    "ts_mul",
    "Quiver",
    "classify_vertices",
    "euler_form",
    "is_totally_negative",
    "reflect",
    "sym_form",
    "KacTable",
    "gl_classes",
    "h_poly",
    "iso_class_count",
    "kac_tables",
    "SimpleTable",
    "WeylElement",
    "denominator_series",
    "s_series",
    "univ_env_char",
    "weyl_enumerate",
    "CuspidalTable",
    "c_table",
    "cabs_direct",
    "cabs_from_c",
    "corollary_sum",
    "cuspidal_tables",
    "run_checks",
    "sg_cabs_series",
    "totally_negative_c",
    "hua_a_table",
]
