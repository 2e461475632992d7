"""Exact verification of Touchard-type q-continued fractions.

Sparse Laurent polynomials with exact rational coefficients, truncated series
over them, ladder continued fractions evaluated as series, and builders for
the closed forms those fractions are claimed to equal.
"""

from .arith import LaurentPoly, QRatFun, SeriesError, TruncSeries, VPoly, format_poly, lp, q, rf_eq, ts_compose
from .checks import CATALOG, catalog_ids, run_all, run_check
from .contfrac import (
    CFSpec,
    ConvergentResult,
    DegenerateSpec,
    PAPER_SPECS,
    convergent,
    general_d_spec,
    shifted_spec,
    stable_expansion,
    touchard_spec,
)
from .dsl import DSLError, eval_ladder, format_spec, load_ladder, load_spec, parse_spec, to_cfspec
from .qcomb import QMonomialBase, gauss_binom, q_pochhammer, qpoch
from .report import CheckReport, Mismatch

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "QRatFun", "SeriesError", "TruncSeries", "VPoly", "format_poly", "lp", "q", "rf_eq",
    "ts_compose", "CATALOG", "catalog_ids", "run_all", "run_check", "CFSpec", "ConvergentResult",
    "DegenerateSpec", "PAPER_SPECS", "convergent", "general_d_spec", "shifted_spec", "stable_expansion",
    "touchard_spec", "DSLError", "eval_ladder", "format_spec", "load_ladder", "load_spec", "parse_spec",
    "to_cfspec", "QMonomialBase", "gauss_binom", "q_pochhammer", "qpoch", "CheckReport", "Mismatch",
]
