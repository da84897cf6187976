from collections.abc import Callable

from ..models import CheckReport
from . import invariants, lifts, realization, uct
from .context import CheckContext

CheckRunner = Callable[[CheckContext], CheckReport]

CHECKS: dict[str, CheckRunner] = {
    "uct_classical": uct.run_uct_classical,
    "reduce_classical": uct.run_reduce_classical,
    "uct_motivic": uct.run_uct_motivic,
    "squares": realization.run_squares,
    "ker_t2": realization.run_ker_t2,
    "relations": realization.run_relations,
    "no_square_root": lifts.run_no_square_root,
    "lift_roundtrip": lifts.run_lift_roundtrip,
    "no_lift_family9": lifts.run_no_lift_family9,
    "torsion_two": invariants.run_torsion_two,
    "torsion_pattern": invariants.run_torsion_pattern,
    "hilbert_series": invariants.run_hilbert_series,
    "chow_slice": invariants.run_chow_slice,
    "bockstein": invariants.run_bockstein,
    "presentation_vs_uct": realization.run_presentation_vs_uct,
}

CHECK_NAMES = tuple(CHECKS)

__all__ = ["CHECKS", "CHECK_NAMES", "CheckContext", "invariants", "lifts", "realization", "uct"]
