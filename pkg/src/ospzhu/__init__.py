"""Exact computations for osp(1|2) minimal models and their Zhu algebras."""

from .errors import InvalidInput, NotAdmissible, OspZhuError, VerificationFailed
from .exactalg import Q, UPoly, MPoly, RatFun
from .partitions import admp, uniqp, is_admissible
from .jack import jack_poly, jack_expand, jack_norm
from .correlators import bc_correlator, pfaffian
from .minmod import AdmissiblePair, validate, kac_tables, spectrum, zhu_image, classify
from .zeromode import verify_svimage, predicted_factors

__version__ = "0.1.0"

__all__ = [
    "InvalidInput", "NotAdmissible", "OspZhuError", "VerificationFailed",
    "Q", "UPoly", "MPoly", "RatFun",
    "admp", "uniqp", "is_admissible",
    "jack_poly", "jack_expand", "jack_norm",
    "bc_correlator", "pfaffian",
    "AdmissiblePair", "validate", "kac_tables", "spectrum", "zhu_image", "classify",
    "verify_svimage", "predicted_factors",
]
