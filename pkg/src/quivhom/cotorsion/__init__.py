"""Cotorsion pairs: module-level oracles, the 3x3 gluing, and the constructions in Rep(Q, C)."""

from __future__ import annotations

from .completeness import (
    Check,
    Construction,
    enough_repB,
    phi_cover,
    sample_phi,
    special_phi_precover_of_phi,
    theorem44_precover,
    theorem44_preenvelope_psi,
)
from .gluing import Grid3x3, glue_3x3
from .line import Chain, LineWindow, finite_limit_exchange_check, line_window_precover
from .oracle import (
    CotorsionPairOracle,
    FiltrationCertificate,
    builtin_pair,
    eklof_check,
    salce_complete,
    self_check,
)

__all__ = [
    "Chain", "Check", "Construction", "CotorsionPairOracle", "FiltrationCertificate", "Grid3x3",
    "LineWindow", "builtin_pair", "eklof_check", "enough_repB", "finite_limit_exchange_check",
    "glue_3x3", "line_window_precover", "phi_cover", "salce_complete", "sample_phi", "self_check",
    "special_phi_precover_of_phi", "theorem44_precover", "theorem44_preenvelope_psi",
]
