"""Special pants families: reducible block triples and Goldman's real pants."""

from __future__ import annotations

import logging
from typing import Sequence, Tuple

import numpy as np

from ..linalg.matrix import Mat3, mat_norm, tr
from ..real_forms.goldman import GoldmanParams, GoldmanRho, goldman_matrices, rho_values
from ..sl2.fuchsian import sl2_pants_from_traces
from ..utils.errors import RelationResidual
from .builder import PantsRep, pants_from_matrices

log = logging.getLogger(__name__)

RELATION_TOL = 1e-9
BOUNDARY_TOL = 1e-9


def _block(m2: np.ndarray, offset: Sequence[complex]) -> Mat3:
    out = np.zeros((3, 3), dtype=complex)
    out[:2, :2] = m2
    out[:2, 2] = np.asarray(offset, dtype=complex)
    out[2, 2] = 1.0
    return out


def build_reducible_pants(
    sl2_traces: Tuple[complex, complex, complex],
    offsets: Tuple[Sequence[complex], Sequence[complex]] = ((0, 0), (0, 0)),
) -> PantsRep:
    """Block upper triangular triple [[M, v], [0, 1]] over an SL(2) pants.

    The eight trace coordinates do not see the offset columns.
    """
    pair = sl2_pants_from_traces(*sl2_traces)
    a = _block(pair.A, offsets[0])
    b = _block(pair.B, offsets[1])
    return pants_from_matrices(a, b, {"constructor": "build_reducible_pants"})


def goldman_rho(params: GoldmanParams) -> GoldmanRho:
    """Both rho_C candidates, gated on the C boundary trace.

    The relation value is always consistent with tr C = lambda_C + tau_C;
    the reference form is used only when it satisfies that trace too.
    """
    rho = rho_values(params)
    target = params.lam[2] + params.tau[2]
    _, _, c = goldman_matrices(params, rho.rho_c_reference)
    miss = abs(tr(c) - target)
    if miss <= BOUNDARY_TOL * (1.0 + abs(target)):
        return GoldmanRho(rho.rho_a, rho.rho_b, rho.rho_c_reference, rho.rho_c_relation, "reference")
    log.warning(
        "reference rho_C misses tr C by %.3e; using the relation value (discrepancy %.3e)",
        miss,
        rho.discrepancy,
    )
    return rho


def goldman_pants(params: GoldmanParams) -> PantsRep:
    """Goldman's SL(3, R) pants; provenance records which rho_C was used.

    Raises:
        RelationResidual: C B A differs from I beyond tolerance.
    """
    rho = goldman_rho(params)
    a, b, c = goldman_matrices(params, rho.rho_c)
    residual = mat_norm(c @ b @ a - np.eye(3))
    if residual > RELATION_TOL * max(1.0, mat_norm(a) * mat_norm(b) * mat_norm(c)):
        raise RelationResidual(f"||CBA - I|| = {residual:.3e} for {params}")
    return pants_from_matrices(
        a,
        b,
        {"constructor": "goldman_pants", "rho_c": rho.used, "rho_c_discrepancy": f"{rho.discrepancy:.6e}"},
    )
