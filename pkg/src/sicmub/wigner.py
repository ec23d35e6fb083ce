"""Discrete Wigner function for qutrits, built on the Hesse MUBs.

The phase-space point operators live on the same 3x3 grid as the SIC
indices: ``A_j`` is the sum of the four MUB projectors whose line passes
through ``j``, minus the identity.  They satisfy ``tr A_j = 1``,
``tr A_j A_k = 3 delta_jk``, and averaging the three operators of a
line recovers that line's MUB projector.  The Wigner function of a
state is ``W(j) = tr(rho A_j)/3``; equivalently, entirely inside the
probability picture, ``W(i) = 1/3 - 2 p(i)`` where ``p`` is the SIC
representation.  Summing ``W`` along a line gives the Born probability
of the corresponding MUB outcome, and those 12 line probabilities
determine ``W`` right back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mub import MubSet, Triple, steiner_s9
from .qmath import frozen_array

#: Per-striation normalization tolerance for line-probability input.
LINE_NORMALIZATION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PhasePointOperators:
    """The nine grid operators ``A_j``, indexed like the SIC outcomes."""

    ops: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.ops, dtype=complex)
        if arr.shape != (9, 3, 3):
            raise ValueError(f"expected 9 operators of shape (3, 3), got {arr.shape}")
        object.__setattr__(self, "ops", frozen_array(arr))


def phase_point_operators(m: MubSet, tol: float = 1e-10) -> PhasePointOperators:
    """Build ``A_j = sum_{lines through j} P_line - I`` and verify.

    All three defining properties (unit trace, orthogonality
    ``tr A_j A_k = 3 delta_jk``, line averages equal the MUB projectors)
    are checked within ``tol``; violations raise with the residuals.
    """
    system = steiner_s9()
    eye = np.eye(3, dtype=complex)
    ops = np.empty((9, 3, 3), dtype=complex)
    for j in range(9):
        total = -eye.copy()
        for line in system.lines_through(j):
            total = total + m.state(line)[1]
        ops[j] = total

    trace_residual = float(np.max(np.abs(np.einsum("jaa->j", ops) - 1.0)))
    gram = np.einsum("jab,kba->jk", ops, ops).real
    gram_residual = float(np.max(np.abs(gram - 3.0 * np.eye(9))))
    line_residual = 0.0
    for line in system.triples:
        average = ops[list(line)].sum(axis=0) / 3.0
        line_residual = max(line_residual, float(np.max(np.abs(average - m.state(line)[1]))))
    if max(trace_residual, gram_residual, line_residual) > tol:
        raise ValueError(
            "phase-point operator properties violated: residuals "
            f"trace={trace_residual:.3e}, orthogonality={gram_residual:.3e}, lines={line_residual:.3e}"
        )
    return PhasePointOperators(ops=ops)


def wigner_of_density(rho, a: PhasePointOperators) -> np.ndarray:
    """Wigner function ``W(j) = tr(rho A_j)/3`` of a density matrix."""
    rm = np.asarray(rho, dtype=complex)
    if rm.shape != (3, 3):
        raise ValueError(f"expected a 3x3 density matrix, got shape {rm.shape}")
    return np.einsum("ab,jba->j", rm, a.ops).real / 3.0


def wigner_from_sic_probabilities(p) -> np.ndarray:
    """Entrywise map ``W(i) = 1/3 - 2 p(i)`` from the SIC representation."""
    vec = np.asarray(p, dtype=float).reshape(-1)
    if vec.shape[0] != 9:
        raise ValueError(f"expected 9 SIC probabilities, got {vec.shape[0]}")
    return 1.0 / 3.0 - 2.0 * vec


def line_marginals(w) -> dict[Triple, float]:
    """Sum the Wigner function along each of the 12 grid lines.

    For ``w`` coming from a state, the value at line ``(ijk)`` is the
    Born probability of that MUB outcome, and each striation's three
    values sum to the total mass of ``w``.
    """
    vec = np.asarray(w, dtype=float).reshape(-1)
    if vec.shape[0] != 9:
        raise ValueError(f"expected 9 Wigner values, got {vec.shape[0]}")
    return {line: float(vec[list(line)].sum()) for line in steiner_s9().triples}


def wigner_from_line_probs(q: dict[Triple, float], tol: float = LINE_NORMALIZATION_TOL) -> np.ndarray:
    """Recover the Wigner function from the 12 line probabilities.

    ``W(i) = (sum of q over the four lines through i - 1)/3``; exact
    inverse of :func:`line_marginals` on consistent input.  Each
    striation's three probabilities must sum to 1 within ``tol``.
    """
    system = steiner_s9()
    lookup = {tuple(sorted(line)): float(value) for line, value in q.items()}
    missing = [line for line in system.triples if line not in lookup]
    if missing or len(lookup) != 12:
        raise ValueError(f"need exactly the 12 lines of S(9); missing {missing}, got {sorted(lookup)}")
    for number, striation in enumerate(system.striations, start=1):
        total = sum(lookup[line] for line in striation)
        if abs(total - 1.0) > tol:
            raise ValueError(f"striation {number} probabilities sum to {total!r}, expected 1")
    w = np.empty(9)
    for i in range(9):
        w[i] = (sum(lookup[line] for line in system.lines_through(i)) - 1.0) / 3.0
    return w


def negativity(w) -> float:
    """Total magnitude of the negative Wigner entries.

    Zero exactly when the quasi-probability is a true probability; for
    Wigner functions of valid qutrit states it never exceeds 1/3, a cap
    attained by the SIC states themselves.
    """
    vec = np.asarray(w, dtype=float).reshape(-1)
    return float(-vec[vec < 0].sum())
