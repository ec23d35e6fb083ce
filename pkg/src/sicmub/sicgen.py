"""Weyl-Heisenberg displacements, the Hesse SIC, and the probability
representation a SIC induces on quantum states.

A SIC in dimension ``d`` is a set of ``d**2`` rank-1 projectors with
constant pairwise overlap::

    tr(P_k P_l) = (d * delta_kl + 1) / (d + 1)

Dividing the projectors by ``d`` yields an informationally complete
POVM, so every state is faithfully encoded by its outcome probability
vector ``p(i) = tr(rho P_i) / d``.

Index convention: the orbit of a fiducial ket under the displacement
operators is ordered ``i = d*b + a``, where ``a`` is the cyclic-shift
exponent and ``b`` the phase exponent.  For d = 3 this lays the nine
labels out row by row on a 3x3 grid; every line/striation construction
elsewhere in the package refers to that layout.  The convention is
fixed by requiring that the orbit of the fiducial ``(0, 1, -1)/sqrt(2)``
reproduce the printed ordering of the built-in Hesse SIC.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qmath import DEFAULT_TOL, frozen_array

#: Structural sanity tolerance applied when a SicSet is constructed.
_STRUCTURE_TOL = 1e-8


class NotSicError(ValueError):
    """Raised when a candidate projector set violates the SIC overlap
    condition; carries the worst Gram residual in ``residual``."""

    def __init__(self, residual: float, message: str | None = None):
        self.residual = residual
        super().__init__(message or f"projector set is not a SIC: max Gram residual {residual:.3e}")


def wh_displacement(d: int, a: int, b: int) -> np.ndarray:
    """Weyl-Heisenberg displacement ``tau**(a*b) X**a Z**b``.

    ``X`` cyclically shifts the computational basis, ``Z`` multiplies
    ``|j>`` by ``omega**j`` with ``omega = exp(2i pi/d)``, and the phase
    is ``tau = -exp(i pi/d)``.  The result is unitary.
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    if not (0 <= a < d and 0 <= b < d):
        raise ValueError(f"label ({a}, {b}) out of range for dimension {d}")
    omega = np.exp(2j * np.pi / d)
    tau = -np.exp(1j * np.pi / d)
    shift = np.roll(np.eye(d, dtype=complex), a, axis=0)  # X**a
    phases = omega ** (b * np.arange(d))                  # diagonal of Z**b
    return tau ** (a * b) * shift * phases[np.newaxis, :]


@dataclass(frozen=True, eq=False)
class SicSet:
    """``d**2`` rank-1 projectors satisfying the SIC overlap condition.

    ``gram_residual`` records the worst overlap residual observed when
    the set was generated; hand-built sets leave it ``None``.  Equality
    of SIC sets is meaningful only at the projector level (global ket
    phases cancel), so compare with :meth:`same_projectors`.
    """

    dim: int
    projectors: np.ndarray
    fiducial_index: int | None = None
    gram_residual: float | None = None

    def __post_init__(self):
        p = np.asarray(self.projectors, dtype=complex)
        d = self.dim
        if p.shape != (d * d, d, d):
            raise ValueError(f"expected {d * d} projectors of shape ({d}, {d}), got {p.shape}")
        herm = np.max(np.abs(p - p.conj().transpose(0, 2, 1)))
        traces = np.einsum("iaa->i", p)
        idem = np.max(np.abs(np.einsum("iab,ibc->iac", p, p) - p))
        if herm > _STRUCTURE_TOL or np.max(np.abs(traces - 1)) > _STRUCTURE_TOL or idem > _STRUCTURE_TOL:
            raise ValueError(
                "projectors must be Hermitian, trace-1 and idempotent: residuals "
                f"herm={herm:.3e}, trace={np.max(np.abs(traces - 1)):.3e}, idem={idem:.3e}"
            )
        object.__setattr__(self, "projectors", frozen_array(p))

    def povm_effects(self) -> np.ndarray:
        """The informationally complete POVM ``{P_i / d}``."""
        return self.projectors / self.dim

    def same_projectors(self, other: "SicSet", tol: float = DEFAULT_TOL) -> bool:
        """Entrywise equality of the projector lists within ``tol``."""
        if self.dim != other.dim:
            return False
        return bool(np.max(np.abs(self.projectors - other.projectors)) <= tol)


@dataclass(frozen=True)
class GramCheck:
    """Outcome of the SIC overlap test: verdict plus worst residual."""

    passed: bool
    max_residual: float
    tol: float = DEFAULT_TOL


def _gram_residual(projectors: np.ndarray, d: int) -> float:
    gram = np.einsum("iab,jba->ij", projectors, projectors).real
    n = d * d
    target = (d * np.eye(n) + 1.0) / (d + 1.0)
    return float(np.max(np.abs(gram - target)))


def is_sic(s: SicSet, tol: float = DEFAULT_TOL) -> GramCheck:
    """Test every pairwise overlap against ``(d*delta + 1)/(d + 1)``."""
    residual = _gram_residual(np.asarray(s.projectors), s.dim)
    return GramCheck(passed=residual <= tol, max_residual=residual, tol=tol)


def generate_sic_orbit(fiducial, tol: float = DEFAULT_TOL) -> SicSet:
    """Apply all ``d**2`` displacements to a fiducial ket and validate.

    The resulting projectors are ordered ``i = d*b + a``.  If the orbit
    violates the SIC overlap condition beyond ``tol`` the fiducial is
    not a SIC fiducial and :class:`NotSicError` is raised with the
    observed residual; otherwise the residual is recorded on the
    returned set.
    """
    fid = np.asarray(fiducial, dtype=complex).reshape(-1)
    d = fid.shape[0]
    norm = np.linalg.norm(fid)
    if abs(norm - 1.0) > _STRUCTURE_TOL:
        raise ValueError(f"fiducial must be normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    kets = np.empty((d * d, d), dtype=complex)
    for b in range(d):
        for a in range(d):
            kets[d * b + a] = wh_displacement(d, a, b) @ fid
    projectors = np.einsum("ia,ib->iab", kets, kets.conj())
    residual = _gram_residual(projectors, d)
    if residual > tol:
        raise NotSicError(residual)
    return SicSet(dim=d, projectors=projectors, fiducial_index=0, gram_residual=residual)


def hesse_kets() -> np.ndarray:
    """The nine qutrit kets of the Hesse SIC, indexed 0-8.

    Index 0 is the fiducial ``(0, 1, -1)/sqrt(2)``; the rest follow the
    ``i = 3b + a`` orbit layout (each printed ket may differ from the
    literal orbit vector by a global phase, which projectors ignore).
    """
    w = np.exp(2j * np.pi / 3)
    cw = np.conj(w)
    kets = np.array(
        [
            [0, 1, -1],
            [-1, 0, 1],
            [1, -1, 0],
            [0, w, -cw],
            [-1, 0, cw],
            [1, -w, 0],
            [0, cw, -w],
            [-1, 0, w],
            [1, -cw, 0],
        ],
        dtype=complex,
    )
    return kets / math.sqrt(2.0)


def hesse_sic() -> SicSet:
    """The Hesse SIC: the standard qutrit SIC with fiducial index 0."""
    kets = hesse_kets()
    projectors = np.einsum("ia,ib->iab", kets, kets.conj())
    return SicSet(
        dim=3,
        projectors=projectors,
        fiducial_index=0,
        gram_residual=_gram_residual(projectors, 3),
    )


#: Built-in SIC constructions addressable by string id.
BUILTIN_SICS = ("hesse",)


def builtin_sic(name: str) -> SicSet:
    """Look up a built-in SIC by id (currently only ``"hesse"``)."""
    if name == "hesse":
        return hesse_sic()
    raise KeyError(f"unknown built-in SIC {name!r}; available: {', '.join(BUILTIN_SICS)}")


def sic_probabilities(rho, s: SicSet, tol: float = DEFAULT_TOL) -> np.ndarray:
    """SIC representation ``p(i) = tr(rho P_i) / d`` of a density matrix."""
    rm = np.asarray(rho, dtype=complex)
    d = s.dim
    if rm.shape != (d, d):
        raise ValueError(f"dimension mismatch: state {rm.shape} vs SIC dimension {d}")
    raw = np.einsum("ab,iba->i", rm, s.projectors).real / d
    if raw.min() < -tol:
        raise ValueError(f"negative SIC probability {raw.min():.3e}: input is not positive semidefinite")
    if abs(raw.sum() - 1.0) > max(tol, 1e-9):
        raise ValueError(f"SIC probabilities sum to {raw.sum()!r}: input is not unit trace")
    return np.clip(raw, 0.0, 1.0)


def reconstruct_from_probabilities(p, s: SicSet) -> np.ndarray:
    """Invert the SIC representation: ``sum_i [(d+1) p(i) - 1/d] P_i``.

    The result is Hermitian with unit trace by construction.  Positivity
    is *not* guaranteed; probability vectors that do not describe a
    quantum state reconstruct to a non-positive operator, which callers
    detect with :func:`sicmub.qmath.validate_density_matrix`.
    """
    vec = np.asarray(p, dtype=float).reshape(-1)
    d = s.dim
    if vec.shape[0] != d * d:
        raise ValueError(f"expected {d * d} probabilities, got {vec.shape[0]}")
    if abs(vec.sum() - 1.0) > 1e-8:
        raise ValueError(f"probabilities must sum to 1, got {vec.sum()!r}")
    coeffs = (d + 1.0) * vec - 1.0 / d
    return np.einsum("i,iab->ab", coeffs, s.projectors)


def hs_inner_from_probabilities(p, q) -> float:
    """Hilbert-Schmidt inner product from SIC probabilities.

    ``tr(rho sigma) = d (d+1) p.q - 1`` -- the Euclidean dot product of
    the probability vectors determines the operator inner product up to
    an affine rescaling (factor 12, offset 1, in dimension 3).
    """
    pv = np.asarray(p, dtype=float).reshape(-1)
    qv = np.asarray(q, dtype=float).reshape(-1)
    if pv.shape != qv.shape:
        raise ValueError(f"dimension mismatch: {pv.shape[0]} vs {qv.shape[0]}")
    d = math.isqrt(pv.shape[0])
    if d * d != pv.shape[0]:
        raise ValueError(f"SIC probability vectors must have square length, got {pv.shape[0]}")
    return float(d * (d + 1) * np.dot(pv, qv) - 1.0)
