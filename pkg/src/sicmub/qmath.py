"""Complex linear algebra for small-dimension quantum systems.

Conventions used throughout the package:

* kets are 1-D complex ``numpy`` arrays,
* operators are square complex arrays acting on the same space,
* a POVM is an array of effect matrices with shape ``(k, d, d)``,
* an orthonormal basis is an array of kets with shape ``(d, d)``,
  axis 0 indexing the basis vectors.

Every function here is pure and treats its arguments as read-only.
Arrays stored on container objects elsewhere in the package are frozen
with ``writeable = False`` so values can be shared across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Tolerance used to validate exactly constructed objects.
DEFAULT_TOL = 1e-10
#: Tolerance used for quantities produced by numerical search.
SEARCH_TOL = 1e-8


def frozen_array(values, dtype=complex) -> np.ndarray:
    """Copy ``values`` into a read-only ndarray."""
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def basis_ket(dim: int, j: int) -> np.ndarray:
    """Computational-basis ket ``|j>`` in dimension ``dim``."""
    if not 0 <= j < dim:
        raise ValueError(f"basis index {j} out of range for dimension {dim}")
    v = np.zeros(dim, dtype=complex)
    v[j] = 1.0
    return v


def normalize_ket(v) -> np.ndarray:
    """Return ``v`` scaled to unit Euclidean norm."""
    vec = np.asarray(v, dtype=complex).reshape(-1)
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValueError("cannot normalize the zero vector")
    return vec / norm


def _as_ket(v, *, tol: float = SEARCH_TOL) -> np.ndarray:
    """Coerce to a 1-D complex array and require unit norm within ``tol``."""
    vec = np.asarray(v, dtype=complex).reshape(-1)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"ket is not normalized: |norm - 1| = {abs(norm - 1.0):.3e}")
    return vec


def projector(psi) -> np.ndarray:
    """Rank-1 projector ``|psi><psi|`` of a unit ket."""
    vec = _as_ket(psi)
    return np.outer(vec, vec.conj())


def overlap_squared(a, b) -> float:
    """Squared inner product ``|<a|b>|**2`` of two kets."""
    u = np.asarray(a, dtype=complex).reshape(-1)
    v = np.asarray(b, dtype=complex).reshape(-1)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return float(abs(np.vdot(u, v)) ** 2)


def _as_square(m, name: str = "operator") -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {arr.shape}")
    return arr


def trace_product(a, b, *, imag_tol: float = SEARCH_TOL) -> float:
    """Real Hilbert-Schmidt inner product ``Re tr(a b)``.

    For Hermitian inputs the trace is real up to rounding; an imaginary
    part larger than ``imag_tol`` indicates non-Hermitian input and
    raises ``ValueError``.
    """
    am = _as_square(a)
    bm = _as_square(b)
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape[0]} vs {bm.shape[0]}")
    t = complex(np.trace(am @ bm))
    if abs(t.imag) > imag_tol:
        raise ValueError(f"trace product has imaginary residual {abs(t.imag):.3e}")
    return float(t.real)


def born_probabilities(rho, effects, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Outcome probabilities ``p_i = tr(rho E_i)`` for a POVM.

    Entries below ``-tol`` or a total off from 1 by more than ``tol``
    indicate an invalid state/POVM pair and raise ``ValueError``; tiny
    negative values from rounding are clipped to ``[0, 1]``.
    """
    rm = _as_square(rho, "state")
    eff = np.asarray(effects, dtype=complex)
    if eff.ndim != 3 or eff.shape[1] != eff.shape[2]:
        raise ValueError(f"POVM must have shape (k, d, d), got {eff.shape}")
    if eff.shape[1] != rm.shape[0]:
        raise ValueError(f"dimension mismatch: state {rm.shape[0]} vs POVM {eff.shape[1]}")
    raw = np.einsum("ab,kba->k", rm, eff).real
    if raw.min() < -tol:
        raise ValueError(f"negative probability {raw.min():.3e} beyond tolerance: invalid POVM or state")
    total = raw.sum()
    if abs(total - 1.0) > max(tol, 1e-9):
        raise ValueError(f"probabilities sum to {total!r}: incomplete POVM or non-unit-trace state")
    return np.clip(raw, 0.0, 1.0)


def random_ket(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit ket (normalized complex Gaussian vector)."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix ``G G† / tr(G G†)``, Ginibre ``G``."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


@dataclass(frozen=True)
class ValidationReport:
    """Structured diagnostics from one of the ``validate_*`` functions.

    Fields not applicable to the validated kind are ``None``.  ``passed``
    is the verdict at the tolerance recorded in ``tol``.
    """

    kind: str
    tol: float
    passed: bool
    max_hermiticity_residual: float
    trace_residual: float | None = None
    min_eigenvalue: float | None = None
    completeness_residual: float | None = None
    orthonormality_residual: float | None = None

    def residuals(self) -> dict[str, float]:
        """All non-None residual fields, for reports and CLI output."""
        out = {"max_hermiticity_residual": self.max_hermiticity_residual}
        for name in ("trace_residual", "min_eigenvalue", "completeness_residual", "orthonormality_residual"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out


def _hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def _min_eigenvalue(m: np.ndarray) -> float:
    # Symmetric solver on the Hermitian part; robust for near-Hermitian input.
    h = (m + m.conj().T) / 2.0
    return float(np.linalg.eigvalsh(h)[0])


def validate_density_matrix(rho, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Diagnostics for a density matrix: Hermiticity, unit trace, positivity."""
    m = _as_square(rho, "state")
    herm = _hermiticity_residual(m)
    trace_res = float(abs(np.trace(m) - 1.0))
    min_eig = _min_eigenvalue(m)
    passed = herm <= tol and trace_res <= tol and min_eig >= -tol
    return ValidationReport(
        kind="density_matrix",
        tol=tol,
        passed=passed,
        max_hermiticity_residual=herm,
        trace_residual=trace_res,
        min_eigenvalue=min_eig,
    )


def validate_povm(effects, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Diagnostics for a POVM: Hermitian, positive effects summing to identity."""
    eff = np.asarray(effects, dtype=complex)
    if eff.ndim != 3 or eff.shape[1] != eff.shape[2] or eff.shape[0] == 0:
        raise ValueError(f"POVM must have shape (k, d, d) with k >= 1, got {eff.shape}")
    herm = max(_hermiticity_residual(e) for e in eff)
    min_eig = min(_min_eigenvalue(e) for e in eff)
    completeness = float(np.max(np.abs(eff.sum(axis=0) - np.eye(eff.shape[1]))))
    passed = herm <= tol and min_eig >= -tol and completeness <= tol
    return ValidationReport(
        kind="povm",
        tol=tol,
        passed=passed,
        max_hermiticity_residual=herm,
        min_eigenvalue=min_eig,
        completeness_residual=completeness,
    )


def validate_orthonormal_basis(kets, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Diagnostics for a complete orthonormal basis given as rows of kets."""
    arr = np.asarray(kets, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"basis must have shape (k, d), got {arr.shape}")
    gram = arr.conj() @ arr.T
    ortho = float(np.max(np.abs(gram - np.eye(arr.shape[0]))))
    complete = arr.shape[0] == arr.shape[1]
    passed = complete and ortho <= tol
    return ValidationReport(
        kind="orthonormal_basis",
        tol=tol,
        passed=passed,
        max_hermiticity_residual=float(np.max(np.abs(gram - gram.conj().T))),
        completeness_residual=None if complete else float(arr.shape[1] - arr.shape[0]),
        orthonormality_residual=ortho,
    )
