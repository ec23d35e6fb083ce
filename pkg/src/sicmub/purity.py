"""Pure-state conditions in the SIC probability representation.

A probability vector over the nine Hesse SIC outcomes describes a pure
state iff it satisfies two polynomial constraints: the quadratic
``sum_i p(i)**2 = 2/(d(d+1))`` (= 1/6 for qutrits) and a cubic built
from the triple products ``C_jkl = Re tr(P_j P_k P_l)``.  For the Hesse
SIC the triple products follow the 3x3-grid geometry (collinear -1/8,
noncollinear 1/16), which collapses the cubic to

    sum_i p(i)**3 - 3 * sum_{lines (ijk)} p(i) p(j) p(k) = 0.

Both forms are implemented; their equivalence on the quadratic shell is
exercised by the test suite rather than assumed anywhere in the code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .mub import steiner_s9
from .qmath import DEFAULT_TOL, frozen_array
from .sicgen import SicSet


@dataclass(frozen=True)
class PurityCheck:
    """Verdict of a purity condition with the computed value and its
    deviation from the pure-state target."""

    passed: bool
    value: float
    target: float
    tol: float

    @property
    def residual(self) -> float:
        return abs(self.value - self.target)


@dataclass(frozen=True, eq=False)
class TripleProductTable:
    """All ``d**6`` triple products ``C_jkl = Re tr(P_j P_k P_l)`` of a SIC.

    Symmetric under every permutation of the indices; diagonal values
    are fixed by the SIC conditions (``C_jjj = 1``, ``C_jjk = 1/(d+1)``).
    """

    dim: int
    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float)
        n = self.dim * self.dim
        if arr.shape != (n, n, n):
            raise ValueError(f"expected table of shape ({n}, {n}, {n}), got {arr.shape}")
        object.__setattr__(self, "values", frozen_array(arr, dtype=float))

    def __getitem__(self, jkl) -> float:
        return float(self.values[jkl])


def triple_product(s: SicSet, j: int, k: int, l: int) -> float:
    """``Re tr(P_j P_k P_l)`` for one index triple."""
    n = s.dim * s.dim
    for idx in (j, k, l):
        if not 0 <= idx < n:
            raise IndexError(f"SIC index {idx} out of range 0-{n - 1}")
    p = s.projectors
    return float(np.trace(p[j] @ p[k] @ p[l]).real)


def triple_product_table(s: SicSet) -> TripleProductTable:
    """Compute every triple product of a SIC in one pass."""
    p = np.asarray(s.projectors)
    values = np.einsum("iab,jbc,kca->ijk", p, p, p).real
    return TripleProductTable(dim=s.dim, values=values)


def collinear_in_grid(j: int, k: int, l: int) -> bool:
    """Whether three distinct grid indices 0-8 lie on a line of S(9)."""
    triple = (j, k, l)
    if len(set(triple)) != 3:
        raise ValueError(f"indices must be distinct, got {triple}")
    for idx in triple:
        if not 0 <= idx <= 8:
            raise ValueError(f"grid index {idx} out of range 0-8")
    return steiner_s9().contains(triple)


def quadratic_purity_check(p, tol: float = DEFAULT_TOL) -> PurityCheck:
    """Quadratic purity condition ``sum p**2 = 2/(d(d+1))``."""
    vec = _as_prob_vector(p)
    d = math.isqrt(vec.shape[0])
    value = float(np.dot(vec, vec))
    target = 2.0 / (d * (d + 1.0))
    return PurityCheck(passed=abs(value - target) <= tol, value=value, target=target, tol=tol)


def qbic_check_general(p, table: TripleProductTable, tol: float = DEFAULT_TOL) -> PurityCheck:
    """Cubic purity condition via the full triple-product sum.

    Contracts all ``d**6`` index combinations (729 terms for qutrits;
    clarity over cleverness) against the target ``(d+7)/(d+1)**3``.
    """
    vec = _as_prob_vector(p)
    n = table.dim * table.dim
    if vec.shape[0] != n:
        raise ValueError(f"probability vector has length {vec.shape[0]}, table expects {n}")
    value = float(np.einsum("ijk,i,j,k->", table.values, vec, vec, vec))
    target = (table.dim + 7.0) / (table.dim + 1.0) ** 3
    return PurityCheck(passed=abs(value - target) <= tol, value=value, target=target, tol=tol)


def qbic_check_hesse(p, tol: float = DEFAULT_TOL) -> PurityCheck:
    """Cubic purity condition in its Hesse grid form.

    ``sum_i p(i)**3 - 3 * sum_{lines} p(i) p(j) p(k)`` must vanish for
    pure states (qutrit only).
    """
    vec = _as_prob_vector(p)
    if vec.shape[0] != 9:
        raise ValueError(f"the grid form applies to qutrits (9 outcomes), got {vec.shape[0]}")
    line_sum = sum(vec[i] * vec[j] * vec[k] for i, j, k in steiner_s9().triples)
    value = float(np.sum(vec**3) - 3.0 * line_sum)
    return PurityCheck(passed=abs(value) <= tol, value=value, target=0.0, tol=tol)


@dataclass(frozen=True)
class DistributionIndices:
    """Spread summaries of a SIC probability vector.

    ``effective_number`` is the inverse participation ratio
    ``1 / sum p**2``; the entropy is in nats; ``zero_count`` counts
    entries below the zero tolerance.  ``zero_bound`` is the
    Cauchy-Schwarz cap ``d**2 - effective_number`` on the number of
    zeros, with ``zero_bound_satisfied`` flagging compliance.
    """

    effective_number: float
    shannon_entropy_nats: float
    zero_count: int
    zero_bound: float
    zero_bound_satisfied: bool


def distribution_indices(p, zero_tol: float = 1e-9) -> DistributionIndices:
    """Effective number, Shannon entropy (nats), and zero count of ``p``."""
    vec = _as_prob_vector(p)
    d_sq = vec.shape[0]
    effective = 1.0 / float(np.dot(vec, vec))
    positive = vec[vec > 0]
    entropy = float(-np.sum(positive * np.log(positive)))
    zeros = int(np.count_nonzero(vec < zero_tol))
    bound = d_sq - effective
    return DistributionIndices(
        effective_number=effective,
        shannon_entropy_nats=entropy,
        zero_count=zeros,
        zero_bound=bound,
        zero_bound_satisfied=zeros <= bound + 1e-9,
    )


def enumerate_min_entropy_pure_states(tol: float = DEFAULT_TOL) -> list[tuple[tuple[int, int, int], np.ndarray]]:
    """Pure states of minimal Shannon entropy among three-zero vectors.

    Scans all C(9,3) = 84 vectors with three zeros and 1/6 elsewhere,
    keeping those passing both purity checks.  Exactly the 12 Steiner
    lines survive; the survivors are returned with their zero triples in
    lexicographic order.
    """
    survivors = []
    for triple in combinations(range(9), 3):
        p = np.full(9, 1.0 / 6.0)
        p[list(triple)] = 0.0
        if quadratic_purity_check(p, tol=tol).passed and qbic_check_hesse(p, tol=tol).passed:
            survivors.append((triple, p))
    return survivors


def random_fixed_purity_vector(
    rng: np.random.Generator,
    d: int = 3,
    sum_sq: float | None = None,
    max_tries: int = 1000,
) -> np.ndarray:
    """Sample a probability vector with a prescribed ``sum(p**2)``.

    Draws a uniform simplex point and rescales it radially about the
    uniform distribution; the scale factor solving
    ``sum p**2 = sum_sq`` exists in closed form because the cross term
    vanishes.  Draws pushed outside the nonnegative orthant are
    rejected and retried.  Default target is the purity shell
    ``2/(d(d+1))``.
    """
    n = d * d
    target = 2.0 / (d * (d + 1.0)) if sum_sq is None else float(sum_sq)
    if target < 1.0 / n:
        raise ValueError(f"sum of squares below the simplex minimum 1/{n}")
    centroid = 1.0 / n
    for _ in range(max_tries):
        p = rng.dirichlet(np.ones(n))
        deviation = p - centroid
        spread = float(np.dot(deviation, deviation))
        if spread == 0.0:
            continue
        scale = math.sqrt((target - centroid) / spread)
        q = centroid + scale * deviation
        if q.min() >= 0.0:
            return q
    raise RuntimeError(f"no nonnegative sample after {max_tries} tries (target {target})")


def _as_prob_vector(p) -> np.ndarray:
    vec = np.asarray(p, dtype=float).reshape(-1)
    if abs(vec.sum() - 1.0) > 1e-8:
        raise ValueError(f"probability vector must sum to 1, got {vec.sum()!r}")
    return vec
