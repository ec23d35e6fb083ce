"""The order-9 Steiner triple system and the mutually unbiased bases it
generates from the Hesse SIC.

Writing the nine SIC indices row by row on a 3x3 grid, the horizontal,
vertical, and (cyclic) diagonal lines form the 12 triples of S(9),
grouped into four striations of three parallel lines.  The probability
vector that is zero on one triple and uniformly 1/6 elsewhere is the
SIC representation of a pure state orthogonal to those three SIC
states; each striation's three states form an orthonormal basis, and
the four bases are mutually unbiased (all cross-basis Hilbert-Schmidt
overlaps equal 1/3).

Striations are numbered 1..4 in the fixed order rows, columns,
diagonals, anti-diagonals.  A MUB state is identified by its zero
triple (states are carried as projectors and probability vectors, never
as phase-dependent kets).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .compat import StateSet, pp_functional
from .qmath import DEFAULT_TOL, basis_ket, frozen_array, projector
from .sicgen import SicSet, reconstruct_from_probabilities

Triple = tuple[int, int, int]

_STRIATIONS: tuple[tuple[Triple, ...], ...] = (
    ((0, 1, 2), (3, 4, 5), (6, 7, 8)),
    ((0, 3, 6), (1, 4, 7), (2, 5, 8)),
    ((0, 4, 8), (1, 5, 6), (2, 3, 7)),
    ((0, 5, 7), (1, 3, 8), (2, 4, 6)),
)


@dataclass(frozen=True)
class SteinerSystem:
    """The 12 triples of S(9), grouped into 4 striations of 3 lines.

    Each index 0-8 lies on exactly four lines (one per striation) and
    each unordered pair of indices lies on exactly one line.
    """

    striations: tuple[tuple[Triple, ...], ...]

    @property
    def triples(self) -> tuple[Triple, ...]:
        return tuple(t for striation in self.striations for t in striation)

    def contains(self, triple) -> bool:
        return tuple(sorted(triple)) in set(self.triples)

    def lines_through(self, index: int) -> tuple[Triple, ...]:
        """The four lines containing a grid point, in striation order."""
        if not 0 <= index <= 8:
            raise ValueError(f"grid index {index} out of range 0-8")
        return tuple(t for striation in self.striations for t in striation if index in t)

    def striation_of(self, triple) -> int:
        """1-based striation number of a line."""
        key = tuple(sorted(triple))
        for number, striation in enumerate(self.striations, start=1):
            if key in striation:
                return number
        raise ValueError(f"{triple} is not a line of S(9)")


def steiner_s9() -> SteinerSystem:
    """The Steiner triple system on the 3x3 grid, striations ordered
    rows, columns, diagonals, anti-diagonals."""
    return SteinerSystem(striations=_STRIATIONS)


def mub_from_triple(triple, s: SicSet, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """MUB state for a Steiner line: probability vector and projector.

    The vector is zero on the line's three indices and 1/6 elsewhere;
    its reconstruction must come out a rank-1 projector within ``tol``
    (it does exactly for the lines of S(9), and for no other triples,
    which is why non-line triples are rejected up front).
    """
    key = tuple(sorted(int(i) for i in triple))
    system = steiner_s9()
    if len(set(key)) != 3:
        raise ValueError(f"triple must consist of three distinct indices, got {triple}")
    if not system.contains(key):
        raise ValueError(f"{key} is not a line of S(9); the uniform-1/6 vector would not be a state")
    if s.dim != 3:
        raise ValueError("MUB construction is defined for the qutrit SIC")
    p = np.full(9, 1.0 / 6.0)
    p[list(key)] = 0.0
    rho = reconstruct_from_probabilities(p, s)
    projector_residual = float(np.max(np.abs(rho @ rho - rho)))
    if projector_residual > tol:
        raise ValueError(f"reconstruction of {key} is not a rank-1 projector: residual {projector_residual:.3e}")
    return p, rho


@dataclass(frozen=True, eq=False)
class MubSet:
    """Four mutually unbiased qutrit bases keyed by striation.

    ``projectors[s, k]`` and ``prob_vectors[s, k]`` describe the k-th
    state of striation ``s+1``; ``striations[s][k]`` is its zero triple.
    """

    striations: tuple[tuple[Triple, ...], ...]
    projectors: np.ndarray
    prob_vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "projectors", frozen_array(self.projectors))
        object.__setattr__(self, "prob_vectors", frozen_array(self.prob_vectors, dtype=float))

    def basis(self, striation: int) -> np.ndarray:
        """Projectors of one basis, by 1-based striation number."""
        if not 1 <= striation <= len(self.striations):
            raise ValueError(f"striation {striation} out of range 1-{len(self.striations)}")
        return self.projectors[striation - 1]

    def state(self, triple) -> tuple[np.ndarray, np.ndarray]:
        """(probability vector, projector) of the state with this zero triple."""
        key = tuple(sorted(int(i) for i in triple))
        for si, striation in enumerate(self.striations):
            for ki, t in enumerate(striation):
                if t == key:
                    return self.prob_vectors[si, ki], self.projectors[si, ki]
        raise KeyError(f"{triple} is not a line of S(9)")


@dataclass(frozen=True)
class MubReport:
    """Residuals from verifying a MubSet."""

    passed: bool
    tol: float
    max_within_basis_residual: float
    max_completeness_residual: float
    max_cross_basis_residual: float

    def residuals(self) -> dict[str, float]:
        return {
            "max_within_basis_residual": self.max_within_basis_residual,
            "max_completeness_residual": self.max_completeness_residual,
            "max_cross_basis_residual": self.max_cross_basis_residual,
        }


def verify_mub_set(m: MubSet, tol: float = DEFAULT_TOL) -> MubReport:
    """Check orthonormality within each basis, completeness of each
    basis, and cross-basis overlap 1/3 for all 54 cross pairs."""
    p = np.asarray(m.projectors)
    n_striations, n_states = p.shape[0], p.shape[1]
    gram = np.einsum("siab,tjba->sitj", p, p).real
    within = 0.0
    completeness = 0.0
    cross = 0.0
    eye = np.eye(p.shape[2])
    for s in range(n_striations):
        within = max(within, float(np.max(np.abs(gram[s, :, s, :] - np.eye(n_states)))))
        completeness = max(completeness, float(np.max(np.abs(p[s].sum(axis=0) - eye))))
        for t in range(n_striations):
            if s != t:
                cross = max(cross, float(np.max(np.abs(gram[s, :, t, :] - 1.0 / 3.0))))
    passed = within <= tol and completeness <= tol and cross <= tol
    return MubReport(
        passed=passed,
        tol=tol,
        max_within_basis_residual=within,
        max_completeness_residual=completeness,
        max_cross_basis_residual=cross,
    )


def build_mub_set(s: SicSet, tol: float = DEFAULT_TOL) -> MubSet:
    """Build all 12 MUB states from the Hesse SIC and validate them.

    Raises ``ValueError`` with residuals if any validation fails,
    including the identification of striation 2 (columns) with the
    computational basis.
    """
    system = steiner_s9()
    prob_vectors = np.empty((4, 3, 9))
    projectors = np.empty((4, 3, 3, 3), dtype=complex)
    for si, striation in enumerate(system.striations):
        for ki, triple in enumerate(striation):
            prob_vectors[si, ki], projectors[si, ki] = mub_from_triple(triple, s, tol=tol)
    mubs = MubSet(striations=system.striations, projectors=projectors, prob_vectors=prob_vectors)
    report = verify_mub_set(mubs, tol=tol)
    if not report.passed:
        raise ValueError(f"MUB validation failed: {report.residuals()}")
    computational = np.array([projector(basis_ket(3, j)) for j in range(3)])
    comp_residual = float(np.max(np.abs(mubs.projectors[1] - computational)))
    if comp_residual > tol:
        raise ValueError(f"striation 2 does not match the computational basis: residual {comp_residual:.3e}")
    return mubs


def covering_witness(triple, m: MubSet, s: SicSet, tol: float = 1e-10) -> list[int]:
    """Striations whose basis certifies PP incompatibility of a SIC triple.

    Returns every 1-based striation number for which the PP functional
    of the three SIC states, measured in that striation's basis,
    vanishes within ``tol`` (ascending order; nonempty for all 84
    triples of distinct indices).
    """
    key = tuple(int(i) for i in triple)
    if len(set(key)) != 3 or not all(0 <= i <= 8 for i in key):
        raise ValueError(f"need three distinct SIC indices in 0-8, got {triple}")
    states = StateSet(dim=s.dim, rhos=np.asarray(s.projectors)[list(key)])
    witnesses = []
    for number in range(1, len(m.striations) + 1):
        if pp_functional(states, m.basis(number)) <= tol:
            witnesses.append(number)
    return witnesses


def covering_table(m: MubSet, s: SicSet, tol: float = 1e-10) -> list[tuple[Triple, list[int]]]:
    """Witnessing striations for all C(9,3) = 84 SIC triples."""
    return [(t, covering_witness(t, m, s, tol=tol)) for t in combinations(range(9), 3)]
