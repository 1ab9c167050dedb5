"""Twisted group cohomology H^0, Z^1, B^1, H^1 of finitely presented groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .groups import (
    GroupPresentation,
    PeripheralSystem,
    Representation,
    Word,
    evaluate_word,
    fox_blocks,
    fox_matrix,
    require_valid,
)
from .linalg import (
    DEFAULT_TOL,
    GAP_WARNING,
    RankDecision,
    ToleranceProfile,
    kernel_with_decision,
    rank_decision,
)


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Values d(x_j) on the generators, one vector per generator."""

    vectors: tuple[np.ndarray, ...]

    @classmethod
    def from_flat(cls, flat: np.ndarray, dim: int) -> "Cocycle":
        return cls(tuple(flat[j * dim:(j + 1) * dim] for j in range(len(flat) // dim)))

    def flat(self) -> np.ndarray:
        return np.concatenate(self.vectors)


@dataclass
class PeripheralCohomology:
    kind: str
    genus: int
    dim_h0: int
    dim_z1: int
    dim_b1: int
    dim_h1: int
    restriction_rank: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class CohomologyReport:
    dim_v: int
    dim_h0: int
    dim_z1: int
    dim_b1: int
    dim_h1: int
    peripherals: list[PeripheralCohomology] = field(default_factory=list)
    rank_decisions: dict[str, RankDecision] = field(default_factory=dict)
    tolerances: ToleranceProfile = DEFAULT_TOL
    # Rank of H^1(M) -> direct sum of peripheral H^1.
    restriction_rank_total: int = 0

    @property
    def restriction_ranks(self) -> list[int]:
        return [p.restriction_rank for p in self.peripherals]

    @property
    def peripheral_h1_total(self) -> int:
        return sum(p.dim_h1 for p in self.peripherals)

    @property
    def injective(self) -> bool:
        return self.restriction_rank_total == self.dim_h1

    def warnings(self) -> list[str]:
        return [
            f"rank cut '{name}' has spectral gap {d.gap:.3g} < {GAP_WARNING:g}"
            for name, d in self.rank_decisions.items()
            if d.gap < GAP_WARNING
        ]

    def to_dict(self) -> dict:
        return {
            "dim_v": self.dim_v,
            "dim_h0": self.dim_h0,
            "dim_z1": self.dim_z1,
            "dim_b1": self.dim_b1,
            "dim_h1": self.dim_h1,
            "peripherals": [p.to_dict() for p in self.peripherals],
            "restriction_rank": self.restriction_rank_total,
            "injective": self.injective,
            "rank_decisions": {k: v.to_dict() for k, v in self.rank_decisions.items()},
            "tolerances": dict(self.tolerances.__dict__),
            "warnings": self.warnings(),
        }


def _coboundary_operator(mats: Sequence[np.ndarray]) -> np.ndarray:
    """m -> (rho(x_j) m - m)_j stacked; its kernel is H^0 and its image is B^1."""
    dim = mats[0].shape[0]
    eye = np.eye(dim)
    return np.vstack([m - eye for m in mats])


def _h0_source(obj, rep: Representation) -> list[np.ndarray]:
    if isinstance(obj, PeripheralSystem):
        return [evaluate_word(rep, w) for w in obj.words]
    return list(rep.images)


def h0_invariants(obj, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the vectors fixed by a group or peripheral subgroup."""
    if isinstance(obj, GroupPresentation):
        require_valid(obj, rep, tol)
    return kernel_with_decision(_coboundary_operator(_h0_source(obj, rep)), tol)[0]


def z1_basis(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL) -> list[Cocycle]:
    return [Cocycle.from_flat(col, rep.dimension) for col in _z1_matrix(pres, rep, tol)[0].T]


def _z1_matrix(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile):
    if pres.relators:
        return kernel_with_decision(fox_matrix(pres, rep, tol), tol)
    require_valid(pres, rep, tol)
    cols = rep.dimension * pres.generator_count
    return np.eye(cols, dtype=complex), RankDecision(0, cols, 0.0, None, None)


def b1_dimension(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    """dim V - dim H^0, computed as the rank of the coboundary map."""
    require_valid(pres, rep, tol)
    return rank_decision(_coboundary_operator(rep.images), tol).rank


def b1_dimension_by_invariants(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL) -> int:
    return rep.dimension - h0_invariants(pres, rep, tol).shape[1]


def cocycle_on_word(c: Cocycle, w: Word, rep: Representation) -> np.ndarray:
    """d(w) from the cocycle relation d(xy) = d(x) + rho(x) d(y)."""
    out = np.zeros(rep.dimension, dtype=complex)
    prefix = np.eye(rep.dimension, dtype=complex)
    for g, e in w:
        if e == 1:
            out = out + prefix @ c.vectors[g]
            prefix = prefix @ rep.images[g]
        else:
            prefix = prefix @ rep.inverse_image(g)
            out = out - prefix @ c.vectors[g]
    return out


def restrict_cocycle(c: Cocycle, words: Sequence[Word], rep: Representation) -> Cocycle:
    return Cocycle(tuple(cocycle_on_word(c, w, rep) for w in words))


def _restricted(rep: Representation, p: PeripheralSystem) -> Representation:
    return rep.restrict(p.words, f"{rep.source} on {p.kind} peripheral")


def _cohomology_dims(pres, rep, tol, tag, decisions):
    z1, dz = _z1_matrix(pres, rep, tol)
    db = rank_decision(_coboundary_operator(rep.images), tol)
    decisions[f"{tag}z1"] = dz
    decisions[f"{tag}b1"] = db
    return z1, z1.shape[1], db.rank


def _peripheral_rows(words: Sequence[Word], rep: Representation) -> np.ndarray:
    """Rows expressing z -> (z(w))_w through Fox derivatives of the peripheral words."""
    return np.vstack([np.hstack(fox_blocks(w, rep)) for w in words])


def _restriction_rank(pres, rep, parts, dim_z1: int, tol, name, decisions) -> int:
    """Rank of Z^1(M) -> sum of H^1(P) over the given peripheral parts.

    Each part is (peripheral, restricted rep, dim H^0(P)).  The kernel of
    the map is {z in Z^1 : z|P = delta v_P for some v_P}; it is read off as
    the null space of one block system in the unknowns (z, v_1, ..., v_k),

        [ Fox(relators)           0    ...    0   ]
        [ Fox(words of P_1)   -delta_1 ...    0   ]
        [        ...                   ...        ]

    whose nullity overcounts the kernel by sum of dim H^0(P_i).  Building the
    system directly from Fox blocks avoids pushing a numerically computed
    cocycle basis through long word products.
    """
    dim = rep.dimension
    vcols = dim * len(parts)
    blocks = []
    if pres.relators:
        fox = fox_matrix(pres, rep, tol)
        blocks.append(np.hstack([fox, np.zeros((fox.shape[0], vcols), dtype=complex)]))
    for i, (p, prep, _) in enumerate(parts):
        rows = _peripheral_rows(p.words, rep)
        v = np.zeros((rows.shape[0], vcols), dtype=complex)
        v[:, i * dim:(i + 1) * dim] = -_coboundary_operator(prep.images)
        blocks.append(np.hstack([rows, v]))
    d = rank_decision(np.vstack(blocks), tol)
    decisions[name] = d
    return dim_z1 - (d.nullity - sum(h0 for _, _, h0 in parts))


def h1_report(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL) -> CohomologyReport:
    """Cohomology dimensions of pres with coefficients in rep, plus peripheral restriction data."""
    require_valid(pres, rep, tol)
    dim = rep.dimension
    decisions: dict[str, RankDecision] = {}
    _, dim_z1, dim_b1 = _cohomology_dims(pres, rep, tol, "", decisions)
    report = CohomologyReport(dim, dim - dim_b1, dim_z1, dim_b1, dim_z1 - dim_b1, tolerances=tol)
    report.rank_decisions = decisions
    if not pres.peripherals:
        return report

    parts = []
    for i, p in enumerate(pres.peripherals):
        prep = _restricted(rep, p)
        _, pz1, pb1 = _cohomology_dims(p.subgroup_presentation(), prep, tol, f"peripheral{i}_", decisions)
        part = (p, prep, dim - pb1)
        rank = _restriction_rank(pres, rep, [part], dim_z1, tol, f"peripheral{i}_restriction", decisions)
        report.peripherals.append(PeripheralCohomology(p.kind, p.genus, dim - pb1, pz1, pb1, pz1 - pb1, rank))
        parts.append(part)
    report.restriction_rank_total = _restriction_rank(pres, rep, parts, dim_z1, tol, "restriction_total", decisions)
    return report


def injectivity_check(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL):
    """(rank of H^1(M) -> sum of peripheral H^1, whether that map is injective)."""
    report = h1_report(pres, rep, tol)
    return report.restriction_rank_total, report.injective
