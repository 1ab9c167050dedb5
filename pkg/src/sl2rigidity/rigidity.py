"""Predicted cohomology dimensions versus computed ones."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .cohomology import h1_report
from .groups import GroupPresentation, PeripheralSystem, Representation
from .linalg import DEFAULT_TOL, InputError, ToleranceProfile
from .representations import (
    adjoint_matrix,
    enumerate_lifts,
    is_positive_lift,
    peripheral_traces,
    principal_decomposition,
    sl2_inverse,
    sym_power_matrix,
)

TRACE_TOL = 1e-6


@dataclass(frozen=True)
class ManifoldTopology:
    cusps: int
    positive_cusps: int
    genera: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.positive_cusps <= self.cusps:
            raise InputError("need 0 <= positive cusps <= cusps")
        if any(g < 2 for g in self.genera):
            raise InputError("higher-genus ends need g >= 2")


def topology_of(pres: GroupPresentation, lift: Representation) -> ManifoldTopology:
    """Cusp count, positive-cusp count for this lift, and end genera."""
    tori = [p for p in pres.peripherals if p.kind == "torus"]
    positive = sum(is_positive_lift(lift, p) for p in tori)
    return ManifoldTopology(len(tori), positive, tuple(p.genus for p in pres.peripherals if p.kind == "genus"))


def _check_n(n: int) -> None:
    if n < 2:
        raise InputError(f"dimension formulas are stated for n >= 2, got {n}")


def predict_h1_en(top: ManifoldTopology, n: int) -> int:
    _check_n(n)
    return sum(n * (g - 1) for g in top.genera) + (top.positive_cusps if n % 2 == 0 else top.cusps)


def predict_h1_adjoint_direct(top: ManifoldTopology, n: int) -> int:
    _check_n(n)
    return top.cusps * (n - 1) + sum((g - 1) * (n * n - 1) for g in top.genera)


def predict_h1_adjoint_by_summands(top: ManifoldTopology, n: int, summands: Sequence[int] | None = None) -> int:
    _check_n(n)
    summands = principal_decomposition(n) if summands is None else summands
    return sum(predict_h1_en(top, m) for m in summands)


def predict_h1_adjoint(top: ManifoldTopology, n: int) -> int:
    direct = predict_h1_adjoint_direct(top, n)
    by_summands = predict_h1_adjoint_by_summands(top, n)
    if direct != by_summands:
        raise AssertionError(f"adjoint predictions disagree: {direct} vs {by_summands} for {top}, n={n}")
    return direct


# Boundary-group formulas for a torus or a closed surface group by itself.

def predict_boundary_h1_en(p: PeripheralSystem, positive: bool, n: int) -> int:
    if p.kind == "torus":
        return 2 if (n % 2 == 1 or positive) else 0
    return (2 * p.genus - 2) * n


def predict_boundary_adjoint(p: PeripheralSystem, n: int) -> dict[str, int]:
    dim = n * n - 1
    if p.kind == "torus":
        return {"z1": n * n + n - 2, "b1": n * n - n, "h1": 2 * (n - 1)}
    h1 = (2 * p.genus - 2) * dim
    return {"z1": h1 + dim, "b1": dim, "h1": h1}


@dataclass
class VerificationRecord:
    manifold: str
    lift: int
    coefficients: str
    check: str
    predicted: float
    computed: float
    tolerance: float = 0.0
    passed: bool = field(init=False)
    note: str = ""

    def __post_init__(self):
        self.passed = abs(self.predicted - self.computed) <= self.tolerance

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationRecord":
        d = dict(d)
        d.pop("passed", None)
        return cls(**d)


def sym_rep(lift: Representation, n: int) -> Representation:
    return lift.map(lambda g: sym_power_matrix(n, g), f"sym{n}({lift.source})")


def adjoint_rep(lift: Representation, n: int) -> Representation:
    def f(g):
        return adjoint_matrix(n, sym_power_matrix(n, g), sym_power_matrix(n, sl2_inverse(g)))

    return lift.map(f, f"adj{n}({lift.source})")


def _manifold_records(name, j, pres, lift, n, tol, warnings) -> list[VerificationRecord]:
    top = topology_of(pres, lift)
    rec = []

    en = h1_report(pres, sym_rep(lift, n), tol)
    ad = h1_report(pres, adjoint_rep(lift, n), tol)
    warnings += [f"{name} lift {j} E_{n}: {w}" for w in en.warnings()]
    warnings += [f"{name} lift {j} Ad_{n}: {w}" for w in ad.warnings()]
    E, A = f"E_rho_{n}", f"Ad_rho_{n}"

    rec.append(VerificationRecord(name, j, E, "h1", predict_h1_en(top, n), en.dim_h1))
    direct = predict_h1_adjoint_direct(top, n)
    summed = predict_h1_adjoint_by_summands(top, n)
    rec.append(VerificationRecord(name, j, A, "h1_prediction_paths_agree", direct, summed))
    rec.append(VerificationRecord(name, j, A, "h1", direct, ad.dim_h1))
    if pres.peripherals:
        rec.append(VerificationRecord(name, j, E, "half_dimension", en.peripheral_h1_total, 2 * en.dim_h1))
        rec.append(VerificationRecord(name, j, E, "restriction_injective", en.dim_h1, en.restriction_rank_total))
        rec.append(VerificationRecord(name, j, A, "half_dimension", ad.peripheral_h1_total, 2 * ad.dim_h1))
        rec.append(VerificationRecord(name, j, A, "restriction_injective", ad.dim_h1, ad.restriction_rank_total))
    for i, (p, pc) in enumerate(zip(pres.peripherals, ad.peripherals)):
        if p.kind != "torus":
            continue
        pred = predict_boundary_adjoint(p, n)
        rec.append(VerificationRecord(name, j, A, f"cusp{i}_z1", pred["z1"], pc.dim_z1))
        rec.append(VerificationRecord(name, j, A, f"cusp{i}_b1", pred["b1"], pc.dim_b1))
    return rec


def _boundary_records(name, j, pres, lift, n, tol, warnings) -> list[VerificationRecord]:
    """Checks for an entry whose whole group is a torus or closed surface group."""
    (p,) = pres.peripherals
    positive = is_positive_lift(lift, p) if p.kind == "torus" else False
    sub = p.subgroup_presentation()
    base = lift.restrict(p.words, lift.source)
    en = h1_report(sub, sym_rep(base, n), tol)
    ad = h1_report(sub, adjoint_rep(base, n), tol)
    warnings += [f"{name} lift {j} E_{n}: {w}" for w in en.warnings() + ad.warnings()]
    E, A = f"E_rho_{n}", f"Ad_rho_{n}"
    pred = predict_boundary_adjoint(p, n)
    return [
        VerificationRecord(name, j, E, "boundary_h1", predict_boundary_h1_en(p, positive, n), en.dim_h1),
        VerificationRecord(name, j, A, "boundary_z1", pred["z1"], ad.dim_z1),
        VerificationRecord(name, j, A, "boundary_b1", pred["b1"], ad.dim_b1),
        VerificationRecord(name, j, A, "boundary_h1", pred["h1"], ad.dim_h1),
    ]


def _trace_records(name, j, pres, lift) -> list[VerificationRecord]:
    out = []
    for i, p in enumerate(pres.peripherals):
        if p.kind != "torus":
            continue
        traces = peripheral_traces(lift, p)
        for k, (w, flag, t) in enumerate(zip(p.words, p.null_homologous, traces)):
            if not flag or not len(w):
                continue
            label = p.labels[k] if k < len(p.labels) else str(w)
            out.append(VerificationRecord(
                name, j, "SL2", f"cusp{i}_{label}_trace", -2.0, float(t.real), TRACE_TOL,
                note=f"|imag| = {abs(t.imag):.2e}",
            ))
            out.append(VerificationRecord(name, j, "SL2", f"cusp{i}_{label}_trace_imag", 0.0, abs(t.imag), TRACE_TOL))
    return out


@dataclass
class VerificationRun:
    records: list[VerificationRecord]
    warnings: list[str]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def verify_manifold(
    pres: GroupPresentation,
    base_lift: Representation,
    n_range: Iterable[int],
    tol: ToleranceProfile = DEFAULT_TOL,
    kind: str = "manifold",
) -> VerificationRun:
    """Every check for every lift and every n, sorted by lift then n."""
    ns = sorted(set(n_range))
    if not ns:
        return VerificationRun([], [])
    if ns[0] < 2:
        raise InputError("n must be >= 2")
    name = pres.name or "group"
    records: list[VerificationRecord] = []
    warnings: list[str] = []
    for j, (_, lift) in enumerate(enumerate_lifts(pres, base_lift, tol)):
        records += _trace_records(name, j, pres, lift)
        for n in ns:
            if kind == "boundary":
                records += _boundary_records(name, j, pres, lift, n, tol, warnings)
            else:
                records += _manifold_records(name, j, pres, lift, n, tol, warnings)
    return VerificationRun(records, warnings)
