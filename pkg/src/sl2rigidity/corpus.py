"""Presentation files, the bundled corpus, and report documents.

A presentation file is YAML; see ``data/fig8.yaml`` for a fully commented
example.  Loading always validates: a file is accepted only if its holonomy
satisfies every relator, its torus peripherals are parabolic and commute,
and its null-homology flags agree with the mod-2 relator exponents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .groups import GroupPresentation, PeripheralSystem, Representation, parse_word, validate_representation
from .linalg import DEFAULT_TOL, ContractError, InputError, ToleranceProfile
from .representations import is_positive_lift
from .rigidity import VerificationRecord

BUNDLED = ("fig8", "free2", "torus", "genus2")


class ParseError(InputError):
    pass


class ValidationError(InputError):
    pass


@dataclass
class CorpusEntry:
    presentation: GroupPresentation
    holonomy: Representation
    kind: str = "manifold"  # or "boundary": the whole group is a torus or surface group
    geometry: str = "validated"
    provenance: str = ""
    path: str = ""
    # Largest n for which the holonomy's symmetric powers are numerically
    # well conditioned; None means no known limit.
    reliable_n_max: int | None = None


def resolve(path_or_name: str | Path) -> Path:
    p = Path(path_or_name)
    if p.exists():
        return p
    if str(path_or_name) in BUNDLED:
        return Path(str(resources.files("sl2rigidity") / "data" / f"{path_or_name}.yaml"))
    raise InputError(f"no such presentation file or bundled entry: {path_or_name}")


def _field(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"{where}: missing field '{key}'")
    return d[key]


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    return float(x)


def _matrix(raw, where: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != 4:
        raise ParseError(f"{where}: expected four [re, im] entries in row-major order")
    vals = []
    for k, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"{where}[{k}]: expected [re, im]")
        vals.append(complex(_number(pair[0], f"{where}[{k}][0]"), _number(pair[1], f"{where}[{k}][1]")))
    return np.array(vals).reshape(2, 2)


def _word(text, gens: int, where: str):
    if text is None:
        text = ""
    if not isinstance(text, str):
        raise ParseError(f"{where}: expected a word string, got {text!r}")
    try:
        return parse_word(text, gens)
    except InputError as e:
        raise ParseError(f"{where}: {e}") from None


def parse_document(doc: dict, source: str = "<document>") -> CorpusEntry:
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be a mapping")
    name = str(_field(doc, "name", source))
    gens = _field(doc, "generators", source)
    if isinstance(gens, bool) or not isinstance(gens, int) or gens < 1:
        raise ParseError(f"{source}: 'generators' must be a positive integer")
    relators = tuple(
        _word(r, gens, f"{source}: relators[{i}]") for i, r in enumerate(doc.get("relators") or [])
    )
    peripherals = []
    for i, p in enumerate(doc.get("peripherals") or []):
        where = f"{source}: peripherals[{i}]"
        kind = _field(p, "kind", where)
        words = tuple(_word(w, gens, f"{where}.words[{k}]") for k, w in enumerate(_field(p, "words", where)))
        flags = tuple(bool(f) for f in _field(p, "null_homologous", where))
        try:
            peripherals.append(PeripheralSystem(
                kind, words, flags, int(p.get("genus", 1)), tuple(p.get("labels") or ()),
            ))
        except InputError as e:
            raise ParseError(f"{where}: {e}") from None
    hol = _field(doc, "holonomy", source)
    letters = [chr(ord("a") + i) for i in range(gens)]
    if not isinstance(hol, dict) or set(hol) != set(letters):
        raise ParseError(f"{source}: holonomy needs exactly the generators {letters}")
    images = tuple(_matrix(hol[g], f"{source}: holonomy.{g}") for g in letters)
    try:
        pres = GroupPresentation(gens, relators, tuple(peripherals), name).cyclically_reduced()
        rep = Representation(images, f"{name} holonomy")
    except InputError as e:
        raise ParseError(f"{source}: {e}") from None
    kind = doc.get("kind", "manifold")
    if kind not in ("manifold", "boundary"):
        raise ParseError(f"{source}: kind must be 'manifold' or 'boundary'")
    if kind == "boundary" and len(pres.peripherals) != 1:
        raise ParseError(f"{source}: a boundary entry needs exactly one peripheral system")
    limit = doc.get("reliable_n_max")
    if limit is not None and (isinstance(limit, bool) or not isinstance(limit, int) or limit < 2):
        raise ParseError(f"{source}: 'reliable_n_max' must be an integer >= 2")
    return CorpusEntry(
        pres, rep, kind, str(doc.get("geometry", "validated")), str(doc.get("provenance", "")), source, limit,
    )


def check_entry(entry: CorpusEntry, tol: ToleranceProfile = DEFAULT_TOL) -> None:
    """Raise ValidationError unless the entry is a genuine SL(2,C) representation with consistent flags."""
    pres, rep = entry.presentation, entry.holonomy
    src = entry.path or pres.name
    for i, g in enumerate(rep.images):
        det = np.linalg.det(g)
        if abs(det - 1) > tol.relator_tol:
            raise ValidationError(f"{src}: holonomy of generator {chr(97 + i)} has det {det:.6g}")
    report = validate_representation(pres, rep, tol)
    if not report.passed:
        detail = "; ".join(
            f"{label} (deviation {d:.3e})" for label, d in _labelled_failures(pres, report)
        )
        raise ValidationError(f"{src}: holonomy fails validation: {detail}")
    for i, p in enumerate(pres.peripherals):
        for k, (w, flag) in enumerate(zip(p.words, p.null_homologous)):
            actual = pres.is_null_homologous_mod2(w)
            if actual != flag:
                raise ValidationError(
                    f"{src}: peripherals[{i}].null_homologous[{k}] is {flag} but word {w} "
                    f"is {'' if actual else 'not '}zero in H_1(;Z/2)"
                )
        if p.kind == "torus":
            try:
                is_positive_lift(rep, p)
            except ContractError as e:
                raise ValidationError(f"{src}: peripherals[{i}]: {e}") from None


def _labelled_failures(pres, report):
    out = []
    for i, (d, s) in enumerate(zip(report.relator_deviations, report.relator_scales)):
        if d > report.tolerance * s:
            out.append((f"relator {i} '{pres.relators[i]}'", d))
    for i, (d, s) in enumerate(zip(report.commutator_deviations, report.commutator_scales)):
        if d > report.tolerance * s:
            out.append((f"torus peripheral {i} commutator", d))
    return out


def load_entry(path_or_name, tol: ToleranceProfile = DEFAULT_TOL) -> CorpusEntry:
    path = resolve(path_or_name)
    try:
        doc = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f"{path}:{mark.line + 1}:{mark.column + 1}" if mark else str(path)
        raise ParseError(f"{where}: {getattr(e, 'problem', e)}") from None
    entry = parse_document(doc, str(path))
    check_entry(entry, tol)
    return entry


def load(path_or_name, tol: ToleranceProfile = DEFAULT_TOL) -> tuple[GroupPresentation, Representation]:
    entry = load_entry(path_or_name, tol)
    return entry.presentation, entry.holonomy


def to_document(entry: CorpusEntry) -> dict:
    pres, rep = entry.presentation, entry.holonomy
    doc = {
        "name": pres.name,
        "kind": entry.kind,
        "geometry": entry.geometry,
        "provenance": entry.provenance,
        "generators": pres.generator_count,
        **({"reliable_n_max": entry.reliable_n_max} if entry.reliable_n_max is not None else {}),
        "relators": [w.to_text() for w in pres.relators],
        "peripherals": [],
        "holonomy": {},
    }
    for p in pres.peripherals:
        item = {"kind": p.kind}
        if p.kind == "genus":
            item["genus"] = p.genus
        item["words"] = [w.to_text() for w in p.words]
        if p.labels:
            item["labels"] = list(p.labels)
        item["null_homologous"] = list(p.null_homologous)
        doc["peripherals"].append(item)
    for i, g in enumerate(rep.images):
        doc["holonomy"][chr(97 + i)] = [[float(z.real), float(z.imag)] for z in g.reshape(-1)]
    return doc


def save(path, entry: CorpusEntry) -> None:
    Path(path).write_text(yaml.safe_dump(to_document(entry), sort_keys=False, default_flow_style=None))


# ---------------------------------------------------------------- reports

@dataclass
class ReportDocument:
    metadata: dict
    records: list[VerificationRecord]
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @classmethod
    def build(cls, entry: CorpusEntry, records, warnings, tol: ToleranceProfile, **extra) -> "ReportDocument":
        meta = {
            "version": __version__,
            "corpus_entry": entry.presentation.name,
            "source": entry.path,
            "geometry": entry.geometry,
            "tolerances": dict(tol.__dict__),
            **extra,
        }
        return cls(meta, list(records), list(warnings))

    def to_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "passed": self.passed,
            "records": [r.to_dict() for r in self.records],
            "warnings": self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        return cls(d["metadata"], [VerificationRecord.from_dict(r) for r in d["records"]], d.get("warnings", []))

    def to_table(self) -> str:
        tol = self.metadata.get("tolerances", {})
        lines = [
            f"# {self.metadata.get('corpus_entry')}  (geometry: {self.metadata.get('geometry')})",
            "# tolerances: " + ", ".join(f"{k}={v:g}" for k, v in tol.items()),
            "# integer checks compare exactly; float checks list their tolerance",
            f"{'lift':>4}  {'coefficients':<12} {'check':<30} {'predicted':>10} {'computed':>12}  {'tol':>7}  result",
        ]
        for r in self.records:
            integer = r.tolerance == 0
            pred = f"{int(r.predicted)}" if integer else f"{r.predicted:.6g}"
            comp = f"{int(r.computed)}" if integer else f"{r.computed:.9g}"
            tol_s = "exact" if integer else f"{r.tolerance:.0e}"
            lines.append(
                f"{r.lift:>4}  {r.coefficients:<12} {r.check:<30} {pred:>10} {comp:>12}  {tol_s:>7}  "
                + ("PASS" if r.passed else "FAIL")
            )
        for w in self.warnings:
            lines.append(f"# warning: {w}")
        failed = sum(not r.passed for r in self.records)
        lines.append(f"# {len(self.records) - failed}/{len(self.records)} records pass")
        return "\n".join(lines)
