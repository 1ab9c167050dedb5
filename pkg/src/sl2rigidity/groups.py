"""Words, finite presentations, peripheral subgroups and Fox calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    ContractError,
    InputError,
    ToleranceProfile,
    as_complex_matrix,
    gf2_affine_solutions,
)

Letter = tuple[int, int]  # (generator index, +1 or -1)


def _free_reduce(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word in the generators; the empty word is the identity."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if g < 0 or e not in (1, -1):
                raise InputError(f"bad letter {(g, e)!r}")
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def cyclically_reduced(self) -> "Word":
        letters = list(self.letters)
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return Word(tuple(letters))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def exponent_sums(self, generator_count: int) -> np.ndarray:
        sums = np.zeros(generator_count, dtype=np.int64)
        for g, e in self.letters:
            sums[g] += e
        return sums

    def to_text(self) -> str:
        return "".join(chr(ord("a") + g) if e == 1 else chr(ord("A") + g) for g, e in self.letters)

    def __str__(self):
        return self.to_text() or "1"


def parse_word(text: str, generator_count: int | None = None) -> Word:
    """Parse 'abA'-style text: lowercase is a generator, uppercase its inverse."""
    letters = []
    for ch in text.strip():
        if "a" <= ch <= "z":
            letters.append((ord(ch) - ord("a"), 1))
        elif "A" <= ch <= "Z":
            letters.append((ord(ch) - ord("A"), -1))
        elif ch == "1" and len(text.strip()) == 1:
            continue
        else:
            raise InputError(f"invalid character {ch!r} in word {text!r}")
    word = Word(tuple(letters))
    if generator_count is not None and word.max_generator() >= generator_count:
        bad = chr(ord("a") + word.max_generator())
        raise InputError(f"word {text!r} uses generator {bad!r} outside the {generator_count} declared")
    return word


def surface_relator(genus: int) -> Word:
    """[a1,b1]...[ag,bg] on generators a1,b1,a2,b2,..."""
    letters = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return Word(tuple(letters))


@dataclass(frozen=True)
class PeripheralSystem:
    """Generating words of a boundary subgroup: a torus cusp or a genus-g end."""

    kind: str  # "torus" or "genus"
    words: tuple[Word, ...]
    null_homologous: tuple[bool, ...]
    genus: int = 1
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == "torus":
            object.__setattr__(self, "genus", 1)
            if len(self.words) != 2:
                raise InputError("a torus peripheral needs exactly 2 words")
        elif self.kind == "genus":
            if self.genus < 2:
                raise InputError(f"genus ends need g >= 2, got {self.genus}")
            if len(self.words) != 2 * self.genus:
                raise InputError(f"a genus-{self.genus} peripheral needs {2 * self.genus} words")
        else:
            raise InputError(f"unknown peripheral kind {self.kind!r}")
        if len(self.null_homologous) != len(self.words):
            raise InputError("one null-homology flag is required per peripheral word")

    def subgroup_presentation(self) -> "GroupPresentation":
        """Standard one-relator presentation of the boundary surface group."""
        name = "torus" if self.kind == "torus" else f"surface_genus_{self.genus}"
        return GroupPresentation(2 * self.genus, (surface_relator(self.genus),), (), name)


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...]
    peripherals: tuple[PeripheralSystem, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.generator_count < 1:
            raise InputError("a presentation needs at least one generator")
        for w in self.relators:
            if w.max_generator() >= self.generator_count:
                raise InputError(f"relator {w} references an undeclared generator")
        for p in self.peripherals:
            for w in p.words:
                if w.max_generator() >= self.generator_count:
                    raise InputError(f"peripheral word {w} references an undeclared generator")

    def relator_exponents_mod2(self) -> np.ndarray:
        rows = [w.exponent_sums(self.generator_count) % 2 for w in self.relators]
        if not rows:
            return np.zeros((0, self.generator_count), dtype=np.uint8)
        return np.array(rows, dtype=np.uint8)

    def is_null_homologous_mod2(self, w: Word) -> bool:
        """True iff w maps to zero in H_1(G; Z/2) = Z/2^gens / relator span."""
        v = w.exponent_sums(self.generator_count) % 2
        if not v.any():
            return True
        a = self.relator_exponents_mod2()
        if a.shape[0] == 0:
            return False
        return bool(gf2_affine_solutions(a.T, v))

    def cyclically_reduced(self) -> "GroupPresentation":
        rels = tuple(w.cyclically_reduced() for w in self.relators)
        return GroupPresentation(self.generator_count, tuple(w for w in rels if len(w)), self.peripherals, self.name)


@dataclass(frozen=True, eq=False)
class Representation:
    """Invertible matrix images of the generators.

    A representation obtained with ``map`` remembers its source and the
    matrix functor, so inverses and restrictions to subgroups are computed
    on the small source matrices and pushed through the functor.  This keeps
    symmetric and adjoint powers with large entries accurate.
    """

    images: tuple[np.ndarray, ...]
    source: str = ""
    inverses: tuple[np.ndarray, ...] = field(default=(), repr=False)
    parent: tuple["Representation", Callable] | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.images:
            raise InputError("a representation needs at least one generator image")
        mats = tuple(as_complex_matrix(m) for m in self.images)
        dim = mats[0].shape[0]
        if dim == 0:
            raise InputError("zero-dimensional representations are not allowed")
        for m in mats:
            if m.shape != (dim, dim):
                raise InputError(f"generator images must all be {dim}x{dim}, got {m.shape}")
        if self.inverses:
            invs = tuple(as_complex_matrix(m) for m in self.inverses)
            if len(invs) != len(mats):
                raise InputError("one inverse is required per generator image")
        else:
            invs = []
            for i, m in enumerate(mats):
                try:
                    invs.append(np.linalg.inv(m))
                except np.linalg.LinAlgError:
                    raise InputError(f"image of generator {i} is singular") from None
            invs = tuple(invs)
        for m in mats + invs:
            m.flags.writeable = False
        object.__setattr__(self, "images", mats)
        object.__setattr__(self, "inverses", invs)

    @property
    def dimension(self) -> int:
        return self.images[0].shape[0]

    @property
    def generator_count(self) -> int:
        return len(self.images)

    def letter(self, g: int, e: int) -> np.ndarray:
        return self.images[g] if e == 1 else self.inverses[g]

    def inverse_image(self, g: int) -> np.ndarray:
        return self.inverses[g]

    def map(self, f: Callable[[np.ndarray], np.ndarray], source: str | None = None) -> "Representation":
        """Compose with a matrix functor, e.g. a symmetric power."""
        return Representation(
            tuple(f(m) for m in self.images),
            self.source if source is None else source,
            tuple(f(m) for m in self.inverses),
            (self, f),
        )

    def conjugate(self, g) -> "Representation":
        g = as_complex_matrix(g)
        gi = np.linalg.inv(g)
        return Representation(
            tuple(g @ m @ gi for m in self.images),
            f"conj({self.source})",
            tuple(g @ m @ gi for m in self.inverses),
        )

    def restrict(self, words: Sequence[Word], source: str = "") -> "Representation":
        """Representation of the subgroup generated by words, in the given order."""
        source = source or f"restrict({self.source})"
        if self.parent is not None:
            base, f = self.parent
            return base.restrict(words).map(f, source)
        return Representation(
            tuple(evaluate_word(self, w) for w in words),
            source,
            tuple(evaluate_word(self, w.inverse()) for w in words),
        )


def evaluate_word(rep: Representation, w: Word) -> np.ndarray:
    out = np.eye(rep.dimension, dtype=complex)
    for g, e in w:
        out = out @ rep.letter(g, e)
    return out


def _word_deviation(rep: Representation, w: Word) -> tuple[float, float]:
    """(max-entry deviation of rep(w) from I, product of the letters' max-entry norms).

    The product of letter norms bounds how far rounding in a long matrix
    product can push the result, so it is the natural scale for a relator
    whose product cancels back to the identity.
    """
    out = np.eye(rep.dimension, dtype=complex)
    scale = 1.0
    for g, e in w:
        m = rep.letter(g, e)
        out = out @ m
        scale *= max(1.0, float(np.max(np.abs(m))))
    return float(np.max(np.abs(out - np.eye(rep.dimension)))), scale


@dataclass(frozen=True)
class ValidationReport:
    """Relator and peripheral-commutator deviations of a representation.

    Deviations are absolute max-entry distances.  Each is compared against
    relator_tol times the product of the letters' max-entry norms, so
    symmetric powers with large entries are judged on the same relative
    footing as their 2x2 source.
    """

    relator_deviations: tuple[float, ...]
    relator_scales: tuple[float, ...]
    commutator_deviations: tuple[float, ...]
    commutator_scales: tuple[float, ...]
    tolerance: float

    @property
    def max_deviation(self) -> float:
        return max(self.relator_deviations + self.commutator_deviations, default=0.0)

    def _bad(self, devs, scales):
        return [(i, d) for i, (d, s) in enumerate(zip(devs, scales)) if d > self.tolerance * s]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def failures(self) -> list[str]:
        out = [f"relator {i}: deviation {d:.3e}" for i, d in self._bad(self.relator_deviations, self.relator_scales)]
        out += [
            f"peripheral {i} commutator: deviation {d:.3e}"
            for i, d in self._bad(self.commutator_deviations, self.commutator_scales)
        ]
        return out


def validate_representation(
    pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL
) -> ValidationReport:
    if rep.generator_count != pres.generator_count:
        raise InputError(
            f"representation has {rep.generator_count} images, presentation has {pres.generator_count} generators"
        )
    rel = [_word_deviation(rep, w) for w in pres.relators]
    comm = []
    for p in pres.peripherals:
        if p.kind != "torus":
            continue
        x, y = p.words
        comm.append(_word_deviation(rep, x * y * x.inverse() * y.inverse()))
    return ValidationReport(
        tuple(d for d, _ in rel), tuple(s for _, s in rel),
        tuple(d for d, _ in comm), tuple(s for _, s in comm),
        tol.relator_tol,
    )


def require_valid(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL) -> None:
    report = validate_representation(pres, rep, tol)
    if not report.passed:
        raise ContractError(
            f"representation {rep.source!r} is not valid for {pres.name or 'presentation'}: "
            + "; ".join(report.failures())
        )


def fox_blocks(w: Word, rep: Representation) -> list[np.ndarray]:
    """Fox derivatives of w with respect to each generator, evaluated in rep."""
    dim = rep.dimension
    blocks = [np.zeros((dim, dim), dtype=complex) for _ in range(rep.generator_count)]
    prefix = np.eye(dim, dtype=complex)
    for g, e in w:
        if e == 1:
            blocks[g] += prefix
            prefix = prefix @ rep.images[g]
        else:
            prefix = prefix @ rep.inverse_image(g)
            blocks[g] -= prefix
    return blocks


def fox_matrix(pres: GroupPresentation, rep: Representation, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Relator-by-generator block matrix whose kernel is the cocycle space."""
    require_valid(pres, rep, tol)
    dim = rep.dimension
    out = np.zeros((dim * len(pres.relators), dim * pres.generator_count), dtype=complex)
    for i, w in enumerate(pres.relators):
        for j, block in enumerate(fox_blocks(w, rep)):
            out[i * dim:(i + 1) * dim, j * dim:(j + 1) * dim] = block
    return out
