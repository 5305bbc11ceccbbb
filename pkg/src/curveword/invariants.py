"""Finite type invariants of signed words.

An invariant of order ``d`` is determined by its symbols: the values of
its prolongation on fully singular classes with at most ``d`` letters
(the empty word included).  Inverting the prolongation rule
``v(A* x A* y) = v(A x A y) - v(x y)`` gives, for a word whose singular
letters are ``T``::

    v(w) = sum over letter sets T <= S <= letters(w), |S| <= d, of symbol[(w|S)*]

For a non-singular word this is the dot product of the symbol table with
the word's feature vector (subset counts per singular class).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from curveword.errors import MissingSymbol, NotSpherical
from curveword.words import (
    Letter,
    Sign,
    SignedWord,
    WordClass,
    canonicalize,
    format_word,
    parse,
    star,
)

ClassKey = tuple[tuple[int, int, bool], ...]

# (p, q, r, constant) for J+_s, J-_s, St_s.  The constants reproduce the
# chain-curve normalization; see README, "Normalization constants".
ARNOLD_PARAMETERS: dict[str, tuple[Fraction, Fraction, Fraction, Fraction]] = {
    "Jplus_s": (Fraction(-1, 2), Fraction(1), Fraction(-3), Fraction(1, 2)),
    "Jminus_s": (Fraction(-3, 2), Fraction(1), Fraction(-3), Fraction(1, 2)),
    "St_s": (Fraction(1, 4), Fraction(-1, 2), Fraction(1, 2), Fraction(-1, 4)),
}
ARNOLD_NAMES = tuple(ARNOLD_PARAMETERS)

# move kind -> change of (J+_s, J-_s, St_s) under the forward move
MOVE_DELTAS: dict[str, tuple[int, int, int]] = {
    "move1": (2, 0, 0),
    "move2": (0, -2, 0),
    "move3": (0, 0, 1),
}


def chain_normalization(i: int) -> tuple[Fraction, Fraction, Fraction]:
    """Prescribed (J+_s, J-_s, St_s) on the chain curve with ``i`` letters."""
    return (
        Fraction((i - 1) ** 2, 2),
        Fraction((i - 2) ** 2, 2) - Fraction(3, 2),
        -Fraction((i - 1) ** 2, 4),
    )


# -- singular classes ---------------------------------------------------------


def restricted_key(w: SignedWord, subset: Iterable[int]) -> ClassKey:
    """Canonical key of ``star(w|subset)`` without building intermediate words."""
    keep = set(subset)
    labels: dict[int, int] = {}
    t = w.table
    out = []
    for i in w.occ:
        if i in keep:
            lab = labels.get(i)
            if lab is None:
                lab = labels[i] = len(labels)
            out.append((lab, t[i].sign.order, True))
    return tuple(out)


@lru_cache(maxsize=None)
def class_from_key(key: ClassKey) -> WordClass:
    signs: dict[int, Letter] = {}
    for lab, order, sing in key:
        signs[lab] = Letter(lab, Sign.PLUS if order == 0 else Sign.MINUS, sing)
    w = SignedWord(tuple(k[0] for k in key), tuple(signs[i] for i in sorted(signs)))
    return WordClass(key, w)


def singular_class(text_or_word: str | SignedWord) -> WordClass:
    """Canonical fully singular class of a word (stars added if missing)."""
    w = parse(text_or_word) if isinstance(text_or_word, str) else text_or_word
    return canonicalize(star(w))


PHI_CLASS = class_from_key(())


# -- feature vectors ----------------------------------------------------------


@dataclass(frozen=True)
class FeatureVector:
    degree: int
    counts: Mapping[WordClass, int]

    def __getitem__(self, cls: WordClass) -> int:
        return self.counts.get(cls, 0)

    def dot(self, table: "SymbolTable") -> Fraction:
        return sum((table.get(c) * k for c, k in self.counts.items()), Fraction(0))

    def to_json(self) -> dict[str, int]:
        return {format_word(c) or "phi": k for c, k in sorted(self.counts.items())}


def feature_counts(w: SignedWord, degree: int) -> dict[ClassKey, int]:
    """Subset counts keyed by raw class keys (fast path used by the solver)."""
    counts: dict[ClassKey, int] = {}
    ids = w.ids
    for k in range(min(degree, len(ids)) + 1):
        for sub in itertools.combinations(ids, k):
            key = restricted_key(w, sub)
            counts[key] = counts.get(key, 0) + 1
    return counts


def feature_vector(w: SignedWord, degree: int) -> FeatureVector:
    if w.has_singular:
        raise ValueError("feature vectors are taken of non-singular words")
    counts = {class_from_key(k): c for k, c in feature_counts(w, degree).items()}
    return FeatureVector(degree, counts)


# -- symbol tables -------------------------------------------------------------


@dataclass(frozen=True)
class SymbolTable:
    """Symbol values of an order ``degree`` invariant.

    Classes missing from ``values`` count as zero unless ``strict`` is set,
    in which case looking one up raises :class:`MissingSymbol`.
    """

    degree: int
    values: Mapping[WordClass, Fraction] = field(default_factory=dict)
    strict: bool = False

    def __post_init__(self):
        clean = {}
        for cls, val in self.values.items():
            if not isinstance(cls, WordClass):
                cls = singular_class(cls)
            if any(not sing for _, _, sing in cls.key):
                raise ValueError(f"symbol key {cls} is not fully singular")
            if cls.n > self.degree:
                raise ValueError(f"symbol key {cls} exceeds degree {self.degree}")
            clean[cls] = Fraction(val)
        object.__setattr__(self, "values", clean)
        object.__setattr__(self, "_by_key", {c.key: v for c, v in clean.items()})

    @property
    def phi(self) -> Fraction:
        return self.values.get(PHI_CLASS, Fraction(0))

    def get(self, cls: WordClass) -> Fraction:
        return self.get_key(cls.key)

    def get_key(self, key: ClassKey) -> Fraction:
        if len(key) > 2 * self.degree:
            return Fraction(0)
        val = self._by_key.get(key)
        if val is None:
            if self.strict:
                raise MissingSymbol(f"no symbol for {format_word(class_from_key(key))!r}")
            return Fraction(0)
        return val

    def __getitem__(self, cls: WordClass | str) -> Fraction:
        if isinstance(cls, str):
            cls = singular_class(cls) if cls.strip() else PHI_CLASS
        return self.get(cls)

    def with_values(self, extra: Mapping[WordClass, Fraction]) -> "SymbolTable":
        merged = dict(self.values)
        merged.update(extra)
        return SymbolTable(self.degree, merged, self.strict)

    def to_json(self) -> dict:
        out: dict = {"degree": self.degree, "phi": str(self.phi)}
        for cls, val in sorted(self.values.items()):
            if cls.n:
                out[format_word(cls)] = str(val)
        return out

    @classmethod
    def from_json(cls, data: Mapping, strict: bool = False) -> "SymbolTable":
        values: dict[WordClass, Fraction] = {}
        for k, v in data.items():
            if k == "degree":
                continue
            if k == "phi":
                values[PHI_CLASS] = Fraction(v)
                continue
            w = parse(k)
            if not all(w.is_singular(i) for i in w.ids):
                raise ValueError(f"table key {k!r} must star every letter")
            values[canonicalize(w)] = Fraction(v)
        return cls(int(data["degree"]), values, strict)


def evaluate(table: SymbolTable, w: SignedWord) -> Fraction:
    """Value of the prolonged invariant on a possibly singular word."""
    fixed = sorted(w.singular_ids)
    room = table.degree - len(fixed)
    if room < 0:
        return Fraction(0)
    free = [i for i in w.ids if i not in w.singular_ids]
    total = Fraction(0)
    for k in range(min(room, len(free)) + 1):
        for sub in itertools.combinations(free, k):
            total += table.get_key(restricted_key(w, fixed + list(sub)))
    return total


def degree_one_table(c0, c1) -> SymbolTable:
    """Order-1 table with constant ``c0`` and value ``c1`` on both one-letter classes."""
    return SymbolTable(
        1, {PHI_CLASS: c0, singular_class("A A"): c1, singular_class("-A -A"): c1}
    )


# -- Arnold's invariants ------------------------------------------------------------

LISTED_SYMBOLS = (
    # (class, coefficient of p, q, r)
    ("A A", (1, 0, 0)),
    ("A A B B", (0, 1, 0)),
    ("A -B -B A", (0, 1, 0)),
    ("A A -B -B", (0, -1, 0)),
    ("A B A B", (0, 0, 1)),
    ("-A -B -A -B", (0, 0, 1)),
    ("A -B A -B", (0, 0, -1)),
    ("-A B -A B", (0, 0, -1)),
)


def listed_table(p, q, r, a0) -> SymbolTable:
    """The partial degree-2 table built from (p, q, r) and the constant only."""
    vals = {PHI_CLASS: Fraction(a0)}
    for text, (cp, cq, cr) in LISTED_SYMBOLS:
        vals[singular_class(text)] = cp * Fraction(p) + cq * Fraction(q) + cr * Fraction(r)
    return SymbolTable(2, vals)


def build_spherical_table(p, q, r, a0, horizon: int = 4) -> SymbolTable:
    """Listed symbols plus the remaining degree-2 classes, completed by the solver."""
    from curveword.solver import cached_spherical_completion

    return cached_spherical_completion(Fraction(p), Fraction(q), Fraction(r), Fraction(a0), horizon)


def arnold_tables(horizon: int = 4) -> dict[str, SymbolTable]:
    return {name: build_spherical_table(*params, horizon=horizon) for name, params in ARNOLD_PARAMETERS.items()}


def _check_spherical(w: SignedWord, strict: bool) -> bool:
    from curveword.surface import is_spherical

    ok = is_spherical(w)
    if not ok:
        msg = f"{format_word(w)!r} is not spherical; values are not curve invariants"
        if strict:
            raise NotSpherical(msg)
        warnings.warn(msg, stacklevel=3)
    return ok


def arnold_invariants(w: SignedWord, strict: bool = True) -> tuple[Fraction, Fraction, Fraction]:
    """(J+_s, J-_s, St_s) of a spherical word."""
    _check_spherical(w, strict)
    tables = arnold_tables()
    return tuple(evaluate(tables[name], w) for name in ARNOLD_NAMES)


def planar_invariants(w: SignedWord, rot: int, strict: bool = True) -> tuple[Fraction, Fraction, Fraction]:
    """(J+, J-, St) of a plane curve with rotation number ``rot``."""
    jp, jm, st = arnold_invariants(w, strict)
    sq = Fraction(rot * rot)
    return jp - sq / 2, jm - sq / 2, st + sq / 4
