"""Linear-algebra experiments over symbol values.

Unknowns are the symbols of an order ``d`` invariant: one per fully
singular class with at most ``d`` letters, plus the empty class.  Each
value of the invariant is linear in the symbols (through feature
vectors), so invariance, move behavior and normalization are all affine
constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from curveword.cyclic import orbit, shift
from curveword.errors import LimitExceeded, Underdetermined
from curveword.invariants import (
    ARNOLD_PARAMETERS,
    MOVE_DELTAS,
    ClassKey,
    SymbolTable,
    chain_normalization,
    class_from_key,
    feature_counts,
    listed_table,
)
from curveword.linalg import RationalMatrix
from curveword.moves import all_sites, rewrite
from curveword.surface import is_spherical
from curveword.words import (
    Sign,
    SignedWord,
    WordClass,
    chain_word,
    enumerate_up_to,
    enumerate_words,
    enumeration_limit,
    format_word,
)

DEFAULT_DEGREE_GUARD = 2
DEFAULT_HORIZON_GUARD = 5
COMPLETENESS_GUARD = 3


def symbol_classes(degree: int) -> list[WordClass]:
    """All fully singular classes with at most ``degree`` letters, φ first."""
    out = []
    for k in range(degree + 1):
        for c in enumerate_words(k, limit=max(k, 0)):
            out.append(class_from_key(tuple((i, s, True) for i, s, _ in c.key)))
    return out


def _diff(a: Mapping[ClassKey, int], b: Mapping[ClassKey, int]) -> dict[WordClass, Fraction]:
    out: dict[WordClass, Fraction] = {}
    for k in set(a) | set(b):
        d = a.get(k, 0) - b.get(k, 0)
        if d:
            out[class_from_key(k)] = Fraction(d)
    return out


def _label(c: WordClass) -> str:
    return format_word(c) or "phi"


# -- dimensions -----------------------------------------------------------------


@dataclass(frozen=True)
class DimensionReport:
    degree: int
    domain: str
    dims_by_L: dict[int, int]
    basis: list[dict[str, Fraction]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return self.dims_by_L[max(self.dims_by_L)]

    @property
    def stabilized_at(self) -> int | None:
        """Smallest L from which the dimension no longer changes (needs two equal values)."""
        ls = sorted(self.dims_by_L)
        best = None
        for a, b in zip(ls[::-1][1:], ls[::-1]):
            if self.dims_by_L[a] == self.dims_by_L[b]:
                best = a
            else:
                break
        return best

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "domain": self.domain,
            "dims_by_L": {str(k): v for k, v in self.dims_by_L.items()},
            "dimension": self.dimension,
            "stabilized_at": self.stabilized_at,
            "extrapolation": self.degree > 2,
            "free_directions": [{k: str(v) for k, v in d.items() if v} for d in self.basis],
        }


def invariant_space_dim(
    degree: int,
    horizon: int,
    domain: str = "all",
    max_degree: int = DEFAULT_DEGREE_GUARD,
    max_horizon: int = DEFAULT_HORIZON_GUARD,
) -> DimensionReport:
    """Dimension of the order-``degree`` cyclic invariants seen on words of ≤ L letters.

    Constraints ``v(w) = v(shift w)`` are added for every word with at most
    ``L`` letters (only spherical ones when ``domain == "spherical"``) and
    the solution-space dimension is recorded for every ``L <= horizon``.
    Degrees above 2 are experimental and flagged as such in the report.
    """
    if domain not in ("all", "spherical"):
        raise ValueError(f"unknown domain {domain!r}")
    if degree > max_degree or horizon > max_horizon:
        raise LimitExceeded(
            f"degree {degree} / horizon {horizon} beyond guard ({max_degree}, {max_horizon})"
        )
    classes = symbol_classes(degree)
    mat = RationalMatrix(classes)
    dims: dict[int, int] = {}
    for L in range(horizon + 1):
        for c in enumerate_words(L, limit=L):
            w = c.word
            if domain == "spherical" and not is_spherical(w):
                continue
            row = _diff(feature_counts(w, degree), feature_counts(shift(w), degree))
            if row:
                mat.add(row, 0, f"shift {format_word(w)}")
        dims[L] = len(classes) - mat.rank()
    sol = mat.solve()
    basis = [{_label(k): v for k, v in d.items()} for d in sol.free_directions]
    return DimensionReport(degree, domain, dims, basis)


# -- table completion -----------------------------------------------------------------


@dataclass(frozen=True)
class Completion:
    """Result of completing a partial table.

    ``table`` sets every free direction to zero; ``free_directions`` spans
    the remaining ambiguity (empty when the completion is unique).
    """

    table: SymbolTable
    free_directions: list[dict[WordClass, Fraction]]
    n_constraints: int
    solved: dict[WordClass, Fraction]

    @property
    def unique(self) -> bool:
        return not self.free_directions

    def to_json(self) -> dict:
        return {
            "degree": self.table.degree,
            "unique": self.unique,
            "constraints": self.n_constraints,
            "table": self.table.to_json(),
            "solved": {_label(c): str(v) for c, v in sorted(self.solved.items())},
            "free_directions": [
                {_label(c): str(v) for c, v in sorted(d.items()) if v} for d in self.free_directions
            ],
        }


def spherical_words(horizon: int, limit: int | None = None) -> list[SignedWord]:
    lim = max(horizon, enumeration_limit(limit))
    return [c.word for c in enumerate_up_to(horizon, limit=lim) if is_spherical(c.word)]


@dataclass(frozen=True)
class Relation:
    """A linear relation ``coeffs . symbols = delta`` coming from one word.

    ``tag`` is ``"shift"`` or ``(kind, direction)`` of a move; the right
    hand side is supplied later by the invariant being completed.
    """

    tag: object
    coeffs: tuple[tuple[ClassKey, int], ...]
    name: str


def _freeze(d: Mapping[ClassKey, int]) -> tuple[tuple[ClassKey, int], ...]:
    return tuple(sorted((k, v) for k, v in d.items() if v))


def _sub(a: Mapping[ClassKey, int], b: Mapping[ClassKey, int]) -> dict[ClassKey, int]:
    return {k: a.get(k, 0) - b.get(k, 0) for k in set(a) | set(b)}


@lru_cache(maxsize=None)
def spherical_relations(degree: int, horizon: int) -> tuple[Relation, ...]:
    """Shift and move relations over spherical words with at most ``horizon`` letters.

    Duplicated coefficient rows with the same tag are kept once; the name
    records the first word that produced them.
    """
    out: dict[tuple, Relation] = {}
    for w in spherical_words(horizon, limit=horizon):
        fw = feature_counts(w, degree)
        items = []
        if w.occ:
            items.append(("shift", shift(w), f"shift on {format_word(w)!r}"))
        for site in all_sites(w, mode="sphere"):
            items.append(
                (
                    (site.kind, site.direction),
                    rewrite(w, site),
                    f"{site.kind} {site.direction} {site.params} on {format_word(w)!r}",
                )
            )
        for tag, after, name in items:
            coeffs = _freeze(_sub(feature_counts(after, degree), fw))
            if coeffs:
                out.setdefault((tag, coeffs), Relation(tag, coeffs, name))
    return tuple(out.values())


def constraint_system(
    partial: SymbolTable,
    deltas: Mapping[str, Fraction] | None,
    normalization: Callable[[int], Fraction] | None,
    horizon: int,
    cyclic: bool = True,
) -> tuple[RationalMatrix, list[WordClass]]:
    """Affine system in the symbols that ``partial`` leaves unspecified."""
    degree = partial.degree
    unknown = [c for c in symbol_classes(degree) if c not in partial.values]
    mat = RationalMatrix(unknown)
    unknown_keys = {c.key for c in unknown}
    seen: set = set()

    def add(coeffs, value, name: str) -> None:
        rhs = Fraction(value)
        row = {}
        for k, a in coeffs:
            if k in unknown_keys:
                row[class_from_key(k)] = Fraction(a)
            else:
                rhs -= a * partial.get_key(k)
        sig = (tuple(sorted((c.key, v) for c, v in row.items())), rhs)
        if (row or rhs) and sig not in seen:
            seen.add(sig)
            mat.add(row, rhs, name)

    for rel in spherical_relations(degree, horizon):
        if rel.tag == "shift":
            if cyclic:
                add(rel.coeffs, 0, rel.name)
        elif deltas is not None:
            kind, direction = rel.tag
            add(rel.coeffs, deltas[kind] * (1 if direction == "fwd" else -1), rel.name)
    if normalization is not None:
        for i in range(1, horizon + 1):
            for sign in (Sign.PLUS, Sign.MINUS):
                w = chain_word(i, sign)
                add(_freeze(feature_counts(w, degree)), normalization(i), f"normalization {format_word(w)!r}")
    return mat, unknown


def complete_symbol_table(
    partial: SymbolTable,
    deltas: Mapping[str, Fraction] | None = None,
    normalization: Callable[[int], Fraction] | None = None,
    horizon: int = 4,
    cyclic: bool = True,
    require_unique: bool = False,
) -> Completion:
    """Solve for the missing symbols of ``partial``.

    ``deltas`` maps move kinds to the forward change of the invariant and
    ``normalization(i)`` gives its value on the chain word with ``i``
    letters.  Raises :class:`Inconsistent` when no completion exists, and
    :class:`Underdetermined` if ``require_unique`` is set and the solution
    is not unique.
    """
    mat, unknown = constraint_system(partial, deltas, normalization, horizon, cyclic)
    sol = mat.solve()
    solved = {c: sol.particular[c] for c in unknown}
    table = partial.with_values(solved)
    free = [{c: v for c, v in d.items() if v} for d in sol.free_directions]
    if require_unique and free:
        raise Underdetermined(
            f"{len(free)} free directions remain",
            particular=solved,
            free_directions=free,
        )
    return Completion(table, free, len(mat.rows), solved)


def arnold_deltas(name: str) -> dict[str, Fraction]:
    idx = ("Jplus_s", "Jminus_s", "St_s").index(name)
    return {kind: Fraction(d[idx]) for kind, d in MOVE_DELTAS.items()}


def arnold_normalization(name: str) -> Callable[[int], Fraction]:
    idx = ("Jplus_s", "Jminus_s", "St_s").index(name)
    return lambda i: chain_normalization(i)[idx]


def complete_arnold(name: str, horizon: int = 4, **kw) -> Completion:
    p, q, r, a0 = ARNOLD_PARAMETERS[name]
    return complete_for(p, q, r, a0, arnold_deltas(name), arnold_normalization(name), horizon, **kw)


def complete_for(p, q, r, a0, deltas=None, normalization=None, horizon=4, **kw) -> Completion:
    partial = listed_table(p, q, r, a0)
    # (-A -A)* is left to the solver on purpose
    values = {c: v for c, v in partial.values.items()}
    return complete_symbol_table(SymbolTable(2, values), deltas, normalization, horizon, **kw)


@lru_cache(maxsize=None)
def cached_spherical_completion(p: Fraction, q: Fraction, r: Fraction, a0: Fraction, horizon: int) -> SymbolTable:
    """Completed table for (p, q, r, a0) from the cyclic constraints.

    If (p, q, r, a0) is one of Arnold's parameter vectors, that invariant's
    move deltas and chain normalization are added to the system as well.
    """
    deltas = normalization = None
    for name, params in ARNOLD_PARAMETERS.items():
        if params == (p, q, r, a0):
            deltas, normalization = arnold_deltas(name), arnold_normalization(name)
    return complete_for(p, q, r, a0, deltas, normalization, horizon).table


# -- completeness -----------------------------------------------------------------------


@dataclass(frozen=True)
class CompletenessReport:
    degree: int
    classes: int
    cyclic_classes: int
    collisions: list[list[str]]

    @property
    def complete(self) -> bool:
        return not self.collisions

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "isomorphism_classes": self.classes,
            "cyclic_classes": self.cyclic_classes,
            "complete": self.complete,
            "collisions": self.collisions,
        }


def orbit_feature(w: SignedWord, degree: int) -> tuple[tuple[ClassKey, Fraction], ...]:
    """Feature vector averaged over the 2n base points of ``w``."""
    its = orbit(w)
    acc: dict[ClassKey, Fraction] = {}
    for u in its:
        for k, v in feature_counts(u, degree).items():
            acc[k] = acc.get(k, 0) + v
    m = len(its)
    return tuple(sorted((k, Fraction(v, m)) for k, v in acc.items()))


def completeness_check(n: int, limit: int | None = None) -> CompletenessReport:
    """Do orbit-averaged degree-``n`` features separate cyclic classes of ≤ n letters?"""
    guard = COMPLETENESS_GUARD if limit is None else limit
    if n > guard:
        raise LimitExceeded(f"completeness check for n={n} beyond guard {guard}")
    from curveword.cyclic import cyclic_canonical

    reps: dict = {}
    total = 0
    for c in enumerate_up_to(n, limit=max(n, enumeration_limit(limit))):
        total += 1
        reps.setdefault(cyclic_canonical(c.word), c.word)
    seen: dict = {}
    for cc, w in sorted(reps.items()):
        seen.setdefault(orbit_feature(w, n), []).append(str(cc) or "phi")
    collisions = [names for names in seen.values() if len(names) > 1]
    return CompletenessReport(n, total, len(reps), collisions)
