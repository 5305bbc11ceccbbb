"""Small dense exact linear algebra over ``Fraction``.

Pivoting is deterministic: columns are scanned left to right and the
pivot is the first remaining row (smallest index) with a nonzero entry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from curveword.errors import Inconsistent

Row = list[Fraction]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Row]:
    """Basis of ``{x : rows . x = 0}``, one vector per free column."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


@dataclass
class _Basis:
    """Incremental echelon basis of augmented rows with provenance.

    Each stored row remembers which inserted constraints it combines, so an
    inconsistency can be traced back to a small witness set.
    """

    ncols: int
    rows: list[tuple[int, Row, dict[int, Fraction]]] = field(default_factory=list)

    def reduce(self, row: Row, prov: dict[int, Fraction]) -> tuple[Row, dict[int, Fraction]]:
        row = list(row)
        prov = dict(prov)
        for pc, brow, bprov in self.rows:
            f = row[pc]
            if f:
                row = [a - f * b for a, b in zip(row, brow)]
                for k, v in bprov.items():
                    nv = prov.get(k, 0) - f * v
                    if nv:
                        prov[k] = nv
                    else:
                        prov.pop(k, None)
        return row, prov

    def insert(self, row: Row, prov: dict[int, Fraction]) -> int | None:
        """Insert an augmented row; return its pivot column or None if dependent."""
        row, prov = self.reduce(row, prov)
        pc = next((c for c in range(self.ncols + 1) if row[c] != 0), None)
        if pc is None:
            return None
        inv = 1 / row[pc]
        row = [x * inv for x in row]
        prov = {k: v * inv for k, v in prov.items()}
        # keep earlier rows reduced against the new pivot
        new_rows = []
        for bpc, brow, bprov in self.rows:
            f = brow[pc]
            if f:
                brow = [a - f * b for a, b in zip(brow, row)]
                bprov = dict(bprov)
                for k, v in prov.items():
                    nv = bprov.get(k, 0) - f * v
                    if nv:
                        bprov[k] = nv
                    else:
                        bprov.pop(k, None)
            new_rows.append((bpc, brow, bprov))
        new_rows.append((pc, row, prov))
        new_rows.sort(key=lambda t: t[0])
        self.rows = new_rows
        return pc


@dataclass(frozen=True)
class Solution:
    particular: dict[Hashable, Fraction]
    free_directions: list[dict[Hashable, Fraction]]
    rank: int

    @property
    def unique(self) -> bool:
        return not self.free_directions


@dataclass
class RationalMatrix:
    """Affine constraint system ``sum_j a_ij x_j = b_i`` over labelled unknowns."""

    labels: list[Hashable]
    rows: list[Row] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self._index = {lab: k for k, lab in enumerate(self.labels)}

    @property
    def ncols(self) -> int:
        return len(self.labels)

    def add(self, coeffs: Mapping[Hashable, Fraction], rhs=0, name: str = "") -> None:
        row = [Fraction(0)] * self.ncols
        for lab, v in coeffs.items():
            row[self._index[lab]] += v
        self.rows.append(row)
        self.rhs.append(Fraction(rhs))
        self.names.append(name)

    def extend(self, items: Iterable[tuple[Mapping[Hashable, Fraction], Fraction, str]]) -> None:
        for coeffs, rhs, name in items:
            self.add(coeffs, rhs, name)

    def rank(self) -> int:
        basis = _Basis(self.ncols)
        for row in self.rows:
            basis.insert(row + [Fraction(0)], {})
        return len(basis.rows)

    def solve(self) -> Solution:
        """Solve exactly; raise :class:`Inconsistent` with a minimal witness."""
        basis = _Basis(self.ncols)
        for k, (row, b) in enumerate(zip(self.rows, self.rhs)):
            pc = basis.insert(row + [b], {k: Fraction(1)})
            if pc == self.ncols:
                witness = self._minimize(self._support(basis, pc))
                raise Inconsistent(
                    f"no solution; {len(witness)} constraints already conflict",
                    [self.names[i] or f"row {i}" for i in witness],
                )
        pivots = [pc for pc, _, _ in basis.rows]
        particular = {lab: Fraction(0) for lab in self.labels}
        for pc, row, _ in basis.rows:
            particular[self.labels[pc]] = row[self.ncols]
        free_dirs = []
        for f in range(self.ncols):
            if f in pivots:
                continue
            d = {lab: Fraction(0) for lab in self.labels}
            d[self.labels[f]] = Fraction(1)
            for pc, row, _ in basis.rows:
                d[self.labels[pc]] = -row[f]
            free_dirs.append(d)
        return Solution(particular, free_dirs, len(basis.rows))

    @staticmethod
    def _support(basis: _Basis, pc: int) -> list[int]:
        for bpc, _, prov in basis.rows:
            if bpc == pc:
                return sorted(prov)
        return []

    def _consistent(self, idx: list[int]) -> bool:
        basis = _Basis(self.ncols)
        for k in idx:
            if basis.insert(self.rows[k] + [self.rhs[k]], {}) == self.ncols:
                return False
        return True

    def _minimize(self, idx: list[int]) -> list[int]:
        """Deletion filter: drop rows while the subset stays inconsistent."""
        keep = list(idx)
        for k in list(idx):
            trial = [i for i in keep if i != k]
            if trial and not self._consistent(trial):
                keep = trial
        return keep

    def check(self, values: Mapping[Hashable, Fraction]) -> list[int]:
        """Indices of rows violated by ``values``."""
        bad = []
        for k, (row, b) in enumerate(zip(self.rows, self.rhs)):
            s = sum((a * values.get(lab, 0) for a, lab in zip(row, self.labels) if a), Fraction(0))
            if s != b:
                bad.append(k)
        return bad
