"""Regular homotopy moves as rewrite rules on based signed words.

move1:  x y            ->  A B' x A B' y           (B' has the sign opposite to A)
move2:  x y            ->  A B' x B' A y
move3:  A B x A C y B C z  ->  B A x C A y C B z

The new or permuted letters always start at the base point.  A site is
*literal* when the clause pattern matches.  Not every literal site is a
move of curves on the sphere: ``A -B A -B`` is a literal move1 image of
the empty word but has genus 1.  In ``"sphere"`` mode (used by the
random walk and the solver) a site is kept only if the letters it
creates or permutes bound a face of the ribbon surface (a bigon for
moves 1 and 2, a triangle for move 3) of a genus 0 word, which is
exactly when the rewrite is a local move of a spherical curve.
"""

from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterator

from curveword.cyclic import shift, unshift
from curveword.errors import InvalidSite, SingularUnsupported
from curveword.invariants import MOVE_DELTAS
from curveword.surface import face_arcs
from curveword.words import Letter, PHI, Sign, SignedWord, canonical_word, format_word

KINDS = ("move1", "move2", "move3")
DIRECTIONS = ("fwd", "inv")
MODES = ("literal", "sphere")


@dataclass(frozen=True, order=True)
class MoveSite:
    """Where a move applies.

    ``params`` is ``(k, sign)`` for forward moves 1-2 (split position and
    the sign of the first new letter), ``(j,)`` for inverse moves 1-2 (the
    position where the second pair starts) and ``(i, j)`` for move 3 in
    either direction (starts of the second and third pairs).
    """

    kind: str
    direction: str
    params: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "dir": self.direction, "params": list(self.params)}


def _require_nonsingular(w: SignedWord) -> None:
    if w.has_singular:
        raise SingularUnsupported("moves act on non-singular words")


def _fresh(w: SignedWord, count: int) -> list[int]:
    start = max(w.ids, default=-1) + 1
    return list(range(start, start + count))


# -- literal rewriting -----------------------------------------------------------


def _rewrite(w: SignedWord, site: MoveSite) -> SignedWord:
    occ = list(w.occ)
    if site.kind in ("move1", "move2") and site.direction == "fwd":
        k, eps = site.params
        a, b = _fresh(w, 2)
        x, y = occ[:k], occ[k:]
        tail = [a, b] if site.kind == "move1" else [b, a]
        new = [a, b] + x + tail + y
        letters = w.letters + (Letter(a, Sign(eps)), Letter(b, Sign(-eps)))
        return SignedWord(tuple(new), letters)
    if site.kind in ("move1", "move2"):
        a, b = occ[0], occ[1]
        return SignedWord(
            tuple(i for i in occ if i not in (a, b)),
            tuple(l for l in w.letters if l.id not in (a, b)),
        )
    i, j = site.params
    for p in (0, i, j):
        occ[p], occ[p + 1] = occ[p + 1], occ[p]
    return SignedWord(tuple(occ), w.letters)


def _literal_sites(w: SignedWord, kind: str, direction: str, uniform_signs: bool) -> Iterator[MoveSite]:
    occ = w.occ
    m = len(occ)
    if kind in ("move1", "move2") and direction == "fwd":
        for k in range(m + 1):
            for eps in (1, -1):
                yield MoveSite(kind, direction, (k, eps))
        return
    if m < 4 or occ[0] == occ[1]:
        return
    pos = w.positions
    first, second = occ[0], occ[1]
    if kind in ("move1", "move2"):
        if w.sign(first) == w.sign(second):
            return
        if kind == "move1":
            j = pos[first][1]
            if j + 1 < m and occ[j + 1] == second:
                yield MoveSite(kind, direction, (j,))
        else:
            j = pos[second][1]
            if j + 1 < m and occ[j + 1] == first:
                yield MoveSite(kind, direction, (j,))
        return
    if uniform_signs and len({w.sign(first), w.sign(second)}) != 1:
        return
    if direction == "fwd":
        # A B x A C y B C z
        a, b = first, second
        i = pos[a][1]
        j = pos[b][1]
        if not (1 < i and i + 1 < j and j + 1 < m):
            return
        c = occ[i + 1]
        if c in (a, b) or pos[c] != (i + 1, j + 1):
            return
    else:
        # B A x C A y C B z
        b, a = first, second
        i = pos[a][1] - 1
        j = pos[b][1] - 1
        if not (1 < i and i + 1 < j and j + 1 < m):
            return
        c = occ[i]
        if c in (a, b) or pos[c] != (i, j):
            return
    if uniform_signs and w.sign(c) != w.sign(a):
        return
    yield MoveSite(kind, direction, (i, j))


# -- realizability on the sphere --------------------------------------------------


def _local_arcs(site: MoveSite) -> tuple[bool, list[int]]:
    """Whether the face lives in the result, and the arcs that must bound it."""
    if site.kind in ("move1", "move2"):
        if site.direction == "fwd":
            return True, [0, site.params[0] + 2]
        return False, [0, site.params[0]]
    i, j = site.params
    return False, [0, i, j]


@lru_cache(maxsize=1 << 14)
def _faces(w: SignedWord) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(f)) for f in face_arcs(w))


def _sphere_genus_zero(w: SignedWord) -> bool:
    # F = n + 2 exactly when the genus vanishes
    return not w.occ or len(_faces(w)) == w.n + 2


def _realizable(w: SignedWord, site: MoveSite, after: SignedWord) -> bool:
    if not (_sphere_genus_zero(w) and _sphere_genus_zero(after)):
        return False
    in_after, arcs = _local_arcs(site)
    return tuple(sorted(arcs)) in _faces(after if in_after else w)


def find_sites(
    w: SignedWord,
    kind: str,
    direction: str = "fwd",
    mode: str = "literal",
    uniform_signs: bool = False,
) -> list[MoveSite]:
    """All sites of one move kind and direction.

    ``mode="literal"`` returns every clause match; ``mode="sphere"`` keeps
    only sites that are moves of spherical curves.  ``uniform_signs``
    restricts move 3 to triples whose letters share one sign.
    """
    _require_nonsingular(w)
    if kind not in KINDS or direction not in DIRECTIONS or mode not in MODES:
        raise ValueError(f"bad site request {kind!r}, {direction!r}, {mode!r}")
    sites = list(_literal_sites(w, kind, direction, uniform_signs))
    if mode == "literal":
        return sites
    if not _sphere_genus_zero(w):
        return []
    if direction == "fwd" and kind != "move3" and w.occ:
        # the base point sits on arc m-1 and the split point on arc k-1; a
        # finger move joining them needs a face touching both
        m = len(w.occ)
        faces = [set(f) for f in _faces(w)]
        sites = [
            s for s in sites
            if any((m - 1) in f and (s.params[0] - 1) % m in f for f in faces)
        ]
    return [s for s in sites if _realizable(w, s, _rewrite(w, s))]


def all_sites(w: SignedWord, mode: str = "literal", uniform_signs: bool = False) -> list[MoveSite]:
    return [
        s
        for kind in KINDS
        for direction in DIRECTIONS
        for s in find_sites(w, kind, direction, mode, uniform_signs)
    ]


def rewrite(w: SignedWord, site: MoveSite) -> SignedWord:
    """Apply a site without checking that it matches (callers obtained it from find_sites)."""
    if site.kind == "shift":
        return shift(w) if site.direction == "fwd" else unshift(w)
    return canonical_word(_rewrite(w, site))


def apply(w: SignedWord, site: MoveSite, mode: str = "literal", uniform_signs: bool = False) -> SignedWord:
    """Apply a move and return the canonically labelled result."""
    if site.kind == "shift":
        return rewrite(w, site)
    if site not in find_sites(w, site.kind, site.direction, mode, uniform_signs):
        raise InvalidSite(f"{site} does not match {format_word(w)!r}")
    return canonical_word(_rewrite(w, site))


def expected_delta(site: MoveSite) -> tuple[int, int, int]:
    if site.kind == "shift":
        return (0, 0, 0)
    d = MOVE_DELTAS[site.kind]
    return d if site.direction == "fwd" else tuple(-x for x in d)


# -- random walks ------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    step: int
    site: MoveSite
    word: SignedWord

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "kind": self.site.kind,
            "dir": self.site.direction,
            "word": format_word(self.word),
            "expected_delta": list(expected_delta(self.site)),
        }


@dataclass(frozen=True)
class Walk:
    word: SignedWord
    log: list[Step] = field(default_factory=list)

    def words(self) -> list[SignedWord]:
        return [PHI] + [s.word for s in self.log]


def shift_site(direction: str = "fwd") -> MoveSite:
    """Pseudo-site moving the base point one occurrence forward (or back)."""
    return MoveSite("shift", direction, ())


def random_spherical(
    seed: int,
    steps: int,
    max_letters: int = 12,
    mode: str = "sphere",
    uniform_signs: bool = False,
    shifts: bool = True,
    pick: str = "group",
) -> Walk:
    """Seeded walk from the empty word by randomly chosen applicable moves.

    With ``pick="group"`` a (kind, direction) pair is drawn uniformly among
    those having at least one site, then a site uniformly within it;
    ``pick="site"`` draws uniformly over all sites.  When ``shifts`` is set
    the base point may also move one step either way (one group for both
    directions), which lets triple point sites reach the base point.  Forward moves 1-2 are skipped once
    they would exceed ``max_letters`` letters.
    """
    if pick not in ("group", "site"):
        raise ValueError(f"unknown pick rule {pick!r}")
    rng = random.Random(seed)
    w = PHI
    log = []
    for t in range(1, steps + 1):
        grow_ok = w.n + 2 <= max_letters
        groups: dict[tuple[str, str], list[MoveSite]] = {}
        for s in all_sites(w, mode, uniform_signs):
            if grow_ok or s.kind == "move3" or s.direction == "inv":
                groups.setdefault((s.kind, s.direction), []).append(s)
        if shifts and w.occ:
            groups[("shift", "")] = [shift_site(d) for d in DIRECTIONS]
        if not groups:
            break
        if pick == "group":
            site = rng.choice(groups[rng.choice(sorted(groups))])
        else:
            site = rng.choice([s for key in sorted(groups) for s in groups[key]])
        w = rewrite(w, site)
        log.append(Step(t, site, w))
    return Walk(w, log)
