"""Ribbon surface of a signed word and its genus.

Every letter becomes a 4-valent vertex whose half-edge slots are ordered
counterclockwise as W, S, E, N.  The first pass through a letter runs
west to east; the second pass runs south to north for a ``+`` letter and
north to south for a ``-`` letter.  Arc ``k`` of the curve joins the exit
slot of occurrence ``k`` to the entry slot of occurrence ``k + 1``
(cyclically).  Faces are the orbits of ``h -> rot(opposite(h))``.

With V = n, E = 2n and F faces, the capped surface has genus
``(2 + n - F) / 2``.  The empty word lies on the sphere by convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from curveword.errors import SingularUnsupported
from curveword.words import Sign, SignedWord

W, S, E, N = range(4)


@dataclass(frozen=True)
class RotationSystem:
    """Half-edge data: ``4 * vertex + slot`` indexes a half-edge.

    ``rot`` is the counterclockwise successor at a vertex, ``opposite`` the
    edge involution and ``arc`` the curve arc each half-edge lies on.
    """

    n: int
    rot: tuple[int, ...]
    opposite: tuple[int, ...]
    arc: tuple[int, ...]

    def faces(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.rot)
        out = []
        for h0 in range(len(self.rot)):
            if seen[h0]:
                continue
            face = []
            h = h0
            while not seen[h]:
                seen[h] = True
                face.append(h)
                h = self.rot[self.opposite[h]]
            out.append(tuple(face))
        return out


def _slots(w: SignedWord) -> tuple[list[int], list[int]]:
    """Entry and exit half-edges for each occurrence position."""
    index = {l.id: k for k, l in enumerate(w.letters)}
    seen: set[int] = set()
    entry, exit_ = [], []
    for i in w.occ:
        base = 4 * index[i]
        if i not in seen:
            seen.add(i)
            entry.append(base + W)
            exit_.append(base + E)
        elif w.sign(i) is Sign.PLUS:
            entry.append(base + S)
            exit_.append(base + N)
        else:
            entry.append(base + N)
            exit_.append(base + S)
    return entry, exit_


def rotation_system(w: SignedWord) -> RotationSystem:
    if w.has_singular:
        raise SingularUnsupported("genus is defined for non-singular words")
    n = w.n
    rot = tuple(4 * (h // 4) + (h % 4 + 1) % 4 for h in range(4 * n))
    entry, exit_ = _slots(w)
    opposite = [0] * (4 * n)
    arc = [0] * (4 * n)
    m = len(w.occ)
    for k in range(m):
        a, b = exit_[k], entry[(k + 1) % m]
        opposite[a], opposite[b] = b, a
        arc[a] = arc[b] = k
    return RotationSystem(n, rot, tuple(opposite), tuple(arc))


def face_count(w: SignedWord) -> int:
    if not w.occ:
        if w.has_singular:
            raise SingularUnsupported("genus is defined for non-singular words")
        return 0
    return len(rotation_system(w).faces())


def genus(w: SignedWord) -> int:
    if not w.occ:
        return 0
    f = face_count(w)
    g2 = 2 + w.n - f
    assert g2 >= 0 and g2 % 2 == 0, (str(w), f)
    return g2 // 2


def is_spherical(w: SignedWord) -> bool:
    return genus(w) == 0


def face_arcs(w: SignedWord) -> list[tuple[int, ...]]:
    """Faces listed as the sequence of arc indices along their boundary."""
    if not w.occ:
        return []
    rs = rotation_system(w)
    return [tuple(rs.arc[h] for h in f) for f in rs.faces()]


def surface_report(w: SignedWord) -> dict:
    return {"genus": genus(w), "faces": face_count(w), "spherical": is_spherical(w)}
