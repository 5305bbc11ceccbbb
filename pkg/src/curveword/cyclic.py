"""Cyclic equivalence: moving the base point past one crossing.

The generating rule rewrites ``A x A y`` into ``x A' y A'`` where ``A'``
carries the opposite sign.  Positionally this rotates the word by one
step and flips the sign of the letter that moved to the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from curveword.errors import SingularUnsupported
from curveword.words import (
    Letter,
    SignedWord,
    WordClass,
    canonical_word,
    canonicalize,
)


def _require_nonsingular(w: SignedWord) -> None:
    if w.has_singular:
        raise SingularUnsupported("cyclic equivalence is only defined on non-singular words")


def shift(w: SignedWord) -> SignedWord:
    _require_nonsingular(w)
    if not w.occ:
        return w
    a = w.occ[0]
    letters = tuple(Letter(l.id, l.sign.flip(), False) if l.id == a else l for l in w.letters)
    return canonical_word(SignedWord(w.occ[1:] + w.occ[:1], letters))


def unshift(w: SignedWord) -> SignedWord:
    """Inverse of :func:`shift`: ``x A y A -> A' x A' y``."""
    _require_nonsingular(w)
    if not w.occ:
        return w
    a = w.occ[-1]
    letters = tuple(Letter(l.id, l.sign.flip(), False) if l.id == a else l for l in w.letters)
    return canonical_word(SignedWord(w.occ[-1:] + w.occ[:-1], letters))


def orbit(w: SignedWord) -> list[SignedWord]:
    """The 2n shift iterates of ``w`` starting with ``w`` itself (canonical labels)."""
    cur = canonical_word(w)
    out = [cur]
    for _ in range(max(len(w.occ) - 1, 0)):
        cur = shift(cur)
        out.append(cur)
    return out


def orbit_classes(w: SignedWord) -> list[WordClass]:
    """Distinct isomorphism classes on the shift orbit, sorted."""
    return sorted(set(canonicalize(u) for u in orbit(w)))


@dataclass(frozen=True, order=True)
class CyclicClass:
    representative: WordClass

    def __str__(self) -> str:
        return str(self.representative)


def cyclic_canonical(w: SignedWord) -> CyclicClass:
    _require_nonsingular(w)
    return CyclicClass(min(canonicalize(u) for u in orbit(w)))


def cyclically_equivalent(u: SignedWord, v: SignedWord) -> bool:
    return cyclic_canonical(u) == cyclic_canonical(v)
