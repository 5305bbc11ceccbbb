"""Signed Gauss words, possibly carrying singular letters.

A word is a sequence of letter occurrences in which every letter occurs
exactly twice.  Each letter carries a sign and a singular flag; both are
attributes of the letter, not of an occurrence.

Text notation is a whitespace separated token list.  A token is an
identifier optionally prefixed by ``-`` (negative sign, an overbar in
print) and optionally suffixed by ``*`` (singular letter)::

    >>> w = parse("A -B A -B")
    >>> format_word(w)
    'A -B A -B'
    >>> format_word(canonicalize(parse("B -C B -C")).word)
    'A -B A -B'

Comparisons between words of equal length use a fixed token order:
positions are compared left to right by (canonical label, sign with
``+ < -``, singular flag with ``actual < singular``).
"""

from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from curveword.errors import (
    LetterCountError,
    LimitExceeded,
    SignConflictError,
    UnknownLetter,
    WordSyntaxError,
)

DEFAULT_ENUM_LIMIT = 6


class Sign(IntEnum):
    PLUS = 1
    MINUS = -1

    def flip(self) -> "Sign":
        return Sign(-self.value)

    @property
    def order(self) -> int:
        # plus sorts before minus
        return 0 if self is Sign.PLUS else 1


@dataclass(frozen=True, order=True)
class Letter:
    id: int
    sign: Sign = Sign.PLUS
    singular: bool = False


@dataclass(frozen=True)
class SignedWord:
    """An immutable based signed word.

    ``occ`` lists letter ids in reading order and ``letters`` holds one
    :class:`Letter` per id, sorted by id.
    """

    occ: tuple[int, ...]
    letters: tuple[Letter, ...]

    def __post_init__(self):
        counts: dict[int, int] = {}
        for i in self.occ:
            counts[i] = counts.get(i, 0) + 1
        ids = [l.id for l in self.letters]
        if len(set(ids)) != len(ids):
            raise SignConflictError(f"duplicate letter entries: {ids}")
        bad = sorted(i for i, c in counts.items() if c != 2)
        if bad:
            raise LetterCountError(f"letters {bad} do not occur exactly twice")
        if set(ids) != set(counts):
            raise LetterCountError(
                f"letter table {sorted(ids)} does not match occurrences {sorted(counts)}"
            )
        if list(ids) != sorted(ids):
            object.__setattr__(self, "letters", tuple(sorted(self.letters)))

    @classmethod
    def build(
        cls,
        occ: Iterable[int],
        signs: Mapping[int, Sign | int] | None = None,
        singular: Iterable[int] = (),
    ) -> "SignedWord":
        """Build a word from occurrences, a sign map (default all plus) and singular ids."""
        occ = tuple(occ)
        signs = signs or {}
        singular = set(singular)
        letters = tuple(
            Letter(i, Sign(signs.get(i, Sign.PLUS)), i in singular) for i in sorted(set(occ))
        )
        return cls(occ, letters)

    @cached_property
    def table(self) -> dict[int, Letter]:
        return {l.id: l for l in self.letters}

    @property
    def n(self) -> int:
        """Number of letters (half the length)."""
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.occ)

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(l.id for l in self.letters)

    def sign(self, letter: int) -> Sign:
        return self.table[letter].sign

    def is_singular(self, letter: int) -> bool:
        return self.table[letter].singular

    @property
    def singular_ids(self) -> frozenset[int]:
        return frozenset(l.id for l in self.letters if l.singular)

    @property
    def has_singular(self) -> bool:
        return any(l.singular for l in self.letters)

    @cached_property
    def positions(self) -> dict[int, tuple[int, int]]:
        """Map letter id to the positions of its first and second occurrence."""
        pos: dict[int, list[int]] = {}
        for k, i in enumerate(self.occ):
            pos.setdefault(i, []).append(k)
        return {i: (p[0], p[1]) for i, p in pos.items()}

    def __str__(self) -> str:
        return format_word(self)


PHI = SignedWord((), ())


@dataclass(frozen=True, order=True)
class WordClass:
    """Isomorphism class of a signed word, held by its canonical representative."""

    key: tuple[tuple[int, int, bool], ...]
    word: SignedWord = field(compare=False, repr=False)

    def __str__(self) -> str:
        return format_word(self.word)

    @property
    def n(self) -> int:
        return self.word.n


# -- notation ---------------------------------------------------------------

_TOKEN = re.compile(r"^(-?)([A-Za-z][A-Za-z0-9]*)(\*?)$")


def parse(text: str) -> SignedWord:
    """Parse the token notation into a word.

    Letter ids are assigned in order of first occurrence, so the result is
    already canonically labelled.
    """
    names: dict[str, int] = {}
    seen: dict[str, tuple[Sign, bool]] = {}
    counts: dict[str, int] = {}
    occ = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise WordSyntaxError(f"malformed token {tok!r}")
        minus, name, star = m.groups()
        attrs = (Sign.MINUS if minus else Sign.PLUS, bool(star))
        if name in seen and seen[name] != attrs:
            raise SignConflictError(f"occurrences of {name} carry different markers")
        seen[name] = attrs
        counts[name] = counts.get(name, 0) + 1
        names.setdefault(name, len(names))
        occ.append(names[name])
    bad = [name for name, c in counts.items() if c != 2]
    if bad:
        raise LetterCountError(f"letters {bad} do not occur exactly twice")
    letters = tuple(Letter(names[nm], *seen[nm]) for nm in names)
    return SignedWord(tuple(occ), letters)


def letter_name(i: int, n_letters: int) -> str:
    if n_letters <= 26:
        return chr(ord("A") + i)
    return f"A{i + 1}"


def format_word(w: SignedWord | WordClass) -> str:
    """Render a word in the token notation (``""`` for the empty word)."""
    if isinstance(w, WordClass):
        w = w.word
    big = max(w.ids, default=0) + 1
    size = max(big, w.n)
    toks = []
    for i in w.occ:
        l = w.table[i]
        toks.append(
            ("-" if l.sign is Sign.MINUS else "") + letter_name(i, size) + ("*" if l.singular else "")
        )
    return " ".join(toks)


# -- canonical forms ---------------------------------------------------------


def relabel(w: SignedWord, mapping: Mapping[int, int]) -> SignedWord:
    """Rename letters through a bijection ``old id -> new id``."""
    occ = tuple(mapping[i] for i in w.occ)
    letters = tuple(Letter(mapping[l.id], l.sign, l.singular) for l in w.letters)
    return SignedWord(occ, letters)


def canonical_word(w: SignedWord) -> SignedWord:
    """Relabel letters 0, 1, 2, ... in order of first occurrence."""
    mapping: dict[int, int] = {}
    for i in w.occ:
        if i not in mapping:
            mapping[i] = len(mapping)
    if all(k == v for k, v in mapping.items()):
        return w
    return relabel(w, mapping)


def token_key(w: SignedWord) -> tuple[tuple[int, int, bool], ...]:
    """Comparison key of a canonically labelled word."""
    t = w.table
    return tuple((i, t[i].sign.order, t[i].singular) for i in w.occ)


def canonicalize(w: SignedWord) -> WordClass:
    c = canonical_word(w)
    return WordClass(token_key(c), c)


def is_isomorphic(u: SignedWord, v: SignedWord) -> bool:
    return canonicalize(u) == canonicalize(v)


# -- letter operations ---------------------------------------------------------


def subword(w: SignedWord, keep: Iterable[int]) -> SignedWord:
    """Delete every letter not in ``keep`` (virtualize those crossings)."""
    keep = set(keep)
    unknown = keep - set(w.ids)
    if unknown:
        raise UnknownLetter(f"letters {sorted(unknown)} are not in the word")
    occ = tuple(i for i in w.occ if i in keep)
    letters = tuple(l for l in w.letters if l.id in keep)
    return SignedWord(occ, letters)


def delete(w: SignedWord, letters: Iterable[int]) -> SignedWord:
    drop = set(letters)
    return subword(w, [i for i in w.ids if i not in drop])


def star(w: SignedWord, letters: Iterable[int] | None = None) -> SignedWord:
    """Make the given letters (default: all) singular, keeping signs."""
    chosen = set(w.ids) if letters is None else set(letters)
    unknown = chosen - set(w.ids)
    if unknown:
        raise UnknownLetter(f"letters {sorted(unknown)} are not in the word")
    return SignedWord(
        w.occ, tuple(Letter(l.id, l.sign, l.singular or l.id in chosen) for l in w.letters)
    )


def unstar(w: SignedWord, letters: Iterable[int] | None = None) -> SignedWord:
    chosen = set(w.ids) if letters is None else set(letters)
    return SignedWord(
        w.occ, tuple(Letter(l.id, l.sign, l.singular and l.id not in chosen) for l in w.letters)
    )


def flip_signs(w: SignedWord) -> SignedWord:
    """Reverse the sign of every letter (mirror image of the curve)."""
    return SignedWord(w.occ, tuple(Letter(l.id, l.sign.flip(), l.singular) for l in w.letters))


def reversed_word(w: SignedWord) -> SignedWord:
    """Read the occurrences backwards; signs are kept as they are."""
    return canonical_word(SignedWord(w.occ[::-1], w.letters))


def concat(u: SignedWord, v: SignedWord) -> SignedWord:
    """Concatenate two words, renaming the letters of ``v`` to be disjoint from ``u``."""
    off = max(u.ids, default=-1) + 1
    v2 = relabel(v, {i: i + off for i in v.ids})
    return SignedWord(u.occ + v2.occ, u.letters + v2.letters)


def chain_word(i: int, sign: Sign = Sign.PLUS) -> SignedWord:
    """The word A1 A1 A2 A2 ... Ai Ai of the chain curve with i kinks."""
    occ = tuple(k for k in range(i) for _ in (0, 1))
    return SignedWord(occ, tuple(Letter(k, sign) for k in range(i)))


# -- enumeration ---------------------------------------------------------------


def enumeration_limit(limit: int | None = None) -> int:
    if limit is not None:
        return limit
    env = os.environ.get("CURVEWORD_LIMIT")
    return int(env) if env else DEFAULT_ENUM_LIMIT


def gauss_patterns(n: int) -> Iterator[tuple[int, ...]]:
    """All canonically labelled unsigned Gauss words with ``n`` letters.

    The leftmost free slot always receives the next fresh letter, whose
    partner goes to any later free slot, so each pattern appears once.
    """
    slots = [-1] * (2 * n)

    def fill(nxt: int):
        try:
            first = slots.index(-1)
        except ValueError:
            yield tuple(slots)
            return
        slots[first] = nxt
        for second in range(first + 1, 2 * n):
            if slots[second] == -1:
                slots[second] = nxt
                yield from fill(nxt + 1)
                slots[second] = -1
        slots[first] = -1

    yield from fill(0)


def class_count(n: int, signed: bool = True) -> int:
    """Number of isomorphism classes of length ``2n``: (2n-1)!! patterns times 2^n signs."""
    patterns = math.factorial(2 * n) // (math.factorial(n) * 2**n)
    return patterns * (2**n if signed else 1)


def enumerate_words(n: int, signed: bool = True, limit: int | None = None) -> list[WordClass]:
    """One canonical representative per isomorphism class of length ``2n``.

    Order is deterministic: patterns in generation order, then sign
    assignments in lexicographic order with plus first.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    lim = enumeration_limit(limit)
    if n > lim:
        raise LimitExceeded(f"enumeration of n={n} exceeds the guard n <= {lim}")
    choices = (Sign.PLUS, Sign.MINUS) if signed else (Sign.PLUS,)
    out = []
    for pat in gauss_patterns(n):
        for signs in itertools.product(choices, repeat=n):
            w = SignedWord(pat, tuple(Letter(i, s) for i, s in enumerate(signs)))
            out.append(WordClass(token_key(w), w))
    return out


def enumerate_up_to(n: int, signed: bool = True, limit: int | None = None) -> list[WordClass]:
    return [c for k in range(n + 1) for c in enumerate_words(k, signed, limit)]


def random_word(rng, n: int, p_minus: float = 0.5, p_singular: float = 0.0) -> SignedWord:
    """A uniformly shuffled Gauss word with random signs and singular flags."""
    occ = [i for i in range(n) for _ in (0, 1)]
    rng.shuffle(occ)
    letters = tuple(
        Letter(i, Sign.MINUS if rng.random() < p_minus else Sign.PLUS, rng.random() < p_singular)
        for i in range(n)
    )
    return canonical_word(SignedWord(tuple(occ), letters))
