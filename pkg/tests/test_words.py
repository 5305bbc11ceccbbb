import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import brute_force_classes, signed_words
from curveword.errors import LetterCountError, LimitExceeded, SignConflictError, UnknownLetter, WordSyntaxError
from curveword.words import (
    PHI,
    Sign,
    canonical_word,
    canonicalize,
    class_count,
    enumerate_words,
    format_word,
    parse,
    relabel,
    star,
    subword,
)


def test_parse_signed_word():
    w = parse("A -B A -B")
    assert len(w) == 4
    assert w.sign(0) is Sign.PLUS and w.sign(1) is Sign.MINUS
    assert not w.has_singular


def test_parse_empty_is_phi():
    assert parse("") == PHI
    assert parse("   \n ") == PHI
    assert format_word(PHI) == ""


def test_parse_singular_and_identifiers():
    w = parse("x1* -y x1* -y")
    assert w.is_singular(0) and not w.is_singular(1)
    assert format_word(w) == "A* -B A* -B"


@pytest.mark.parametrize(
    "text, exc",
    [
        ("A B A", LetterCountError),
        ("A A A", LetterCountError),
        ("A -A", SignConflictError),
        ("A* A", SignConflictError),
        ("A 1B A 1B", WordSyntaxError),
        ("A- A-", WordSyntaxError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse(text)


def test_whitespace_insensitive():
    assert parse("A\t-B   A\n-B") == parse("A -B A -B")


@pytest.mark.parametrize(
    "text, canon",
    [("B A B A", "A B A B"), ("B -C B -C", "A -B A -B"), ("C C -B -B", "A A -B -B")],
)
def test_canonicalize_examples(text, canon):
    w = parse(text)
    # parse labels by first occurrence, so relabel first to test the real work
    scrambled = relabel(w, {i: 7 - i for i in w.ids})
    assert str(canonicalize(scrambled)) == canon


def test_many_letters_use_numbered_names():
    w = canonical_word(parse(" ".join(f"X{i} X{i}" for i in range(27))))
    toks = format_word(w).split()
    assert toks[:2] == ["A1", "A1"] and toks[-1] == "A27"
    assert parse(format_word(w)) == w


def test_subword_examples():
    assert format_word(canonical_word(subword(parse("A B A B"), {0}))) == "A A"
    assert format_word(canonical_word(subword(parse("A -B A -B"), {1}))) == "-A -A"
    w = parse("A B -C A -C B")
    assert subword(w, w.ids) == w
    assert subword(w, set()) == PHI
    with pytest.raises(UnknownLetter):
        subword(w, {5})


@pytest.mark.parametrize("n, count", [(0, 1), (1, 2), (2, 12), (3, 120)])
def test_enumeration_counts_match_brute_force(n, count):
    got = enumerate_words(n)
    assert len(got) == count == class_count(n)
    assert len(set(got)) == count
    assert set(got) == brute_force_classes(n)


def test_enumeration_n2_patterns():
    pats = {tuple(c.word.occ) for c in enumerate_words(2)}
    assert pats == {(0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 0)}
    assert len(enumerate_words(2, signed=False)) == 3


def test_enumeration_is_deterministic():
    assert [c.key for c in enumerate_words(3)] == [c.key for c in enumerate_words(3)]


def test_enumeration_guard(monkeypatch):
    with pytest.raises(LimitExceeded):
        enumerate_words(7)
    monkeypatch.setenv("CURVEWORD_LIMIT", "2")
    with pytest.raises(LimitExceeded):
        enumerate_words(3)
    assert len(enumerate_words(3, limit=3)) == 120


@given(signed_words(singular=True))
def test_format_parse_round_trip(w):
    assert canonicalize(parse(format_word(w))) == canonicalize(w)


@given(signed_words(singular=True))
def test_canonicalize_idempotent(w):
    c = canonicalize(w)
    assert canonicalize(c.word) == c
    assert c.word == canonical_word(c.word)


@given(signed_words(max_letters=5), st.randoms(use_true_random=False))
def test_relabeling_preserves_class(w, rng):
    ids = list(w.ids)
    target = rng.sample(range(50), len(ids))
    assert canonicalize(relabel(w, dict(zip(ids, target)))) == canonicalize(w)


@given(signed_words(max_letters=5))
def test_sign_or_singular_change_breaks_isomorphism(w):
    if w.n:
        assert canonicalize(star(w, [w.ids[0]])) != canonicalize(w)


@given(signed_words(max_letters=5), st.data())
def test_subword_lattice(w, data):
    ids = list(w.ids)
    subsets = [s for k in range(len(ids) + 1) for s in itertools.combinations(ids, k)]
    assert len(subsets) == 2**w.n
    big = data.draw(st.sets(st.sampled_from(ids)) if ids else st.just(set()))
    small = data.draw(st.sets(st.sampled_from(sorted(big))) if big else st.just(set()))
    assert subword(subword(w, big), small) == subword(w, small)


@given(signed_words(max_letters=4))
def test_enumeration_contains_random_words(w):
    assert canonicalize(w) in set(enumerate_words(w.n))
