import itertools

import pytest
from hypothesis import strategies as st

from curveword.words import Letter, Sign, SignedWord, canonical_word, canonicalize


# -- independent oracles ----------------------------------------------------------------


def brute_force_classes(n):
    """Distinct canonical classes over every arrangement of n doubled letters and signs."""
    base = [i for i in range(n) for _ in (0, 1)]
    out = set()
    for perm in set(itertools.permutations(base)):
        for signs in itertools.product((Sign.PLUS, Sign.MINUS), repeat=n):
            w = SignedWord(perm, tuple(Letter(i, s) for i, s in enumerate(signs)))
            out.add(canonicalize(w))
    return out


def side_walk_faces(w):
    """Count boundary circles of the band around the curve by walking its edges.

    First passes point along (1, 0); second passes along (0, 1) for a plus
    letter and (0, -1) for a minus letter.  The walker keeps the boundary on
    its left and turns onto the crossing strand toward that side.
    """
    m = len(w.occ)
    if m == 0:
        return 0
    seen = set()
    d = []
    for k, i in enumerate(w.occ):
        if i in seen:
            d.append((0, 1) if w.sign(i) is Sign.PLUS else (0, -1))
        else:
            seen.add(i)
            d.append((1, 0))
    other = {}
    for i, (p, q) in w.positions.items():
        other[p], other[q] = q, p

    def step(state):
        arc, f = state
        o1 = (arc + 1) % m if f == 1 else arc
        u = (f * d[o1][0], f * d[o1][1])
        o2 = other[o1]
        e = d[o2]
        cross = u[0] * e[1] - u[1] * e[0]
        if cross > 0:
            return (o2, 1)
        return ((o2 - 1) % m, -1)

    states = {(k, f) for k in range(m) for f in (1, -1)}
    cycles = 0
    while states:
        s0 = states.pop()
        s = step(s0)
        while s != s0:
            states.remove(s)
            s = step(s)
        cycles += 1
    return cycles


def recursive_value(table, w):
    """Prolonged invariant by unfolding v(w) = v(w with A starred) + v(w minus A)."""
    plain = [i for i in w.ids if not w.is_singular(i)]
    if not plain:
        from curveword.invariants import restricted_key

        return table.get_key(restricted_key(w, w.ids))
    a = plain[-1]
    from curveword.words import delete, star

    return recursive_value(table, star(w, [a])) + recursive_value(table, delete(w, [a]))


# -- hypothesis strategies -----------------------------------------------------------------


@st.composite
def signed_words(draw, min_letters=0, max_letters=6, singular=False):
    n = draw(st.integers(min_letters, max_letters))
    occ = draw(st.permutations([i for i in range(n) for _ in (0, 1)]))
    signs = draw(st.lists(st.sampled_from([Sign.PLUS, Sign.MINUS]), min_size=n, max_size=n))
    flags = (
        draw(st.lists(st.booleans(), min_size=n, max_size=n)) if singular else [False] * n
    )
    w = SignedWord(tuple(occ), tuple(Letter(i, s, f) for i, s, f in zip(range(n), signs, flags)))
    return canonical_word(w)


fractions = st.fractions(min_value=-10, max_value=10, max_denominator=6)


@pytest.fixture(scope="session")
def arnold():
    from curveword.invariants import arnold_tables

    return arnold_tables()


# -- acceptance reporting --------------------------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


class _Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.detail if ok else f"{self.detail} {exc_type.__name__}: {exc}".strip()
        ACCEPTANCE_RESULTS[self.number] = (ok, f"{self.title}; {detail}" if detail else self.title)
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {text}")
