import random
from fractions import Fraction as F

import pytest

from curveword.cyclic import shift
from curveword.errors import Inconsistent, LimitExceeded, Underdetermined
from curveword.invariants import (
    ARNOLD_NAMES,
    ARNOLD_PARAMETERS,
    PHI_CLASS,
    SymbolTable,
    evaluate,
    listed_table,
    singular_class,
)
from curveword.solver import (
    complete_arnold,
    complete_for,
    complete_symbol_table,
    completeness_check,
    invariant_space_dim,
    symbol_classes,
)
from curveword.surface import is_spherical
from curveword.words import random_word

EXPECTED_DIMS = {0: 1, 1: 2, 2: 6}


@pytest.fixture(scope="module")
def dims():
    return {d: invariant_space_dim(d, 4) for d in (0, 1, 2)}


def test_symbol_class_counts():
    assert [len(symbol_classes(d)) for d in (0, 1, 2)] == [1, 3, 15]


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_cyclic_dimensions(degree, dims):
    assert dims[degree].dimension == EXPECTED_DIMS[degree]
    assert dims[degree].stabilized_at == degree


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_dimensions_antitone_in_horizon(degree, dims):
    seq = [dims[degree].dims_by_L[L] for L in sorted(dims[degree].dims_by_L)]
    assert all(a >= b for a, b in zip(seq, seq[1:]))


@pytest.mark.parametrize("degree", [1, 2])
def test_basis_invariant_beyond_horizon(degree, dims):
    rng = random.Random(degree)
    classes = symbol_classes(degree)
    for d in dims[degree].basis:
        # basis entries are listed in symbol-class order
        table = SymbolTable(degree, dict(zip(classes, d.values())))
        for _ in range(40):
            w = random_word(rng, rng.randint(5, 7))
            assert evaluate(table, w) == evaluate(table, shift(w))


def test_spherical_domain_has_more_invariants(dims):
    sph = invariant_space_dim(2, 4, domain="spherical")
    assert sph.dimension == 8
    assert all(sph.dims_by_L[L] >= dims[2].dims_by_L[L] for L in sph.dims_by_L)


def test_dimension_guard():
    with pytest.raises(LimitExceeded):
        invariant_space_dim(3, 3)
    with pytest.raises(LimitExceeded):
        invariant_space_dim(2, 6)
    with pytest.raises(ValueError):
        invariant_space_dim(1, 2, domain="torus")


def test_dimension_report_json(dims):
    j = dims[2].to_json()
    assert j["dimension"] == 6 and j["extrapolation"] is False
    assert len(j["free_directions"]) == 6


# -- completion -------------------------------------------------------------------------


@pytest.fixture(scope="module")
def completions():
    return {name: complete_arnold(name) for name in ARNOLD_NAMES}


@pytest.mark.parametrize("name", ARNOLD_NAMES)
def test_arnold_completion_unique(name, completions):
    comp = completions[name]
    assert comp.unique
    p, q, r, a0 = ARNOLD_PARAMETERS[name]
    t = comp.table
    for cls, val in listed_table(p, q, r, a0).values.items():
        assert t.get(cls) == val
    assert t["-A* -A*"] == p
    assert all(4 % v.denominator == 0 for v in t.values.values())


@pytest.mark.parametrize("name", ARNOLD_NAMES)
def test_symbol_sign_pattern(name, completions):
    _, q, r, _ = ARNOLD_PARAMETERS[name]
    t = completions[name].table
    for ea in ("", "-"):
        for eb in ("", "-"):
            s = (1 if ea == eb else -1)
            assert t[f"{ea}A* {ea}A* {eb}B* {eb}B*"] == q * s
            assert t[f"{ea}A* {eb}B* {eb}B* {ea}A*"] == -q * s
            assert t[f"{ea}A* {eb}B* {ea}A* {eb}B*"] == r * s


@pytest.mark.parametrize("name", ARNOLD_NAMES)
def test_cyclic_and_normalization_alone_determine_table(name, completions):
    from curveword.solver import arnold_normalization

    p, q, r, a0 = ARNOLD_PARAMETERS[name]
    comp = complete_for(p, q, r, a0, None, arnold_normalization(name))
    assert comp.unique
    assert comp.table.values == completions[name].table.values


def test_completing_a_complete_table_is_identity(completions):
    t = completions["St_s"].table
    comp = complete_symbol_table(t)
    assert comp.solved == {} and comp.table.values == t.values


def test_contradiction_is_reported():
    p, q, r, a0 = ARNOLD_PARAMETERS["Jplus_s"]
    bad = listed_table(p, q, r, a0).with_values({singular_class("-A -A"): F(7)})
    from curveword.solver import arnold_deltas, arnold_normalization

    with pytest.raises(Inconsistent) as exc:
        complete_symbol_table(bad, arnold_deltas("Jplus_s"), arnold_normalization("Jplus_s"))
    assert exc.value.witness


def test_without_normalization_cyclic_leaves_freedom():
    partial = SymbolTable(2, {PHI_CLASS: 0})
    comp = complete_symbol_table(partial)
    assert not comp.unique
    with pytest.raises(Underdetermined):
        complete_symbol_table(partial, require_unique=True)


def test_completed_tables_are_cyclic_on_larger_spherical_words(completions):
    rng = random.Random(0)
    checked = 0
    while checked < 60:
        w = random_word(rng, rng.randint(5, 7))
        if not is_spherical(w):
            continue
        checked += 1
        for comp in completions.values():
            assert evaluate(comp.table, w) == evaluate(comp.table, shift(w))


# -- completeness ------------------------------------------------------------------------


@pytest.mark.parametrize("n,classes,cyclic", [(1, 3, 2), (2, 15, 6)])
def test_completeness_small(n, classes, cyclic):
    rep = completeness_check(n)
    assert (rep.classes, rep.cyclic_classes) == (classes, cyclic)
    assert rep.complete


def test_completeness_guard():
    with pytest.raises(LimitExceeded):
        completeness_check(4)
