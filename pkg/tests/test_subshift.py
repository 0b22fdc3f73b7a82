import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from subconj.alphabet import HASH_FREE, SYMBOLS, ParseError, format_word, parse_word
from subconj.group import IDENTITY, GroupElement, inverse
from subconj.subshift import (
    BudgetExceeded,
    ForbiddenSet,
    Language,
    act_on_R,
    format_forbidden,
    is_admissible,
    language,
    load_forbidden,
    parse_forbidden,
    random_forbidden_set,
    verify_equivariance,
    windowed_image,
)

P = parse_word
F = ForbiddenSet.of
SAMPLE_SETS = [F(), F(P("a1")), F(P("a2 a1 a2")), F(P("a1"), P("t3")), F(P("a1 a2 a3"), P("t6"))]

odd_words = st.lists(st.sampled_from(HASH_FREE), min_size=1, max_size=3).filter(lambda w: len(w) % 2).map(tuple)
forbidden_sets = st.frozensets(odd_words, max_size=3).map(ForbiddenSet)
elements = st.builds(GroupElement.from_letters, st.lists(st.integers(1, 6), max_size=5))


def toks(w):
    return format_word(w).split()


def test_forbidden_set_validation():
    with pytest.raises(ValueError):
        F(P("a1 a2"))
    with pytest.raises(ValueError):
        F(P("#"))
    with pytest.raises(ValueError):
        F(())
    R = F(P("t1"), P("a1"), P("a1"))
    assert len(R) == 2
    assert list(R) == [P("a1"), P("t1")]
    assert str(R) == "{a1, t1}"
    assert P("t1") in R


def test_is_admissible_examples():
    R = F(P("a1"))
    assert not is_admissible(R, P("# a1 #"))
    assert is_admissible(R, P("# a1 a1 #"))
    assert is_admissible(F(), P("# a1 # # t3"))
    assert not is_admissible(F(P("a2 a1 a2")), P("a3 # a2 a1 a2 # #"))
    # the forbidden pattern must be delimited by consecutive hashes
    assert is_admissible(F(P("a1")), P("# a1 a2 # a1"))


@given(forbidden_sets, st.lists(st.sampled_from(SYMBOLS), max_size=9))
def test_is_admissible_matches_brute_force(R, u):
    assert is_admissible(R, u) == oracles.admissible({tuple(toks(w)) for w in R}, toks(u))


def test_language_examples():
    assert len(language(F(P("a1")), 3)) == 2196
    assert P("# a1 #") not in language(F(P("a1")), 3)
    assert len(language(F(P("a1")), 2)) == 169
    assert set(language(F(), 1)) == {(s,) for s in SYMBOLS}
    assert list(language(F(), 0)) == [()]


def test_language_is_sorted_and_iterable():
    L = language(F(P("a1")), 2)
    words = list(L)
    assert words == sorted(words)
    assert len(words) == len(set(words)) == len(L)
    assert np.array_equal(L.array(), np.array(words))


@pytest.mark.parametrize("R", SAMPLE_SETS[1:], ids=str)
def test_language_matches_extension_oracle(R):
    token_R = {tuple(toks(w)) for w in R}
    for n in range(4):
        got = set(language(R, n))
        for u in itertools.product(SYMBOLS, repeat=n):
            assert (u in got) == oracles.extendable(token_R, toks(u)), u


@pytest.mark.parametrize("R", SAMPLE_SETS, ids=str)
def test_language_bounds_and_factor_closure(R):
    for n in range(5):
        L = language(R, n)
        assert 12**n <= len(L) <= 13**n
    L4, L3 = language(R, 4), language(R, 3)
    for w in L4:
        assert w[1:] in L3 and w[:-1] in L3


def test_monotonicity():
    for R, S in itertools.combinations(SAMPLE_SETS, 2):
        union = ForbiddenSet(R.members | S.members)
        for n in range(6):
            assert language(union, n) <= language(R, n)
            assert language(union, n) <= language(S, n)


def test_language_set_semantics():
    a = language(F(P("a1")), 3)
    b = language(F(P("a1"), P("t3")), 3)
    assert b <= a and not a <= b
    assert a != b
    assert a == set(a)
    side, w = a.difference_witness(b)
    assert side == "left-only" and w == P("# t3 #")
    assert a.difference_witness(a) is None
    with pytest.raises(ValueError):
        Language(2, np.ones(13, dtype=bool))


def test_budget():
    with pytest.raises(BudgetExceeded):
        language(F(), 8)
    with pytest.raises(BudgetExceeded):
        language(F(), 3, budget=100)
    with pytest.raises(ValueError):
        language(F(), -1)


def test_act_on_R_examples():
    g1 = GroupElement.generator(1)
    assert act_on_R(g1, F(P("a1"))) == F(P("t1"))
    R = F(P("a1"), P("a4 t2 a3"))
    assert act_on_R(IDENTITY, R) == R
    assert act_on_R(g1, F(P("a2 a1 a2"))) == F(P("a2 t1 a2"))


@given(elements, forbidden_sets)
def test_act_on_R_is_invertible(g, R):
    image = act_on_R(g, R)
    assert len(image) == len(R)
    assert act_on_R(g, act_on_R(inverse(g), R)) == R


@pytest.mark.parametrize("i, R, n", [(1, F(P("a1")), 3), (4, F(), 2), (2, F(P("a2")), 4)], ids=str)
def test_equivariance_examples(i, R, n):
    rep = verify_equivariance(i, R, n)
    assert rep.passed, rep.counterexample
    assert rep.checked == 13**n


@pytest.mark.parametrize("i", [1, 3, 6])
def test_windowed_image_matches_brute_force(i):
    R = F(P("a1"), P("t3 a2 a6"))
    token_R = {tuple(toks(w)) for w in R}
    expected = set()
    for u in itertools.product(oracles.TOKENS, repeat=3):
        if oracles.admissible(token_R, list(u)):
            expected.add(tuple(oracles.windowed(i, list(u))))
    got = {tuple(toks(w)) for w in windowed_image(i, R, 2)}
    assert got == expected


@settings(max_examples=15, deadline=None)
@given(forbidden_sets, st.integers(1, 6), st.integers(1, 4))
def test_equivariance_property(R, i, n):
    assert verify_equivariance(i, R, n)


def test_equivariance_reports_failure(monkeypatch):
    import subconj.subshift as mod

    # pretend f* acts trivially: the image of X({a1}) under g1 then disagrees with X({a1})
    monkeypatch.setattr(mod, "act_on_R", lambda g, R: R)
    rep = verify_equivariance(1, F(P("a1")), 3)
    assert not rep.passed
    assert "'# a1 #'" in rep.counterexample or "'# t1 #'" in rep.counterexample


def test_parse_forbidden():
    text = "// header\na1\n\n  t2 a3 a4  \n// a5\n"
    assert parse_forbidden(text) == F(P("a1"), P("t2 a3 a4"))
    assert format_forbidden(F(P("t1"), P("a2"))) == "a2\nt1\n"
    assert parse_forbidden(format_forbidden(F(P("t1"), P("a2 a3 a4")))) == F(P("t1"), P("a2 a3 a4"))


@pytest.mark.parametrize(
    "text, line",
    [("a1\na1 a2\n", 2), ("a1 # a2\n", 1), ("a1\n\nq7\n", 3)],
)
def test_parse_forbidden_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_forbidden(text)
    assert f"line {line}" in str(info.value)


def test_load_forbidden(tmp_path):
    path = tmp_path / "r.txt"
    path.write_text("a2 a1 a2\n")
    assert load_forbidden(path) == F(P("a2 a1 a2"))


def test_random_forbidden_set_is_seeded():
    R = random_forbidden_set(3, 42)
    assert R == random_forbidden_set(3, 42)
    assert len(R) == 3
    assert all(len(w) in (1, 3) for w in R)
    assert str(R) == "{a6 a6 t5, t3, t4}"
