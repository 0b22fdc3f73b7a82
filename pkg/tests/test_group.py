import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from subconj.alphabet import HASH_FREE, ParseError, format_word, parse_word, words_up_to
from subconj.group import (
    IDENTITY,
    GroupElement,
    act,
    claim1_witness,
    format_element,
    inverse,
    moved_words,
    multiply,
    normal_forms,
    parse_element,
    verify_freeness,
    verify_group_axioms,
    verify_homomorphism,
    verify_moved_words,
)

P = parse_word
G = GroupElement


def reduced(triple):
    return st.lists(st.sampled_from(triple), max_size=5).map(
        lambda xs: tuple(x for k, x in enumerate(xs) if k == 0 or xs[k - 1] != x)
    )


elements = st.builds(G, reduced([1, 2, 3]), reduced([4, 5, 6]))
hf_words = st.lists(st.sampled_from(HASH_FREE), max_size=6).map(tuple)


def oracle_act(g, w):
    toks = format_word(w).split()
    for letter in reversed(g.letters):
        toks = oracles.star(letter, toks)
    return toks


def test_multiply_examples():
    assert multiply(G((1,)), G((1,))) == IDENTITY
    assert multiply(G((1, 2)), G((2,), (4,))) == G((1,), (4,))
    g = G((1, 3), (5,))
    assert multiply(IDENTITY, g) == g
    assert G((1,)) * G((2,)) == G((1, 2))


def test_inverse_examples():
    assert inverse(G((1, 2, 1))) == G((1, 2, 1))
    assert inverse(G((1, 2), (4, 5))) == G((2, 1), (5, 4))
    assert inverse(IDENTITY) == IDENTITY


def test_normal_form_validation():
    with pytest.raises(ValueError):
        G((1, 1))
    with pytest.raises(ValueError):
        G((4,))
    with pytest.raises(ValueError):
        G((), (1,))
    assert G.from_letters([1, 4, 2, 3, 5, 1]) == G((1, 2, 3, 1), (4, 5))
    assert G.from_letters([1, 4, 2, 2, 1, 5]) == G((), (4, 5))


def test_normal_form_counts():
    # a reduced factor of length l > 0 has 3 * 2^(l-1) choices
    per = [1] + [3 * 2 ** (k - 1) for k in range(1, 5)]
    expected = sum(per[a] * per[b] for a in range(5) for b in range(5) if a + b <= 4)
    assert len(list(normal_forms(4))) == expected == 244


@pytest.mark.parametrize(
    "text, g",
    [
        ("1 2 1 | 4 5", G((1, 2, 1), (4, 5))),
        ("|", IDENTITY),
        ("", IDENTITY),
        ("1 2 |", G((1, 2))),
        ("| 6", G((), (6,))),
        ("1 4 2", G((1, 2), (4,))),
    ],
)
def test_parse_element(text, g):
    assert parse_element(text) == g


@pytest.mark.parametrize("text", ["1 1 |", "| 1", "x |", "4 | 5", "1 | 4 4"])
def test_parse_element_rejects(text):
    with pytest.raises(ParseError):
        parse_element(text)


@given(elements)
def test_format_parse_round_trip(g):
    assert parse_element(format_element(g)) == g
    assert str(g) == format_element(g)


def test_act_examples():
    assert act(G((1,)), P("t1")) == P("a1")
    assert act(G((1, 2)), P("t1 t2")) == P("a1 a2")
    w = P("a2 t5 a6")
    assert act(IDENTITY, w) == w
    with pytest.raises(ValueError):
        act(G((1,)), P("a1 #"))


@given(elements, hf_words)
def test_act_matches_oracle(g, w):
    out = act(g, w)
    assert format_word(out).split() == oracle_act(g, w)
    assert len(out) == len(w)


@given(elements, elements, hf_words)
def test_act_is_homomorphism(g, h, w):
    assert act(g * h, w) == act(g, act(h, w))
    assert act(inverse(g), act(g, w)) == w


@given(reduced([1, 2, 3]), reduced([4, 5, 6]), hf_words)
def test_factor_order_is_irrelevant(left, right, w):
    lg, rg = G(left), G((), right)
    assert act(lg, act(rg, w)) == act(rg, act(lg, w))


@pytest.mark.parametrize("i", range(1, 7))
def test_generators_have_order_two(i):
    g = G.generator(i)
    assert g * g == IDENTITY
    words = list(words_up_to(3, HASH_FREE))
    assert all(act(g, act(g, w)) == w for w in words)
    assert any(act(g, w) != w for w in words)


def test_claim1_witness_examples():
    assert claim1_witness(G((1,))) == P("t1")
    v = claim1_witness(G((1, 2)))
    assert v == P("t1 t2")
    assert act(G((1, 2)), v)[0] == P("a1")[0]
    assert claim1_witness(G((), (4,))) == P("t4")
    assert act(G((), (4,)), P("t4")) == P("a4")
    v = claim1_witness(G((2, 3), (6,)), P("a1 a3"))
    assert v == P("a1 a3 t2 t3")
    assert act(G((2, 3), (6,)), v)[2] == P("a2")[0]


def test_claim1_witness_errors():
    with pytest.raises(ValueError):
        claim1_witness(IDENTITY)
    with pytest.raises(ValueError):
        claim1_witness(G((1,)), P("a4"))
    with pytest.raises(ValueError):
        claim1_witness(G((), (5,)), P("a1"))


@given(elements.filter(lambda g: not g.is_identity), st.lists(st.sampled_from([1, 2, 3]), max_size=4))
def test_claim1_position_statement(g, prefix_idx):
    triple = [1, 2, 3] if g.left else [4, 5, 6]
    prefix = P(" ".join(f"a{triple[k - 1]}" for k in prefix_idx))
    v = claim1_witness(g, prefix)
    first = (g.left or g.right)[0]
    assert oracle_act(g, v)[len(prefix)] == f"a{first}"


def test_moved_words_examples():
    words = moved_words(G((1,)), 3)
    assert words == [P("t1"), P("a1 t1"), P("a2 t1")]
    assert len(moved_words(G((1,), (4,)), 1)) == 1
    for g in (G((3, 1, 2), (5,)), G((), (6, 4))):
        ws = moved_words(g, 13)
        assert len(set(ws)) == 13
        assert all(act(g, v) != v for v in ws)
    with pytest.raises(ValueError):
        moved_words(IDENTITY, 1)
    with pytest.raises(ValueError):
        moved_words(G((1,)), 0)


def test_group_axioms_report():
    rep = verify_group_axioms(3)
    assert rep.passed, rep.counterexample
    assert rep.detail == f"elements={len(list(normal_forms(3)))}"


def test_homomorphism_report():
    rep = verify_homomorphism(2, 3)
    assert rep.passed, rep.counterexample
    n_el = len(list(normal_forms(2)))
    assert rep.checked == n_el**2 * sum(12**n for n in range(4))


def test_freeness_and_moved_words_reports():
    rep = verify_freeness(4)
    assert rep.passed
    assert rep.checked == len(list(normal_forms(4))) - 1
    assert verify_moved_words(5)


def test_distinct_normal_forms_act_differently():
    # brute force: elements of norm <= 2 are separated by their action on length-3 words
    words = list(words_up_to(3, HASH_FREE, min_len=3))
    seen = {}
    for g in normal_forms(2):
        key = tuple(act(g, w) for w in words)
        assert key not in seen, (g, seen.get(key))
        seen[key] = g
    assert len(seen) == len(list(normal_forms(2)))
