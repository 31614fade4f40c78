import pytest

from kaltools.automata import accepts, minimize
from kaltools.constructions import (content_dfa, mod_count_dfa, prop2_K, prop2_L,
                                    sl_free_monoid, star_dfa)
from kaltools.errors import InputError
from kaltools.monoids import green_summary, syntactic_monoid

from oracles import words


def test_prop2_K():
    assert accepts(prop2_K(2), "b")
    assert not accepts(prop2_K(2), "ba")
    for k in (2, 3, 4, 5):
        assert minimize(prop2_K(k)).states == k
    with pytest.raises(InputError):
        prop2_K(1)


def test_prop2_L():
    assert accepts(prop2_L(2), "a")
    for ell in (2, 3, 4):
        d = prop2_L(ell)
        assert minimize(d).states == ell
        for w in words("ab", 6):
            assert accepts(d, w) == (w.count("a") % ell == ell - 1)
    with pytest.raises(InputError):
        prop2_L(0)


def test_prop2_K_language():
    # accepted words end with a {b,c}-block whose b-count is k-1 mod k
    k = 3
    for w in words("abc", 6):
        tail = w.rsplit("a", 1)[-1]
        assert accepts(prop2_K(k), w) == (tail.count("b") % k == k - 1)


def test_mod_count():
    assert all(accepts(mod_count_dfa("a", 1, "ab"), w) for w in words("ab", 4))
    assert accepts(mod_count_dfa("c", 2, "abc"), "cac")
    assert syntactic_monoid(mod_count_dfa("b", 3, "abc"))[0].size == 3
    with pytest.raises(InputError):
        mod_count_dfa("d", 2, "abc")
    for m in (1, 2, 3, 4):
        assert green_summary(syntactic_monoid(mod_count_dfa("b", m, "abc"))[0]).is_group


def test_star():
    full = star_dfa("abc", "abc")
    assert full.states == 1 and accepts(full, "cab")
    assert accepts(star_dfa("ab", "abcd"), "abba")
    assert not accepts(star_dfa("ab", "abcd"), "abca")
    with pytest.raises(InputError):
        star_dfa("xy", "abc")
    assert green_summary(syntactic_monoid(star_dfa("ab", "abcd"))[0]).j_trivial


def test_content():
    d = content_dfa("ab", "abc")
    for w in words("abc", 5):
        assert accepts(d, w) == (set(w) == {"a", "b"})
    assert d.states == 5 and minimize(d).states == 5
    assert green_summary(syntactic_monoid(d)[0]).j_trivial
    with pytest.raises(InputError):
        content_dfa("z", "abc")


def test_sl_free_monoid():
    F, h = sl_free_monoid("ab")
    assert F.size == 4
    assert F.identity == 0 == h("")
    assert h("abba") == h("ab") == h("ba")
    assert h("a") != h("b")
    g = green_summary(F)
    assert g.j_trivial and (g.rho, g.lam) == (3, 3)
    assert sl_free_monoid("abc")[0].size == 8
