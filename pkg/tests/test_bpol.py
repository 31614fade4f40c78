import itertools

import pytest

from kaltools.bpol import bpol1_bound, diagonals_coherent, xi_image
from kaltools.constructions import sl_free_monoid, trivial_free_monoid
from kaltools.errors import InputError, SizeLimitError

from oracles import words


def test_bound_values():
    assert bpol1_bound(4, 2) == 4 * 2 ** 32
    assert bpol1_bound(1, 1) == 2
    assert bpol1_bound(2, 1) == 32
    with pytest.raises(InputError):
        bpol1_bound(0, 1)


def test_trivial_variety():
    F, h = trivial_free_monoid("a")
    img = xi_image(F, h)
    assert img.monoid.size == 2
    # empty word vs every nonempty word
    assert img.hom("") != img.hom("a") == img.hom("aaa")


def content_pairs(u, letter):
    return frozenset((frozenset(u[:i]), frozenset(u[i + 1:])) for i, x in enumerate(u) if x == letter)


def test_sl_xi_kernel_matches_content_pairs():
    F, h = sl_free_monoid("ab")
    img = xi_image(F, h)
    assert img.monoid.size <= 100 <= 30 * 30
    assert img.monoid.size <= bpol1_bound(F.size, 2)
    assert all(diagonals_coherent(e) for e in img.elements)
    # two words have equal xi-images iff they share content and, for each
    # letter, the same set of (content before, content after) pairs
    key = {}
    for w in words("ab", 9):
        sig = (frozenset(w), content_pairs(w, "a"), content_pairs(w, "b"))
        key.setdefault(img.hom(w), set()).add(sig)
    assert all(len(s) == 1 for s in key.values())
    sigs = [next(iter(s)) for s in key.values()]
    assert len(set(sigs)) == len(sigs)


def test_sl_xi_exact_size():
    F, h = sl_free_monoid("ab")
    # frozen from the closure; the independent signature count above agrees
    sigs = {(frozenset(w), content_pairs(w, "a"), content_pairs(w, "b")) for w in words("ab", 10)}
    assert len(sigs) == xi_image(F, h).monoid.size == 97


def test_xi_projection_matches_mu_images():
    F, h = sl_free_monoid("ab")
    img = xi_image(F, h)
    for i, marker in enumerate("ab"):
        assert len({e[i] for e in img.elements}) == 30


def test_xi_cap_and_alphabet_checks():
    F, h = sl_free_monoid("ab")
    with pytest.raises(SizeLimitError):
        xi_image(F, h, cap=10)
    with pytest.raises(InputError):
        xi_image(F, h, "ba")
    G, _ = sl_free_monoid("ab")
    with pytest.raises(InputError):
        xi_image(G, h)


def test_trivial_variety_two_letters():
    # each component only records whether its letter occurs
    F, h = trivial_free_monoid("ab")
    img = xi_image(F, h)
    assert img.monoid.size == 4
    assert img.hom("ab") == img.hom("bba") != img.hom("aa")


def test_sl_three_letters_hits_table_guard():
    F, h = sl_free_monoid("abc")
    with pytest.raises(SizeLimitError):
        xi_image(F, h)
