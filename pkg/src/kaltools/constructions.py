"""Witness automata and example monoids for the marked-concatenation bounds."""
from __future__ import annotations

from typing import Iterable

from .automata import CompleteDfa, make_alphabet
from .errors import InputError
from .monoids import generate, hom_from_closure

ABC = ("a", "b", "c")


def prop2_K(k: int) -> CompleteDfa:
    """k-state automaton over {a,b,c}: ``a`` resets to 0, ``b`` counts mod k,
    ``c`` loops.  Start 0, accept k-1."""
    if not isinstance(k, int) or k < 2:
        raise InputError(f"k must be an integer >= 2, got {k!r}")
    delta = [(0, (i + 1) % k, i) for i in range(k)]
    return CompleteDfa(ABC, k, 0, {k - 1}, delta)


def prop2_L(ell: int) -> CompleteDfa:
    """ell-state automaton over {a,b,c}: ``a`` counts mod ell, ``b`` loops,
    ``c`` jumps to state 1.  Start 0, accept ell-1."""
    if not isinstance(ell, int) or ell < 2:
        raise InputError(f"ell must be an integer >= 2, got {ell!r}")
    delta = [((j + 1) % ell, j, 1) for j in range(ell)]
    return CompleteDfa(ABC, ell, 0, {ell - 1}, delta)


def mod_count_dfa(letter: str, m: int, alphabet: Iterable[str]) -> CompleteDfa:
    """Words in which ``letter`` occurs a multiple of ``m`` times."""
    alphabet = make_alphabet(alphabet)
    if letter not in alphabet:
        raise InputError(f"letter {letter!r} not in alphabet {''.join(alphabet)!r}")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"modulus must be a positive integer, got {m!r}")
    delta = [tuple((r + 1) % m if x == letter else r for x in alphabet) for r in range(m)]
    return CompleteDfa(alphabet, m, 0, {0}, delta)


def _subset(letters: Iterable[str], alphabet) -> tuple:
    letters = tuple(letters)
    extra = [x for x in letters if x not in alphabet]
    if extra:
        raise InputError(f"letters {extra!r} not in alphabet {''.join(alphabet)!r}")
    return tuple(x for x in alphabet if x in letters)


def star_dfa(letters: Iterable[str], alphabet: Iterable[str]) -> CompleteDfa:
    """``B*`` for ``B = letters``; a sink state is added only when B is proper."""
    alphabet = make_alphabet(alphabet)
    B = _subset(letters, alphabet)
    if len(B) == len(alphabet):
        return CompleteDfa(alphabet, 1, 0, {0}, [(0,) * len(alphabet)])
    delta = [tuple(0 if x in B else 1 for x in alphabet), (1,) * len(alphabet)]
    return CompleteDfa(alphabet, 2, 0, {0}, delta)


def content_dfa(letters: Iterable[str], alphabet: Iterable[str]) -> CompleteDfa:
    """Words whose set of letters is exactly ``letters``.

    States ``0 .. 2^|B|-1`` are the subsets of B read so far (as bitmasks
    in alphabet order) and state ``2^|B|`` is the sink for letters outside
    B.  The automaton is not minimized.
    """
    alphabet = make_alphabet(alphabet)
    B = _subset(letters, alphabet)
    bit = {x: 1 << i for i, x in enumerate(B)}
    full = (1 << len(B)) - 1
    sink = full + 1
    delta = [tuple(S | bit[x] if x in bit else sink for x in alphabet) for S in range(sink)]
    delta.append((sink,) * len(alphabet))
    return CompleteDfa(alphabet, sink + 1, 0, {full}, delta)


def sl_free_monoid(alphabet: Iterable[str]):
    """Free semilattice monoid over ``alphabet``: subsets under union.

    Returns ``(monoid, hom)`` with ``hom`` sending each letter to its
    singleton, so two words have the same image iff they use the same
    letters.  Elements are numbered in shortlex-first-witness order; the
    identity (empty set) is 0.
    """
    alphabet = make_alphabet(alphabet)
    gens = [1 << i for i in range(len(alphabet))]
    closure = generate(0, gens, lambda x, y: x | y)
    monoid = closure.monoid()
    return monoid, hom_from_closure(closure, monoid, alphabet)


def trivial_free_monoid(alphabet: Iterable[str]):
    """One-element monoid with every letter mapped to the identity."""
    alphabet = make_alphabet(alphabet)
    closure = generate(0, [0] * len(alphabet), lambda x, y: 0)
    monoid = closure.monoid()
    return monoid, hom_from_closure(closure, monoid, alphabet)
