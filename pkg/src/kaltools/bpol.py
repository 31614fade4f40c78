"""
Free monoids for the first level of the polynomial closure.

Given the free monoid F of a locally finite variety over an alphabet
``a_1 .. a_d`` (through its letter homomorphism), the map

    u  ->  (mu_{a_1}(u), ..., mu_{a_d}(u))   in  (F ◊ F)^d

has the corresponding free monoid of the first Boolean-polynomial level
as image.  The closure works on d-tuples directly; (F ◊ F)^d is never
materialized.
"""
from __future__ import annotations

from typing import Iterable, NamedTuple

from .automata import make_alphabet
from .errors import InputError
from .monoids import DEFAULT_CAP, FiniteMonoid, MonoidHom, generate, hom_from_closure
from .schutzenberger import SchutzProductContext, mu_letter, schutz_mul


def bpol1_bound(n: int, d: int) -> int:
    """``n * 2^(d n^2)``, the trivial size bound for the image of xi."""
    if n < 1 or d < 1:
        raise InputError("n and d must be positive")
    return n << (d * n * n)


class XiImage(NamedTuple):
    monoid: FiniteMonoid
    hom: MonoidHom
    elements: list  # tuple of d SchutzElements per index
    ctx: SchutzProductContext


def diagonals_coherent(element) -> bool:
    first = element[0]
    return all(P.p11 == first.p11 and P.p22 == first.p22 == first.p11 for P in element)


def xi_image(F: FiniteMonoid, letter_hom: MonoidHom, alphabet: Iterable[str] | None = None,
             cap: int = DEFAULT_CAP) -> XiImage:
    alphabet = letter_hom.alphabet if alphabet is None else make_alphabet(alphabet)
    if tuple(alphabet) != letter_hom.alphabet:
        raise InputError("letter homomorphism must be over the given alphabet")
    if letter_hom.target is not F:
        raise InputError("letter homomorphism must target F")
    ctx = SchutzProductContext(F, F)
    gens = [tuple(mu_letter(ctx, letter_hom, letter_hom, marker, x) for marker in alphabet)
            for x in alphabet]

    def mul(P, Q):
        return tuple(schutz_mul(ctx, p, q) for p, q in zip(P, Q))

    identity = (ctx.identity,) * len(alphabet)
    closure = generate(identity, gens, mul, cap)
    monoid = closure.monoid()
    return XiImage(monoid, hom_from_closure(closure, monoid, alphabet), closure.elements, ctx)
