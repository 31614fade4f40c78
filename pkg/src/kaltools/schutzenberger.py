"""
The Schützenberger product of two finite monoids and the homomorphism
``mu`` recognizing a marked concatenation K·a·L.

An element is an upper triangular 2x2 matrix with an element of M in the
top-left corner, an element of N in the bottom-right corner and a subset
of M x N in the top-right corner.  The subset is a bitset in which the pair
``(i, j)`` occupies bit ``i * n + j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InputError, SizeLimitError
from .monoids import (DEFAULT_CAP, TABLE_CAP, FiniteMonoid, MonoidHom,
                      RecognizedLanguage, generate, hom_from_closure)

_CHUNK = 8


@dataclass(frozen=True, order=True)
class SchutzElement:
    p11: int
    p22: int
    p12: int  # bitset over M x N

    def pairs(self, n: int) -> list:
        out = []
        bits = self.p12
        while bits:
            low = bits & -bits
            k = low.bit_length() - 1
            out.append((k // n, k % n))
            bits ^= low
        return out

    def to_json(self, n: int) -> dict:
        return {"p11": self.p11, "p22": self.p22,
                "p12": [list(p) for p in sorted(self.pairs(n))]}


@dataclass(frozen=True, eq=False)
class SchutzProductContext:
    M: FiniteMonoid
    N: FiniteMonoid

    @property
    def m(self) -> int:
        return self.M.size

    @property
    def n(self) -> int:
        return self.N.size

    @property
    def width(self) -> int:
        return self.m * self.n

    @property
    def size(self) -> int:
        return self.width * (1 << self.width)

    @property
    def identity(self) -> SchutzElement:
        return SchutzElement(self.M.identity, self.N.identity, 0)

    def bit(self, i: int, j: int) -> int:
        return 1 << (i * self.n + j)

    def element(self, p11: int, p22: int, pairs=()) -> SchutzElement:
        bits = 0
        for i, j in pairs:
            if not (0 <= i < self.m and 0 <= j < self.n):
                raise InputError(f"pair {(i, j)} out of range")
            bits |= self.bit(i, j)
        if not (0 <= p11 < self.m and 0 <= p22 < self.n):
            raise InputError("diagonal entry out of range")
        return SchutzElement(p11, p22, bits)

    def _chunk_tables(self, count: int, image) -> list:
        """``tables[g][c][v]``: bitset obtained by sending every pair encoded
        in byte ``v`` of chunk ``c`` through ``image(g, i, j)``."""
        chunks = -(-self.width // _CHUNK)
        out = []
        for g in range(count):
            per_g = []
            for c in range(chunks):
                single = []
                for idx in range(c * _CHUNK, (c + 1) * _CHUNK):
                    if idx < self.width:
                        single.append(image(g, *divmod(idx, self.n)))
                    else:
                        single.append(0)
                row = [0] * 256
                for v in range(1, 256):
                    low = v & -v
                    row[v] = row[v ^ low] | single[low.bit_length() - 1]
                per_g.append(row)
            out.append(per_g)
        return out

    @cached_property
    def _left(self) -> list:
        t = self.M.table
        return self._chunk_tables(self.m, lambda g, i, j: self.bit(int(t[g, i]), j))

    @cached_property
    def _right(self) -> list:
        t = self.N.table
        return self._chunk_tables(self.n, lambda h, i, j: self.bit(i, int(t[j, h])))

    def left_translate(self, g: int, bits: int) -> int:
        """``{(g x, y) : (x, y) in bits}``"""
        out = 0
        for row in self._left[g]:
            if not bits:
                break
            out |= row[bits & 0xFF]
            bits >>= _CHUNK
        return out

    def right_translate(self, bits: int, h: int) -> int:
        """``{(z, t h) : (z, t) in bits}``"""
        out = 0
        for row in self._right[h]:
            if not bits:
                break
            out |= row[bits & 0xFF]
            bits >>= _CHUNK
        return out


def schutz_mul(ctx: SchutzProductContext, P: SchutzElement, Q: SchutzElement) -> SchutzElement:
    return SchutzElement(
        int(ctx.M.table[P.p11, Q.p11]),
        int(ctx.N.table[P.p22, Q.p22]),
        ctx.left_translate(P.p11, Q.p12) | ctx.right_translate(P.p12, Q.p22),
    )


def schutz_enumerate(ctx: SchutzProductContext, cap: int = DEFAULT_CAP) -> FiniteMonoid:
    """The whole product, elements ordered lexicographically by (p11, p22, p12).

    Element index is ``((p11 * n + p22) << mn) | p12``, so products are
    computed arithmetically row by row.
    """
    size = ctx.size
    if size > cap:
        raise SizeLimitError(
            f"the product has {size} elements, above the cap of {cap}", required=size)
    if size * size > TABLE_CAP:
        raise SizeLimitError(
            f"multiplication table of {size} elements exceeds {TABLE_CAP} entries",
            required=size)
    m, n, w = ctx.m, ctx.n, ctx.width
    tm, tn = ctx.M.table.astype(np.int64), ctx.N.table.astype(np.int64)
    idx = np.arange(size, dtype=np.int64)
    q12 = idx & ((1 << w) - 1)
    diag = idx >> w
    q11, q22 = diag // n, diag % n
    all_bits = range(1 << w)
    left = np.array([[ctx.left_translate(g, b) for b in all_bits] for g in range(m)], dtype=np.int64)
    right = np.array([[ctx.right_translate(b, h) for h in range(n)] for b in all_bits], dtype=np.int64)
    table = np.empty((size, size), dtype=np.int32)
    for p11 in range(m):
        lq = left[p11][q12]
        for p22 in range(n):
            d = (tm[p11][q11] * n + tn[p22][q22]) << w
            base = (p11 * n + p22) << w
            dl = d | lq
            for p12 in all_bits:
                table[base | p12] = dl | right[p12][q22]
    identity = ((ctx.M.identity * n + ctx.N.identity) << w)
    return FiniteMonoid(size, identity, table)


def schutz_element_at(ctx: SchutzProductContext, index: int) -> SchutzElement:
    """Inverse of the enumeration order used by :func:`schutz_enumerate`."""
    w = ctx.width
    p11, p22 = divmod(index >> w, ctx.n)
    return SchutzElement(p11, p22, index & ((1 << w) - 1))


# ----------------------------------------------------------------------------
# mu

def _check_pair(K: RecognizedLanguage, L: RecognizedLanguage, marker: str):
    if K.hom.alphabet != L.hom.alphabet:
        raise InputError("K and L must share one alphabet")
    if marker not in K.hom.alphabet:
        raise InputError(f"marker {marker!r} not in alphabet {''.join(K.hom.alphabet)!r}")


_contexts: dict = {}


def context_of(K: RecognizedLanguage, L: RecognizedLanguage) -> SchutzProductContext:
    """Shared context for the pair of target monoids, so that repeated
    calls reuse its translation tables."""
    M, N = K.hom.target, L.hom.target
    key = (id(M), id(N))
    ctx = _contexts.get(key)
    # cached contexts keep M and N alive, so a hit on the ids is a hit on the objects
    if ctx is None or ctx.M is not M or ctx.N is not N:
        ctx = _contexts[key] = SchutzProductContext(M, N)
        if len(_contexts) > 32:
            del _contexts[next(iter(_contexts))]
    return ctx


def mu_letter(ctx: SchutzProductContext, phi: MonoidHom, psi: MonoidHom,
              marker: str, letter: str) -> SchutzElement:
    """Image of a single letter: the only factorization of the marker is 1·a·1."""
    bits = ctx.bit(ctx.M.identity, ctx.N.identity) if letter == marker else 0
    return SchutzElement(phi.letters[letter], psi.letters[letter], bits)


def mu_of_word(K: RecognizedLanguage, L: RecognizedLanguage, marker: str,
               word: Sequence[str]) -> SchutzElement:
    _check_pair(K, L, marker)
    ctx = context_of(K, L)
    gens = {}
    for x in K.hom.alphabet:
        gens[x] = mu_letter(ctx, K.hom, L.hom, marker, x)
    P = ctx.identity
    for x in word:
        if x not in gens:
            raise InputError(f"letter {x!r} not in alphabet {''.join(K.hom.alphabet)!r}")
        P = schutz_mul(ctx, P, gens[x])
    return P


def accept_mask(ctx: SchutzProductContext, S, T) -> int:
    mask = 0
    for s in S:
        for t in T:
            mask |= ctx.bit(s, t)
    return mask


def mu_recognizes(K: RecognizedLanguage, L: RecognizedLanguage, marker: str,
                  word: Sequence[str]) -> bool:
    P = mu_of_word(K, L, marker, word)
    return bool(P.p12 & accept_mask(context_of(K, L), K.accept, L.accept))


class SchutzImage(NamedTuple):
    monoid: FiniteMonoid
    hom: MonoidHom
    elements: list       # SchutzElement per monoid index
    accept: frozenset    # elements recognizing K·a·L
    ctx: SchutzProductContext


def mu_image(K: RecognizedLanguage, L: RecognizedLanguage, marker: str,
             cap: int = DEFAULT_CAP) -> SchutzImage:
    """Submonoid of the product generated by the letter images of ``mu``."""
    _check_pair(K, L, marker)
    ctx = context_of(K, L)
    alphabet = K.hom.alphabet
    gens = [mu_letter(ctx, K.hom, L.hom, marker, x) for x in alphabet]
    closure = generate(ctx.identity, gens, lambda P, Q: schutz_mul(ctx, P, Q), cap)
    monoid = closure.monoid()
    hom = hom_from_closure(closure, monoid, alphabet)
    mask = accept_mask(ctx, K.accept, L.accept)
    accept = frozenset(i for i, P in enumerate(closure.elements) if P.p12 & mask)
    return SchutzImage(monoid, hom, closure.elements, accept, ctx)
