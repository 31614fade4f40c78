"""
Finite monoids given by multiplication tables, homomorphisms from free
monoids, syntactic monoids of automata and Green's-relation statistics.

Element numbering is canonical throughout: elements generated from letter
images are numbered in the order a breadth-first search over generator
words (shortlex) first reaches them, so the identity is always 0.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .automata import CompleteDfa, make_alphabet, minimize
from .errors import InputError, SizeLimitError

DEFAULT_CAP = 1 << 20
# size * size table entries materialized at most (int32, ~256 MiB)
TABLE_CAP = 1 << 26


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    size: int
    identity: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int32)
        if table.shape != (self.size, self.size):
            raise InputError(f"table must be {self.size}x{self.size}, got {table.shape}")
        if self.size < 1:
            raise InputError("a monoid has at least one element")
        if not 0 <= self.identity < self.size:
            raise InputError(f"identity {self.identity} out of range")
        if table.min() < 0 or table.max() >= self.size:
            raise InputError("table entry out of range")
        e = self.identity
        ids = np.arange(self.size)
        if not (np.array_equal(table[e], ids) and np.array_equal(table[:, e], ids)):
            raise InputError(f"element {e} is not a two-sided identity")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def product(self, elements: Iterable[int]) -> int:
        x = self.identity
        for y in elements:
            x = int(self.table[x, y])
        return x

    def is_associative(self, exhaustive_limit: int = 300, samples: int = 200_000, seed: int = 0) -> bool:
        """Exhaustive check up to ``exhaustive_limit`` elements, random triples above."""
        t = self.table
        if self.size <= exhaustive_limit:
            for i in range(self.size):
                # (i j) k  vs  i (j k) over all j, k
                if not np.array_equal(t[t[i]], t[i][t]):
                    return False
            return True
        rng = np.random.default_rng(seed)
        i, j, k = rng.integers(0, self.size, size=(3, samples))
        return bool(np.array_equal(t[t[i, j], k], t[i, t[j, k]]))

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return (self.size == other.size and self.identity == other.identity
                and np.array_equal(self.table, other.table))

    __hash__ = None


@dataclass(frozen=True)
class MonoidHom:
    """Homomorphism from the free monoid over ``alphabet`` into ``target``."""
    target: FiniteMonoid
    alphabet: tuple
    letters: dict

    def __post_init__(self):
        object.__setattr__(self, "alphabet", make_alphabet(self.alphabet))
        if set(self.letters) != set(self.alphabet):
            raise InputError("letter images must be given for exactly the alphabet letters")
        for x, i in self.letters.items():
            if not 0 <= i < self.target.size:
                raise InputError(f"image of {x!r} out of range")

    def __call__(self, word: Sequence[str]) -> int:
        t = self.target.table
        x = self.target.identity
        for letter in word:
            try:
                x = int(t[x, self.letters[letter]])
            except KeyError:
                raise InputError(f"letter {letter!r} not in alphabet {''.join(self.alphabet)!r}") from None
        return x

    def image(self) -> list:
        """Elements reachable as images of words, in BFS order."""
        gens = [self.letters[x] for x in self.alphabet]
        t = self.target.table
        seen = {self.target.identity}
        order = [self.target.identity]
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for g in gens:
                y = int(t[x, g])
                if y not in seen:
                    seen.add(y)
                    order.append(y)
        return order

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.size


@dataclass(frozen=True)
class RecognizedLanguage:
    """The language ``hom^{-1}(accept)``."""
    hom: MonoidHom
    accept: frozenset

    def __post_init__(self):
        object.__setattr__(self, "accept", frozenset(self.accept))
        for s in self.accept:
            if not 0 <= s < self.hom.target.size:
                raise InputError(f"accepting element {s} out of range")

    def contains(self, word: Sequence[str]) -> bool:
        return self.hom(word) in self.accept


@dataclass(frozen=True)
class GreenSummary:
    j_trivial: bool
    is_group: bool
    rho: int
    lam: int

    def to_json(self) -> dict:
        return {"jTrivial": self.j_trivial, "isGroup": self.is_group,
                "rho": self.rho, "lambda": self.lam}


# ----------------------------------------------------------------------------
# closure

@dataclass
class Closure:
    """Result of generating a monoid from letter images.

    ``elements[i]`` is the i-th element in shortlex-first-witness order;
    ``right[i][g]`` is the index of ``elements[i] * generator g``;
    ``parent``/``via`` record the spanning tree of first witnesses.
    """
    elements: list
    right: list
    parent: list
    via: list

    def table(self) -> np.ndarray:
        size = len(self.elements)
        if size * size > TABLE_CAP:
            raise SizeLimitError(
                f"multiplication table of {size} elements exceeds {TABLE_CAP} entries",
                required=size * size)
        right = np.asarray(self.right, dtype=np.int32).reshape(size, -1)
        table = np.empty((size, size), dtype=np.int32)
        table[:, 0] = np.arange(size)
        # x * w_j = (x * w_parent) * letter
        for j in range(1, size):
            table[:, j] = right[table[:, self.parent[j]], self.via[j]]
        return table

    def monoid(self) -> FiniteMonoid:
        return FiniteMonoid(len(self.elements), 0, self.table())


def generate(identity: Hashable, generators: Sequence[Hashable],
             mul: Callable, cap: int = DEFAULT_CAP) -> Closure:
    """Submonoid generated by ``generators`` under ``mul``, by worklist."""
    index = {identity: 0}
    elements = [identity]
    right, parent, via = [], [-1], [-1]
    i = 0
    while i < len(elements):
        x = elements[i]
        row = []
        for g, gen in enumerate(generators):
            y = mul(x, gen)
            j = index.get(y)
            if j is None:
                if len(elements) >= cap:
                    raise SizeLimitError(f"closure exceeds the cap of {cap} elements", required=None)
                j = index[y] = len(elements)
                elements.append(y)
                parent.append(i)
                via.append(g)
            row.append(j)
        right.append(row)
        i += 1
    return Closure(elements, right, parent, via)


def hom_from_closure(closure: Closure, monoid: FiniteMonoid, alphabet) -> MonoidHom:
    # letter g is the generator at position g, i.e. identity * g
    return MonoidHom(monoid, alphabet, {x: closure.right[0][g] for g, x in enumerate(alphabet)})


# ----------------------------------------------------------------------------
# transition and syntactic monoids

def transition_monoid(dfa: CompleteDfa, cap: int = DEFAULT_CAP):
    """Transition monoid of ``dfa`` (transformations act on the right).

    Returns ``(monoid, hom, accept, transformations)`` where ``accept`` is
    the set of elements sending the initial state to a final state.
    """
    identity = tuple(range(dfa.states))
    gens = [tuple(dfa.delta[q][i] for q in range(dfa.states)) for i in range(len(dfa.alphabet))]
    closure = generate(identity, gens, lambda f, g: tuple(g[q] for q in f), cap)
    monoid = closure.monoid()
    hom = hom_from_closure(closure, monoid, dfa.alphabet)
    accept = frozenset(i for i, f in enumerate(closure.elements) if f[dfa.initial] in dfa.finals)
    return monoid, hom, accept, closure.elements


def syntactic_monoid(dfa: CompleteDfa, cap: int = DEFAULT_CAP):
    """Syntactic monoid of L(dfa) as the transition monoid of its minimal DFA.

    Returns ``(monoid, hom, accept)``.
    """
    monoid, hom, accept, _ = transition_monoid(minimize(dfa), cap)
    return monoid, hom, accept


def language_of(dfa: CompleteDfa) -> RecognizedLanguage:
    """L(dfa) recognized by its syntactic morphism."""
    _, hom, accept = syntactic_monoid(dfa)
    return RecognizedLanguage(hom, accept)


def syntactic_quotient(monoid: FiniteMonoid, accept: Iterable[int],
                       generators: Sequence[int] | None = None):
    """Quotient of ``monoid`` by the syntactic congruence of ``accept``.

    ``p ~ q`` iff ``x p y in accept <=> x q y in accept`` for all ``x, y``.
    Computed as the coarsest partition refining {accept, rest} that is
    stable under left and right multiplication by ``generators``; these
    must generate the monoid (default: all elements).

    Returns ``(quotient, projection)`` with ``projection`` a list mapping
    each element to its class.  Classes are numbered by their least member.
    """
    accept = set(accept)
    size = monoid.size
    for s in accept:
        if not 0 <= s < size:
            raise InputError(f"accepting element {s} out of range")
    t = monoid.table
    gens = np.arange(size) if generators is None else np.asarray(list(generators), dtype=np.int64)
    right = t[:, gens]          # x * g
    left = t[gens, :].T         # g * x
    block = np.zeros(size, dtype=np.int64)
    block[list(accept)] = 1
    count = len(np.unique(block))
    while True:
        sig = np.column_stack([block, block[right], block[left]])
        _, block = np.unique(sig, axis=0, return_inverse=True)
        block = block.reshape(-1)
        new_count = int(block.max()) + 1
        if new_count == count:
            break
        count = new_count
    # renumber by least member
    number = {}
    for x in range(size):
        number.setdefault(int(block[x]), len(number))
    projection = [number[int(b)] for b in block]
    reps = [0] * len(number)
    for x in range(size - 1, -1, -1):
        reps[projection[x]] = x
    proj = np.asarray(projection)
    qtable = proj[t[np.ix_(reps, reps)]]
    return FiniteMonoid(len(number), projection[monoid.identity], qtable), projection


def compose_hom(hom: MonoidHom, quotient: FiniteMonoid, projection: Sequence[int]) -> MonoidHom:
    return MonoidHom(quotient, hom.alphabet, {x: projection[i] for x, i in hom.letters.items()})


def kernel_equal(h1: MonoidHom, h2: MonoidHom) -> bool:
    """Do ``h1`` and ``h2`` identify exactly the same pairs of words?

    Explores the reachable pairs ``(h1(u), h2(u))``; the kernels agree iff
    these pairs form a bijection between the two images.
    """
    if h1.alphabet != h2.alphabet:
        raise InputError(
            f"alphabet mismatch: {''.join(h1.alphabet)!r} vs {''.join(h2.alphabet)!r}")
    t1, t2 = h1.target.table, h2.target.table
    gens = [(h1.letters[x], h2.letters[x]) for x in h1.alphabet]
    start = (h1.target.identity, h2.target.identity)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        for g1, g2 in gens:
            pair = (int(t1[p, g1]), int(t2[q, g2]))
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    firsts = {p for p, _ in seen}
    seconds = {q for _, q in seen}
    return len(firsts) == len(seen) == len(seconds)


# ----------------------------------------------------------------------------
# Green's relations

def _row_sets(table: np.ndarray) -> list:
    """Bitmask of each row's entries: the principal right ideal ``xM``."""
    out = []
    for row in table:
        mask = 0
        for y in np.unique(row):
            mask |= 1 << int(y)
        out.append(mask)
    return out


def _longest_chain(ideals: list) -> int:
    """Vertices in a longest strict chain of the quasiorder given by ideal inclusion."""
    classes = sorted(set(ideals), key=int.bit_count)
    height = {}
    for c in classes:
        below = [height[d] for d in height if d != c and d & c == d]
        height[c] = 1 + max(below, default=0)
    return max(height.values())


def green_summary(monoid: FiniteMonoid) -> GreenSummary:
    t = monoid.table
    size = monoid.size
    right_ideals = _row_sets(t)          # p <=_R q  iff  p in qM
    left_ideals = _row_sets(t.T)         # p <=_L q  iff  p in Mq
    # MqM = union of rM over r in Mq
    two_sided = []
    for q in range(size):
        mask, rest = 0, left_ideals[q]
        while rest:
            low = rest & -rest
            mask |= right_ideals[low.bit_length() - 1]
            rest ^= low
        two_sided.append(mask)
    j_trivial = len(set(two_sided)) == size

    e = monoid.identity
    is_group = all(
        np.any((t[x] == e) & (t[:, x] == e)) for x in range(size))
    return GreenSummary(j_trivial, bool(is_group),
                        _longest_chain(right_ideals), _longest_chain(left_ideals))


# ----------------------------------------------------------------------------
# JSON

def monoid_to_json(monoid: FiniteMonoid, hom: MonoidHom | None = None, **extra) -> dict:
    out = {"size": monoid.size, "identity": monoid.identity, "table": monoid.table.tolist()}
    if hom is not None:
        out["letters"] = {x: int(hom.letters[x]) for x in hom.alphabet}
    out.update(extra)
    return out


def monoid_from_json(data) -> tuple:
    """Parse a monoid JSON object (or string).  Returns ``(monoid, hom_or_None)``."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("monoid JSON must be an object")
    try:
        size, identity, table = int(data["size"]), int(data["identity"]), data["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"monoid JSON missing or malformed field: {exc}") from None
    if not isinstance(table, list) or any(not isinstance(r, list) or len(r) != size for r in table):
        raise InputError("table must be a size x size array")
    monoid = FiniteMonoid(size, identity, np.asarray(table, dtype=np.int64))
    hom = None
    if data.get("letters") is not None:
        letters = data["letters"]
        hom = MonoidHom(monoid, tuple(letters), {x: int(i) for x, i in letters.items()})
    return monoid, hom
