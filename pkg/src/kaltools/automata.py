"""
Complete deterministic automata over a finite alphabet.

Every automaton here is total: each state reads each letter.  States are
the integers ``0 .. states-1`` and the transition table is stored as
``delta[state][letter_index]``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError

Alphabet = tuple  # tuple[str, ...]


def make_alphabet(letters: Iterable[str]) -> Alphabet:
    letters = tuple(letters)
    if not letters:
        raise InputError("alphabet must be nonempty")
    if len(set(letters)) != len(letters):
        raise InputError(f"duplicate letters in alphabet {letters!r}")
    for x in letters:
        if not isinstance(x, str) or len(x) != 1 or not x.isprintable() or x.isspace():
            raise InputError(f"letter {x!r} is not a single printable character")
    return letters


@dataclass(frozen=True)
class CompleteDfa:
    alphabet: Alphabet
    states: int
    initial: int
    finals: frozenset
    delta: tuple  # tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", make_alphabet(self.alphabet))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        n = self.states
        if not isinstance(n, int) or n < 1:
            raise InputError(f"state count must be a positive integer, got {n!r}")
        if not 0 <= self.initial < n:
            raise InputError(f"initial state {self.initial} out of range")
        for f in self.finals:
            if not 0 <= f < n:
                raise InputError(f"final state {f} out of range")
        if len(self.delta) != n:
            raise InputError("transition table must have one row per state")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise InputError(f"state {q} does not read every letter")
            for t in row:
                if not 0 <= t < n:
                    raise InputError(f"transition target {t} out of range")

    @property
    def letter_index(self) -> dict:
        return {x: i for i, x in enumerate(self.alphabet)}

    def step(self, state: int, letter: str) -> int:
        try:
            return self.delta[state][self.alphabet.index(letter)]
        except ValueError:
            raise InputError(f"letter {letter!r} not in alphabet {''.join(self.alphabet)!r}") from None

    def run(self, word: Sequence[str], start: int | None = None) -> int:
        index = self.letter_index
        q = self.initial if start is None else start
        for x in word:
            if x not in index:
                raise InputError(f"letter {x!r} not in alphabet {''.join(self.alphabet)!r}")
            q = self.delta[q][index[x]]
        return q


def accepts(dfa: CompleteDfa, word: Sequence[str]) -> bool:
    return dfa.run(word) in dfa.finals


def reachable_states(dfa: CompleteDfa) -> list:
    """States reachable from the initial state, in BFS order (letters in alphabet order)."""
    seen = {dfa.initial}
    order = [dfa.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for t in dfa.delta[q]:
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def _renumber(dfa: CompleteDfa, block: dict) -> CompleteDfa:
    """Quotient ``dfa`` by ``block`` (state -> class id) and number the
    classes by BFS from the initial class."""
    rep = {}
    for q in reachable_states(dfa):
        rep.setdefault(block[q], q)
    start = block[dfa.initial]
    number = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for t in dfa.delta[rep[c]]:
            if block[t] not in number:
                number[block[t]] = len(order)
                order.append(block[t])
    delta = [tuple(number[block[t]] for t in dfa.delta[rep[c]]) for c in order]
    finals = {number[c] for c in order if rep[c] in dfa.finals}
    return CompleteDfa(dfa.alphabet, len(order), 0, finals, delta)


def minimize(dfa: CompleteDfa) -> CompleteDfa:
    """Minimal complete DFA of the same language.

    Unreachable states are dropped, the rest are merged by Moore partition
    refinement, and the result is numbered breadth-first from the initial
    state with letters explored in alphabet order.
    """
    states = reachable_states(dfa)
    block = {q: int(q in dfa.finals) for q in states}
    count = len(set(block.values()))
    while True:
        signatures = {}
        new_block = {}
        for q in states:
            sig = (block[q],) + tuple(block[t] for t in dfa.delta[q])
            new_block[q] = signatures.setdefault(sig, len(signatures))
        block = new_block
        if len(signatures) == count:
            break
        count = len(signatures)
    return _renumber(dfa, block)


def _check_same_alphabet(d1: CompleteDfa, d2: CompleteDfa):
    if d1.alphabet != d2.alphabet:
        raise InputError(
            f"alphabet mismatch: {''.join(d1.alphabet)!r} vs {''.join(d2.alphabet)!r}")


def equivalent(d1: CompleteDfa, d2: CompleteDfa) -> bool:
    """Language equality by exploring the reachable pairs of the product automaton."""
    _check_same_alphabet(d1, d2)
    start = (d1.initial, d2.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in d1.finals) != (q in d2.finals):
            return False
        for pair in zip(d1.delta[p], d2.delta[q]):
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


def left_derivative(dfa: CompleteDfa, word: Sequence[str]) -> CompleteDfa:
    """Automaton for ``{v : word + v in L(dfa)}``: only the start state moves."""
    return CompleteDfa(dfa.alphabet, dfa.states, dfa.run(word), dfa.finals, dfa.delta)


def kal_construct(dfa_k: CompleteDfa, dfa_l: CompleteDfa, marker: str) -> CompleteDfa:
    """Automaton for the marked concatenation K·marker·L.

    States are the reachable pairs ``(p, Q)``: ``p`` tracks the run of the
    K-automaton and ``Q`` (a bitset over L's states) collects the runs of
    the L-automaton started after each occurrence of ``marker`` whose
    prefix lies in K.  The pair ``(p, empty set)`` is a legal state.
    """
    _check_same_alphabet(dfa_k, dfa_l)
    if marker not in dfa_k.alphabet:
        raise InputError(f"marker {marker!r} not in alphabet {''.join(dfa_k.alphabet)!r}")
    m = dfa_k.alphabet.index(marker)
    ell = dfa_l.states
    # image of each single L-state bit under each letter
    step_l = [[1 << dfa_l.delta[q][i] for q in range(ell)] for i in range(len(dfa_l.alphabet))]
    final_mask = sum(1 << q for q in dfa_l.finals)
    start_bit = 1 << dfa_l.initial

    start = (dfa_k.initial, 0)
    number = {start: 0}
    order = [start]
    delta = []
    i = 0
    while i < len(order):
        p, bits = order[i]
        i += 1
        row = []
        for x, moves in enumerate(step_l):
            nbits = 0
            b = bits
            while b:
                low = b & -b
                nbits |= moves[low.bit_length() - 1]
                b ^= low
            if x == m and p in dfa_k.finals:
                nbits |= start_bit
            target = (dfa_k.delta[p][x], nbits)
            if target not in number:
                number[target] = len(order)
                order.append(target)
            row.append(number[target])
        delta.append(row)
    finals = {j for j, (_, bits) in enumerate(order) if bits & final_mask}
    return CompleteDfa(dfa_k.alphabet, len(order), 0, finals, delta)


# ----------------------------------------------------------------------------
# text format

def parse_dfa(text: str) -> CompleteDfa:
    """Parse the line-oriented DFA format.

    ::

        alphabet a b c
        states 4
        initial 0
        finals 3 1
        trans 0 a 1
        ...

    Lines starting with ``#`` are comments.  Exactly one ``trans`` line is
    required per (state, letter) pair.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((lineno, line.split()))

    def header(pos, key):
        if pos >= len(lines) or lines[pos][1][0] != key:
            raise InputError(f"expected '{key}' line in position {pos + 1}")
        return lines[pos][1][1:]

    def integer(tok, lineno):
        try:
            return int(tok)
        except ValueError:
            raise InputError(f"line {lineno}: expected an integer, got {tok!r}") from None

    alphabet = make_alphabet(header(0, "alphabet"))
    args = header(1, "states")
    if len(args) != 1:
        raise InputError("'states' takes exactly one integer")
    n = integer(args[0], lines[1][0])
    if n < 1:
        raise InputError("state count must be positive")
    args = header(2, "initial")
    if len(args) != 1:
        raise InputError("'initial' takes exactly one integer")
    initial = integer(args[0], lines[2][0])
    finals = [integer(t, lines[3][0]) for t in header(3, "finals")]

    index = {x: i for i, x in enumerate(alphabet)}
    table = [[None] * len(alphabet) for _ in range(n)]
    for lineno, toks in lines[4:]:
        if toks[0] != "trans" or len(toks) != 4:
            raise InputError(f"line {lineno}: expected 'trans <state> <letter> <state>'")
        src, letter, dst = integer(toks[1], lineno), toks[2], integer(toks[3], lineno)
        if letter not in index:
            raise InputError(f"line {lineno}: unknown letter {letter!r}")
        if not (0 <= src < n and 0 <= dst < n):
            raise InputError(f"line {lineno}: state index out of range")
        if table[src][index[letter]] is not None:
            raise InputError(f"line {lineno}: duplicate transition for ({src}, {letter})")
        table[src][index[letter]] = dst
    for q, row in enumerate(table):
        for i, t in enumerate(row):
            if t is None:
                raise InputError(f"missing transition for ({q}, {alphabet[i]})")
    return CompleteDfa(alphabet, n, initial, finals, table)


def format_dfa(dfa: CompleteDfa) -> str:
    out = [
        "alphabet " + " ".join(dfa.alphabet),
        f"states {dfa.states}",
        f"initial {dfa.initial}",
        " ".join(["finals"] + [str(f) for f in sorted(dfa.finals)]),
    ]
    for q, row in enumerate(dfa.delta):
        for x, t in zip(dfa.alphabet, row):
            out.append(f"trans {q} {x} {t}")
    return "\n".join(out) + "\n"


def random_dfa(rng, states: int, alphabet) -> CompleteDfa:
    """Uniformly random complete DFA; ``rng`` is a :class:`random.Random`."""
    alphabet = make_alphabet(alphabet)
    delta = [[rng.randrange(states) for _ in alphabet] for _ in range(states)]
    finals = {q for q in range(states) if rng.random() < 0.5}
    return CompleteDfa(alphabet, states, rng.randrange(states), finals, delta)
