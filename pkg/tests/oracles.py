"""Brute-force reference implementations used by the tests.

None of these reuse the code paths they check.
"""
import itertools

from hypothesis import strategies as st

from kaltools.automata import CompleteDfa, accepts


def words(alphabet, max_len):
    for n in range(max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def in_kal(dfa_k, dfa_l, marker, w):
    """Try every split w = u' marker u''."""
    return any(w[i] == marker and accepts(dfa_k, w[:i]) and accepts(dfa_l, w[i + 1:])
               for i in range(len(w)))


def nerode_classes(member, alphabet, prefix_len, suffix_len):
    """Number of distinct residuals of ``member`` seen on prefixes up to
    ``prefix_len`` and separated by suffixes up to ``suffix_len``."""
    suffixes = list(words(alphabet, suffix_len))
    return len({tuple(member(u + v) for v in suffixes) for u in words(alphabet, prefix_len)})


def residual_count(dfa):
    """Distinct residual languages of ``dfa``: states reachable by words of
    length < n, told apart by suffixes of length < n."""
    n = dfa.states
    reached = {dfa.run(u) for u in words(dfa.alphabet, n - 1)}
    suffixes = list(words(dfa.alphabet, n - 1))
    return len({tuple(dfa.run(v, start=q) in dfa.finals for v in suffixes) for q in reached})


def mu_scan(phi, psi, marker, u):
    """Off-diagonal entry of mu by scanning every occurrence of the marker."""
    return {(phi(u[:i]), psi(u[i + 1:])) for i in range(len(u)) if u[i] == marker}


def longest_strict_chain(table, side):
    """Longest strict <=_R (side='R') or <=_L chain, by memoized DFS on elements."""
    size = len(table)
    if side == "R":
        ideal = [{table[q][r] for r in range(size)} for q in range(size)]
    else:
        ideal = [{table[s][q] for s in range(size)} for q in range(size)]
    memo = {}

    def height(q):
        if q not in memo:
            below = [p for p in ideal[q] if q not in ideal[p]]
            memo[q] = 1 + max((height(p) for p in below), default=0)
        return memo[q]

    return max(height(q) for q in range(size))


def j_trivial(table):
    size = len(table)
    ideal = [{table[table[s][q]][r] for s in range(size) for r in range(size)} for q in range(size)]
    return all(not (p in ideal[q] and q in ideal[p]) for p in range(size) for q in range(size) if p != q)


def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


@st.composite
def dfas(draw, max_states=4, alphabet="abc"):
    n = draw(st.integers(1, max_states))
    delta = [[draw(st.integers(0, n - 1)) for _ in alphabet] for _ in range(n)]
    finals = draw(st.frozensets(st.integers(0, n - 1)))
    initial = draw(st.integers(0, n - 1))
    return CompleteDfa(tuple(alphabet), n, initial, finals, delta)
