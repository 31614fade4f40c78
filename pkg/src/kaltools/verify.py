"""
Reproduction harness: recomputes every published number and bound and
compares it with the expected-values file ``data/expected.json``.

Each expected entry carries a ``relation``:

``eq``  computed == expected
``le``  computed <= expected
"""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb
from typing import Any

from .automata import kal_construct, minimize, random_dfa
from .bpol import bpol1_bound, diagonals_coherent, xi_image
from .constructions import (content_dfa, mod_count_dfa, prop2_K, prop2_L,
                            sl_free_monoid, star_dfa, trivial_free_monoid)
from .monoids import (RecognizedLanguage, compose_hom, green_summary, kernel_equal,
                      language_of, syntactic_monoid, syntactic_quotient)
from .schutzenberger import mu_image, mu_of_word, schutz_enumerate

log = logging.getLogger(__name__)

RANDOM_SEED = 20240501


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    relation: str
    passed: bool
    kind: str = ""
    error: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "expected": self.expected, "computed": self.computed,
               "relation": self.relation, "pass": self.passed, "kind": self.kind}
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"overall": self.overall, "checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            op = "==" if c.relation == "eq" else "<="
            detail = f"computed {c.computed} {op} expected {c.expected}"
            if c.error:
                detail = f"error: {c.error}"
            lines.append(f"{tag}  {c.name:<44} {detail}")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'} "
                     f"({sum(c.passed for c in self.checks)}/{len(self.checks)})")
        return "\n".join(lines)


def load_expected() -> dict:
    text = resources.files("kaltools").joinpath("data/expected.json").read_text("utf-8")
    return {e["name"]: e for e in json.loads(text)["checks"]}


# ----------------------------------------------------------------------------
# shared computations

def _mod_pair(m: int, n: int):
    return mod_count_dfa("b", m, "abc"), mod_count_dfa("c", n, "abc")


@lru_cache(maxsize=None)
def _mod_image(m: int, n: int):
    dk, dl = _mod_pair(m, n)
    return mu_image(language_of(dk), language_of(dl), "a")


@lru_cache(maxsize=None)
def _mod_kal_syntactic(m: int, n: int):
    dk, dl = _mod_pair(m, n)
    return syntactic_monoid(kal_construct(dk, dl, "a"))


def _quotient_route(m: int, n: int):
    img = _mod_image(m, n)
    gens = [img.hom.letters[x] for x in img.hom.alphabet]
    return syntactic_quotient(img.monoid, img.accept, gens)


def _kal_bound_random() -> int:
    """Number of random (K, L) pairs respecting the k * 2^l state bound."""
    rng = random.Random(RANDOM_SEED)
    ok = 0
    for _ in range(100):
        dk = minimize(random_dfa(rng, rng.randint(1, 4), "abc"))
        dl = minimize(random_dfa(rng, rng.randint(1, 4), "abc"))
        size = minimize(kal_construct(dk, dl, "a")).states
        ok += size <= dk.states << dl.states
    return ok


@lru_cache(maxsize=None)
def _example1():
    A = "abcd"
    K, L = language_of(star_dfa("ab", A)), language_of(star_dfa("ac", A))
    return K, L, mu_image(K, L, "a")


@lru_cache(maxsize=None)
def _example2():
    A = "abc"
    dk, dl = content_dfa("ab", A), content_dfa("ac", A)
    K, L = language_of(dk), language_of(dl)
    return K, L, mu_image(K, L, "a")


@lru_cache(maxsize=None)
def _example3():
    F, h = sl_free_monoid("ab")
    R = RecognizedLanguage(h, frozenset())
    return F, h, mu_image(R, R, "a"), xi_image(F, h)


def _example2_bound() -> int:
    K, L, _ = _example2()
    m, n = K.hom.target.size, L.hom.target.size
    width = green_summary(K.hom.target).rho + green_summary(L.hom.target).lam - 1
    return m * n * sum(comb(m * n, i) for i in range(width + 1))


def _computations() -> list:
    """(name, thunk) in report order."""
    out = []
    for k, ell in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)]:
        out.append((f"kal_states_k{k}_l{ell}",
                    lambda k=k, ell=ell: minimize(kal_construct(prop2_K(k), prop2_L(ell), "a")).states))
    out.append(("kal_bound_random_pairs_ok", _kal_bound_random))
    for m, n in [(2, 2), (3, 2), (4, 2)]:
        out.append((f"mu_image_mod_m{m}_n{n}", lambda m=m, n=n: _mod_image(m, n).monoid.size))
        out.append((f"schutz_size_mod_m{m}_n{n}",
                    lambda m=m, n=n: schutz_enumerate(_mod_image(m, n).ctx).size))
    for m, n in [(2, 2), (3, 2), (4, 2)]:
        out.append((f"synt_kal_dfa_route_m{m}_n{n}",
                    lambda m=m, n=n: _mod_kal_syntactic(m, n)[0].size))
    for m, n in [(2, 2), (3, 2)]:
        out.append((f"synt_kal_quotient_route_m{m}_n{n}",
                    lambda m=m, n=n: _quotient_route(m, n)[0].size))

        def kernels(m=m, n=n):
            q, proj = _quotient_route(m, n)
            return kernel_equal(_mod_kal_syntactic(m, n)[1], compose_hom(_mod_image(m, n).hom, q, proj))
        out.append((f"synt_kal_kernels_agree_m{m}_n{n}", kernels))
    for m, n in [(2, 2), (3, 2), (4, 2)]:
        out.append((f"synt_kal_formula_m{m}_n{n}",
                    lambda m=m, n=n: m * n * ((1 << (m * n)) - 1) + 1))

    out += [
        ("ex1_schutz_size", lambda: schutz_enumerate(_example1()[2].ctx).size),
        ("ex1_mu_image", lambda: _example1()[2].monoid.size),
        ("ex1_synt_kal_dfa_route",
         lambda: syntactic_monoid(kal_construct(star_dfa("ab", "abcd"), star_dfa("ac", "abcd"), "a"))[0].size),
        ("ex1_synt_kal_quotient_route",
         lambda: syntactic_quotient(_example1()[2].monoid, _example1()[2].accept)[0].size),
        ("ex2_K_j_trivial", lambda: green_summary(_example2()[0].hom.target).j_trivial),
        ("ex2_L_j_trivial", lambda: green_summary(_example2()[1].hom.target).j_trivial),
        ("ex2_K_rho", lambda: green_summary(_example2()[0].hom.target).rho),
        ("ex2_L_lambda", lambda: green_summary(_example2()[1].hom.target).lam),
        ("ex2_word_p12_size",
         lambda: len(mu_of_word(_example2()[0], _example2()[1], "a", "aababacacaa").pairs(5))),
        ("ex2_max_p12_size", lambda: max(P.p12.bit_count() for P in _example2()[2].elements)),
        ("ex2_mu_image_within_binomial_bound",
         lambda: _example2()[2].monoid.size <= _example2_bound()),
        ("ex3_mu_image", lambda: _example3()[2].monoid.size),
        ("ex3_xi_image", lambda: _example3()[3].monoid.size),
        ("ex3_xi_image_le_100", lambda: _example3()[3].monoid.size),
        ("ex3_xi_image_le_900", lambda: _example3()[3].monoid.size),
        ("ex3_xi_diagonals_coherent", lambda: all(diagonals_coherent(e) for e in _example3()[3].elements)),
        ("ex3_xi_within_bpol1_bound", lambda: _example3()[3].monoid.size <= bpol1_bound(4, 2)),
        ("bpol1_bound_4_2", lambda: bpol1_bound(4, 2)),
        ("xi_trivial_variety_one_letter",
         lambda: xi_image(*trivial_free_monoid("a")).monoid.size),
    ]
    return out


def _compare(computed, expected, relation: str) -> bool:
    if relation == "eq":
        return computed == expected
    if relation == "le":
        return computed <= expected
    raise ValueError(f"unknown relation {relation!r}")


def verify_paper(expected: dict | None = None) -> VerifyReport:
    """Run every reproduction check.  ``expected`` overrides entries of the
    data file by name (``{name: value}`` or ``{name: {"expected": ...}}``)."""
    for cached in (_mod_image, _mod_kal_syntactic, _example1, _example2, _example3):
        cached.cache_clear()
    table = load_expected()
    for name, value in (expected or {}).items():
        entry = dict(table.get(name, {"name": name, "relation": "eq", "kind": "override"}))
        entry["expected"] = value["expected"] if isinstance(value, dict) else value
        table[name] = entry
    report = VerifyReport()
    for name, thunk in _computations():
        entry = table.get(name)
        if entry is None:
            report.checks.append(Check(name, None, None, "eq", False, error="no expected value"))
            continue
        relation = entry.get("relation", "eq")
        try:
            computed = thunk()
            passed = _compare(computed, entry["expected"], relation)
            check = Check(name, entry["expected"], computed, relation, passed, entry.get("kind", ""))
        except Exception as exc:  # report, never crash
            log.exception("check %s failed", name)
            check = Check(name, entry["expected"], None, relation, False,
                          entry.get("kind", ""), error=f"{type(exc).__name__}: {exc}")
        report.checks.append(check)
    return report
