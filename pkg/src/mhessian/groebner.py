"""Reduced Groebner bases over Q in graded reverse lex order.

Polynomials are raw term maps ``{exponent tuple: coefficient}`` so that this
module stays independent of :class:`mhessian.polyring.MultiPoly`.
"""
from __future__ import annotations

import heapq
from fractions import Fraction

from mhessian.errors import ReductionError
from mhessian.polyring import _heap_key, _norm, grevlex_key


class BudgetExceeded(ReductionError):
    """The pair-processing budget ran out before the basis was complete."""


def leading(terms: dict):
    e = max(terms, key=grevlex_key)
    return e, terms[e]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _monic(terms: dict) -> dict:
    _, lc = leading(terms)
    if lc == 1:
        return dict(terms)
    inv = Fraction(1) / lc
    return {e: _norm(c * inv) for e, c in terms.items()}


def normal_form(p: dict, basis: list, full: bool = True) -> dict:
    """Remainder of ``p`` under division by ``basis`` (list of term maps).

    With ``full`` every term is reduced, otherwise only the leading one.
    """
    if not p:
        return {}
    leads = [leading(g) for g in basis]
    cur = dict(p)
    heap = [(_heap_key(e), e) for e in cur]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = cur.pop(e, None)
        if not c:
            continue
        for g, (le, lc) in zip(basis, leads):
            if _divides(le, e):
                sh = tuple(a - b for a, b in zip(e, le))
                f = Fraction(c) / lc
                for t, tc in g.items():
                    if t == le:
                        continue
                    m = tuple(a + b for a, b in zip(sh, t))
                    v = cur.get(m)
                    if v is None:
                        cur[m] = -f * tc
                        heapq.heappush(heap, (_heap_key(m), m))
                    else:
                        cur[m] = v - f * tc
                break
        else:
            rem[e] = c
            if not full:
                rem.update(cur)
                break
    return {e: _norm(c) for e, c in rem.items() if c}


def s_polynomial(f: dict, g: dict) -> dict:
    lf, cf = leading(f)
    lg, cg = leading(g)
    m = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(m, lf))
    sg = tuple(a - b for a, b in zip(m, lg))
    out: dict = {}
    for e, c in f.items():
        k = tuple(a + b for a, b in zip(e, sf))
        out[k] = out.get(k, 0) + Fraction(c) / cf
    for e, c in g.items():
        k = tuple(a + b for a, b in zip(e, sg))
        out[k] = out.get(k, 0) - Fraction(c) / cg
    return {e: _norm(c) for e, c in out.items() if c}


def buchberger(generators: list, nvars: int, budget: int = None) -> list:
    """Reduced Groebner basis (monic, sorted by leading monomial).

    ``budget`` bounds the number of S-polynomial reductions; exceeding it
    raises :class:`BudgetExceeded`.
    """
    basis = [_monic(g) for g in generators if g]
    if not basis:
        return []
    leads = [leading(g)[0] for g in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    done = set()
    spent = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm(leads[ij[0]], leads[ij[1]])), ij))
        pairs.discard((i, j))
        done.add((i, j))
        li, lj = leads[i], leads[j]
        m = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # chain criterion: some k with LM(k) | lcm and both pairs already handled
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(leads[k], m):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                skip = True
                break
        if skip:
            continue
        spent += 1
        if budget is not None and spent > budget:
            raise BudgetExceeded(f"Groebner basis budget of {budget} pairs exhausted")
        h = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if not h:
            continue
        h = _monic(h)
        n = len(basis)
        basis.append(h)
        leads.append(leading(h)[0])
        pairs.update((k, n) for k in range(n))
    return _interreduce(basis)


def _interreduce(basis: list) -> list:
    # drop elements whose leading monomial is divisible by another's
    keep = []
    leads = [leading(g)[0] for g in basis]
    for i, g in enumerate(basis):
        li = leads[i]
        redundant = False
        for j, lj in enumerate(leads):
            if j != i and _divides(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        le, lc = leading(g)
        tail = {e: c for e, c in g.items() if e != le}
        r = normal_form(tail, others) if others else tail
        r[le] = lc
        out.append(_monic(r))
    out.sort(key=lambda g: grevlex_key(leading(g)[0]))
    return out
