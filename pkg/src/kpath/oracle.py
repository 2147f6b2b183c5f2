"""Slow, exact references used to check the randomized code.

Nothing here shares code with the algebraic evaluation paths.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .errors import UnsupportedError
from .graph import Graph

EXPAND_MAX_VARS = 10
EXPAND_MAX_DEGREE = 6
_COEFF_LIMIT = 1 << 63


@dataclass(frozen=True)
class Monomial:
    """c * prod x_i^e_i, exponents stored as sorted (i, e) pairs."""

    exponents: tuple
    coefficient: int = 1

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    @property
    def multilinear(self) -> bool:
        return all(e == 1 for _, e in self.exponents)

    def __str__(self):
        body = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.exponents) or "1"
        return body if self.coefficient == 1 else f"{self.coefficient}*{body}"


def brute_force_kpath(g: Graph, k: int):
    """Depth-first search over simple paths; a k-vertex path or None."""
    if k < 1 or k > g.n:
        return None
    succ = [[int(j) for j in row.nonzero()[0]] for row in g.adjacency]
    path = []
    on_path = [False] * g.n

    def extend(u):
        path.append(u)
        on_path[u] = True
        if len(path) == k:
            return True
        for w in succ[u]:
            if not on_path[w] and extend(w):
                return True
        path.pop()
        on_path[u] = False
        return False

    for start in range(g.n):
        if extend(start):
            return [u + 1 for u in path]
    return None


def count_k_walks(g: Graph, k: int) -> int:
    """1^T A^{k-1} 1 by repeated matrix-vector products over Python ints."""
    rows = [[int(j) for j in row.nonzero()[0]] for row in g.adjacency]
    counts = [1] * g.n
    for _ in range(k - 1):
        counts = [sum(counts[j] for j in row) for row in rows]
    return sum(counts)


def enumerate_k_walks(g: Graph, k: int):
    """All k-vertex walks as tuples of 1-based ids (for small graphs)."""
    walks = [(i,) for i in range(1, g.n + 1)]
    for _ in range(k - 1):
        walks = [w + (j,) for w in walks for j in range(1, g.n + 1) if g.has_arc(w[-1], j)]
    return walks


def _poly_mul(p, q):
    out = defaultdict(int)
    for mp, cp in p.items():
        for mq, cq in q.items():
            merged = dict(mp)
            for i, e in mq:
                merged[i] = merged.get(i, 0) + e
            out[tuple(sorted(merged.items()))] += cp * cq
    return out


def _walk(c, leaf, combine_add, combine_mul):
    memo = {}
    stack = [c.output]
    while stack:
        gid = stack[-1]
        if gid in memo:
            stack.pop()
            continue
        gate = c.gates[gid]
        if gate.op == "INPUT":
            memo[gid] = leaf(gate.args[0])
            stack.pop()
            continue
        pending = [a for a in gate.args if a not in memo]
        if pending:
            stack.extend(pending)
            continue
        kids = [memo[a] for a in gate.args]
        memo[gid] = combine_add(kids) if gate.op == "ADD" else combine_mul(gid, kids)
        stack.pop()
    return memo[c.output]


def _check_bounds(c):
    if c.n > EXPAND_MAX_VARS:
        raise UnsupportedError(f"expansion limited to {EXPAND_MAX_VARS} variables")
    if _walk(c, lambda i: 1, max, lambda gid, kids: kids[0] + kids[1]) > EXPAND_MAX_DEGREE:
        raise UnsupportedError(f"expansion limited to degree {EXPAND_MAX_DEGREE}")


def expand_circuit(c) -> set:
    """The sum-product expansion of a circuit as a set of Monomials."""
    _check_bounds(c)

    def add(kids):
        out = defaultdict(int)
        for p in kids:
            for m, coef in p.items():
                out[m] += coef
        return out

    def mul(gid, kids):
        out = _poly_mul(kids[0], kids[1])
        if any(abs(v) >= _COEFF_LIMIT for v in out.values()):
            raise UnsupportedError("coefficient exceeds 64 bits")
        return out

    poly = _walk(c, lambda i: {((i, 1),): 1}, add, mul)
    return {Monomial(m, coef) for m, coef in poly.items() if coef}


def has_multilinear_term(c, max_degree=None) -> bool:
    return any(m.multilinear and (max_degree is None or m.degree <= max_degree) for m in expand_circuit(c))


def expand_weighted_mod2(c) -> dict:
    """Expansion with a symbolic weight w_g after every MUL gate, coefficients mod 2.

    Keys are (x-monomial, w-monomial) pairs in the same sorted-exponent form
    as Monomial.exponents.  This is the polynomial the randomized detector
    actually evaluates; a multilinear x-part with a surviving key means the
    detector can answer yes.
    """
    _check_bounds(c)

    def add(kids):
        out = defaultdict(int)
        for p in kids:
            for m, coef in p.items():
                out[m] ^= coef
        return {m: 1 for m, coef in out.items() if coef}

    def mul(gid, kids):
        out = defaultdict(int)
        for (xa, wa), ca in kids[0].items():
            for (xb, wb), cb in kids[1].items():
                xs = dict(xa)
                for i, e in xb:
                    xs[i] = xs.get(i, 0) + e
                ws = dict(wa)
                for i, e in wb:
                    ws[i] = ws.get(i, 0) + e
                ws[gid] = ws.get(gid, 0) + 1
                out[(tuple(sorted(xs.items())), tuple(sorted(ws.items())))] ^= ca & cb
        return {m: 1 for m, coef in out.items() if coef}

    return _walk(c, lambda i: {(((i, 1),), ()): 1}, add, mul)


def weighted_has_multilinear_term(c, max_degree=None) -> bool:
    for xs, _ in expand_weighted_mod2(c):
        if all(e == 1 for _, e in xs) and (max_degree is None or sum(e for _, e in xs) <= max_degree):
            return True
    return False


def gf2_rank(vectors) -> int:
    """Rank over GF(2) of integer bitmasks, by Gaussian elimination."""
    pivots = {}
    for v in vectors:
        v = int(v)
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def is_independent(vectors) -> bool:
    vectors = list(vectors)
    return gf2_rank(vectors) == len(vectors)
