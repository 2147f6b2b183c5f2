"""Detecting and constructing simple paths on k vertices.

The k-walk polynomial of a graph is 1^T B^{k-1} x with B[i, j] = A[i, j] x_i;
its monomials are the k-vertex walks, and its multilinear monomials are the
simple k-vertex paths.  One detection trial evaluates a randomized copy of it
in F[Z_2^k]: every matrix entry of every layer gets its own nonzero scalar
y[i, j, c] and every variable becomes one + basis(v_i).  The evaluation is the
layered recurrence

    z_0[i] = one + basis(v_i)
    z_c[i] = (one + basis(v_i)) * sum_j A[i, j] y[i, j, c] z_{c-1}[j]

and the trial answers yes iff sum_i z_{k-1}[i] != 0.  A yes is always
correct.  On a yes-instance a single trial succeeds with probability > 1/5.

Paths are built by deleting vertices one at a time while detection still
succeeds, then ordering the few survivors with the Held-Karp subset DP.

``k`` counts vertices throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gf2e
from . import group_algebra as ga
from .circuit import Circuit, CircuitBuilder, _linear_inputs
from .errors import ExtractionError, ParameterError, UnsupportedError
from .graph import Graph
from .rng import DEFAULT_SEED, RngStream, as_stream

DEFAULT_TRIALS = 64
EXTRACTION_RETRIES = 5
HELD_KARP_MAX_N = 25

# cap on elements materialised per batch of trials (trials x n x ell x 2^k)
_BUDGET = 1 << 19
# working-set target for one column block of the x^b * z table
_CACHE_BYTES = 1 << 19
# a small first batch keeps easy yes-instances cheap while amortizing setup
_FIRST_BATCH = 4


@dataclass(frozen=True)
class Decision:
    answer: bool
    trials_used: int
    seed: int


def _check_k(k: int):
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    if k > gf2e.MAX_K:
        raise UnsupportedError(f"k={k} exceeds the supported maximum {gf2e.MAX_K} (64-bit transform words)")


def t_inner(n: int) -> int:
    """Trials per tentative vertex removal during extraction."""
    return max(32, math.ceil(8 * math.log2(max(n, 2))))


# -- the layered evaluation ------------------------------------------------------


class _Layout:
    """Arc arrays of a graph (sorted by source) and batching limits for one k."""

    def __init__(self, g: Graph, k: int, ell: int):
        arcs = g.arcs()
        self.src = arcs[:, 0]
        self.dst = arcs[:, 1]
        self.m = len(arcs)
        self.trial_chunk = max(1, _BUDGET // (g.n * ell << k))


def _draw(n: int, m: int, k: int, spec, stream: RngStream):
    v = stream.generator.integers(0, 1 << k, size=n)
    y = gf2e.random_nonzero(spec, stream, size=(k - 1, m))
    return v, y


def _shifted_multiples(spec, z: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
    """x^b * z for b = 0..ell-1, stacked on a new axis before the group axis."""
    ell = spec.ell
    size = z.shape[-1]
    if out is None:
        out = np.empty(z.shape[:-1] + (ell, size), dtype=z.dtype)
    if (size * z.itemsize) % 8 == 0:
        # several field elements per 64-bit word, shifted lane-wise
        rep = np.uint64(ga.lane_ones(z.itemsize))
        keep = np.uint64(((spec.order - 1) & ~1) * int(rep))
        low = np.uint64(spec.modulus & (spec.order - 1))
        top = np.uint64(ell - 1)
        one = np.uint64(1)
        cur = np.ascontiguousarray(z).view(np.uint64)
        view = out.view(np.uint64)
    else:
        keep = z.dtype.type(spec.order - 1)
        low = z.dtype.type(spec.modulus & (spec.order - 1))
        top = z.dtype.type(ell - 1)
        one = z.dtype.type(1)
        rep = one
        cur = z
        view = out
    for b in range(ell):
        view[..., b, :] = cur
        if b + 1 < ell:
            cur = ((cur << one) & keep) ^ (((cur >> top) & rep) * low)
    return out


def _reduction_plan(y: np.ndarray, layout: _Layout, n: int, ell: int):
    """Which rows of the x^b * z table feed which output rows.

    Returns buckets of (output rows, index matrix); each index row lists the
    table rows to xor together, padded with the all-zero row ``T * n * ell``.
    Groups are bucketed by padded length so one gather and one reduce serve
    a whole bucket.
    """
    T = y.shape[0]
    zero_row = T * n * ell
    t_idx, a_idx, b_idx = np.nonzero((y[:, :, None] >> np.arange(ell, dtype=y.dtype)) & 1)
    take = (t_idx * n + layout.dst[a_idx]) * ell + b_idx
    key = t_idx * n + layout.src[a_idx]
    bounds = np.flatnonzero(np.r_[True, key[1:] != key[:-1], True])
    keys = key[bounds[:-1]]
    sizes = np.diff(bounds)
    grain = max(1, int(sizes.max()) // 8)
    padded = -(-sizes // grain) * grain
    buckets = []
    for length in np.unique(padded).tolist():
        sel = np.flatnonzero(padded == length)
        offs = np.arange(length)
        live = offs < sizes[sel, None]
        idx = np.full((len(sel), length), zero_row, dtype=np.intp)
        idx[live] = take[(bounds[sel, None] + offs)[live]]
        buckets.append((keys[sel], idx))
    return buckets


def _accumulate(spec, z: np.ndarray, y: np.ndarray, layout: _Layout) -> np.ndarray:
    """s[t, i] = sum over arcs (i, j) of y[t, arc] * z[t, j].

    Each y is split into its bits, so every term is one of the precomputed
    x^b * z[t, j] and the sum is a plain xor of table rows.  The group axis
    is processed in column blocks small enough for the table to stay in cache.
    """
    T, n, size = z.shape
    ell = spec.ell
    buckets = _reduction_plan(y, layout, n, ell)
    cols = size
    while cols * z.itemsize > 8 and T * n * ell * cols * z.itemsize > _CACHE_BYTES:
        cols //= 2
    table = np.zeros((T * n * ell + 1, cols), dtype=z.dtype)
    out = np.zeros((T * n, size), dtype=z.dtype)
    for c0 in range(0, size, cols):
        _shifted_multiples(spec, z[..., c0 : c0 + cols], table[:-1].reshape(T, n, ell, cols))
        for rows, idx in buckets:
            out[rows, c0 : c0 + cols] = np.bitwise_xor.reduce(table[idx], axis=1)
    return out.reshape(T, n, size)


def _accumulate_direct(spec, z: np.ndarray, y: np.ndarray, layout: _Layout) -> np.ndarray:
    """Reference for ``_accumulate``: multiply every arc's term with the field table."""
    T, n, size = z.shape
    out = np.zeros_like(z)
    terms = gf2e.scale_array(spec, y, z[:, layout.dst])
    for a in range(layout.m):
        out[:, layout.src[a]] ^= terms[:, a]
    return out


def _evaluate_layers(g: Graph, k: int, spec, layout: _Layout, v, y, multiply: str) -> np.ndarray:
    """Batched trials: v (T, n), y (T, k-1, m).  Returns sum_i z_{k-1}[i], shape (T, 2^k)."""
    if multiply not in ("linear", "transform"):
        raise ParameterError(f"unknown multiply method {multiply!r}")
    x = _linear_inputs(v, k, spec)
    z = x
    for c in range(k - 1):
        s = _accumulate(spec, z, y[:, c], layout)
        if multiply == "linear":
            z = ga.mul_linear_array(s, v)
        else:
            z = ga.xor_convolve(spec, x, s)
    return np.bitwise_xor.reduce(z, axis=1)


def _trial_outcomes(g: Graph, k: int, streams, multiply: str = "linear", layout=None) -> np.ndarray:
    if k == 1:
        return np.full(len(streams), g.n >= 1)
    if k > g.n:
        return np.zeros(len(streams), dtype=bool)
    spec = gf2e.field_for_k(k)
    layout = layout or _Layout(g, k, spec.ell)
    if layout.m == 0:
        return np.zeros(len(streams), dtype=bool)
    out = np.zeros(len(streams), dtype=bool)
    for lo in range(0, len(streams), layout.trial_chunk):
        part = streams[lo : lo + layout.trial_chunk]
        draws = [_draw(g.n, layout.m, k, spec, s) for s in part]
        v = np.stack([d[0] for d in draws])
        y = np.stack([d[1] for d in draws])
        out[lo : lo + len(part)] = _evaluate_layers(g, k, spec, layout, v, y, multiply).any(axis=-1)
    return out


def detect_trial(g: Graph, k: int, rng=None, multiply: str = "linear") -> bool:
    """One randomized evaluation of the k-walk polynomial.

    ``multiply`` selects how the (one + basis(v_i)) factors are applied:
    ``"linear"`` uses the two-term shortcut a[g] + a[g ^ v], ``"transform"``
    the general Walsh-Hadamard product.  Both give identical results.
    """
    _check_k(k)
    return bool(_trial_outcomes(g, k, [as_stream(rng)], multiply)[0])


def trial_outcomes(g: Graph, k: int, trials: int, seed=DEFAULT_SEED) -> np.ndarray:
    """Outcomes of ``trials`` independent trials (the ones ``detect`` would run)."""
    _check_k(k)
    stream = as_stream(seed)
    return _trial_outcomes(g, k, [stream.child("detect", t) for t in range(trials)])


def _detect(g: Graph, k: int, trials: int, stream: RngStream):
    """(answer, trials used); trials run in growing batches, stopping at the first yes."""
    if k == 1 or k > g.n:
        return (k == 1 and g.n >= 1), 1
    layout = _Layout(g, k, gf2e.field_for_k(k).ell)
    done = 0
    batch = _FIRST_BATCH
    while done < trials:
        count = min(batch, trials - done)
        hits = _trial_outcomes(g, k, [stream.child("detect", t) for t in range(done, done + count)], layout=layout)
        if hits.any():
            return True, done + int(np.argmax(hits)) + 1
        done += count
        batch *= 2
    return False, trials


def detect(g: Graph, k: int, trials: int = DEFAULT_TRIALS, seed=DEFAULT_SEED) -> Decision:
    """Does ``g`` contain a simple path on k vertices?

    A yes is certain; on a yes-instance the answer is no with probability at
    most (4/5)^trials.
    """
    _check_k(k)
    if trials < 1:
        raise ParameterError("trials must be positive")
    stream = as_stream(seed)
    answer, used = _detect(g, k, trials, stream)
    return Decision(answer, used, stream.seed)


# -- extraction ------------------------------------------------------------------


def find(g: Graph, k: int, seed=DEFAULT_SEED, trials: int = DEFAULT_TRIALS, retries: int = EXTRACTION_RETRIES):
    """Return a simple path on k vertices as a list of vertex ids, or None.

    Raises ExtractionError if detection said yes but every retry failed to
    prune the graph down to something Held-Karp can order.
    """
    _check_k(k)
    if k == 1:
        return [1] if g.n >= 1 else None
    stream = as_stream(seed)
    if not detect(g, k, trials, stream).answer:
        return None
    inner = t_inner(g.n)
    for attempt in range(retries):
        s = stream.child("find", attempt)
        h = g
        for v in h.active_vertices():
            cand = h.without(v)
            if _detect(cand, k, inner, s.child(v))[0]:
                h = cand
        remnant = h.active_vertices()
        if len(remnant) > HELD_KARP_MAX_N:
            continue
        path = held_karp_path(h.induced(remnant), k)
        if path is not None:
            return [remnant[i - 1] for i in path]
    raise ExtractionError(f"could not extract a {k}-vertex path after {retries} attempts")


def held_karp_path(g: Graph, k: int):
    """Exact subset DP over (vertex set, endpoint); a k-vertex path or None."""
    _check_k(k)
    if g.n > HELD_KARP_MAX_N:
        raise UnsupportedError(f"Held-Karp is limited to n <= {HELD_KARP_MAX_N}")
    if k > g.n:
        return None
    pred = [0] * g.n
    for i, j in g.arcs():
        pred[j] |= 1 << int(i)
    # layer t: {vertex set of size t: bitset of possible endpoints}
    layers = [{1 << v: 1 << v for v in range(g.n)}]
    for _ in range(k - 1):
        nxt = {}
        for mask, ends in layers[-1].items():
            for u in range(g.n):
                if not mask >> u & 1 and pred[u] & ends:
                    key = mask | 1 << u
                    nxt[key] = nxt.get(key, 0) | 1 << u
        if not nxt:
            return None
        layers.append(nxt)
    mask, ends = next(iter(layers[-1].items()))
    end = (ends & -ends).bit_length() - 1
    path = [end]
    for layer in reversed(layers[:-1]):
        mask ^= 1 << end
        choices = layer[mask] & pred[end]
        end = (choices & -choices).bit_length() - 1
        path.append(end)
    return [v + 1 for v in reversed(path)]


# -- the walk polynomial as a circuit, and its integer evaluation ---------------


def walk_circuit(g: Graph, k: int) -> Circuit | None:
    """Circuit for 1^T B^{k-1} x, or None when the polynomial is zero."""
    _check_k(k)
    b = CircuitBuilder()
    z = {i: b.var(i) for i in range(1, g.n + 1)}
    for _ in range(k - 1):
        layer = {}
        for i in range(1, g.n + 1):
            terms = [z[j + 1] for j in np.flatnonzero(g.adjacency[i - 1]) if j + 1 in z]
            if terms:
                layer[i] = b.mul(b.var(i), b.add(*terms))
        z = layer
    if not z:
        return None
    return b.build(b.add(*z.values()), n=g.n)


def walk_sum(g: Graph, k: int, x=None) -> int:
    """The layered recurrence over the integers, x_i = ``x[i-1]`` (default all ones)."""
    _check_k(k)
    x = np.ones(g.n, dtype=object) if x is None else np.asarray(x, dtype=object)
    a = g.adjacency.astype(object)
    z = x.copy()
    for _ in range(k - 1):
        z = x * a.dot(z)
    return int(z.sum())
