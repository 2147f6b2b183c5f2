"""The group algebra F[Z_2^k] with F = GF(2^ell).

An element is a dense vector of 2^k field elements; entry ``g`` is the
coefficient of the group element whose bitmask is ``g``.  The group law on
Z_2^k is xor, so multiplication is xor-convolution.

Two multiplications are provided.  ``mul_naive`` is the O(4^k) convolution
and is the reference.  ``mul_fast`` lifts every coefficient polynomial to the
integers, applies the Walsh-Hadamard transform in wrapping 64-bit arithmetic,
multiplies pointwise as integer polynomials, transforms back and reads off
parities.  Applying the unnormalised transform twice scales by 2^k, so the
parity of each exact coefficient sits in bit k of the wrapped result.

The array-level functions (``xor_convolve_naive``, ``xor_convolve_fast``,
``mul_linear_array``) accept any number of leading batch axes; the trailing
axis is the group axis.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import gf2e
from .errors import ParameterError, UnsupportedError
from .gf2e import FieldSpec

WORD_BITS = 64
NAIVE_MAX_K = 2


def _group_size(a: np.ndarray) -> int:
    n = a.shape[-1]
    k = n.bit_length() - 1
    if n != 1 << k:
        raise ParameterError(f"group axis has length {n}, not a power of two")
    return k


def wht(x: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis (wrapping uint64)."""
    n = x.shape[-1]
    lead = x.shape[:-1]
    h = 1
    while h < n:
        y = x.reshape(lead + (n // (2 * h), 2, h))
        a = y[..., 0, :]
        b = y[..., 1, :]
        x = np.stack((a + b, a - b), axis=-2).reshape(lead + (n,))
        h *= 2
    return x


def xor_convolve_naive(spec: FieldSpec, a, b) -> np.ndarray:
    """c[g] = sum_h a[h] * b[h ^ g], directly."""
    a = np.asarray(a, dtype=spec.dtype)
    b = np.asarray(b, dtype=spec.dtype)
    n = a.shape[-1]
    idx = np.arange(n)
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=spec.dtype)
    for h in range(n):
        out ^= gf2e.mul_array(spec, a[..., h : h + 1], b[..., idx ^ h])
    return out


def xor_convolve_fast(spec: FieldSpec, a, b) -> np.ndarray:
    """Xor-convolution through the integer Walsh-Hadamard transform."""
    a = np.asarray(a)
    b = np.asarray(b)
    k = _group_size(a)
    if k + 2 > WORD_BITS:
        raise UnsupportedError(f"k={k} exceeds the {WORD_BITS}-bit wraparound transform (k <= {WORD_BITS - 2})")
    ell = spec.ell
    shifts = np.arange(ell, dtype=np.uint64)[:, None]
    one = np.uint64(1)
    # (..., ell, 2^k): slot s holds the coefficient of x^s of every entry
    A = wht((a.astype(np.uint64)[..., None, :] >> shifts) & one)
    B = wht((b.astype(np.uint64)[..., None, :] >> shifts) & one)
    lead = np.broadcast_shapes(A.shape[:-2], B.shape[:-2])
    C = np.zeros(lead + (2 * ell - 1, a.shape[-1]), dtype=np.uint64)
    for s in range(ell):
        C[..., s : s + ell, :] += A[..., s : s + 1, :] * B
    C = wht(C)
    bits = (C >> np.uint64(k)) & one
    packed = np.zeros(C.shape[:-2] + C.shape[-1:], dtype=np.uint64)
    for t in range(2 * ell - 1):
        packed |= bits[..., t, :] << np.uint64(t)
    return gf2e._reduce_array(packed, spec.modulus, ell, 2 * ell - 2).astype(spec.dtype)


def xor_convolve(spec: FieldSpec, a, b) -> np.ndarray:
    if _group_size(np.asarray(a)) <= NAIVE_MAX_K:
        return xor_convolve_naive(spec, a, b)
    return xor_convolve_fast(spec, a, b)


def lane_ones(itemsize: int) -> int:
    """64-bit word with the value 1 in every ``itemsize``-byte lane."""
    return int.from_bytes((1).to_bytes(itemsize, "little") * (8 // itemsize), "little")


@lru_cache(maxsize=None)
def _lane_swap_masks(itemsize: int):
    """(shift, mask) pairs that swap adjacent lane groups of 1, 2, 4... lanes."""
    masks = []
    width = itemsize
    while width < 8:
        unit = (1 << (8 * width)) - 1
        mask = sum(unit << (16 * width * t) for t in range(8 // (2 * width)))
        masks.append((np.uint64(8 * width), np.uint64(mask)))
        width *= 2
    return tuple(masks)


def xor_permute(a: np.ndarray, v) -> np.ndarray:
    """a[..., g ^ v] with ``v`` broadcasting against ``a.shape[:-1]``.

    When a row fills whole 64-bit words the permutation is split into a word
    gather (high bits of v) and in-word lane swaps (low bits of v).
    """
    n = a.shape[-1]
    v = np.asarray(v)
    if v.ndim == 0:
        return a[..., np.arange(n) ^ v]
    v = np.broadcast_to(v, a.shape[:-1])
    if (n * a.itemsize) % 8:
        return np.take_along_axis(a, np.arange(n) ^ v[..., None], axis=-1)
    words = np.ascontiguousarray(a).view(np.uint64)
    lane_bits = (8 // a.itemsize).bit_length() - 1
    hi = (v >> lane_bits)[..., None]
    w = np.take_along_axis(words, np.arange(words.shape[-1]) ^ hi, axis=-1)
    for bit, (shift, mask) in enumerate(_lane_swap_masks(a.itemsize)):
        sel = ((v >> bit) & 1).astype(bool)
        if sel.any():
            w = np.where(sel[..., None], ((w & mask) << shift) | ((w >> shift) & mask), w)
    return w.view(a.dtype)


def mul_linear_array(a: np.ndarray, v) -> np.ndarray:
    """Multiply by (one + basis(v)): a[g] + a[g ^ v].

    ``v`` broadcasts against ``a.shape[:-1]``.
    """
    return a ^ xor_permute(a, v)


class AlgebraElem:
    """An element of F[Z_2^k] with dense coefficients."""

    __slots__ = ("k", "spec", "coeffs")

    def __init__(self, k: int, spec: FieldSpec, coeffs):
        coeffs = np.asarray(coeffs, dtype=spec.dtype)
        if coeffs.shape != (1 << k,):
            raise ParameterError(f"expected {1 << k} coefficients, got shape {coeffs.shape}")
        if coeffs.size and int(coeffs.max()) >= spec.order:
            raise ParameterError("coefficient outside the field")
        self.k = k
        self.spec = spec
        self.coeffs = coeffs

    def _compatible(self, other: "AlgebraElem"):
        if not isinstance(other, AlgebraElem):
            raise TypeError(f"expected AlgebraElem, got {type(other).__name__}")
        if other.k != self.k or other.spec != self.spec:
            raise ParameterError(f"mismatched algebras: k={self.k}/{other.k}, {self.spec}/{other.spec}")

    def __add__(self, other):
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return scalar_mul(int(other), self)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return scalar_mul(int(other), self)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElem):
            return NotImplemented
        return self.k == other.k and self.spec == other.spec and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.k, self.spec, self.coeffs.tobytes()))

    def __bool__(self):
        return not is_zero(self)

    def __repr__(self):
        terms = [f"{int(c):#x}*[{g:0{self.k}b}]" for g, c in enumerate(self.coeffs) if c]
        return f"AlgebraElem(k={self.k}, {' + '.join(terms) or '0'})"

    def coefficient(self, g: int) -> int:
        return int(self.coeffs[g])


def zero(k: int, spec: FieldSpec) -> AlgebraElem:
    if k < 1:
        raise ParameterError("k must be at least 1")
    return AlgebraElem(k, spec, np.zeros(1 << k, dtype=spec.dtype))


def one(k: int, spec: FieldSpec) -> AlgebraElem:
    return basis(0, k, spec)


def basis(v: int, k: int, spec: FieldSpec) -> AlgebraElem:
    if not 0 <= v < 1 << k:
        raise ParameterError(f"{v} is not a vector of Z_2^{k}")
    e = zero(k, spec)
    e.coeffs[v] = 1
    return e


def linear(v: int, k: int, spec: FieldSpec) -> AlgebraElem:
    """one + basis(v), the substitution for a variable."""
    e = zero(k, spec)
    e.coeffs[0] ^= 1
    e.coeffs[v] ^= 1
    return e


def from_terms(terms: dict, k: int, spec: FieldSpec) -> AlgebraElem:
    """Build an element from ``{group element: coefficient}``."""
    e = zero(k, spec)
    for g, c in terms.items():
        e.coeffs[g] ^= c
    return e


def add(a: AlgebraElem, b: AlgebraElem) -> AlgebraElem:
    a._compatible(b)
    return AlgebraElem(a.k, a.spec, a.coeffs ^ b.coeffs)


def mul_naive(a: AlgebraElem, b: AlgebraElem) -> AlgebraElem:
    a._compatible(b)
    return AlgebraElem(a.k, a.spec, xor_convolve_naive(a.spec, a.coeffs, b.coeffs))


def mul_fast(a: AlgebraElem, b: AlgebraElem) -> AlgebraElem:
    a._compatible(b)
    return AlgebraElem(a.k, a.spec, xor_convolve_fast(a.spec, a.coeffs, b.coeffs))


def mul(a: AlgebraElem, b: AlgebraElem) -> AlgebraElem:
    """Product, using the direct convolution for k <= 2 and the transform otherwise."""
    return mul_naive(a, b) if a.k <= NAIVE_MAX_K else mul_fast(a, b)


def scalar_mul(c: int, a: AlgebraElem) -> AlgebraElem:
    if not 0 <= c < a.spec.order:
        raise ParameterError(f"{c} is not an element of GF(2^{a.spec.ell})")
    return AlgebraElem(a.k, a.spec, gf2e.scale_array(a.spec, c, a.coeffs))


def is_zero(a: AlgebraElem) -> bool:
    return not a.coeffs.any()


def elem_product(vs, k: int, spec: FieldSpec) -> AlgebraElem:
    """Product of (one + basis(v)) over ``vs``.

    Zero exactly when the vectors are linearly dependent over GF(2); otherwise
    the sum of every vector in their span.
    """
    acc = one(k, spec).coeffs
    for v in vs:
        if not 0 <= v < 1 << k:
            raise ParameterError(f"{v} is not a vector of Z_2^{k}")
        acc = mul_linear_array(acc, v)
    return AlgebraElem(k, spec, acc)
