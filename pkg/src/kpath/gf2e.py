"""Arithmetic in GF(2^ell).

Elements are plain Python ints (or numpy unsigned arrays) whose bit i is the
coefficient of x^i.  Addition is xor.  ``mul`` is the shift-and-xor reference;
``mul_array`` is the table-driven vectorized form used in the hot loops and is
tested against ``mul``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ParameterError, UnsupportedError

MAX_K = 62

# Low-weight irreducible polynomials, bit i = coefficient of x^i.
MODULI = {
    1: 0b11,  # x + 1
    2: 0b111,  # x^2 + x + 1
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x83,  # x^7 + x + 1
    8: 0x11B,  # x^8 + x^4 + x^3 + x + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1009,  # x^12 + x^3 + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4021,  # x^14 + x^5 + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1002B,  # x^16 + x^5 + x^3 + x + 1
}

_FULL_TABLE_MAX_ELL = 10


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    """Remainder of ``a`` modulo ``m`` in GF(2)[x]."""
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(2^ell) realised as GF(2)[x] / (modulus)."""

    ell: int
    modulus: int

    def __post_init__(self):
        if self.ell < 1:
            raise ParameterError("ell must be positive")
        if self.modulus.bit_length() - 1 != self.ell or not self.modulus & 1:
            raise ParameterError(f"modulus {self.modulus:#x} is not a degree-{self.ell} polynomial with constant term 1")

    @property
    def order(self) -> int:
        return 1 << self.ell

    @property
    def dtype(self):
        return np.uint8 if self.ell <= 8 else np.uint16

    def __repr__(self):
        return f"FieldSpec(ell={self.ell}, modulus={self.modulus:#x})"

    @cached_property
    def _table(self) -> np.ndarray:
        # full multiplication table, flattened: entry (a << ell) | b
        q = self.order
        a = np.repeat(np.arange(q, dtype=np.uint64), q)
        b = np.tile(np.arange(q, dtype=np.uint64), q)
        return _reduce_array(_clmul_array(a, b, self.ell), self.modulus, self.ell, 2 * self.ell - 2).astype(self.dtype)

    @cached_property
    def _log_exp(self):
        q1 = self.order - 1
        g = primitive_element(self)
        exp = np.zeros(2 * q1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        x = 1
        for i in range(q1):
            exp[i] = x
            log[x] = i
            x = mul(self, x, g)
        exp[q1:] = exp[:q1]
        return log, exp


def field_for_k(k: int) -> FieldSpec:
    """Field with ell = 3 + ceil(log2 k), so that k / |F| <= 1/8."""
    if not 1 <= k <= MAX_K:
        raise ParameterError(f"k must lie in 1..{MAX_K}, got {k}")
    ell = 3 + (k - 1).bit_length()
    return FieldSpec(ell, MODULI[ell])


def field_for_ell(ell: int) -> FieldSpec:
    if ell not in MODULI:
        raise UnsupportedError(f"no tabulated modulus for ell={ell}")
    return FieldSpec(ell, MODULI[ell])


def _check(spec: FieldSpec, a: int):
    if not 0 <= a < spec.order:
        raise ParameterError(f"{a} is not an element of GF(2^{spec.ell})")


def add(spec: FieldSpec, a: int, b: int) -> int:
    _check(spec, a)
    _check(spec, b)
    return a ^ b


def mul(spec: FieldSpec, a: int, b: int) -> int:
    """Shift-and-xor multiplication with reduction after every shift."""
    _check(spec, a)
    _check(spec, b)
    top = 1 << spec.ell
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= spec.modulus
    return r


def power(spec: FieldSpec, a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = mul(spec, r, a)
        a = mul(spec, a, a)
        e >>= 1
    return r


def inverse(spec: FieldSpec, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return power(spec, a, spec.order - 2)


def primitive_element(spec: FieldSpec) -> int:
    """Smallest generator of the multiplicative group."""
    q1 = spec.order - 1
    primes = [p for p in range(2, q1 + 1) if q1 % p == 0 and all(p % d for d in range(2, int(p**0.5) + 1))]
    for g in range(1 if q1 == 1 else 2, spec.order):
        if all(power(spec, g, q1 // p) != 1 for p in primes):
            return g
    raise ParameterError(f"modulus {spec.modulus:#x} does not define a field")


def random_nonzero(spec: FieldSpec, rng, size=None):
    """Uniform draw from F minus {0} by rejection sampling of ell-bit masks."""
    gen = rng.generator if hasattr(rng, "generator") else rng
    if size is None:
        while True:
            x = int(gen.integers(0, spec.order))
            if x:
                return x
    out = gen.integers(0, spec.order, size=size)
    bad = out == 0
    while bad.any():
        out[bad] = gen.integers(0, spec.order, size=int(bad.sum()))
        bad = out == 0
    return out.astype(spec.dtype)


def is_irreducible(poly: int, ell: int) -> bool:
    """Trial division by every polynomial of degree 1..ell//2."""
    if ell > 16:
        raise UnsupportedError("brute-force irreducibility test limited to ell <= 16")
    if poly.bit_length() - 1 != ell:
        raise ParameterError(f"{poly:#x} does not have degree {ell}")
    for d in range(2, 1 << (ell // 2 + 1)):
        if poly_mod(poly, d) == 0:
            return False
    return True


def _clmul_array(a, b, ell):
    r = np.zeros(np.broadcast(a, b).shape, dtype=np.uint64)
    for i in range(ell):
        r ^= ((b >> np.uint64(i)) & np.uint64(1)) * (a << np.uint64(i))
    return r


def _reduce_array(r, modulus, ell, top):
    """Reduce polynomials of degree <= top modulo ``modulus`` (in place)."""
    m = np.uint64(modulus)
    for t in range(top, ell - 1, -1):
        r ^= ((r >> np.uint64(t)) & np.uint64(1)) * (m << np.uint64(t - ell))
    return r


def mul_array(spec: FieldSpec, a, b) -> np.ndarray:
    """Broadcasting elementwise product of field-element arrays."""
    a = np.asarray(a)
    b = np.asarray(b)
    if spec.ell <= _FULL_TABLE_MAX_ELL:
        idx = (a.astype(np.intp) << spec.ell) | b.astype(np.intp)
        return spec._table[idx]
    log, exp = spec._log_exp
    out = exp[log[a] + log[b]].astype(spec.dtype)
    return np.where((a != 0) & (b != 0), out, 0).astype(spec.dtype)


def scale_array(spec: FieldSpec, c, a) -> np.ndarray:
    """Multiply array ``a`` by scalars ``c`` that broadcast against it.

    For the small-table fields this gathers from the rows of the table
    selected by ``c``, which avoids materialising a full index array.
    """
    a = np.asarray(a)
    if spec.ell <= _FULL_TABLE_MAX_ELL:
        rows = spec._table.reshape(spec.order, spec.order)[np.asarray(c, dtype=np.intp)]
        rows = np.broadcast_to(rows, a.shape[:-1] + (spec.order,)) if rows.ndim > 1 else rows
        if rows.ndim == 1:
            return rows[a]
        return np.take_along_axis(rows, a.astype(np.intp), axis=-1)
    return mul_array(spec, np.asarray(c)[..., None], a)
