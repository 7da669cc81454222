"""Arithmetic in F_{p^m} with elements stored by their F_p coordinates.

An element is the polynomial c_0 + c_1*alpha + ... + c_{m-1}*alpha^{m-1},
alpha being a root of the (monic, irreducible) modulus.  Internally the
element is packed into the integer c_0 + c_1*p + ... + c_{m-1}*p^{m-1}, so
that for p = 2 addition is XOR and the binary digits are the coordinates.
``FieldElement`` is the public, coordinate-tuple view of the same value.

Multiplication goes through exp/log tables over a primitive element; those
tables are an implementation detail and never leak into the API.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    LengthMismatch,
    NonPrimeCharacteristic,
    PreconditionError,
    ReducibleModulus,
    UnsupportedSize,
    ZeroInverse,
)

MAX_FIELD_SIZE = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, m)`` with ``q == p**m``, or raise."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p = next(f for f in itertools.count(2) if q % f == 0)
    m = 0
    rest = q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return p, m


# --- polynomials over F_p as low-to-high coefficient lists ---------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo b over F_p (b has nonzero leading coefficient)."""
    r = _poly_trim(list(a))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    while len(r) - 1 >= db and r:
        coef = r[-1] * inv_lead % p
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * bc) % p
        _poly_trim(r)
    return r


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg/2."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = list(low) + [1]
            if not _poly_rem(modulus, divisor, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m, ordering lower coefficients
    by the integer c_0 + c_1*p + ... + c_{m-1}*p^{m-1}."""
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldElement:
    """A field element as its coordinates (c_0, ..., c_{m-1}) over {1, alpha, ...}."""

    coords: tuple[int, ...]

    def __str__(self) -> str:
        return ":".join(str(c) for c in self.coords)


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q, q = p**m, with a fixed irreducible ``modulus``.

    ``modulus`` lists coefficients from the constant term upwards and is monic.
    Construct through :func:`field_make`, which validates everything.
    """

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.m

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={self.modulus})"

    # packing -------------------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p ** s) % p for s in range(self.m))

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.m:
            raise LengthMismatch(f"expected {self.m} coordinates, got {len(coords)}")
        out = 0
        for s, c in enumerate(coords):
            if not 0 <= c < self.p:
                raise PreconditionError(f"coordinate {c} outside [0, {self.p - 1}]")
            out += c * self.p ** s
        return out

    def element(self, x: int | Sequence[int] | FieldElement) -> FieldElement:
        return FieldElement(self.coords(self.index(x)))

    def index(self, x: int | Sequence[int] | FieldElement) -> int:
        """Packed integer form of an element given in any accepted form."""
        if isinstance(x, FieldElement):
            return self.from_coords(x.coords)
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if not 0 <= x < self.q:
                raise PreconditionError(f"{x} is not an element of F_{self.q}")
            return x
        return self.from_coords(tuple(x))

    # tables --------------------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_rem(prod, self.modulus, p)
        return sum(c * p ** s for s, c in enumerate(rem))

    def _times_alpha(self, a: int) -> int:
        p, m = self.p, self.m
        c = [0] + list(self.coords(a))
        lead = c[m]
        if lead:
            for s in range(m):
                c[s] = (c[s] - lead * self.modulus[s]) % p
        return sum(c[s] * p ** s for s in range(m))

    @cached_property
    def _tables(self) -> tuple[list[int], list[int]]:
        q = self.q
        if q == 2:
            return [1, 1], [0, 0]
        alpha = self.p if self.m > 1 else None
        candidates = ([alpha] if alpha is not None else []) + list(range(2, q))
        for g in candidates:
            step = self._times_alpha if g == alpha else (lambda x, g=g: self._mul_slow(x, g))
            exp = [1]
            x = step(1)
            while x != 1:
                exp.append(x)
                x = step(x)
                if len(exp) >= q:
                    break
            if len(exp) == q - 1:
                log = [0] * q
                for k, v in enumerate(exp):
                    log[v] = k
                return exp + exp, log
        raise AssertionError("multiplicative group is not cyclic; modulus is reducible")

    @cached_property
    def exp_array(self) -> np.ndarray:
        return np.array(self._tables[0], dtype=np.int64)

    @cached_property
    def log_array(self) -> np.ndarray:
        return np.array(self._tables[1], dtype=np.int64)

    # scalar arithmetic on packed integers --------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        out, w = 0, 1
        for _ in range(self.m):
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        return self.from_coords([-c % self.p for c in self.coords(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        exp, log = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        exp, log = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    # vectorised helpers (numpy arrays of packed elements) ----------------

    def add_array(self, a: np.ndarray, b: np.ndarray | int) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.m == 1:
            return (a + b) % self.p
        p = self.p
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self.m):
            out += ((a // w % p + b // w % p) % p) * w
            w *= p
        return out

    def scale_array(self, c: int, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a.copy()
        if self.m == 1:
            return a * c % self.p
        shifted = self.exp_array[self.log_array[a] + self.log_array[c]]
        return np.where(a == 0, 0, shifted)

    # vectors in F_q^len packed into one integer ---------------------------

    def vec_index(self, vec: Sequence[int]) -> int:
        """Pack (v_1, ..., v_len) as sum v_j * q^(len-j); v_1 is most significant."""
        out = 0
        for v in vec:
            out = out * self.q + v
        return out

    def vec_from_index(self, idx: int, length: int) -> tuple[int, ...]:
        out = []
        for _ in range(length):
            idx, v = divmod(idx, self.q)
            out.append(v)
        return tuple(reversed(out))


def field_make(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build and validate F_{p^m}.

    ``modulus`` is the coefficient list of a monic degree-m polynomial, constant
    term first (x^2 + x + 1 is ``[1, 1, 1]``).  When omitted the first
    irreducible in a fixed order is used, so construction is reproducible.
    """
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
    if m < 1:
        raise PreconditionError(f"extension degree must be >= 1, got {m}")
    if p ** m > MAX_FIELD_SIZE:
        raise UnsupportedSize(f"field size {p}^{m} exceeds {MAX_FIELD_SIZE}")
    if modulus is None:
        mod = default_modulus(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise PreconditionError(f"modulus must be monic of degree {m}: {list(modulus)}")
        if not is_irreducible(mod, p):
            raise ReducibleModulus(f"modulus {list(mod)} is reducible over F_{p}")
    return FieldSpec(p, m, mod)


def field_from_order(q: int) -> FieldSpec:
    p, m = prime_power(q)
    return field_make(p, m)


def field_arith(spec: FieldSpec, op: str, a, b=None) -> FieldElement:
    """Apply ``op`` (add, sub, mul, neg or inv) and return a FieldElement."""
    x = spec.index(a)
    if op in ("neg", "inv"):
        out = spec.neg(x) if op == "neg" else spec.inv(x)
    elif op in ("add", "sub", "mul"):
        if b is None:
            raise PreconditionError(f"{op} needs two operands")
        out = getattr(spec, op)(x, spec.index(b))
    else:
        raise PreconditionError(f"unknown field operation {op!r}")
    return spec.element(out)


def fe_coords(spec: FieldSpec, a) -> tuple[int, ...]:
    return spec.coords(spec.index(a))


def vec_inner(spec: FieldSpec, u: Iterable, v: Iterable) -> FieldElement:
    u, v = list(u), list(v)
    if len(u) != len(v):
        raise LengthMismatch(f"vectors of length {len(u)} and {len(v)}")
    acc = 0
    for x, y in zip(u, v):
        acc = spec.add(acc, spec.mul(spec.index(x), spec.index(y)))
    return spec.element(acc)
