"""Arithmetic in GF(2^m) and linearized polynomials over it.

Field elements are m-bit integers holding polynomial residues: bit i is the
coefficient of x^i.  The same integer doubles as a vector of F_2^m, which is
how multipliers act on subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Lowest-weight primitive polynomial per degree; ties broken by smallest value.
PRIMITIVE_POLYS = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
}


class FieldTower:
    """GF(2^m) with exp/log tables over the primitive element alpha = x."""

    def __init__(self, degree: int, modulus: int | None = None):
        if not 1 <= degree <= 16:
            raise ValueError(f"field degree must be in 1..16, got {degree}")
        self.degree = degree
        self.modulus = PRIMITIVE_POLYS[degree] if modulus is None else modulus
        if self.modulus.bit_length() != degree + 1:
            raise ValueError("modulus degree does not match field degree")
        self.order = (1 << degree) - 1
        exp = np.zeros(2 * self.order + 1, dtype=np.int64)
        log = np.full(1 << degree, -1, dtype=np.int64)
        x = 1
        for t in range(self.order):
            if log[x] != -1:
                raise ValueError(f"modulus {self.modulus:#x} is not primitive")
            exp[t] = x
            log[x] = t
            x <<= 1
            if x >> degree:
                x ^= self.modulus
        if x != 1:
            raise ValueError(f"modulus {self.modulus:#x} is not primitive")
        exp[self.order:2 * self.order] = exp[:self.order]
        exp[2 * self.order] = exp[0]
        self.exp_table = exp
        self.log_table = log
        self._exp = exp.tolist()
        self._log = log.tolist()

    def __repr__(self):
        return f"FieldTower(degree={self.degree}, modulus={self.modulus:#x})"

    @property
    def alpha(self) -> int:
        return self._exp[1]

    def _check(self, a: int):
        if not 0 <= a <= self.order:
            raise ValueError(f"{a} is not an element of GF(2^{self.degree})")

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp[(self.order - self._log[a]) % self.order]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self.order]

    def alpha_pow(self, j: int) -> int:
        return self._exp[j % self.order]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no discrete logarithm")
        return self._log[a]

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(2^i)."""
        for _ in range(i % self.degree):
            a = self.mul(a, a)
        return a

    def mul_array(self, beta: int, values: np.ndarray) -> np.ndarray:
        """Multiply every entry of an integer array by the scalar beta."""
        values = np.asarray(values, dtype=np.int64)
        if beta == 0:
            return np.zeros_like(values)
        logs = self.log_table[values]
        out = self.exp_table[np.where(logs < 0, 0, logs) + self._log[beta]]
        return np.where(values == 0, 0, out)

    def field_arith(self, a: int, b: int | None, op: str, e: int | None = None) -> int:
        self._check(a)
        if b is not None:
            self._check(b)
        if op == "add":
            return self.add(a, b)
        if op == "mul":
            return self.mul(a, b)
        if op == "inv":
            return self.inv(a)
        if op == "pow":
            return self.pow(a, e)
        raise ValueError(f"unknown field operation {op!r}")


@lru_cache(maxsize=None)
def tower(degree: int) -> FieldTower:
    """Shared read-only tower for the built-in primitive polynomial."""
    return FieldTower(degree)


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Schoolbook product of two F_2[x] residues, reduced modulo ``modulus``."""
    deg = modulus.bit_length() - 1
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= modulus
    return out


@dataclass(frozen=True)
class LinearizedPoly:
    """f(x) = sum_i coeffs[i] * x^(2^i) over a fixed tower."""

    coeffs: tuple[int, ...]
    field: FieldTower

    def __call__(self, x: int) -> int:
        out = 0
        power = x
        for c in self.coeffs:
            out ^= self.field.mul(c, power)
            power = self.field.mul(power, power)
        return out

    @property
    def q_degree(self) -> int:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1


def linpoly_eval(f: LinearizedPoly, x: int) -> int:
    return f(x)


def scale_set(beta: int, vectors, field: FieldTower) -> list[int]:
    """Multiply each vector of F_2^m (read as a field element) by beta."""
    if beta == 0:
        raise ValueError("degenerate scaling")
    return [field.mul(beta, v) for v in vectors]
