"""Exact arithmetic in Z[zeta_N], represented as Z[x] modulo the N-th
cyclotomic polynomial.  Only what character averaging needs: sums, products,
multiplication by roots of unity, and extraction of rational integers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


class NotRationalError(ArithmeticError):
    """A cyclotomic value expected to be a rational integer is not."""


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (den monic)."""
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        if c:
            q[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert rem == [0]
    return tuple(num)


@dataclass(frozen=True)
class Cyclotomic:
    """An element of Z[zeta_N]; coeffs has length deg Phi_N."""

    n: int
    coeffs: tuple[int, ...]

    @staticmethod
    def _reduce(n: int, coeffs: list[int]) -> "Cyclotomic":
        phi = list(cyclotomic_polynomial(n))
        deg = len(phi) - 1
        if len(coeffs) >= len(phi):
            _, coeffs = _poly_divmod(coeffs, phi)
        coeffs = coeffs + [0] * (deg - len(coeffs))
        return Cyclotomic(n, tuple(coeffs[:deg]))

    @staticmethod
    def integer(n: int, k: int) -> "Cyclotomic":
        return Cyclotomic._reduce(n, [k])

    @staticmethod
    def root(n: int, k: int) -> "Cyclotomic":
        """zeta_N^k."""
        coeffs = [0] * (k % n) + [1]
        return Cyclotomic._reduce(n, coeffs)

    def _check(self, other: "Cyclotomic"):
        if self.n != other.n:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        return Cyclotomic(
            self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        return Cyclotomic(
            self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        self._check(other)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Cyclotomic._reduce(self.n, out)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def as_integer(self) -> int:
        """The value as a rational integer, or raise NotRationalError."""
        if any(self.coeffs[1:]):
            raise NotRationalError(f"{self} is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0
