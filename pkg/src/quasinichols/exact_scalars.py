"""Exact scalars: roots of unity as phases, and cyclotomic field elements.

A :class:`Phase` ``r`` stands for ``exp(2 pi i r)`` with ``0 <= r < 1``; all
structure constants of twisted Yetter-Drinfeld modules are phases.  Sums of
phases (symmetrizer entries, eigenvectors) live in :class:`Cyclotomic`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np


class Phase:
    """A root of unity ``exp(2 pi i * num/den)``, stored in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den: int = 1):
        if isinstance(num, Fraction):
            num, den = num.numerator * 1, num.denominator * den
        if den <= 0:
            raise ValueError("phase denominator must be positive")
        num %= den
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        if num == 0:
            den = 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Phase is immutable")

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Phase":
        """``zeta_n ** k``."""
        return cls(k, n)

    @classmethod
    def parse(cls, text: str) -> "Phase":
        text = str(text).strip()
        if "/" in text:
            p, q = text.split("/")
            return cls(int(p), int(q))
        return cls(int(text), 1)

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __mul__(self, other: "Phase") -> "Phase":
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.num * other.den + other.num * self.den, self.den * other.den)

    def __truediv__(self, other: "Phase") -> "Phase":
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.num * other.den - other.num * self.den, self.den * other.den)

    def __pow__(self, k: int) -> "Phase":
        return Phase(self.num * k, self.den)

    def inverse(self) -> "Phase":
        return Phase(-self.num, self.den)

    def order(self) -> int:
        return self.den

    def is_one(self) -> bool:
        return self.num == 0

    def roots(self, n: int) -> list["Phase"]:
        """All ``n``-th roots, sorted by exponent."""
        return sorted(Phase(self.num + k * self.den, self.den * n) for k in range(n))

    def principal_root(self, n: int) -> "Phase":
        """The ``n``-th root with least nonnegative exponent."""
        return Phase(self.num, self.den * n)

    def __eq__(self, other):
        return isinstance(other, Phase) and self.num == other.num and self.den == other.den

    def __lt__(self, other: "Phase") -> bool:
        return self.num * other.den < other.num * self.den

    def __le__(self, other: "Phase") -> bool:
        return self == other or self < other

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        return "0" if self.num == 0 else f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Phase({self})"


ONE = Phase(0)
MINUS_ONE = Phase(1, 2)


def phase_mul(a: Phase, b: Phase) -> Phase:
    return a * b


def phase_order(a: Phase) -> int:
    return a.order()


def common_denominator(phases: Iterable[Phase]) -> int:
    return reduce(lcm, (p.den for p in phases), 1)


# --- cyclotomic polynomials -------------------------------------------------


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def power_table(n: int) -> np.ndarray:
    """Row k holds the power-basis coordinates of x**k modulo Phi_n, 0 <= k < n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    table = np.zeros((n, deg), dtype=np.int64)
    vec = [1] + [0] * (deg - 1) if deg else []
    for k in range(n):
        table[k] = vec
        # multiply by x and reduce with the monic Phi_n
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, phi[:-1])]
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def regular_representation(n: int) -> np.ndarray:
    """Integer matrices of multiplication by x**i on the power basis, i < phi(n)."""
    pt = power_table(n)
    deg = pt.shape[1]
    reps = np.zeros((deg, deg, deg), dtype=np.int64)
    for i in range(deg):
        for j in range(deg):
            reps[i, :, j] = pt[(i + j) % n]
    reps.setflags(write=False)
    return reps


class Cyclotomic:
    """Element of Q(zeta_N) in the power basis modulo the N-th cyclotomic polynomial."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence):
        deg = euler_phi(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"expected {deg} coefficients for conductor {conductor}")
        self.conductor = conductor
        self.coeffs = coeffs

    @classmethod
    def zero(cls, conductor: int = 1) -> "Cyclotomic":
        return cls(conductor, [0] * euler_phi(conductor))

    @classmethod
    def from_int(cls, value, conductor: int = 1) -> "Cyclotomic":
        c = [0] * euler_phi(conductor)
        c[0] = value
        return cls(conductor, c)

    @classmethod
    def from_phase(cls, p: Phase, conductor: int | None = None) -> "Cyclotomic":
        n = conductor or p.den
        if n % p.den:
            raise ValueError(f"phase {p} does not live in conductor {n}")
        return cls(n, power_table(n)[p.num * (n // p.den)].tolist())

    @classmethod
    def from_exponent_counts(cls, conductor: int, counts: Sequence[int]) -> "Cyclotomic":
        """sum_k counts[k] * zeta_N**k."""
        vec = np.asarray(counts, dtype=np.int64) @ power_table(conductor)
        return cls(conductor, vec.tolist())

    def lift(self, conductor: int) -> "Cyclotomic":
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError("target conductor must be a multiple")
        step = conductor // self.conductor
        pt = power_table(conductor)
        out = [Fraction(0)] * pt.shape[1]
        for i, c in enumerate(self.coeffs):
            if c:
                row = pt[(i * step) % conductor]
                out = [o + c * int(r) for o, r in zip(out, row)]
        return Cyclotomic(conductor, out)

    def _align(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_int(other, self.conductor)
        if other.conductor == self.conductor:
            return self, other
        n = lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equality is conductor independent; hash only rational elements precisely
        if all(c == 0 for c in self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.conductor)

    def __add__(self, other):
        a, b = self._align(other)
        return Cyclotomic(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [x * other for x in self.coeffs])
        if isinstance(other, Phase):
            other = Cyclotomic.from_phase(other, lcm(self.conductor, other.den))
        a, b = self._align(other)
        n = a.conductor
        pt = power_table(n)
        out = [Fraction(0)] * len(a.coeffs)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    xy = x * y
                    row = pt[(i + j) % n]
                    out = [o + xy * int(r) for o, r in zip(out, row)]
        return Cyclotomic(n, out)

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta**k (k coprime to the conductor)."""
        n = self.conductor
        pt = power_table(n)
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                row = pt[(i * k) % n]
                out = [o + c * int(r) for o, r in zip(out, row)]
        return Cyclotomic(n, out)

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.conductor
        conj = Cyclotomic.from_int(1, n)
        for k in range(2, n):
            if gcd(k, n) == 1:
                conj = conj * self.galois(k)
        norm = (self * conj).coeffs
        if any(norm[1:]):
            raise ArithmeticError("norm is not rational")
        return conj * (1 / norm[0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __repr__(self):
        terms = [f"{c}*z{self.conductor}^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + (" + ".join(terms) or "0") + ")"


def _as_cyclotomic(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, Phase):
        return Cyclotomic.from_phase(x)
    return Cyclotomic.from_int(x)


def _lift_rows(rows) -> tuple[list[list[Cyclotomic]], int]:
    rows = [[_as_cyclotomic(x) for x in row] for row in rows]
    n = reduce(lcm, (x.conductor for row in rows for x in row), 1)
    return [[x.lift(n) for x in row] for row in rows], n


def row_echelon(rows) -> tuple[list[list[Cyclotomic]], list[int]]:
    """Reduced row echelon form over Q(zeta_N); returns (rows, pivot columns)."""
    m, _ = _lift_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def cyc_rank(rows) -> int:
    """Rank over the cyclotomic field by exact Gaussian elimination."""
    m, _ = _lift_rows(rows)
    if not m or not m[0]:
        return 0
    rank = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][c].inverse()
        for i in range(rank + 1, len(m)):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def nullspace(rows) -> list[list[Cyclotomic]]:
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = row_echelon(rows)
    n = reduce(lcm, (x.conductor for row in red for x in row), 1)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Cyclotomic.zero(n) for _ in range(ncols)]
        v[f] = Cyclotomic.from_int(1, n)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def integer_cyclotomic_rank(coeffs: np.ndarray, conductor: int) -> int:
    """Rank over Q(zeta_N) of a matrix with integer power-basis coordinates.

    ``coeffs`` has shape (rows, cols, phi(N)).  The matrix is expanded into its
    regular representation over Q, whose rank is phi(N) times the answer.
    """
    import flint

    rows, cols, deg = coeffs.shape
    if rows == 0 or cols == 0:
        return 0
    reps = regular_representation(conductor)
    big = np.einsum("rci,iab->racb", coeffs, reps).reshape(rows * deg, cols * deg)
    rank = flint.fmpz_mat(big.tolist()).rank()
    return rank // deg
