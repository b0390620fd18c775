"""Certified arithmetic on sums of square roots of rationals.

A perimeter of a polygon with rational vertices is ``sum(sqrt(q_i))`` for
rational squared edge lengths ``q_i``.  :class:`SqrtSum` keeps such values
symbolically and decides signs with interval enclosures computed by integer
square roots, so every bound is rounded in the safe direction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational

from .errors import CertificationError

#: bit precisions tried, in order, before a comparison gives up
PRECISIONS = (64, 128, 256, 512, 1024)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def sqrt_bounds(r: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Enclose ``sqrt(r)`` in ``[lo, hi]`` with width at most ``1/(q*2**bits)``."""
    if r < 0:
        raise ValueError("square root of a negative rational")
    p, q = r.numerator, r.denominator
    scale = 1 << bits
    n = p * q * scale * scale
    s = isqrt(n)
    den = q * scale
    lo = Fraction(s, den)
    hi = lo if s * s == n else Fraction(s + 1, den)
    return lo, hi


def exact_sqrt(r: Fraction) -> Fraction | None:
    """Return ``sqrt(r)`` if it is rational, else None."""
    p, q = r.numerator, r.denominator
    sp, sq = isqrt(p), isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    return None


@dataclass(frozen=True)
class SqrtSum:
    """``sum(c * sqrt(r) for c, r in terms)`` with rational ``c`` and ``r >= 0``.

    Terms with equal radicands are merged and perfect squares folded into a
    rational part, so structural equality is a useful (not complete) test.
    Ordering comparisons are certified and raise
    :class:`~polyratio.errors.CertificationError` when the enclosures keep
    overlapping up to ``PRECISIONS[-1]`` bits (e.g. for values that are
    exactly equal but not structurally identical).
    """

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def of(cls, pairs) -> "SqrtSum":
        merged: dict[Fraction, Fraction] = {}
        for c, r in pairs:
            c, r = _as_fraction(c), _as_fraction(r)
            if r < 0:
                raise ValueError("negative radicand")
            if c == 0 or r == 0:
                continue
            root = exact_sqrt(r)
            if root is not None:
                c, r = c * root, Fraction(1)
            merged[r] = merged.get(r, Fraction(0)) + c
        return cls(tuple((merged[r], r) for r in sorted(merged) if merged[r] != 0))

    @classmethod
    def sqrt(cls, r) -> "SqrtSum":
        return cls.of([(1, r)])

    @classmethod
    def rational(cls, x) -> "SqrtSum":
        return cls.of([(x, 1)])

    def _coerce(self, other) -> "SqrtSum":
        if isinstance(other, SqrtSum):
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtSum.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return SqrtSum.of(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return SqrtSum(tuple((-c, r) for c, r in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            k = Fraction(other)
            return SqrtSum.of((c * k, r) for c, r in self.terms)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("SqrtSum divided by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def is_rational(self) -> bool:
        return all(r == 1 for _, r in self.terms)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is irrational")
        return sum((c for c, _ in self.terms), Fraction(0))

    def interval(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(0)
        for c, r in self.terms:
            a, b = sqrt_bounds(r, bits)
            if c > 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        return lo, hi

    def sign(self) -> int:
        if self.is_rational():
            v = self.rational_value()
            return (v > 0) - (v < 0)
        for bits in PRECISIONS:
            lo, hi = self.interval(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise CertificationError(
            f"sign undecided at {PRECISIONS[-1]} bits (interval straddles 0)"
        )

    def compare(self, other) -> int:
        other = self._coerce(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare SqrtSum with {type(other).__name__}")
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __float__(self) -> float:
        lo, hi = self.interval(64)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*sqrt({r})" for c, r in self.terms) or "0"
        return f"SqrtSum({body})"
