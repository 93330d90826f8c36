"""Eventually periodic continued fractions in (0, 1) with exact comparisons."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import chain, count, cycle, islice
from typing import Iterator


@dataclass(frozen=True)
class ContinuedFraction:
    """The number ``[0; head..., (tail)...]``.

    The tail is repeated forever, so every value is a quadratic irrational
    and never equals a rational number.  All partial quotients are positive.
    """

    head: tuple[int, ...]
    tail: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(a) for a in self.head))
        object.__setattr__(self, "tail", tuple(int(a) for a in self.tail))
        if not self.tail:
            raise ValueError("continued fraction tail must be nonempty")
        if any(a < 1 for a in self.head + self.tail):
            raise ValueError("partial quotients must be positive integers")

    def terms(self) -> Iterator[int]:
        return chain(self.head, cycle(self.tail))

    def render(self) -> str:
        head = ",".join(map(str, self.head))
        tail = ",".join(map(str, self.tail))
        return f"[0;{head + ',' if head else ''}({tail})]"

    def __str__(self):
        return self.render()

    def convergents(self) -> Iterator[Fraction]:
        """Yield p_k/q_k for k = 0, 1, 2, ... starting with 0/1."""
        p0, q0, p1, q1 = 1, 0, 0, 1
        yield Fraction(0, 1)
        for a in self.terms():
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
            yield Fraction(p1, q1)

    @cached_property
    def _table(self) -> list[Fraction]:
        # Grown on demand by _convergent(); shared by all comparisons.
        return []

    def _convergent(self, k: int) -> Fraction:
        table = self._table
        if k >= len(table):
            table.extend(islice(self.convergents(), len(table), k + 64))
        return table[k]

    def brackets(self) -> Iterator[tuple[Fraction, Fraction]]:
        """Yield ever tighter rational pairs ``lo < value < hi``."""
        for k in count():
            c0, c1 = self._convergent(k), self._convergent(k + 1)
            yield (c0, c1) if c0 < c1 else (c1, c0)

    def compare(self, x: Fraction | int) -> int:
        """Return +1 if the value exceeds ``x`` and -1 if it is smaller.

        Exact: the value is irrational, so equality never happens.
        """
        x = Fraction(x)
        for lo, hi in self.brackets():
            if x <= lo:
                return 1
            if x >= hi:
                return -1
        raise AssertionError("unreachable")

    def bounds(self, precision: Fraction | float = Fraction(1, 10**12)):
        precision = Fraction(precision)
        for lo, hi in self.brackets():
            if hi - lo < precision:
                return lo, hi
        raise AssertionError("unreachable")

    def __float__(self):
        lo, hi = self.bounds(Fraction(1, 10**18))
        return float((lo + hi) / 2)

    def complement(self) -> ContinuedFraction:
        """The continued fraction of ``1 - value``."""
        # 1 - [0; a1, a2, ...] is [0; 1, a1-1, a2, ...] or, when a1 = 1, [0; 1+a2, a3, ...].
        head, tail = self.head, self.tail
        if not head:
            head = tail  # unroll one period so the leading terms are explicit
        if head[0] > 1:
            return ContinuedFraction((1, head[0] - 1) + head[1:], tail)
        if len(head) >= 2:
            return ContinuedFraction((1 + head[1],) + head[2:], tail)
        return ContinuedFraction((1 + tail[0],) + tail[1:], tail)

    def floor_affine(self, n: int, rho: Fraction) -> int:
        """Exact ``floor(n * value + rho)``."""
        if n == 0:
            return int(rho // 1)
        for lo, hi in self.brackets():
            f_lo = (n * lo + rho) // 1
            if f_lo == (n * hi + rho) // 1:
                return int(f_lo)
        raise AssertionError("unreachable")

    def floors_affine(self, n_max: int, rho: Fraction) -> list[int]:
        """``floor(n * value + rho)`` for every ``0 <= n <= n_max``.

        One bracketing pair of convergents certifies almost every index at
        once; the rare undecided indices are refined individually.
        """
        rho = Fraction(rho)
        rn, rd = rho.numerator, rho.denominator
        k = 0
        while self._convergent(k).denominator <= n_max + 1:
            k += 1
        c0, c1 = self._convergent(k), self._convergent(k + 1)
        p0, q0, p1, q1 = c0.numerator, c0.denominator, c1.numerator, c1.denominator
        d0, d1 = q0 * rd, q1 * rd
        a0, a1 = p0 * rd, p1 * rd
        b0, b1 = rn * q0, rn * q1
        out = [(i * a0 + b0) // d0 for i in range(n_max + 1)]
        other = [(i * a1 + b1) // d1 for i in range(n_max + 1)]
        for i in range(n_max + 1):
            if out[i] != other[i]:
                out[i] = self.floor_affine(i, rho)
        return out


def from_directive(head: tuple[int, ...], tail: tuple[int, ...]) -> ContinuedFraction:
    """Slope ``[0; 1+d1, d2, d3, ...]`` of the characteristic word with directive ``d``."""
    if head:
        return ContinuedFraction((head[0] + 1,) + tuple(head[1:]), tail)
    return ContinuedFraction((tail[0] + 1,) + tuple(tail[1:]), tail)
