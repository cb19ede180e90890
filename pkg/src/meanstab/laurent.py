"""Truncated Laurent-series scalars for exact one-sided limits.

A :class:`LaurentScalar` represents

    c_0*eps**val + c_1*eps**(val+1) + ... + c_{k-1}*eps**(val+k-1) + O(eps**floor)

with exact rational ``c_i`` and ``floor = val + k``.  ``floor=None`` marks an
exact polynomial in ``eps`` (no unknown tail).  Arithmetic tracks the window
honestly: products and reciprocals shrink it, additive cancellation shortens
it.  Feeding these scalars through a rational algorithm therefore computes
the algorithm's value as an exact germ in ``eps``; :meth:`limit` then reads
off the value at ``eps -> 0+`` when the germ has no pole.

This is how the engine's degenerate-case formulas are checked against the
generic formulas evaluated at a perturbed parameter: run the generic path
over Q(eps) with parameter ``target -/+ eps`` and take the exact limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_WINDOW = 32


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot mix LaurentScalar with {type(x).__name__}")


@dataclass(frozen=True)
class LaurentScalar:
    val: int
    coeffs: tuple[Fraction, ...]
    floor: int | None  # exponent where knowledge stops; None = exact
    window: int = DEFAULT_WINDOW

    # -- construction ------------------------------------------------------

    @classmethod
    def constant(cls, c, window: int = DEFAULT_WINDOW) -> "LaurentScalar":
        c = _as_fraction(c)
        if c == 0:
            return cls(0, (), None, window)
        return cls(0, (c,), None, window)

    @classmethod
    def epsilon(cls, window: int = DEFAULT_WINDOW) -> "LaurentScalar":
        return cls(1, (Fraction(1),), None, window)

    @classmethod
    def from_poly(cls, coeffs, window: int = DEFAULT_WINDOW) -> "LaurentScalar":
        """Exact polynomial c_0 + c_1*eps + ... in eps."""
        return cls(0, tuple(_as_fraction(c) for c in coeffs), None, window)._norm()

    def _norm(self) -> "LaurentScalar":
        coeffs = list(self.coeffs)
        val = self.val
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            val += 1
        while coeffs and coeffs[-1] == 0 and self.floor is None:
            coeffs.pop()
        if not coeffs:
            return LaurentScalar(0, (), self.floor, self.window)
        if self.floor is not None:
            coeffs = coeffs[: self.floor - val]
            if not coeffs:
                return LaurentScalar(0, (), self.floor, self.window)
        return LaurentScalar(val, tuple(coeffs), self.floor, self.window)

    # -- helpers -----------------------------------------------------------

    @property
    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.floor is None

    def _lift(self, other) -> "LaurentScalar":
        if isinstance(other, LaurentScalar):
            return other
        return LaurentScalar.constant(_as_fraction(other), self.window)

    def coefficient(self, exponent: int) -> Fraction:
        if self.floor is not None and exponent >= self.floor:
            raise ArithmeticError(f"coefficient at eps**{exponent} is beyond the window")
        idx = exponent - self.val
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[idx] if 0 <= idx < len(self.coeffs) else Fraction(0)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "LaurentScalar":
        other = self._lift(other)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        floors = [f for f in (self.floor, other.floor) if f is not None]
        floor = min(floors) if floors else None
        starts = [s.val for s in (self, other) if s.coeffs]
        val = min(starts) if starts else (floor if floor is not None else 0)
        tops = [s.val + len(s.coeffs) for s in (self, other) if s.coeffs]
        top = max(tops) if tops else val
        if floor is not None:
            top = min(top, floor)
        coeffs = tuple(
            self.coefficient_raw(e) + other.coefficient_raw(e) for e in range(val, top)
        )
        return LaurentScalar(val, coeffs, floor, self.window)._norm()

    def coefficient_raw(self, exponent: int) -> Fraction:
        idx = exponent - self.val
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[idx] if 0 <= idx < len(self.coeffs) else Fraction(0)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar(self.val, tuple(-c for c in self.coeffs), self.floor, self.window)

    def __sub__(self, other) -> "LaurentScalar":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentScalar":
        return self._lift(other) + (-self)

    def __mul__(self, other) -> "LaurentScalar":
        other = self._lift(other)
        if self.is_exact_zero or other.is_exact_zero:
            return LaurentScalar(0, (), None, self.window)
        floors = []
        if self.floor is not None:
            floors.append(self.floor + (other.val if other.coeffs else 0))
        if other.floor is not None:
            floors.append(other.floor + (self.val if self.coeffs else 0))
        floor = min(floors) if floors else None
        if not self.coeffs or not other.coeffs:
            # One factor is an unknown O(eps**floor); the product is unknown too.
            return LaurentScalar(0, (), floor, self.window)
        val = self.val + other.val
        length = len(self.coeffs) + len(other.coeffs) - 1
        if floor is not None:
            length = min(length, floor - val)
        out = [Fraction(0)] * length
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j < length and b != 0:
                    out[i + j] += a * b
        return LaurentScalar(val, tuple(out), floor, self.window)._norm()

    __rmul__ = __mul__

    def inverse(self) -> "LaurentScalar":
        s = self._norm()
        if not s.coeffs:
            raise ZeroDivisionError("cannot invert a scalar with no known leading term")
        length = (s.floor - s.val) if s.floor is not None else s.window
        a = list(s.coeffs[:length]) + [Fraction(0)] * max(0, length - len(s.coeffs))
        inv = [Fraction(0)] * length
        inv[0] = 1 / a[0]
        for n in range(1, length):
            acc = Fraction(0)
            for k in range(1, n + 1):
                acc += a[k] * inv[n - k]
            inv[n] = -acc / a[0]
        return LaurentScalar(-s.val, tuple(inv), -s.val + length, s.window)

    def __truediv__(self, other) -> "LaurentScalar":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "LaurentScalar":
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int) -> "LaurentScalar":
        if not isinstance(n, int):
            raise TypeError("LaurentScalar powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        out = LaurentScalar.constant(1, self.window)
        for _ in range(n):
            out = out * self
        return out

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.constant(other, self.window)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        diff = self - other
        return diff.is_exact_zero

    def __hash__(self) -> int:
        return hash((self.val, self.coeffs, self.floor))

    # -- the point of it all -------------------------------------------------

    def limit(self) -> Fraction:
        """Exact value at eps -> 0+; raises when the germ has a pole or the
        constant term fell outside the tracked window."""
        s = self._norm()
        if s.coeffs and s.val < 0:
            raise ArithmeticError("limit diverges: negative leading exponent")
        if s.floor is not None and s.floor <= 0:
            raise ArithmeticError("window exhausted before the constant term")
        if not s.coeffs:
            return Fraction(0)
        return s.coefficient_raw(0)
