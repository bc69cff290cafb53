"""Truncated Laurent series with exact integer coefficients.

An :class:`IntSeries` stores the coefficients ``c_v, c_{v+1}, ..., c_N`` of a
series ``sum c_n z^n`` together with its valuation ``v`` and its order ``N``.
Coefficients above ``N`` are *unknown*, not zero.  ``order=None`` marks an
exact polynomial (nothing is truncated), which is convenient for the small
polynomial multipliers that appear in the generating-function identities.

Orders propagate through arithmetic the usual way: a sum is known up to the
smaller order, and a product of ``(v1, N1)`` and ``(v2, N2)`` up to
``min(N1 + v2, N2 + v1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union


class TruncationError(ValueError):
    """A coefficient above the tracked order was requested."""


class NotInvertibleError(ArithmeticError):
    """Leading coefficient is not a unit of the integers."""


def _min_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_order(a: Optional[int], shift: int) -> Optional[int]:
    return None if a is None else a + shift


@dataclass(frozen=True)
class IntSeries:
    valuation: int
    coeffs: tuple[int, ...]
    order: Optional[int] = None

    def __post_init__(self) -> None:
        coeffs = list(self.coeffs)
        v = self.valuation
        order = self.order
        if order is not None:
            # drop anything beyond the order, pad up to it
            keep = order - v + 1
            if keep <= 0:
                coeffs = []
            else:
                coeffs = coeffs[:keep] + [0] * (keep - len(coeffs))
        # leading zeros inside the known range are genuine zeros
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        v += lead
        coeffs = coeffs[lead:]
        if order is None:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if not coeffs:
                v = 0
        elif not coeffs:
            v = order + 1
        object.__setattr__(self, "valuation", v)
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    # ---------------------------------------------------------------- builders

    @classmethod
    def from_coeffs(
        cls, coeffs: Iterable[int], valuation: int = 0, order: Optional[int] = None
    ) -> IntSeries:
        return cls(valuation, tuple(coeffs), order)

    @classmethod
    def from_dict(cls, terms: dict[int, int], order: Optional[int] = None) -> IntSeries:
        if not terms:
            return cls(0, (), order)
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(n, 0) for n in range(lo, hi + 1)), order)

    @classmethod
    def monomial(cls, exponent: int = 0, coefficient: int = 1) -> IntSeries:
        return cls(exponent, (coefficient,), None)

    @classmethod
    def one(cls) -> IntSeries:
        return cls.monomial(0, 1)

    @classmethod
    def zero(cls, order: Optional[int] = None) -> IntSeries:
        return cls(0, (), order)

    @classmethod
    def geometric(cls, j: int, order: int) -> IntSeries:
        """``1/(1 - z^j)`` up to ``z^order``."""
        if j <= 0:
            raise ValueError("geometric step must be positive")
        return cls.one().divide_one_minus_power(j, order=order)

    # ------------------------------------------------------------- inspection

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Largest exponent carrying a stored coefficient."""
        return self.valuation + len(self.coeffs) - 1

    def coeff(self, n: int) -> int:
        if self.order is not None and n > self.order:
            raise TruncationError(f"coefficient of z^{n} unknown beyond order {self.order}")
        i = n - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __getitem__(self, n: int) -> int:
        return self.coeff(n)

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs."""
        return [(self.valuation + i, c) for i, c in enumerate(self.coeffs) if c]

    def _top(self, order: Optional[int] = None) -> int:
        order = _min_order(self.order, order)
        return self.degree if order is None else order

    def dense(self, start: int, stop: int) -> list[int]:
        """Coefficients of ``z^start .. z^stop`` inclusive."""
        return [self.coeff(n) for n in range(start, stop + 1)]

    # ------------------------------------------------------------- arithmetic

    def truncate(self, order: int) -> IntSeries:
        return IntSeries(self.valuation, self.coeffs, _min_order(self.order, order))

    def shift(self, t: int) -> IntSeries:
        """Multiply by ``z^t``."""
        return IntSeries(self.valuation + t, self.coeffs, _add_order(self.order, t))

    def __neg__(self) -> IntSeries:
        return IntSeries(self.valuation, tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other: Union[IntSeries, int]) -> IntSeries:
        if isinstance(other, int):
            other = IntSeries.monomial(0, other)
        if not isinstance(other, IntSeries):
            return NotImplemented
        order = _min_order(self.order, other.order)
        terms: dict[int, int] = {}
        for s in (self, other):
            for n, c in s.terms():
                if order is None or n <= order:
                    terms[n] = terms.get(n, 0) + c
        if not terms:
            return IntSeries.zero(order)
        return IntSeries.from_dict(terms, order)

    __radd__ = __add__

    def __sub__(self, other: Union[IntSeries, int]) -> IntSeries:
        if isinstance(other, int):
            other = IntSeries.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other: int) -> IntSeries:
        return (-self) + other

    def __mul__(self, other: Union[IntSeries, int]) -> IntSeries:
        if isinstance(other, int):
            return IntSeries(self.valuation, tuple(other * c for c in self.coeffs), self.order)
        if not isinstance(other, IntSeries):
            return NotImplemented
        order = _min_order(
            _add_order(self.order, other.valuation),
            _add_order(other.order, self.valuation),
        )
        v = self.valuation + other.valuation
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntSeries.zero(order)
        size = len(a) + len(b) - 1
        if order is not None:
            size = min(size, order - v + 1)
        if size <= 0:
            return IntSeries.zero(order)
        out = [0] * size
        lb = len(b)
        for i, ai in enumerate(a):
            if i >= size:
                break
            if ai == 0:
                continue
            hi = min(lb, size - i)
            for j in range(hi):
                out[i + j] += ai * b[j]
        return IntSeries(v, tuple(out), order)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntSeries:
        if e < 0:
            return self.invert() ** (-e)
        result = IntSeries.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def invert(self, order: Optional[int] = None) -> IntSeries:
        """Multiplicative inverse; the leading coefficient must be +1 or -1.

        An exact polynomial has an infinite inverse, so ``order`` is required
        in that case.  For a truncated series of valuation ``v`` and order
        ``N`` the inverse is known up to ``N - 2v``.
        """
        if self.is_zero:
            raise NotInvertibleError("zero series (or valuation unknown) is not invertible")
        lead = self.coeffs[0]
        if lead not in (1, -1):
            raise NotInvertibleError(f"leading coefficient {lead} is not invertible over integers")
        v = self.valuation
        out_order = _min_order(_add_order(self.order, -2 * v), order)
        if out_order is None:
            raise ValueError("order required to invert an exact polynomial")
        size = out_order + v + 1
        if size <= 0:
            return IntSeries.zero(out_order)
        s = self.coeffs
        ls = len(s)
        t = [0] * size
        t[0] = lead
        for n in range(1, size):
            acc = 0
            for i in range(1, min(n, ls - 1) + 1):
                acc += s[i] * t[n - i]
            t[n] = -lead * acc
        return IntSeries(-v, tuple(t), out_order)

    def divide_one_minus_power(
        self, j: int, times: int = 1, order: Optional[int] = None
    ) -> IntSeries:
        """Multiply by ``(1 - z^j)^(-times)`` with an in-place prefix recurrence."""
        out_order = _min_order(self.order, order)
        if out_order is None:
            raise ValueError("order required to divide an exact polynomial")
        size = out_order - self.valuation + 1
        if size <= 0:
            return IntSeries.zero(out_order)
        c = list(self.coeffs[:size]) + [0] * max(0, size - len(self.coeffs))
        for _ in range(times):
            for n in range(j, size):
                c[n] += c[n - j]
        return IntSeries(self.valuation, tuple(c), out_order)

    def times_one_minus_power(self, j: int, times: int = 1) -> IntSeries:
        """Multiply by ``(1 - z^j)^times``."""
        c = list(self.coeffs)
        for _ in range(times):
            size = len(c) if self.order is not None else len(c) + j
            c = c + [0] * (size - len(c))
            for n in range(size - 1, j - 1, -1):
                c[n] -= c[n - j]
        return IntSeries(self.valuation, tuple(c), self.order)

    def derivative(self) -> IntSeries:
        v = self.valuation
        coeffs = tuple((v + i) * c for i, c in enumerate(self.coeffs))
        return IntSeries(v - 1, coeffs, _add_order(self.order, -1))

    # ------------------------------------------------------------ comparison

    def first_difference(self, other: IntSeries) -> Optional[int]:
        """Smallest exponent where the two series disagree, up to the common order."""
        order = _min_order(self.order, other.order)
        lo = min(self.valuation, other.valuation)
        hi = max(self.degree, other.degree) if order is None else order
        for n in range(lo, hi + 1):
            if self.coeff(n) != other.coeff(n):
                return n
        return None

    def agrees_with(self, other: IntSeries) -> bool:
        return self.first_difference(other) is None

    def evaluate(self, x):
        """Value of the stored (truncated) polynomial at ``x``.

        Works for ``int``, ``Fraction`` and ``mpmath.mpf`` alike; the unknown
        tail above the order is simply not present.
        """
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc * x ** self.valuation

    # ------------------------------------------------------------ formatting

    def to_text(self) -> str:
        order = "exact" if self.order is None else str(self.order)
        lines = [f"valuation {self.valuation} / order {order}"]
        top = self._top()
        for n in range(self.valuation, top + 1):
            lines.append(f"{n} {self.coeff(n)}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        parts = [f"{c:+d}*z^{n}" for n, c in self.terms()]
        body = " ".join(parts) if parts else "0"
        tail = "" if self.order is None else f" + O(z^{self.order + 1})"
        return f"IntSeries({body}{tail})"


def poly(coeffs: Sequence[int], valuation: int = 0) -> IntSeries:
    """Exact polynomial ``sum coeffs[i] z^(valuation+i)``."""
    return IntSeries.from_coeffs(coeffs, valuation, None)
