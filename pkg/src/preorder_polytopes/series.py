"""Truncated power series whose coefficients are Laurent polynomials in t."""

from __future__ import annotations

from fractions import Fraction

from .errors import PrecondError
from .polynomials import format_rational


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentPoly:
    """Laurent polynomial in t with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        d = {}
        for e, c in items:
            c = _frac(c)
            if c:
                d[int(e)] = d.get(int(e), Fraction(0)) + c
        d = {e: c for e, c in d.items() if c}
        object.__setattr__(self, "terms", tuple(sorted(d.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __reduce__(self):
        return (LaurentPoly, (self.terms,))

    @classmethod
    def const(cls, c):
        return cls([(0, c)])

    @classmethod
    def t_power(cls, e, c=1):
        return cls([(e, c)])

    @classmethod
    def from_unipoly(cls, p, shift=0, stretch=1):
        """p with t -> t^stretch, then multiplied by t^shift."""
        return cls([(i * stretch + shift, c) for i, c in enumerate(p.coeffs)])

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return LaurentPoly(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly([(e, c * other) for e, c in self.terms])
        out = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = _frac(scalar)
        return LaurentPoly([(e, c / s) for e, c in self.terms])

    def is_unit(self):
        return len(self.terms) == 1

    def inverse_unit(self):
        if not self.is_unit():
            raise PrecondError("Laurent coefficient is not invertible")
        e, c = self.terms[0]
        return LaurentPoly([(-e, 1 / c)])

    def min_exp(self):
        return self.terms[0][0] if self.terms else 0

    def serialize(self):
        return {str(e): format_rational(c) for e, c in self.terms}

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        return "LaurentPoly(" + " + ".join(f"{c}*t^{e}" for e, c in self.terms) + ")"


L_ZERO = LaurentPoly()
L_ONE = LaurentPoly.const(1)


class TruncSeries:
    """Power series in x truncated at a fixed order.

    Coefficients beyond the order are unknown, never assumed zero.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=()):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = list(coeffs)[: order + 1]
        cs = [c if isinstance(c, LaurentPoly) else LaurentPoly.const(c) for c in cs]
        cs += [L_ZERO] * (order + 1 - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    def __reduce__(self):
        return (TruncSeries, (self.order, self.coeffs))

    @classmethod
    def x(cls, order):
        return cls(order, [L_ZERO, L_ONE])

    @classmethod
    def one(cls, order):
        return cls(order, [L_ONE])

    def truncate(self, order):
        return TruncSeries(min(order, self.order), self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        k = min(self.order, other.order)
        return self.coeffs[: k + 1] == other.coeffs[: k + 1]

    def __add__(self, other):
        k = min(self.order, other.order)
        return TruncSeries(k, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return TruncSeries(self.order, [c * other for c in self.coeffs])
        k = min(self.order, other.order)
        out = [L_ZERO] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if a:
                for j in range(k + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
        return TruncSeries(k, out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"TruncSeries(order={self.order}, {list(self.coeffs)!r})"


def series_mul(a, b):
    return a * b


def series_reciprocal(a):
    """Multiplicative inverse; requires constant coefficient 1."""
    if a.coeffs[0] != L_ONE:
        raise PrecondError("reciprocal needs constant coefficient 1")
    k = a.order
    out = [L_ONE] + [L_ZERO] * k
    for m in range(1, k + 1):
        acc = L_ZERO
        for j in range(1, m + 1):
            if a.coeffs[j]:
                acc = acc + a.coeffs[j] * out[m - j]
        out[m] = -acc
    return TruncSeries(k, out)


def series_exp(a):
    """exp of a series with zero constant coefficient."""
    if a.coeffs[0]:
        raise PrecondError("exp needs zero constant coefficient")
    k = a.order
    out = TruncSeries.one(k)
    term = TruncSeries.one(k)
    fact = 1
    for j in range(1, k + 1):
        term = term * a
        fact *= j
        out = out + term * Fraction(1, fact)
    return out


def series_compose(f, g):
    """f(g(x)); g must have zero constant coefficient."""
    if g.coeffs[0]:
        raise PrecondError("composition needs inner constant coefficient 0")
    k = min(f.order, g.order)
    out = TruncSeries(k, [f.coeffs[0]])
    power = TruncSeries.one(k)
    for j in range(1, k + 1):
        power = power * g
        if f.coeffs[j]:
            out = out + power * f.coeffs[j]
    return out


def series_comp_inverse(f):
    """Compositional inverse: g with f(g(x)) = x + O(x^(K+1)).

    Requires zero constant coefficient and an invertible linear coefficient.
    """
    if f.coeffs[0]:
        raise PrecondError("compositional inverse needs zero constant coefficient")
    if not f.coeffs[1].is_unit():
        raise PrecondError("compositional inverse needs invertible linear coefficient")
    k = f.order
    inv1 = f.coeffs[1].inverse_unit()
    g = [L_ZERO, inv1] + [L_ZERO] * (k - 1)
    for m in range(2, k + 1):
        cur = TruncSeries(m, g[: m + 1])
        err = series_compose(TruncSeries(m, f.coeffs[: m + 1]), cur).coeffs[m]
        g[m] = -(err * inv1)
    return TruncSeries(k, g)


def series_ops(kind, *args):
    ops = {
        "mul": series_mul,
        "reciprocal": series_reciprocal,
        "exp": series_exp,
        "comp_inverse": series_comp_inverse,
    }
    if kind not in ops:
        raise PrecondError(f"unknown series operation {kind!r}")
    return ops[kind](*args)
