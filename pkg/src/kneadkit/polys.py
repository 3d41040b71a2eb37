"""Dense integer polynomials with exact arithmetic."""
from __future__ import annotations

import math


class IntPoly:
    """Integer polynomial, coefficients in ascending degree, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, k, c=1):
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        return self.format("x")

    def format(self, var="x"):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                pw = var if k == 1 else f"{var}^{k}"
                body = pw if mag == 1 else f"{mag}*{pw}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append((" - " if c < 0 else " + ") + body)
        return "".join(terms)

    def _lift(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = IntPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_up(self, k=1):
        """Multiply by x^k."""
        return IntPoly((0,) * k + self.coeffs) if self.coeffs else IntPoly()

    def derivative(self):
        return IntPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def content(self):
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive_part(self):
        """Divide by the content; leading coefficient made positive."""
        if not self.coeffs:
            return IntPoly()
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def reversed(self, n=None):
        """x^n * p(1/x); n defaults to the degree."""
        if n is None:
            n = self.degree
        if self.degree > n:
            raise ValueError("reversal length below degree")
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return IntPoly(reversed(c))

    def trailing_zeros(self):
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return k

    def strip_zero_roots(self):
        k = self.trailing_zeros()
        return IntPoly(self.coeffs[k:]), k

    def pseudo_rem(self, b):
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = b.degree
        lb = b.lead
        while len(r) - 1 >= db and r:
            shift = len(r) - 1 - db
            lr = r[-1]
            r = [lb * x for x in r]
            for i, y in enumerate(b.coeffs):
                r[i + shift] -= lr * y
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return IntPoly(r)

    def exact_div(self, b):
        """Quotient when b divides self exactly over Z; ArithmeticError otherwise."""
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = b.degree
        lb = b.lead
        if len(r) - 1 < db:
            if r:
                raise ArithmeticError("inexact polynomial division")
            return IntPoly()
        q = [0] * (len(r) - db)
        for shift in range(len(r) - 1 - db, -1, -1):
            top = r[shift + db]
            if top % lb:
                raise ArithmeticError("inexact polynomial division")
            c = top // lb
            q[shift] = c
            if c:
                for i, y in enumerate(b.coeffs):
                    r[i + shift] -= c * y
        if any(r):
            raise ArithmeticError("inexact polynomial division")
        return IntPoly(q)

    def gcd(self, other):
        """Primitive gcd (positive leading coefficient) via primitive remainder sequence."""
        a, b = self.primitive_part(), other.primitive_part()
        if a.degree < b.degree:
            a, b = b, a
        while not b.is_zero():
            a, b = b, a.pseudo_rem(b).primitive_part()
        return a

    def square_free(self):
        """Yun's decomposition: list of (factor, multiplicity) with primitive factors.

        Constant content is dropped; the product of factor**mult equals the
        primitive part of self.
        """
        f = self.primitive_part()
        if f.degree < 1:
            return []
        out = []
        a0 = f.gcd(f.derivative())
        b = f.exact_div(a0)
        c = f.derivative().exact_div(a0)
        d = c - b.derivative()
        i = 1
        while b.degree >= 1:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            if a.degree >= 1:
                out.append((a, i))
            i += 1
        return out

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items):
        return cls(int(x) for x in items)
