"""Exact sparse multivariate polynomials over the integers in the labels a, b, c, d.

A polynomial is a mapping from exponent vectors ``(ea, eb, ec, ed)`` to nonzero
Python integers.  Both exponents and coefficients are unbounded.  Monomials are
ordered by total degree first and then lexicographically with ``a > b > c > d``;
the canonical text form lists terms in decreasing order, e.g.
``2*a^2*b^2*c^2 + a^5 + c``.

Rational values use :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import heapq
import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from .errors import InexactDivisionError, MissingVariableError, NotASquareError

VARIABLES = ("a", "b", "c", "d")
_INDEX = {name: i for i, name in enumerate(VARIABLES)}
_ZERO = (0, 0, 0, 0)

Exponent = Tuple[int, int, int, int]
Scalar = Union[int, Fraction]


def _order_key(e: Exponent):
    return (e[0] + e[1] + e[2] + e[3], e)


def _neg_key(e: Exponent):
    # min-heap on this key pops the greatest monomial first
    return (-(e[0] + e[1] + e[2] + e[3]), -e[0], -e[1], -e[2], -e[3])


def _add_exp(x: Exponent, y: Exponent) -> Exponent:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def _sub_exp(x: Exponent, y: Exponent):
    r = (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3])
    if r[0] < 0 or r[1] < 0 or r[2] < 0 or r[3] < 0:
        return None
    return r


class MultiPoly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean: Dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != 4:
                        raise ValueError(f"exponent vector must have 4 entries: {e!r}")
                    clean[tuple(e)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, int]) -> "MultiPoly":
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        e = [0, 0, 0, 0]
        e[_INDEX[name]] = 1
        return cls._raw({tuple(e): 1})

    @classmethod
    def const(cls, value: int) -> "MultiPoly":
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError("polynomial coefficients must be integers")
            value = value.numerator
        return cls._raw({_ZERO: int(value)} if value else {})

    @classmethod
    def monomial(cls, coeff: int = 1, **exponents: int) -> "MultiPoly":
        e = [0, 0, 0, 0]
        for name, k in exponents.items():
            e[_INDEX[name]] = k
        return cls._raw({tuple(e): coeff} if coeff else {})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        """Parse the canonical text form (``"2*a^2*b - c + 3"``)."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        out: Dict[Exponent, int] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coeff = 1
            e = [0, 0, 0, 0]
            for factor in body.split("*"):
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                m = re.fullmatch(r"([abcd])(?:\^(\d+))?", factor)
                if not m:
                    raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
                e[_INDEX[m.group(1)]] += int(m.group(2) or 1)
            if sign == "-":
                coeff = -coeff
            key = tuple(e)
            out[key] = out.get(key, 0) + coeff
        return cls(out)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        """Terms in decreasing monomial order."""
        for e in sorted(self._terms, key=_order_key, reverse=True):
            yield e, self._terms[e]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(_ZERO, 0)

    def leading_term(self) -> Tuple[Exponent, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_order_key)
        return e, self._terms[e]

    def coefficient(self, exponent: Exponent) -> int:
        return self._terms.get(tuple(exponent), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, name: str) -> int:
        i = _INDEX[name]
        return max((e[i] for e in self._terms), default=-1)

    def variables(self) -> Tuple[str, ...]:
        used = [False] * 4
        for e in self._terms:
            for i in range(4):
                if e[i]:
                    used[i] = True
        return tuple(v for v, u in zip(VARIABLES, used) if u)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.const(other)
        if isinstance(other, Fraction) and other.denominator == 1:
            return MultiPoly.const(other.numerator)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = o._terms, self._terms
        else:
            big, small = self._terms, o._terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t1, t2 = self._terms, o._terms
        if not t1 or not t2:
            return MultiPoly._raw({})
        if len(t1) < len(t2):
            t1, t2 = t2, t1
        if len(t2) == 1:
            (e2, c2), = t2.items()
            if e2 == _ZERO:
                return MultiPoly._raw({e: c * c2 for e, c in t1.items()})
            return MultiPoly._raw({_add_exp(e, e2): c * c2 for e, c in t1.items()})
        out: Dict[Exponent, int] = {}
        get = out.get
        for (x0, x1, x2, x3), c1 in t2.items():
            for (y0, y1, y2, y3), c2 in t1.items():
                e = (x0 + y0, x1 + y1, x2 + y2, x3 + y3)
                out[e] = get(e, 0) + c1 * c2
        return MultiPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return MultiPoly.const(1)
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            return MultiPoly._raw({(e[0] * k, e[1] * k, e[2] * k, e[3] * k): c ** k})
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            factors = []
            for name, k in zip(VARIABLES, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    # -- calculus / evaluation ---------------------------------------------

    def derivative(self, name: str) -> "MultiPoly":
        return derivative(self, name)

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        return evaluate(self, assignment)

    def substitute(self, mapping: Mapping[str, "MultiPoly | int"]) -> "MultiPoly":
        return substitute(self, mapping)


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def const(value: int) -> MultiPoly:
    return MultiPoly.const(value)


ONE = MultiPoly.const(1)
ZERO = MultiPoly.const(0)


def evaluate(p: MultiPoly, assignment: Mapping[str, Scalar]) -> Fraction:
    """Exact value of ``p`` at a rational assignment of its variables."""
    values = []
    for name in VARIABLES:
        v = assignment.get(name)
        values.append(None if v is None else Fraction(v))
    caches: list = [{}, {}, {}, {}]
    total = Fraction(0)
    for e, c in p._terms.items():
        term = Fraction(c)
        for i in range(4):
            k = e[i]
            if k:
                x = values[i]
                if x is None:
                    raise MissingVariableError(
                        f"no value assigned to variable {VARIABLES[i]!r}")
                cache = caches[i]
                pw = cache.get(k)
                if pw is None:
                    pw = cache[k] = x ** k
                term *= pw
        total += term
    return total


def substitute(p: MultiPoly, mapping: Mapping[str, "MultiPoly | int"]) -> MultiPoly:
    """Replace some variables by polynomials (or integers); others are kept."""
    subs = [None] * 4
    for name, value in mapping.items():
        subs[_INDEX[name]] = value if isinstance(value, MultiPoly) else MultiPoly.const(value)
    caches: list = [{}, {}, {}, {}]
    grouped: Dict[Tuple, Dict[Exponent, int]] = {}
    # group terms by the exponents of substituted variables to share products
    for e, c in p._terms.items():
        key = tuple(e[i] if subs[i] is not None else 0 for i in range(4))
        kept = tuple(0 if subs[i] is not None else e[i] for i in range(4))
        grouped.setdefault(key, {})
        grouped[key][kept] = grouped[key].get(kept, 0) + c
    acc = MultiPoly._raw({})
    for key, rest in grouped.items():
        factor = ONE
        for i in range(4):
            k = key[i]
            if k:
                pw = caches[i].get(k)
                if pw is None:
                    pw = caches[i][k] = subs[i] ** k
                factor = factor * pw
        acc = acc + factor * MultiPoly(rest)
    return acc


def derivative(p: MultiPoly, name: str) -> MultiPoly:
    """Formal partial derivative with respect to the label ``name``."""
    i = _INDEX[name]
    out: Dict[Exponent, int] = {}
    for e, c in p._terms.items():
        k = e[i]
        if k:
            ne = list(e)
            ne[i] = k - 1
            out[tuple(ne)] = c * k
    return MultiPoly._raw(out)


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``r`` with ``r * q == p``; raise if the division leaves a remainder."""
    if not q._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p._terms:
        return MultiPoly._raw({})
    if len(q._terms) == 1:
        (eq, cq), = q._terms.items()
        out = {}
        for e, c in p._terms.items():
            d = _sub_exp(e, eq)
            if d is None or c % cq:
                raise InexactDivisionError(f"{q} does not divide {p}")
            out[d] = c // cq
        return MultiPoly._raw(out)

    lead_e, lead_c = q.leading_term()
    rest = [(e, c) for e, c in q._terms.items() if e != lead_e]
    rem = dict(p._terms)
    heap = [(_neg_key(e), e) for e in rem]
    heapq.heapify(heap)
    quotient: Dict[Exponent, int] = {}
    while rem:
        _, e = heapq.heappop(heap)
        c = rem.get(e)
        if c is None:
            continue
        qe = _sub_exp(e, lead_e)
        if qe is None or c % lead_c:
            raise InexactDivisionError(f"{q} does not divide {p}")
        qc = c // lead_c
        quotient[qe] = qc
        del rem[e]
        for re_, rc in rest:
            t = _add_exp(qe, re_)
            v = rem.get(t, 0) - qc * rc
            if v:
                if t not in rem:
                    heapq.heappush(heap, (_neg_key(t), t))
                rem[t] = v
            else:
                rem.pop(t, None)
    return MultiPoly._raw(quotient)


def poly_sqrt(p: MultiPoly) -> MultiPoly:
    """Square root ``s`` of a perfect square, normalised so its leading coefficient is positive."""
    if not p._terms:
        return MultiPoly._raw({})
    lead_e, lead_c = p.leading_term()
    if lead_c < 0 or any(k % 2 for k in lead_e):
        raise NotASquareError(f"{p} is not a perfect square")
    r = math.isqrt(lead_c)
    if r * r != lead_c:
        raise NotASquareError(f"{p} is not a perfect square")
    s_lead = (lead_e[0] // 2, lead_e[1] // 2, lead_e[2] // 2, lead_e[3] // 2)
    two_lead_c = 2 * r
    min_deg = min(sum(e) for e in p._terms)
    root: Dict[Exponent, int] = {s_lead: r}
    rem = dict(p._terms)
    del rem[lead_e]
    heap = [(_neg_key(e), e) for e in rem]
    heapq.heapify(heap)

    def sub_product(e1, c1, e2, c2):
        t = _add_exp(e1, e2)
        v = rem.get(t, 0) - c1 * c2
        if v:
            if t not in rem:
                heapq.heappush(heap, (_neg_key(t), t))
            rem[t] = v
        else:
            rem.pop(t, None)

    while rem:
        _, e = heapq.heappop(heap)
        c = rem.get(e)
        if c is None:
            continue
        te = _sub_exp(e, s_lead)
        if te is None or c % two_lead_c or 2 * sum(te) < min_deg:
            raise NotASquareError(f"{p} is not a perfect square")
        tc = c // two_lead_c
        # (s + t)^2 = s^2 + 2 s t + t^2; remove 2 s t + t^2 from the remainder
        for se, sc in list(root.items()):
            sub_product(se, 2 * sc, te, tc)
        sub_product(te, tc, te, tc)
        root[te] = tc
    return MultiPoly._raw(root)


def poly_sum(items: Iterable[MultiPoly]) -> MultiPoly:
    acc: Dict[Exponent, int] = {}
    for p in items:
        for e, c in p._terms.items():
            acc[e] = acc.get(e, 0) + c
    return MultiPoly._raw({e: c for e, c in acc.items() if c})


def poly_prod(items: Iterable[MultiPoly]) -> MultiPoly:
    acc = ONE
    for p in items:
        acc = acc * p
    return acc


def normalize_sign(p: MultiPoly) -> MultiPoly:
    """Flip ``p`` so that its leading coefficient is nonnegative."""
    if p._terms and p.leading_term()[1] < 0:
        return -p
    return p
