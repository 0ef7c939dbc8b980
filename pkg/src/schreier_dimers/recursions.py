"""Recursive partition-function systems, closed forms and thermodynamic limits."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import mpmath

from .algebra import ONE, MultiPoly, evaluate, exact_divide, var
from .errors import UnsupportedLevelError, UnsupportedWeightsError

Value = Union[MultiPoly, Fraction]

#: decimal digits used for every logarithm (well above 50 bits)
LOG_DPS = 40


def _check_level(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n < minimum:
        raise UnsupportedLevelError(f"level must be an integer >= {minimum}, got {n!r}")


def _weights(weights: Optional[Mapping[str, object]]):
    """Label values as Fractions, or the symbolic variables when ``weights`` is None."""
    if weights is None:
        return {x: var(x) for x in "abcd"}
    if any(isinstance(v, MultiPoly) for v in weights.values()):
        # partially symbolic: the remaining labels must be integers
        return {x: weights[x] if isinstance(weights.get(x), MultiPoly)
                else MultiPoly.const(Fraction(weights.get(x, 1))) for x in "abcd"}
    return {x: Fraction(weights[x]) if x in weights else Fraction(1) for x in "abcd"}


def _div(p: Value, q: Value) -> Value:
    if isinstance(p, MultiPoly):
        return exact_divide(p, q if isinstance(q, MultiPoly) else MultiPoly.const(q))
    if q == 0:
        raise ZeroDivisionError("division by a zero weight")
    return p / q


# ---------------------------------------------------------------------------
# Grigorchuk and Basilica


def grig_closed(n: int) -> MultiPoly:
    _check_level(n)
    return MultiPoly.monomial(1, a=2 ** (n - 1))


def basilica_closed(n: int) -> MultiPoly:
    _check_level(n)
    e = (2 ** n + 1) // 3 if n % 2 else (2 ** n + 2) // 3
    return MultiPoly.monomial(2 ** e, b=2 ** (n - 1))


# ---------------------------------------------------------------------------
# Hanoi towers graphs


@dataclass(frozen=True)
class HanoiTypeVector:
    """Covers with all three loops (I), only the loop at 0^n (II), at 1^n (III), at 2^n (IV)."""

    phi_I: Value
    phi_II: Value
    phi_III: Value
    phi_IV: Value

    @property
    def total(self) -> Value:
        return self.phi_I + self.phi_II + self.phi_III + self.phi_IV

    def as_tuple(self) -> Tuple[Value, Value, Value, Value]:
        return (self.phi_I, self.phi_II, self.phi_III, self.phi_IV)

    def evaluate(self, assignment: Mapping[str, object]) -> "HanoiTypeVector":
        return HanoiTypeVector(*(evaluate(p, assignment) if isinstance(p, MultiPoly) else p
                                 for p in self.as_tuple()))


def hanoi_system(n: int, weights: Optional[Mapping[str, object]] = None) -> HanoiTypeVector:
    """Iterate the four-type recursion from level 1; symbolic when ``weights`` is None.

    Every division is exact on polynomials; a remainder raises InexactDivisionError.
    """
    _check_level(n)
    w = _weights(weights)
    a, b, c = w["a"], w["b"], w["c"]
    abc, ab, ac, bc = a * b * c, a * b, a * c, b * c
    p1, p2, p3, p4 = abc, c * c, b * b, a * a
    for _ in range(n - 1):
        p1, p2, p3, p4 = (
            _div(p1 ** 3, abc) + p2 * p3 * p4,
            _div(p2 ** 3, c) + _div(p1 * p3 * p4, ab),
            _div(p3 ** 3, b) + _div(p1 * p2 * p4, ac),
            _div(p4 ** 3, a) + _div(p1 * p2 * p3, bc),
        )
    return HanoiTypeVector(p1, p2, p3, p4)


def hanoi_uniform_closed(n: int, a: Union[MultiPoly, object, None] = None) -> Value:
    """Partition function on the diagonal a = b = c: 2^((3^(n-1)-1)/2) a^((3^n+1)/2) (a+3)."""
    _check_level(n)
    if a is None:
        a = var("a")
    if not isinstance(a, MultiPoly):
        a = Fraction(a)
    return 2 ** ((3 ** (n - 1) - 1) // 2) * a ** ((3 ** n + 1) // 2) * (a + 3)


def hanoi_uniform_types(n: int, a: Union[MultiPoly, object, None] = None) -> Tuple[Value, Value]:
    """(Phi^I, Phi^II) on the diagonal; Phi^III = Phi^IV = Phi^II there."""
    _check_level(n)
    if a is None:
        a = var("a")
    if not isinstance(a, MultiPoly):
        a = Fraction(a)
    k = 2 ** ((3 ** (n - 1) - 1) // 2)
    return k * a ** ((3 ** n + 3) // 2), k * a ** ((3 ** n + 1) // 2)


# ---------------------------------------------------------------------------
# Sierpinski gasket


@dataclass(frozen=True)
class GasketTypeVector:
    """Type components keyed by name; odd levels carry f/h types, even levels t/g types."""

    level: int
    labeling: str
    components: Dict[str, Value] = field(default_factory=dict)

    @property
    def total(self) -> Value:
        vals = list(self.components.values())
        out = vals[0]
        for v in vals[1:]:
            out = out + v
        return out

    def __getitem__(self, key: str) -> Value:
        return self.components[key]


SCHREIER_ODD = ("f", "h_ab", "h_ac", "h_bc")
SCHREIER_EVEN = ("t", "g_ab", "g_ac", "g_bc")


def _gasket_schreier_steps(n: int, w) -> Dict[str, Value]:
    a, b, c = w["a"], w["b"], w["c"]
    one = ONE if isinstance(a, MultiPoly) else Fraction(1)
    cur = {"f": one, "h_ab": c, "h_ac": b, "h_bc": a}
    for k in range(2, n + 1):
        if k % 2 == 0:
            f, hab, hac, hbc = cur["f"], cur["h_ab"], cur["h_ac"], cur["h_bc"]
            cur = {"t": 2 * hab * hac * hbc, "g_ab": 2 * f * hac * hbc,
                   "g_ac": 2 * f * hab * hbc, "g_bc": 2 * f * hab * hac}
        else:
            t, gab, gac, gbc = cur["t"], cur["g_ab"], cur["g_ac"], cur["g_bc"]
            cur = {"f": 2 * gab * gac * gbc, "h_ab": 2 * t * gac * gbc,
                   "h_ac": 2 * t * gab * gbc, "h_bc": 2 * t * gab * gac}
    return cur


def _gasket_rotation_steps(n: int, w) -> Dict[str, Value]:
    a, b, c = w["a"], w["b"], w["c"]
    cur = {"t": a ** 3 + b ** 3, "g": 3 * c * (a + b)}
    for k in range(3, n + 1):
        if k % 2:
            g3 = _div(cur["g"], 3)
            cur = {"f": 2 * g3 ** 3, "h": 6 * cur["t"] * g3 ** 2}
        else:
            h3 = _div(cur["h"], 3)
            cur = {"t": 2 * h3 ** 3, "g": 6 * cur["f"] * h3 ** 2}
    return cur


def gasket_closed_types(n: int, labeling: str = "schreier",
                        weights: Optional[Mapping[str, object]] = None) -> Dict[str, Value]:
    """Closed-form type components of the gasket partition function."""
    w = _weights(weights)
    a, b, c = w["a"], w["b"], w["c"]
    if labeling == "schreier":
        _check_level(n)
        q = 4 * a * b * c
        if n % 2:
            base = q ** ((3 ** (n - 1) - 1) // 4)
            return {"f": base, "h_ab": c * base, "h_ac": b * base, "h_bc": a * base}
        base = 2 * q ** ((3 ** (n - 1) - 3) // 4)
        return {"t": a * b * c * base, "g_ab": a * b * base, "g_ac": a * c * base, "g_bc": b * c * base}
    if labeling == "rotation":
        _check_level(n, 2)
        s, r = a ** 3 + b ** 3, a * c + b * c
        k = 2 ** ((3 ** (n - 2) - 1) // 2)
        if n % 2 == 0:
            return {"t": k * s ** ((3 ** (n - 2) + 3) // 4) * r ** ((3 ** (n - 1) - 3) // 4),
                    "g": 3 * k * s ** ((3 ** (n - 2) - 1) // 4) * r ** ((3 ** (n - 1) + 1) // 4)}
        return {"f": k * s ** ((3 ** (n - 2) - 3) // 4) * r ** ((3 ** (n - 1) + 3) // 4),
                "h": 3 * k * s ** ((3 ** (n - 2) + 1) // 4) * r ** ((3 ** (n - 1) - 1) // 4)}
    raise UnsupportedWeightsError(f"no gasket recursion for labeling {labeling!r}")


def gasket_closed(n: int, labeling: str = "schreier",
                  weights: Optional[Mapping[str, object]] = None) -> Value:
    return GasketTypeVector(n, labeling, gasket_closed_types(n, labeling, weights)).total


def gasket_system(n: int, labeling: str = "schreier",
                  weights: Optional[Mapping[str, object]] = None) -> GasketTypeVector:
    """Iterate the corner-type recursion; the total is checked against the closed form."""
    w = _weights(weights)
    if labeling == "schreier":
        _check_level(n)
        comps = _gasket_schreier_steps(n, w)
    elif labeling == "rotation":
        _check_level(n, 2)
        comps = _gasket_rotation_steps(n, w)
    else:
        raise UnsupportedWeightsError(f"no gasket recursion for labeling {labeling!r}")
    vec = GasketTypeVector(n, labeling, comps)
    closed = gasket_closed(n, labeling, weights)
    if vec.total != closed:
        raise AssertionError(f"gasket recursion and closed form disagree at n={n}")
    return vec


# ---------------------------------------------------------------------------
# thermodynamic limits


def vertex_count(family: str, n: int) -> int:
    if family in ("grigorchuk", "basilica"):
        return 2 ** n
    if family == "hanoi":
        return 3 ** n
    if family == "gasket":
        return 3 * (3 ** (n - 1) + 1) // 2
    raise ValueError(f"unknown family {family!r}")


def _log(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.log(mpmath.mpf(x.numerator)) - mpmath.log(mpmath.mpf(x.denominator))
    return mpmath.log(mpmath.mpf(x))


@dataclass(frozen=True)
class LimitValue:
    """``sum(coef * log(arg))`` with each ``arg`` a polynomial in the labels, plus its value."""

    terms: Tuple[Tuple[Fraction, MultiPoly], ...]
    weights: Dict[str, Fraction]

    @property
    def value(self) -> mpmath.mpf:
        with mpmath.workdps(LOG_DPS):
            return mpmath.fsum(coef * _log(evaluate(arg, self.weights)) for coef, arg in self.terms)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        parts = []
        for coef, arg in self.terms:
            parts.append(f"{coef}*log({arg})")
        return " + ".join(parts) if parts else "0"


def thermo_limit(family: str, weights: Optional[Mapping[str, object]] = None,
                 labeling: str = "schreier") -> LimitValue:
    """Closed-form limit of log(Phi_n) / |V_n|."""
    w = {x: Fraction(v) for x, v in (weights or {}).items()}
    for x in "abcd":
        w.setdefault(x, Fraction(1))
    if any(v <= 0 for v in w.values()):
        raise UnsupportedWeightsError("weights must be positive")
    a, b, c = var("a"), var("b"), var("c")
    two = MultiPoly.const(2)
    F = Fraction
    if family == "grigorchuk":
        terms = ((F(1, 2), a),)
    elif family == "basilica":
        terms = ((F(1, 3), two), (F(1, 2), b))
    elif family == "hanoi":
        if not (w["a"] == w["b"] == w["c"]):
            raise UnsupportedWeightsError(
                "a closed-form Hanoi limit is only available for a = b = c; use limit_sequence")
        terms = ((F(1, 6), two), (F(1, 2), a))
    elif family == "gasket" and labeling == "schreier":
        terms = ((F(1, 6), MultiPoly.const(4) * a * b * c),)
    elif family == "gasket" and labeling == "rotation":
        terms = ((F(1, 9), two), (F(1, 18), a ** 3 + b ** 3), (F(1, 6), c * (a + b)))
    else:
        raise UnsupportedWeightsError(f"no closed-form limit for {family}/{labeling}")
    return LimitValue(terms, w)


def partition_value(family: str, n: int, weights: Mapping[str, object],
                    labeling: str = "schreier") -> Fraction:
    """Exact Phi_n at rational weights, from the closed forms or the recursions."""
    w = _weights(weights)
    if family == "grigorchuk":
        return evaluate(grig_closed(n), w)
    if family == "basilica":
        return evaluate(basilica_closed(n), w)
    if family == "hanoi":
        return hanoi_system(n, weights).total
    if family == "gasket":
        return gasket_system(n, labeling, weights).total
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class LimitSequence:
    family: str
    levels: Tuple[int, ...]
    partition: Tuple[Fraction, ...]
    epsilon: Tuple[mpmath.mpf, ...]

    @property
    def decreasing(self) -> bool:
        return all(y <= x for x, y in zip(self.epsilon, self.epsilon[1:]))

    @property
    def strictly_decreasing(self) -> bool:
        return all(y < x for x, y in zip(self.epsilon, self.epsilon[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["n", "phi", "epsilon"])
        for n, phi, eps in zip(self.levels, self.partition, self.epsilon):
            out.writerow([n, str(phi), mpmath.nstr(eps, 20)])
        return buf.getvalue()


def limit_sequence(family: str, weights: Mapping[str, object], n_max: int,
                   labeling: str = "schreier", n_min: int = 1) -> LimitSequence:
    """epsilon_n = log(Phi_n) / |V_n| for n_min <= n <= n_max."""
    if family == "gasket" and labeling == "rotation":
        n_min = max(n_min, 2)
    levels, phis, eps = [], [], []
    with mpmath.workdps(LOG_DPS):
        for n in range(n_min, n_max + 1):
            phi = partition_value(family, n, weights, labeling)
            levels.append(n)
            phis.append(phi)
            eps.append(_log(phi) / vertex_count(family, n))
    return LimitSequence(family, tuple(levels), tuple(phis), tuple(eps))
