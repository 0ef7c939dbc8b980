"""Statistics of the number of edges with a given label in a random dimer cover."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath

from .algebra import MultiPoly, var
from .errors import DegenerateVarianceError, UnsupportedContextError, ZeroPartitionError
from .graphs import build_hanoi, build_sierpinski
from .oracle import classify_cover, enumerate_covers, label_count_distribution
from .recursions import gasket_system, hanoi_system

_HANOI_TYPES = ("I", "II", "III", "IV")


@dataclass(frozen=True)
class StatsContext:
    family: str
    n: int
    label: str = "c"
    labeling: str = "schreier"
    cover_type: Optional[str] = None


@dataclass(frozen=True)
class LabelCountPoly:
    """``coeffs[k]`` = total weight of covers with exactly k edges of the label."""

    coeffs: Tuple[int, ...]
    context: Optional[StatsContext] = None

    @classmethod
    def from_multipoly(cls, p: MultiPoly, label: str, context: Optional[StatsContext] = None) -> "LabelCountPoly":
        idx = "abcd".index(label)
        out: Dict[int, int] = {}
        for e, c in p.items():
            if any(e[i] for i in range(4) if i != idx):
                raise ValueError(f"{p} involves labels other than {label!r}")
            out[e[idx]] = out.get(e[idx], 0) + c
        return cls._from_dict(out, context)

    @classmethod
    def _from_dict(cls, d: Mapping[int, int], context=None) -> "LabelCountPoly":
        top = max(d, default=-1)
        coeffs = [0] * (top + 1)
        for k, c in d.items():
            coeffs[k] += c
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(coeffs), context)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], context=None) -> "LabelCountPoly":
        return cls._from_dict(counts, context)

    def value_and_derivatives(self) -> Tuple[int, int, int]:
        """p(1), p'(1), p''(1)."""
        p0 = sum(self.coeffs)
        p1 = sum(k * c for k, c in enumerate(self.coeffs))
        p2 = sum(k * (k - 1) * c for k, c in enumerate(self.coeffs))
        return p0, p1, p2

    def moment(self, r: int) -> Fraction:
        total = sum(self.coeffs)
        if total == 0:
            raise ZeroPartitionError("empty label distribution")
        return Fraction(sum(k ** r * c for k, c in enumerate(self.coeffs)), total)

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def same_coefficients(self, other: "LabelCountPoly") -> bool:
        return self.coeffs == other.coeffs

    def __str__(self) -> str:
        return " + ".join(f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c) or "0"


@dataclass(frozen=True)
class StatsSummary:
    mean: Fraction
    variance: Fraction


def _specialized(label: str):
    return {x: (var(x) if x == label else 1) for x in "abc"}


def label_polynomial(family: str, n: int, label: str = "c", cover_type: Optional[str] = None,
                     labeling: str = "schreier") -> LabelCountPoly:
    """Label-count polynomial from the recursions, other labels set to 1."""
    ctx = StatsContext(family, n, label, labeling, cover_type)
    w = _specialized(label)
    if family == "hanoi":
        vec = hanoi_system(n, w)
        if cover_type is None:
            p = vec.total
        elif cover_type in _HANOI_TYPES:
            p = vec.as_tuple()[_HANOI_TYPES.index(cover_type)]
        else:
            raise UnsupportedContextError(f"unknown Hanoi cover type {cover_type!r}")
    elif family == "gasket":
        vec = gasket_system(n, labeling, w)
        if cover_type is None:
            p = vec.total
        elif cover_type in vec.components:
            p = vec.components[cover_type]
        else:
            raise UnsupportedContextError(f"no cover type {cover_type!r} at level {n}")
    else:
        raise UnsupportedContextError(f"no label statistics for family {family!r}")
    if not isinstance(p, MultiPoly):
        p = MultiPoly.const(p)
    return LabelCountPoly.from_multipoly(p, label, ctx)


def oracle_label_polynomial(family: str, n: int, label: str = "c", cover_type: Optional[str] = None,
                            labeling: str = "schreier", budget: Optional[int] = None) -> LabelCountPoly:
    """The same polynomial counted cover by cover."""
    if family == "hanoi":
        g = build_hanoi(n)
    elif family == "gasket":
        g = build_sierpinski(n, labeling)
    else:
        raise UnsupportedContextError(f"no label statistics for family {family!r}")
    dist = label_count_distribution(g, label, cover_type, budget=budget)
    return LabelCountPoly.from_counts(dist, StatsContext(family, n, label, labeling, cover_type))


def mean_variance(p: LabelCountPoly) -> StatsSummary:
    """mean = p'(1)/p(1), variance = p''(1)/p(1) + mean - mean^2."""
    p0, p1, p2 = p.value_and_derivatives()
    if p0 == 0:
        raise ZeroPartitionError("p(1) = 0")
    mean = Fraction(p1, p0)
    return StatsSummary(mean, Fraction(p2, p0) + mean - mean * mean)


def closed_stats(ctx: StatsContext) -> StatsSummary:
    """Closed-form mean and variance where one is known."""
    n = ctx.n
    t = 3 ** (n - 1)
    if ctx.family == "hanoi" and ctx.label == "c" and ctx.cover_type in _HANOI_TYPES:
        if ctx.cover_type == "I":
            return StatsSummary(Fraction(t + 1, 2), Fraction(3 ** n - 6 * n + 3, 4))
        if ctx.cover_type == "II":
            return StatsSummary(Fraction(t + 3, 2), Fraction(3 ** n + 10 * n - 13, 4))
        return StatsSummary(Fraction(t - 1, 2), Fraction(3 ** n - 2 * n - 1, 4))
    if ctx.family == "gasket" and ctx.label == "c" and ctx.cover_type is None:
        if ctx.labeling == "schreier" or (ctx.labeling == "rotation" and n >= 2):
            return StatsSummary(Fraction(t, 4), Fraction(3, 16))
    raise UnsupportedContextError(f"no closed-form statistics for {ctx}")


def reference_rotation_ab_stats(n: int) -> StatsSummary:
    """Reference closed form for the a- and b-counts under the rotation labeling.

    Kept for comparison only: its variance is 4 times the exact value.
    """
    return StatsSummary(Fraction(3 ** (n - 1), 4), Fraction(4 * 3 ** (n - 1) + 3, 4))


@dataclass(frozen=True)
class RotationABReport:
    n: int
    reference: StatsSummary
    polynomial: StatsSummary
    oracle: Optional[StatsSummary]

    @property
    def mean_agrees(self) -> bool:
        return self.reference.mean == self.polynomial.mean

    @property
    def variance_agrees(self) -> bool:
        return self.reference.variance == self.polynomial.variance


def rotation_ab_report(n: int, label: str = "a", with_oracle: bool = True) -> RotationABReport:
    poly = mean_variance(label_polynomial("gasket", n, label, labeling="rotation"))
    orc = None
    if with_oracle:
        orc = mean_variance(oracle_label_polynomial("gasket", n, label, labeling="rotation"))
    return RotationABReport(n, reference_rotation_ab_stats(n), poly, orc)


@dataclass(frozen=True)
class SkewnessReport:
    n: int
    mean: Fraction
    variance: Fraction
    third_central: Fraction
    skewness: mpmath.mpf


def skewness_report(family: str, n: int, label: str, labeling: str = "schreier") -> SkewnessReport:
    """Third standardized moment of the exact label-count distribution (no pass/fail)."""
    p = label_polynomial(family, n, label, labeling=labeling)
    m1, m2, m3 = p.moment(1), p.moment(2), p.moment(3)
    var_ = m2 - m1 * m1
    k3 = m3 - 3 * m1 * m2 + 2 * m1 ** 3
    with mpmath.workdps(30):
        sk = mpmath.mpf(k3.numerator) / k3.denominator / mpmath.power(
            mpmath.mpf(var_.numerator) / var_.denominator, 1.5) if var_ else mpmath.mpf(0)
    return SkewnessReport(n, m1, var_, k3, sk)


def mgf_normalized(p: LabelCountPoly, s, dps: int = 30) -> mpmath.mpf:
    """E[exp(s (X - mu) / sigma)] from the label-count polynomial."""
    st = mean_variance(p)
    if st.variance <= 0:
        raise DegenerateVarianceError("variance is zero; the normalized variable is undefined")
    with mpmath.workdps(dps + 10):
        mu = mpmath.mpf(st.mean.numerator) / st.mean.denominator
        sigma = mpmath.sqrt(mpmath.mpf(st.variance.numerator) / st.variance.denominator)
        s = mpmath.mpf(Fraction(s).numerator) / Fraction(s).denominator
        x = mpmath.exp(s / sigma)
        total = sum(p.coeffs)
        val = mpmath.exp(-mu * s / sigma) * p(x) / total
    return +val


# ---------------------------------------------------------------------------
# exact two-atom laws


@dataclass(frozen=True)
class Root3:
    """The real number ``coef * sqrt(3)`` with rational ``coef``."""

    coef: Fraction

    def __float__(self) -> float:
        return float(self.coef) * 3 ** 0.5

    def mpf(self) -> mpmath.mpf:
        return mpmath.mpf(self.coef.numerator) / self.coef.denominator * mpmath.sqrt(3)

    def __str__(self) -> str:
        if self.coef == 1:
            return "sqrt(3)"
        if self.coef == -1:
            return "-sqrt(3)"
        if self.coef == Fraction(1, 3):
            return "1/sqrt(3)"
        if self.coef == Fraction(-1, 3):
            return "-1/sqrt(3)"
        return f"{self.coef}*sqrt(3)"


SQRT3 = Root3(Fraction(1))
INV_SQRT3 = Root3(Fraction(1, 3))


@dataclass(frozen=True)
class AtomicMixture:
    atoms: Tuple[Tuple[Root3, Fraction], ...]

    def mean(self) -> Root3:
        return Root3(sum((x.coef * p for x, p in self.atoms), Fraction(0)))

    def variance(self) -> Fraction:
        m = self.mean().coef
        return sum((3 * (x.coef - m) ** 2 * p for x, p in self.atoms), Fraction(0))

    def total_probability(self) -> Fraction:
        return sum((p for _, p in self.atoms), Fraction(0))

    def mgf(self, s, dps: int = 30) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            s = mpmath.mpf(Fraction(s).numerator) / Fraction(s).denominator
            val = mpmath.fsum(mpmath.mpf(p.numerator) / p.denominator * mpmath.exp(s * x.mpf())
                              for x, p in self.atoms)
        return +val


def mixture_law(ctx: StatsContext) -> AtomicMixture:
    """Two-atom law of the normalized c-count on gasket graphs."""
    if ctx.family != "gasket" or ctx.label != "c" or ctx.labeling not in ("schreier", "rotation"):
        raise UnsupportedContextError(f"no two-atom law for {ctx}")
    if ctx.labeling == "rotation" and ctx.n < 2:
        raise UnsupportedContextError("the rotation labeling starts at level 2")
    q, r = Fraction(3, 4), Fraction(1, 4)
    if ctx.n % 2:
        return AtomicMixture(((Root3(-INV_SQRT3.coef), q), (SQRT3, r)))
    return AtomicMixture(((INV_SQRT3, q), (Root3(-SQRT3.coef), r)))


def type_value_table(n: int, labeling: str = "schreier") -> Dict[str, Root3]:
    """Normalized c-count taken on every cover of each corner type."""
    lo, hi = Root3(-INV_SQRT3.coef), SQRT3
    if labeling == "schreier":
        if n % 2:
            return {"f": lo, "h_ab": hi, "h_ac": lo, "h_bc": lo}
        return {"t": INV_SQRT3, "g_ab": Root3(-1), "g_ac": INV_SQRT3, "g_bc": INV_SQRT3}
    if labeling == "rotation":
        if n < 2:
            raise UnsupportedContextError("the rotation labeling starts at level 2")
        if n % 2:
            return {"f": hi, "h": lo}
        return {"t": Root3(-1), "g": INV_SQRT3}
    raise UnsupportedContextError(f"no type table for labeling {labeling!r}")


@dataclass
class TypeValueCheck:
    n: int
    labeling: str
    covers_checked: int = 0
    mismatches: List[Tuple[int, str, Root3]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.covers_checked > 0 and not self.mismatches


def verify_type_values(n: int, labeling: str = "schreier", budget: Optional[int] = None) -> TypeValueCheck:
    """Classify every cover and compare its exact normalized c-count with the table."""
    table = type_value_table(n, labeling)
    st = mean_variance(label_polynomial("gasket", n, "c", labeling=labeling))
    if st.variance != Fraction(3, 16):
        raise DegenerateVarianceError(f"expected variance 3/16, got {st.variance}")
    g = build_sierpinski(n, labeling)
    report = TypeValueCheck(n, labeling)
    for i, cover in enumerate(enumerate_covers(g, budget=budget)):
        k = cover.label_count(g, "c")
        # (k - mu) / (sqrt(3)/4) = (4 (k - mu) / 3) * sqrt(3)
        value = Root3(4 * (k - st.mean) / 3)
        cls = classify_cover(g, cover)
        report.covers_checked += 1
        if table.get(cls) != value:
            report.mismatches.append((i, cls, value))
    return report


# ---------------------------------------------------------------------------
# ratios of Hanoi type polynomials


@dataclass(frozen=True)
class QRReport:
    n: int
    q1: Fraction
    r1: Fraction
    dq1: Fraction
    dr1: Fraction
    d2q1: Fraction
    d2r1: Fraction

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return (self.q1, self.r1, self.dq1, self.dr1, self.d2q1, self.d2r1)

    def matches_identities(self) -> bool:
        return self.as_tuple() == (1, 1, 1, -1, 4 * (self.n - 1), self.n + 1)


def _quotient_at_one(num: LabelCountPoly, den: LabelCountPoly) -> Tuple[Fraction, Fraction, Fraction]:
    n0, n1, n2 = num.value_and_derivatives()
    d0, d1, d2 = den.value_and_derivatives()
    f0 = Fraction(n0, d0)
    f1 = Fraction(n1 * d0 - n0 * d1, d0 * d0)
    # (N/D)'' = N''/D - 2 N' D'/D^2 - N D''/D^2 + 2 N D'^2/D^3
    f2 = (Fraction(n2, d0) - Fraction(2 * n1 * d1, d0 ** 2) - Fraction(n0 * d2, d0 ** 2)
          + Fraction(2 * n0 * d1 * d1, d0 ** 3))
    return f0, f1, f2


def qr_identities(n: int) -> QRReport:
    """q = Phi^II / Phi^I and r = Phi^III / Phi^I in the c-specialization, with derivatives at 1."""
    p1 = label_polynomial("hanoi", n, "c", "I")
    p2 = label_polynomial("hanoi", n, "c", "II")
    p3 = label_polynomial("hanoi", n, "c", "III")
    q = _quotient_at_one(p2, p1)
    r = _quotient_at_one(p3, p1)
    return QRReport(n, q[0], r[0], q[1], r[1], q[2], r[2])


# ---------------------------------------------------------------------------
# tables


STATS_HEADER = ["family", "labeling", "n", "label", "type", "mean", "variance", "source"]


def stats_rows(family: str, n: int, label: str, labeling: str = "schreier",
               cover_type: Optional[str] = None, sources: Sequence[str] = ("polynomial",)) -> List[list]:
    rows = []
    ctx = StatsContext(family, n, label, labeling, cover_type)
    lab = labeling if family == "gasket" else ""
    for src in sources:
        if src == "polynomial":
            st = mean_variance(label_polynomial(family, n, label, cover_type, labeling))
        elif src == "oracle":
            st = mean_variance(oracle_label_polynomial(family, n, label, cover_type, labeling))
        elif src == "closed":
            st = closed_stats(ctx)
        else:
            raise UnsupportedContextError(f"unknown statistics source {src!r}")
        rows.append([family, lab, n, label, cover_type or "all", str(st.mean), str(st.variance), src])
    return rows


def stats_csv(rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(STATS_HEADER)
    out.writerows(rows)
    return buf.getvalue()
