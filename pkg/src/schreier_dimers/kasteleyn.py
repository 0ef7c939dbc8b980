"""Oriented weighted adjacency matrices, Pfaffians and the Hanoi rational map.

Matrices are sparse: ``entries[(i, j)]`` holds a linear form in the labels
(a :class:`MultiPoly`), indices follow the lexicographic order of the words.
Loops never enter ``entries``; for Hanoi graphs they are kept in ``loops``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import (
    ONE,
    VARIABLES,
    ZERO,
    MultiPoly,
    evaluate,
    exact_divide,
    normalize_sign,
    poly_sqrt,
    substitute,
    var,
)
from .errors import (
    CapExceededError,
    DimensionMismatchError,
    MalformedGraphError,
    OddSizeError,
    SingularDenominatorError,
    UnsupportedLevelError,
)
from .graphs import LabeledGraph, words

DEFAULT_EXACT_CAP = 64

Sparse = Dict[Tuple[int, int], int]


@dataclass(frozen=True, eq=False)
class SkewWeightMatrix:
    words: Tuple[str, ...]
    entries: Dict[Tuple[int, int], MultiPoly]
    loops: Tuple[Tuple[str, MultiPoly], ...] = ()
    family: str = ""
    level: int = 0

    @property
    def size(self) -> int:
        return len(self.words)

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries.get((i, j), ZERO)

    def is_skew(self) -> bool:
        for (i, j), v in self.entries.items():
            if i == j or self.entry(j, i) != -v:
                return False
        return True

    def to_dense(self) -> List[List[MultiPoly]]:
        rows = [[ZERO] * self.size for _ in range(self.size)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def evaluated(self, assignment: Mapping[str, Fraction]) -> Dict[Tuple[int, int], Fraction]:
        out = {}
        for key, v in self.entries.items():
            x = evaluate(v, assignment)
            if x:
                out[key] = x
        return out

    def delete(self, drop: Sequence[int]) -> "SkewWeightMatrix":
        """Principal submatrix without the given indices (loops on deleted words vanish too)."""
        gone = set(drop)
        keep = [k for k in range(self.size) if k not in gone]
        new_index = {old: new for new, old in enumerate(keep)}
        entries = {(new_index[i], new_index[j]): v for (i, j), v in self.entries.items()
                   if i in new_index and j in new_index}
        kept_words = tuple(self.words[k] for k in keep)
        loops = tuple((w, p) for w, p in self.loops if w in set(kept_words))
        return SkewWeightMatrix(kept_words, entries, loops, self.family, self.level)

    def negate_pair(self, i: int, j: int) -> "SkewWeightMatrix":
        """Reverse every edge between words ``i`` and ``j``."""
        entries = dict(self.entries)
        if (i, j) not in entries:
            raise KeyError(f"no entry at ({i}, {j})")
        entries[(i, j)] = -entries[(i, j)]
        entries[(j, i)] = -entries[(j, i)]
        return SkewWeightMatrix(self.words, entries, self.loops, self.family, self.level)

    def negate_label(self, i: int, j: int, label: str) -> "SkewWeightMatrix":
        """Reverse only the ``label`` edges between words ``i`` and ``j``."""
        v = self.entry(i, j)
        x = var(label)
        coef = _linear_coefficients(v).get(label, 0)
        if not coef:
            raise KeyError(f"no {label}-edge at ({i}, {j})")
        flipped = v - 2 * coef * x
        entries = dict(self.entries)
        entries[(i, j)] = flipped
        entries[(j, i)] = -flipped
        return SkewWeightMatrix(self.words, entries, self.loops, self.family, self.level)

    def to_dict(self) -> dict:
        rows = []
        for (i, j) in sorted(self.entries):
            for label, coef in sorted(_linear_coefficients(self.entries[(i, j)]).items()):
                rows.append([i, j, "+" if coef > 0 else "-", label, abs(coef)])
        d = {"size": self.size, "order": "lex", "words": list(self.words), "entries": rows}
        if self.loops:
            d["loops"] = [[w, str(p)] for w, p in self.loops]
        return d

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _linear_coefficients(p: MultiPoly) -> Dict[str, int]:
    out = {}
    for e, c in p.items():
        if sum(e) != 1:
            raise MalformedGraphError(f"matrix entry {p} is not a linear form in the labels")
        out[VARIABLES[e.index(1)]] = c
    return out


# ---------------------------------------------------------------------------
# sparse integer block matrices used by the recursions


def _identity(m: int, scale: int = 1) -> Sparse:
    return {(i, i): scale for i in range(m)}


def _blocks(parts: Mapping[Tuple[int, int], Sparse], m: int) -> Sparse:
    out: Sparse = {}
    for (bi, bj), block in parts.items():
        for (i, j), v in block.items():
            if v:
                out[(bi * m + i, bj * m + j)] = v
    return out


def _neg(s: Sparse) -> Sparse:
    return {k: -v for k, v in s.items()}


def _combine(terms: Sequence[Tuple[MultiPoly, Sparse]]) -> Dict[Tuple[int, int], MultiPoly]:
    out: Dict[Tuple[int, int], MultiPoly] = {}
    for weight, mat in terms:
        for k, v in mat.items():
            out[k] = out.get(k, ZERO) + weight * v
    return {k: v for k, v in out.items() if v}


def _grigorchuk_generators(n: int) -> Dict[str, Sparse]:
    g = {"a": {(0, 1): 1, (1, 0): -1}, "b": _identity(2), "c": _identity(2), "d": _identity(2)}
    for k in range(2, n + 1):
        m = 2 ** (k - 1)
        i_m = _identity(m)
        g = {
            "a": _blocks({(0, 1): i_m, (1, 0): _neg(i_m)}, m),
            "b": _blocks({(0, 0): g["a"], (1, 1): g["c"]}, m),
            "c": _blocks({(0, 0): g["a"], (1, 1): g["d"]}, m),
            "d": _blocks({(0, 0): i_m, (1, 1): g["b"]}, m),
        }
    return g


def _grigorchuk_j(n: int) -> List[MultiPoly]:
    """Diagonal of the loop-erasing matrix J_n."""
    b, c, d = var("b"), var("c"), var("d")
    diag = [b + c + d] * 2
    for k in range(2, n + 1):
        m = 2 ** (k - 1)
        bar = [substitute(p, {"b": d, "c": b, "d": c}) for p in diag]
        diag = [d] * m + bar
    return diag


def _basilica_generators(n: int) -> Dict[str, Sparse]:
    g = {
        "a": _identity(2),
        "A": _identity(2, -1),  # the primed "a^{-1}" matrix
        "b": {(0, 1): 1, (1, 0): -1},
        "B": {(0, 1): 1, (1, 0): -1},
    }
    for k in range(2, n + 1):
        m = 2 ** (k - 1)
        i_m = _identity(m)
        g = {
            "a": _blocks({(0, 0): g["b"], (1, 1): i_m}, m),
            "A": _blocks({(0, 0): g["B"], (1, 1): _neg(i_m)}, m),
            "b": _blocks({(0, 1): g["a"], (1, 0): _neg(i_m)}, m),
            "B": _blocks({(0, 1): i_m, (1, 0): g["A"]}, m),
        }
    return g


def _hanoi_generators(n: int) -> Dict[str, Sparse]:
    g = {
        "a": {(0, 1): 1, (1, 0): -1, (2, 2): 1},
        "b": {(0, 2): -1, (1, 1): 1, (2, 0): 1},
        "c": {(0, 0): 1, (1, 2): 1, (2, 1): -1},
    }
    for k in range(2, n + 1):
        m = 3 ** (k - 1)
        s = -1 if k % 2 == 0 else 1
        pos, neg = _identity(m, s), _identity(m, -s)
        g = {
            "a": _blocks({(0, 1): pos, (1, 0): neg, (2, 2): g["a"]}, m),
            "b": _blocks({(0, 2): neg, (1, 1): g["b"], (2, 0): pos}, m),
            "c": _blocks({(0, 0): g["c"], (1, 2): pos, (2, 1): neg}, m),
        }
    return g


def oriented_matrix(family: str, n: int) -> SkewWeightMatrix:
    """The recursively defined oriented adjacency matrix of level ``n``.

    Grigorchuk and Basilica matrices are loopless; the Hanoi matrix keeps its
    three diagonal loop entries in ``loops``.
    """
    if not isinstance(n, int) or n < 1:
        raise UnsupportedLevelError(f"level must be a positive integer, got {n!r}")
    a, b, c, d = (var(x) for x in "abcd")
    if family == "grigorchuk":
        g = _grigorchuk_generators(n)
        full = _combine([(a, g["a"]), (b, g["b"]), (c, g["c"]), (d, g["d"])])
        for i, p in enumerate(_grigorchuk_j(n)):
            rest = full.get((i, i), ZERO) - p
            if rest:
                raise MalformedGraphError(f"J_n does not cancel the diagonal at {i}")
            full.pop((i, i), None)
        return SkewWeightMatrix(tuple(words("01", n)), full, (), family, n)
    if family == "basilica":
        g = _basilica_generators(n)
        full = _combine([(a, g["a"]), (a, g["A"]), (b, g["b"]), (b, g["B"])])
        if any(i == j for i, j in full):
            raise MalformedGraphError("Basilica matrix has a nonzero diagonal")
        return SkewWeightMatrix(tuple(words("01", n)), full, (), family, n)
    if family == "hanoi":
        g = _hanoi_generators(n)
        full = _combine([(a, g["a"]), (b, g["b"]), (c, g["c"])])
        ws = tuple(words("012", n))
        loops = tuple((ws[i], full.pop((i, j))) for (i, j) in sorted(full) if i == j)
        return SkewWeightMatrix(ws, full, loops, family, n)
    raise ValueError(f"no oriented matrix for family {family!r}")


# ---------------------------------------------------------------------------
# orientation check


@dataclass
class OrientationReport:
    passed: bool
    skew: bool
    adjacency_ok: bool
    face_counts: List[int] = field(default_factory=list)
    bad_faces: List[int] = field(default_factory=list)
    problems: List[str] = field(default_factory=list)

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        text = f"orientation: {state} ({len(self.face_counts)} faces"
        if self.bad_faces:
            text += f", {len(self.bad_faces)} even"
        return text + ")"


def edge_direction(m: SkewWeightMatrix, idx: Mapping[str, int], u: str, v: str, label: str) -> int:
    """+1 if the ``label`` edge between u and v is oriented u -> v, -1 if v -> u, 0 if absent."""
    coef = _linear_coefficients(m.entry(idx[u], idx[v])).get(label, 0)
    return (coef > 0) - (coef < 0)


def verify_good_orientation(m: SkewWeightMatrix, g: LabeledGraph) -> OrientationReport:
    """Check skew-symmetry, agreement with the graph, and odd clockwise counts on every face."""
    if m.size != len(g.vertices) or tuple(m.words) != tuple(g.vertices):
        raise DimensionMismatchError(
            f"matrix of size {m.size} does not index the {len(g.vertices)} vertices of the graph")
    problems = []
    skew = m.is_skew()
    if not skew:
        problems.append("matrix is not skew-symmetric")
    idx = g.index
    expected: Dict[Tuple[int, int], Dict[str, int]] = {}
    for e in g.edges:
        i, j = sorted((idx[e.u], idx[e.v]))
        slot = expected.setdefault((i, j), {})
        slot[e.label] = slot.get(e.label, 0) + 1
    seen = {}
    for (i, j), v in m.entries.items():
        if i < j:
            seen[(i, j)] = {lab: abs(cf) for lab, cf in _linear_coefficients(v).items()}
    adjacency_ok = seen == expected
    if not adjacency_ok:
        problems.append("entry magnitudes differ from the graph's labeled adjacency")
    counts, bad = [], []
    for fi, face in enumerate(g.faces):
        k = len(face.vertices)
        cw = 0
        for t in range(k):
            u, v = face.vertices[t], face.vertices[(t + 1) % k]
            e = g.edges[face.edges[t]]
            if edge_direction(m, idx, u, v, e.label) > 0:
                cw += 1
        counts.append(cw)
        if cw % 2 == 0:
            bad.append(fi)
    if bad:
        problems.append(f"{len(bad)} face(s) with an even number of clockwise edges")
    return OrientationReport(skew and adjacency_ok and not bad, skew, adjacency_ok, counts, bad, problems)


# ---------------------------------------------------------------------------
# Pfaffians


def _rows_of(entries: Mapping[Tuple[int, int], object], size: int) -> List[Dict[int, object]]:
    rows: List[Dict[int, object]] = [dict() for _ in range(size)]
    for (i, j), v in entries.items():
        if i != j and v:
            rows[i][j] = v
    return rows


def _pick_pivot(rows, alive, weight: Callable[[object], int]):
    """Markowitz-style choice: sparsest row, then sparsest partner, then simplest entry."""
    best = None
    for i in alive:
        ri = rows[i]
        if not ri:
            return i, None
        for j, v in ri.items():
            key = (len(ri) + len(rows[j]), weight(v))
            if best is None or key < best[0]:
                best = (key, i, j)
        if best is not None and best[0][0] <= 3:
            break
    return best[1], best[2]


def _pf_fraction_free(entries: Mapping[Tuple[int, int], MultiPoly], size: int) -> MultiPoly:
    """Pfaffian up to sign by fraction-free pair elimination.

    After eliminating the pivot pairs in S, entry (k, l) equals Pf(S + {k, l})
    up to sign; each update divides exactly by the previous pivot.
    """
    if size % 2:
        raise OddSizeError(f"Pfaffian of an odd-size ({size}) matrix")
    if size == 0:
        return ONE
    rows = _rows_of(entries, size)
    alive = set(range(size))
    prev = ONE
    while alive:
        i, j = _pick_pivot(rows, sorted(alive), len)
        if j is None:
            return ZERO
        p = rows[i][j]
        ri, rj = rows[i], rows[j]
        alive.discard(i)
        alive.discard(j)
        for k in (i, j):
            for l in list(rows[k]):
                rows[l].pop(k, None)
        touched = (set(ri) | set(rj)) - {i, j}
        # new (k, l) = (p * old + E_ki E_jl - E_kj E_il) / prev
        for k in alive:
            rk = rows[k]
            if k not in touched:
                if p != prev:
                    rows[k] = {l: exact_divide(p * v, prev) for l, v in rk.items()}
                continue
            aki = -ri.get(k, ZERO)  # rows[k][i] was removed; the matrix is skew
            akj = -rj.get(k, ZERO)
            new = {}
            for l in set(rk) | touched:
                if l == k:
                    continue
                num = p * rk[l] if l in rk else ZERO
                if l in touched:
                    if aki:
                        ajl = rj.get(l)
                        if ajl:
                            num = num + aki * ajl
                    if akj:
                        ail = ri.get(l)
                        if ail:
                            num = num - akj * ail
                if num:
                    new[l] = exact_divide(num, prev)
            rows[k] = new
        rows[i] = {}
        rows[j] = {}
        prev = p
    return normalize_sign(prev)


def _pf_field(entries: Mapping[Tuple[int, int], Fraction], size: int) -> Fraction:
    """Pfaffian up to sign over the rationals (Schur complement on 2x2 pivots)."""
    if size % 2:
        raise OddSizeError(f"Pfaffian of an odd-size ({size}) matrix")
    rows = _rows_of(entries, size)
    alive = set(range(size))
    result = Fraction(1)
    while alive:
        i, j = _pick_pivot(rows, sorted(alive), lambda v: 0)
        if j is None:
            return Fraction(0)
        p = rows[i][j]
        result *= p
        ri, rj = rows[i], rows[j]
        alive.discard(i)
        alive.discard(j)
        for k in (i, j):
            for l in list(rows[k]):
                rows[l].pop(k, None)
        touched = (set(ri) | set(rj)) - {i, j}
        for k in touched:
            aki = -ri.get(k, 0)
            akj = -rj.get(k, 0)
            rk = rows[k]
            for l in touched:
                if l == k:
                    continue
                corr = aki * rj.get(l, 0) - akj * ri.get(l, 0)
                if corr:
                    tot = rk.get(l, 0) + corr / p
                    if tot:
                        rk[l] = tot
                    else:
                        rk.pop(l, None)
        rows[i] = {}
        rows[j] = {}
    return abs(result)


def determinant_exact(entries: Mapping[Tuple[int, int], MultiPoly], size: int) -> MultiPoly:
    """Determinant by sparse fraction-free (Bareiss) elimination."""
    if size == 0:
        return ONE
    rows: List[Dict[int, MultiPoly]] = [dict() for _ in range(size)]
    for (i, j), v in entries.items():
        if v:
            rows[i][j] = v
    cols: Dict[int, set] = {j: set() for j in range(size)}
    for i, r in enumerate(rows):
        for j in r:
            cols[j].add(i)
    row_order = list(range(size))
    col_order = list(range(size))
    sign = 1
    prev = ONE
    for _ in range(size):
        best = None
        for r in row_order:
            for c in rows[r]:
                key = ((len(rows[r]) - 1) * (len(cols[c]) - 1), len(rows[r][c]))
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            return ZERO
        _, r, c = best
        if (row_order.index(r) + col_order.index(c)) % 2:
            sign = -sign
        row_order.remove(r)
        col_order.remove(c)
        p = rows[r][c]
        pivot_row = {j: v for j, v in rows[r].items() if j != c}
        for i in row_order:
            ri = rows[i]
            f = ri.pop(c, None)
            new = {}
            for j in (set(ri) | set(pivot_row)) if f is not None else ri:
                num = p * ri[j] if j in ri else ZERO
                if f is not None and j in pivot_row:
                    num = num - f * pivot_row[j]
                if num:
                    new[j] = num if prev == ONE else exact_divide(num, prev)
            rows[i] = new
        for j in list(rows[r]):
            cols[j].discard(r)
        rows[r] = {}
        cols = {j: {i for i in row_order if j in rows[i]} for j in col_order}
        prev = p
    return prev * sign


def pfaffian_exact(m: SkewWeightMatrix, cap: int = DEFAULT_EXACT_CAP, method: str = "elimination") -> MultiPoly:
    """|Pf(m)| as a polynomial with positive leading coefficient.

    ``method="elimination"`` runs fraction-free Pfaffian elimination;
    ``method="sqrt-det"`` takes the polynomial square root of the determinant.
    """
    if m.size % 2:
        raise OddSizeError(f"Pfaffian of an odd-size ({m.size}) matrix")
    if m.size > cap:
        raise CapExceededError(
            f"size {m.size} exceeds the exact cap {cap}; use pfaffian_numeric instead")
    if method == "elimination":
        return _pf_fraction_free(m.entries, m.size)
    if method == "sqrt-det":
        return poly_sqrt(determinant_exact(m.entries, m.size))
    raise ValueError(f"unknown Pfaffian method {method!r}")


def pfaffian_numeric(m: SkewWeightMatrix, assignment: Mapping[str, Fraction]) -> Fraction:
    """|Pf| of the matrix evaluated at a rational label assignment."""
    if m.size % 2:
        raise OddSizeError(f"Pfaffian of an odd-size ({m.size}) matrix")
    return _pf_field(m.evaluated(assignment), m.size)


# ---------------------------------------------------------------------------
# Hanoi reductions


@dataclass(frozen=True)
class ReducedMatrices:
    gamma_a: SkewWeightMatrix
    gamma_b: SkewWeightMatrix
    gamma_c: SkewWeightMatrix
    lam: SkewWeightMatrix

    def sizes(self) -> Tuple[int, int, int, int]:
        return (self.gamma_a.size, self.gamma_b.size, self.gamma_c.size, self.lam.size)


def hanoi_reductions(delta: SkewWeightMatrix, n: Optional[int] = None) -> ReducedMatrices:
    """Delete the loop corners: 0^n for the c-loop, 1^n for b, 2^n for a, all three for Lambda."""
    n = delta.level if n is None else n
    idx = {w: i for i, w in enumerate(delta.words)}
    z, o, t = idx["0" * n], idx["1" * n], idx["2" * n]
    return ReducedMatrices(
        gamma_a=delta.delete([t]),
        gamma_b=delta.delete([o]),
        gamma_c=delta.delete([z]),
        lam=delta.delete([z, o, t]),
    )


def partition_kasteleyn(family: str, n: int, assignment: Optional[Mapping[str, Fraction]] = None,
                        cap: int = DEFAULT_EXACT_CAP, method: str = "elimination"):
    """Partition function from Pfaffians; symbolic unless ``assignment`` is given."""
    m = oriented_matrix(family, n)
    if family in ("grigorchuk", "basilica"):
        if assignment is None:
            return pfaffian_exact(m, cap, method)
        return pfaffian_numeric(m, assignment)
    red = hanoi_reductions(m, n)
    parts = [(var("c"), red.gamma_c), (var("b"), red.gamma_b), (var("a"), red.gamma_a),
             (var("a") * var("b") * var("c"), red.lam)]
    if assignment is None:
        total = ZERO
        for w, mat in parts:
            total = total + w * pfaffian_exact(mat, cap, method)
        return total
    total = Fraction(0)
    for w, mat in parts:
        total += evaluate(w, assignment) * pfaffian_numeric(mat, assignment)
    return total


# ---------------------------------------------------------------------------
# rational map for the Hanoi partition function


@dataclass(frozen=True)
class MapState:
    x1: Fraction
    x2: Fraction
    x3: Fraction
    x4: Fraction
    x5: Fraction
    x6: Fraction

    @classmethod
    def start(cls, a, b, c) -> "MapState":
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        return cls(a, b, c, a, b, c)

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return (self.x1, self.x2, self.x3, self.x4, self.x5, self.x6)


def rational_map_step(s: MapState) -> MapState:
    x1, x2, x3, x4, x5, x6 = (Fraction(v) for v in s.as_tuple())
    den = x1 * x2 * x3 + x4 * x5 * x6
    if den == 0:
        raise SingularDenominatorError("x1*x2*x3 + x4*x5*x6 vanishes")
    return MapState(
        x1, x2, x3,
        (x1 * x4 ** 3 + x2 * x3 * x5 * x6) / den,
        (x2 * x5 ** 3 + x1 * x3 * x4 * x6) / den,
        (x3 * x6 ** 3 + x1 * x2 * x4 * x5) / den,
    )


def theorem37_eval(n: int, a, b, c) -> Fraction:
    """Hanoi partition function at (a, b, c) from iterates of the rational map.

    Phi_n = prod_{k=0}^{n-3} (abc + a_k b_k c_k)^(3^(n-k-2)) * R(a_{n-2}, b_{n-2}, c_{n-2}),
    R(x, y, z) = abc(abc + xyz) + abc(xy + xz + yz) + a^2 x^3 + b^2 y^3 + c^2 z^3,
    where (a_k, b_k, c_k) are the last three coordinates after k steps.
    """
    if n < 3:
        raise UnsupportedLevelError("the product formula is stated for n >= 3")
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if min(a, b, c) <= 0:
        raise ValueError("weights must be positive")
    abc = a * b * c
    state = MapState.start(a, b, c)
    total = Fraction(1)
    for k in range(n - 2):
        total *= (abc + state.x4 * state.x5 * state.x6) ** (3 ** (n - k - 2))
        state = rational_map_step(state)
    x, y, z = state.x4, state.x5, state.x6
    tail = (abc * (abc + x * y * z) + abc * (x * y + x * z + y * z)
            + a * a * x ** 3 + b * b * y ** 3 + c * c * z ** 3)
    return total * tail


MatrixValue = Union[MultiPoly, Fraction]
