"""Exhaustive enumeration of dimer covers, used as ground truth.

Three boundary conventions are supported: plain perfect matchings, covers in
which a vertex carrying a loop may be closed by that loop (Hanoi graphs), and
covers in which designated corners may stay uncovered (gasket graphs).
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from .algebra import VARIABLES, MultiPoly, evaluate
from .errors import BudgetExceededError, InvalidCoverError, ZeroPartitionError
from .graphs import LabeledGraph

DEFAULT_BUDGET = 10 ** 7

_LABEL_INDEX = {x: i for i, x in enumerate(VARIABLES)}


def default_budget() -> int:
    return int(os.environ.get("SCHREIER_DIMERS_ORACLE_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class BoundaryPolicy:
    """``kind`` is "perfect", "loops" or "corners"; ``corners`` lists exempt vertices."""

    kind: str = "perfect"
    corners: Tuple[str, ...] = ()

    @classmethod
    def perfect(cls) -> "BoundaryPolicy":
        return cls("perfect")

    @classmethod
    def loop_closure(cls) -> "BoundaryPolicy":
        return cls("loops")

    @classmethod
    def corner_exempt(cls, corners: Sequence[str]) -> "BoundaryPolicy":
        return cls("corners", tuple(corners))


def default_policy(g: LabeledGraph) -> BoundaryPolicy:
    if g.family == "hanoi":
        return BoundaryPolicy.loop_closure()
    if g.family == "gasket":
        return BoundaryPolicy.corner_exempt(g.corners)
    return BoundaryPolicy.perfect()


@dataclass(frozen=True)
class DimerCover:
    """Dimers (edge ids), closures ``(vertex, label)`` with label None for an exempt corner."""

    dimers: Tuple[int, ...]
    closures: Tuple[Tuple[str, Optional[str]], ...]
    weight: MultiPoly

    @property
    def unmatched(self) -> FrozenSet[str]:
        return frozenset(v for v, _ in self.closures)

    def label_count(self, g: LabeledGraph, label: str) -> int:
        """Number of dimers (and closing loops) carrying ``label``."""
        n = sum(1 for e in self.dimers if g.edges[e].label == label)
        return n + sum(1 for _, lab in self.closures if lab == label)

    def to_dict(self, cls: Optional[str] = None) -> dict:
        d = {"dimers": list(self.dimers),
             "closures": [[v, lab] for v, lab in self.closures],
             "weight": str(self.weight)}
        if cls is not None:
            d["class"] = cls
        return d


def _search(g: LabeledGraph, policy: BoundaryPolicy, budget: int) -> Iterator[Tuple[list, list, list]]:
    """Backtracking on the uncovered vertex with fewest options; yields (dimers, closures, exponents)."""
    order = list(g.vertices)
    pos = {w: i for i, w in enumerate(order)}
    inc: Dict[str, List[Tuple[int, str, int]]] = {w: [] for w in order}
    for e in g.edges:
        li = _LABEL_INDEX[e.label]
        inc[e.u].append((e.id, e.v, li))
        inc[e.v].append((e.id, e.u, li))
    for w in order:
        inc[w].sort()
    closure: Dict[str, List[Optional[str]]] = {w: [] for w in order}
    if policy.kind == "loops":
        for v, lab in g.loops:
            closure[v].append(lab)
    elif policy.kind == "corners":
        for v in policy.corners:
            if v not in closure:
                raise InvalidCoverError(f"exempt corner {v!r} is not a vertex")
            closure[v].append(None)
    covered = [False] * len(order)
    dimers: list = []
    closures: list = []
    exps = [0, 0, 0, 0]
    nodes = 0

    def options(i: int) -> int:
        w = order[i]
        k = sum(1 for _, other, _ in inc[w] if not covered[pos[other]])
        return k + len(closure[w])

    def rec():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"enumeration exceeded {budget} search nodes")
        # branch on the most constrained uncovered vertex (lowest index on ties)
        best, best_k = -1, None
        for i in range(len(order)):
            if covered[i]:
                continue
            k = options(i)
            if k == 0:
                return
            if best_k is None or k < best_k:
                best, best_k = i, k
                if k == 1:
                    break
        if best < 0:
            yield list(dimers), list(closures), list(exps)
            return
        i = best
        w = order[i]
        covered[i] = True
        for eid, other, li in inc[w]:
            j = pos[other]
            if covered[j]:
                continue
            covered[j] = True
            dimers.append(eid)
            exps[li] += 1
            yield from rec()
            exps[li] -= 1
            dimers.pop()
            covered[j] = False
        for lab in closure[w]:
            closures.append((w, lab))
            if lab is not None:
                exps[_LABEL_INDEX[lab]] += 1
            yield from rec()
            if lab is not None:
                exps[_LABEL_INDEX[lab]] -= 1
            closures.pop()
        covered[i] = False

    yield from rec()


def enumerate_covers(g: LabeledGraph, policy: Optional[BoundaryPolicy] = None,
                     budget: Optional[int] = None) -> List[DimerCover]:
    policy = policy or default_policy(g)
    budget = default_budget() if budget is None else budget
    out = []
    for dimers, closures, exps in _search(g, policy, budget):
        out.append(DimerCover(tuple(sorted(dimers)), tuple(sorted(closures, key=lambda t: (t[0], t[1] or ""))),
                              MultiPoly({tuple(exps): 1})))
    return out


def oracle_partition(g: LabeledGraph, policy: Optional[BoundaryPolicy] = None,
                     budget: Optional[int] = None) -> MultiPoly:
    """Sum of cover weights, accumulated without storing the covers."""
    policy = policy or default_policy(g)
    budget = default_budget() if budget is None else budget
    counts: Counter = Counter()
    for _, _, exps in _search(g, policy, budget):
        counts[tuple(exps)] += 1
    return MultiPoly(dict(counts))


# ---------------------------------------------------------------------------
# validation and classification


def check_cover(g: LabeledGraph, cover: DimerCover, policy: Optional[BoundaryPolicy] = None) -> None:
    """Raise InvalidCoverError unless every vertex is covered exactly once under ``policy``."""
    policy = policy or default_policy(g)
    seen: Counter = Counter()
    exps = [0, 0, 0, 0]
    for eid in cover.dimers:
        if not 0 <= eid < len(g.edges):
            raise InvalidCoverError(f"unknown edge id {eid}")
        e = g.edges[eid]
        seen[e.u] += 1
        seen[e.v] += 1
        exps[_LABEL_INDEX[e.label]] += 1
    loops = set(g.loops)
    for v, lab in cover.closures:
        if lab is None:
            if policy.kind != "corners" or v not in policy.corners:
                raise InvalidCoverError(f"vertex {v} may not be left uncovered")
        else:
            if policy.kind != "loops" or (v, lab) not in loops:
                raise InvalidCoverError(f"no usable {lab}-loop at {v}")
            exps[_LABEL_INDEX[lab]] += 1
        seen[v] += 1
    bad = [w for w in g.vertices if seen[w] != 1]
    if bad or set(seen) - set(g.vertices):
        raise InvalidCoverError(f"vertices not covered exactly once: {bad[:5]}")
    if MultiPoly({tuple(exps): 1}) != cover.weight:
        raise InvalidCoverError("stored weight differs from the product of labels")


_CORNER_NAMES = ("ab", "ac", "bc")  # corners 0^n, 1^n, 2^n


def classify_cover(g: LabeledGraph, cover: DimerCover, policy: Optional[BoundaryPolicy] = None) -> str:
    """Hanoi types I-IV by the loops used; gasket types by which corners are covered.

    Gasket names: ``f`` no corner covered, ``t`` all covered, ``h_X`` only corner X
    uncovered, ``g_X`` only corner X covered (X in ab, ac, bc; rotation labeling
    drops the suffix).
    """
    check_cover(g, cover, policy)
    n = g.level
    corners = ["0" * n, "1" * n, "2" * n]
    open_corners = cover.unmatched
    if g.family == "hanoi":
        if open_corners == set(corners):
            return "I"
        for name, corner in zip(("II", "III", "IV"), corners):
            if open_corners == {corner}:
                return name
        raise InvalidCoverError(f"loop set {sorted(open_corners)} matches no Hanoi type")
    if g.family == "gasket":
        covered = [c not in open_corners for c in corners]
        k = sum(covered)
        suffix = g.labeling != "rotation"
        if k == 0:
            return "f"
        if k == 3:
            return "t"
        if k == 1:
            name = _CORNER_NAMES[covered.index(True)]
            return f"g_{name}" if suffix else "g"
        name = _CORNER_NAMES[covered.index(False)]
        return f"h_{name}" if suffix else "h"
    return "perfect"


def class_partition(g: LabeledGraph, policy: Optional[BoundaryPolicy] = None,
                    budget: Optional[int] = None) -> Dict[str, MultiPoly]:
    """Oracle weight sum per cover class."""
    sums: Dict[str, Counter] = {}
    for cover in enumerate_covers(g, policy, budget):
        cls = classify_cover(g, cover, policy)
        sums.setdefault(cls, Counter())
        (e, _), = cover.weight.items()
        sums[cls][e] += 1
    return {k: MultiPoly(dict(v)) for k, v in sorted(sums.items())}


def boltzmann_probability(g: LabeledGraph, policy: Optional[BoundaryPolicy], cover: DimerCover,
                          assignment: Mapping[str, object], budget: Optional[int] = None) -> Fraction:
    """W(D) / Phi at a positive rational assignment."""
    check_cover(g, cover, policy)
    z = evaluate(oracle_partition(g, policy, budget), assignment)
    if z == 0:
        raise ZeroPartitionError("partition function vanishes at this assignment")
    return evaluate(cover.weight, assignment) / z


def covers_to_jsonl(g: LabeledGraph, covers: Sequence[DimerCover],
                    policy: Optional[BoundaryPolicy] = None) -> str:
    lines = []
    for c in covers:
        cls = classify_cover(g, c, policy) if g.family in ("hanoi", "gasket") else None
        lines.append(json.dumps(c.to_dict(cls), sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


def label_count_distribution(g: LabeledGraph, label: str, cls: Optional[str] = None,
                             policy: Optional[BoundaryPolicy] = None,
                             budget: Optional[int] = None) -> Dict[int, int]:
    """Number of covers (optionally of one class) with exactly k ``label`` edges, by k."""
    dist: Counter = Counter()
    for cover in enumerate_covers(g, policy, budget):
        if cls is not None and classify_cover(g, cover, policy) != cls:
            continue
        dist[cover.label_count(g, label)] += 1
    return dict(sorted(dist.items()))
