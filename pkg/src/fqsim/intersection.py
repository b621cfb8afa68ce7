"""Exact intersection maximization under a finite group action.

For a group G acting on a finite space X and subsets E (the moving set)
and H (the fixed set), the engine computes max over g of |H ∩ gE|
exactly, together with the rational lower bound |H||E|/|X| that holds
whenever the action is transitive, and the exact total
sum over g of |H ∩ gE|, which for transitive actions equals
|G||H||E|/|X| by counting the incidences {(g, y) : y in H ∩ gE} two
ways.

Every quantity is integer or `fractions.Fraction`; nothing is ever
compared through floating point.  Argmax ties are broken toward the
canonically smallest group element.  Scans can be partitioned across
workers; the reduction preserves the canonical tie-break, so results
are independent of scheduling.
"""

from __future__ import annotations

import warnings
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    EnumerationCapExceeded,
    FieldMismatch,
    NotTransitive,
    SpaceMismatch,
)
from .geometry import PointSet, Vector
from .groups import FiniteGroup, GroupElement, Translation
from .prng import SplitMix64

# All-subset-pair audits walk 4^|X| pairs; beyond this the walk is refused.
AUDIT_SPACE_LIMIT = 10


@dataclass
class IntersectionReport:
    """Result of maximizing |fixed ∩ g·moving| over a whole group."""

    best_g: GroupElement
    best_count: int
    bound: Fraction
    double_count_total: int
    transitive: bool
    group_order: int
    space_size: int
    moving_size: int
    fixed_size: int
    per_g_histogram: dict[int, int] | None = None

    @property
    def bound_num(self) -> int:
        return self.bound.numerator

    @property
    def bound_den(self) -> int:
        return self.bound.denominator

    @property
    def satisfies_bound(self) -> bool:
        return self.best_count >= self.bound

    @property
    def double_count_expected(self) -> Fraction:
        if self.space_size == 0:
            return Fraction(0)
        return Fraction(self.group_order * self.moving_size * self.fixed_size,
                        self.space_size)

    @property
    def double_count_ok(self) -> bool:
        return self.double_count_total == self.double_count_expected

    def to_json(self) -> dict:
        out = {
            "best_g": self.best_g.to_json(),
            "best_count": self.best_count,
            "bound_num": self.bound_num,
            "bound_den": self.bound_den,
            "double_count_total": self.double_count_total,
            "transitive": self.transitive,
            "group_order": self.group_order,
            "space_size": self.space_size,
            "moving_size": self.moving_size,
            "fixed_size": self.fixed_size,
        }
        if self.per_g_histogram is not None:
            out["per_g_histogram"] = {str(k): v for k, v in sorted(self.per_g_histogram.items())}
        return out


@dataclass(frozen=True)
class DoubleCountCheck:
    """Sum over g of |fixed ∩ g·moving| against its closed form."""

    total: int
    expected: Fraction
    transitive: bool

    @property
    def equal(self) -> bool:
        return self.total == self.expected

    @property
    def applicable(self) -> bool:
        # The closed form is only guaranteed for transitive actions.
        return self.transitive

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "expected_num": self.expected.numerator,
            "expected_den": self.expected.denominator,
            "equal": self.equal,
            "transitive": self.transitive,
        }


def _check_compatible(moving: PointSet, fixed: PointSet) -> None:
    if moving.field.q != fixed.field.q:
        raise FieldMismatch(
            f"sets over F_{moving.field.q} and F_{fixed.field.q}"
        )
    if moving.dim != fixed.dim:
        raise DimensionMismatch(f"sets of dimension {moving.dim} and {fixed.dim}")


def intersect_count(g: GroupElement, moving: PointSet, fixed: PointSet) -> int:
    """|fixed ∩ g·moving| for a single group element."""
    try:
        _check_compatible(moving, fixed)
        return sum(1 for v in moving if g.apply(v) in fixed)
    except (FieldMismatch, DimensionMismatch) as exc:
        raise SpaceMismatch(str(exc)) from exc


def _require_subsets(group: FiniteGroup, moving: PointSet, fixed: PointSet) -> None:
    space = group.space
    for name, ps in (("moving", moving), ("fixed", fixed)):
        if ps.field.q != space.field.q or ps.dim != space.dim:
            raise SpaceMismatch(
                f"{name} set lives in F_{ps.field.q}^{ps.dim}, "
                f"the group acts on F_{space.field.q}^{space.dim}"
            )
        for p in ps:
            if p not in space:
                raise SpaceMismatch(f"{name} set point {p!r} is outside the {space.kind} space")


def _image_mask(perm, indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << perm[i]
    return m


def _scan_chunk(perms, e_indices, h_mask, lo, hi, collect):
    best_c = -1
    best_i = -1
    total = 0
    counts = [] if collect else None
    for gi in range(lo, hi):
        c = (_image_mask(perms[gi], e_indices) & h_mask).bit_count()
        total += c
        if collect:
            counts.append(c)
        if c > best_c:
            best_c = c
            best_i = gi
    return best_i, best_c, total, counts


def max_intersection(group: FiniteGroup, moving: PointSet, fixed: PointSet, *,
                     want_histogram: bool = False, jobs: int = 1) -> IntersectionReport:
    """Exact maximum of |fixed ∩ g·moving| over every element of the group.

    The maximizer reported is the canonically smallest one.  With
    jobs > 1 the element range is split into contiguous chunks and the
    chunk results merged in order, which reproduces the single-worker
    answer exactly.
    """
    _require_subsets(group, moving, fixed)
    space = group.space
    n_x = space.size
    bound = Fraction(len(moving) * len(fixed), n_x) if n_x else Fraction(0)
    transitive = group.is_transitive()

    if len(moving) == 0 or len(fixed) == 0:
        warnings.warn("empty point set: the intersection bound is vacuous")
        hist = {0: group.order} if want_histogram else None
        return IntersectionReport(
            best_g=group.elements[0], best_count=0, bound=bound,
            double_count_total=0, transitive=transitive,
            group_order=group.order, space_size=n_x,
            moving_size=len(moving), fixed_size=len(fixed),
            per_g_histogram=hist,
        )

    perms = group.perms()
    e_indices = [space.index(p) for p in moving]
    h_mask = 0
    for p in fixed:
        h_mask |= 1 << space.index(p)

    order = group.order
    if jobs <= 1 or order < 2 * jobs:
        chunks = [(0, order)]
    else:
        step = (order + jobs - 1) // jobs
        chunks = [(lo, min(lo + step, order)) for lo in range(0, order, step)]

    if len(chunks) == 1:
        results = [_scan_chunk(perms, e_indices, h_mask, 0, order, want_histogram)]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(
                lambda c: _scan_chunk(perms, e_indices, h_mask, c[0], c[1], want_histogram),
                chunks,
            ))

    best_i, best_c, total = -1, -1, 0
    all_counts: list[int] = []
    for bi, bc, tot, counts in results:
        total += tot
        if bc > best_c:  # chunk order preserves the smallest-index tie-break
            best_c, best_i = bc, bi
        if counts is not None:
            all_counts.extend(counts)

    hist = dict(Counter(all_counts)) if want_histogram else None
    return IntersectionReport(
        best_g=group.elements[best_i], best_count=best_c, bound=bound,
        double_count_total=total, transitive=transitive,
        group_order=order, space_size=n_x,
        moving_size=len(moving), fixed_size=len(fixed),
        per_g_histogram=hist,
    )


def double_count_check(group: FiniteGroup, moving: PointSet, fixed: PointSet) -> DoubleCountCheck:
    """Total of |fixed ∩ g·moving| over g, against |G||H||E|/|X|.

    For non-transitive actions the closed form need not hold; the result
    flags this instead of failing.
    """
    report = max_intersection(group, moving, fixed)
    return DoubleCountCheck(
        total=report.double_count_total,
        expected=report.double_count_expected,
        transitive=report.transitive,
    )


def translation_count_map(moving: PointSet, fixed: PointSet) -> dict[tuple[int, ...], int]:
    """Nonzero values of a -> |fixed ∩ (moving + a)|, via difference counting.

    A point y of the fixed set lies in moving + a exactly when
    a = y - x for some x in the moving set, so the count of a is the
    number of pairs (x, y) with difference a.  Costs O(|E||H|) instead
    of O(q^d |E|).
    """
    _check_compatible(moving, fixed)
    q = moving.field.q
    d = moving.dim
    counts: dict[tuple[int, ...], int] = {}
    for x in moving.points:
        xc = x.coords
        for y in fixed.points:
            yc = y.coords
            a = tuple((yc[i] - xc[i]) % q for i in range(d))
            counts[a] = counts.get(a, 0) + 1
    return counts


def max_translation_intersection_fast(moving: PointSet, fixed: PointSet, *,
                                      want_histogram: bool = False) -> IntersectionReport:
    """Translation-group maximizer via the difference histogram.

    Output contract is identical to `max_intersection` over the full
    translation group: the reported shift is the lexicographically
    smallest maximizer, the bound is |E||H|/q^d, and the double-count
    total is |E||H| (each pair contributes to exactly one shift).
    """
    _check_compatible(moving, fixed)
    field = moving.field
    q = field.q
    d = moving.dim
    order = q ** d

    counts = translation_count_map(moving, fixed)
    best_a = (0,) * d
    best_c = 0
    for a, c in counts.items():
        if c > best_c or (c == best_c and a < best_a):
            best_a, best_c = a, c

    if not counts:
        warnings.warn("empty point set: the intersection bound is vacuous")

    hist = None
    if want_histogram:
        hist = dict(Counter(counts.values()))
        zeros = order - len(counts)
        if zeros:
            hist[0] = hist.get(0, 0) + zeros

    return IntersectionReport(
        best_g=Translation(Vector(field, best_a)),
        best_count=best_c,
        bound=Fraction(len(moving) * len(fixed), order),
        double_count_total=len(moving) * len(fixed),
        transitive=True,
        group_order=order,
        space_size=order,
        moving_size=len(moving),
        fixed_size=len(fixed),
        per_g_histogram=hist,
    )


@dataclass(frozen=True)
class BoundAudit:
    """Outcome of checking the intersection bound over many subset pairs."""

    pairs: int
    bound_violations: int
    double_count_mismatches: int | None
    # Largest observed value of |E||H| - best*|X|; positive would be a violation.
    worst_gap_num: int
    space_size: int

    @property
    def min_slack(self) -> Fraction:
        """Smallest observed best_count - bound, over all checked pairs."""
        return Fraction(-self.worst_gap_num, self.space_size)

    def to_json(self) -> dict:
        out = {
            "pairs": self.pairs,
            "bound_violations": self.bound_violations,
            "min_slack_num": self.min_slack.numerator,
            "min_slack_den": self.min_slack.denominator,
        }
        if self.double_count_mismatches is not None:
            out["double_count_mismatches"] = self.double_count_mismatches
        return out


def _require_transitive(group: FiniteGroup) -> None:
    if not group.is_transitive():
        raise NotTransitive(
            f"{group.kind} group is not transitive on its {group.space.kind} space; "
            "the intersection bound does not apply"
        )


def exhaustive_pairs_audit(group: FiniteGroup, *, double_count: bool = True) -> BoundAudit:
    """Check the bound (and optionally the double count) over ALL subset pairs.

    Walks every pair (E, H) of subsets of the space — 4^|X| pairs — so
    the space is capped at AUDIT_SPACE_LIMIT points.  Exact integer
    comparisons throughout: a bound violation is best*|X| < |E||H|, a
    double-count mismatch is total*|X| != |G||E||H|.
    """
    _require_transitive(group)
    n = group.space.size
    if n > AUDIT_SPACE_LIMIT:
        raise EnumerationCapExceeded(
            f"subset-pair audit needs a space of at most {AUDIT_SPACE_LIMIT} points, got {n}"
        )
    perms = group.perms()
    size = 1 << n

    # tables[g][mask] = image of the subset `mask` under element g
    tables = []
    for perm in perms:
        bit_img = [1 << perm[i] for i in range(n)]
        tab = [0] * size
        for m in range(1, size):
            low = (m & -m).bit_length() - 1
            tab[m] = tab[m & (m - 1)] | bit_img[low]
        tables.append(tab)

    popcount = [m.bit_count() for m in range(size)]
    g_order = group.order
    violations = 0
    mismatches = 0
    worst = -(n * max(g_order, 1))  # any valid pair beats this
    for e_mask in range(size):
        ce = popcount[e_mask]
        imgs = [t[e_mask] for t in tables]
        for h_mask in range(size):
            ch = popcount[h_mask]
            best = 0
            tot = 0
            for img in imgs:
                c = (img & h_mask).bit_count()
                tot += c
                if c > best:
                    best = c
            gap = ce * ch - best * n
            if gap > 0:
                violations += 1
            if gap > worst:
                worst = gap
            if double_count and tot * n != g_order * ce * ch:
                mismatches += 1
    return BoundAudit(
        pairs=size * size,
        bound_violations=violations,
        double_count_mismatches=mismatches if double_count else None,
        worst_gap_num=worst,
        space_size=n,
    )


def random_pairs_audit(group: FiniteGroup, pairs: int, seed: int, *,
                       double_count: bool = True) -> BoundAudit:
    """Check the bound over seeded uniformly random subset pairs.

    Each subset is drawn by independent fair bits per space point, so
    all subsets are equally likely.
    """
    _require_transitive(group)
    n = group.space.size
    if n > 64:
        raise EnumerationCapExceeded(
            f"random-pair audit draws 64-bit subset masks, needs |X| <= 64, got {n}"
        )
    perms = group.perms()
    rng = SplitMix64(seed)
    g_order = group.order
    violations = 0
    mismatches = 0
    worst = -(n * max(g_order, 1))
    for _ in range(pairs):
        e_mask = rng.next_bits(n)
        h_mask = rng.next_bits(n)
        e_indices = [i for i in range(n) if e_mask >> i & 1]
        ce = len(e_indices)
        ch = h_mask.bit_count()
        best = 0
        tot = 0
        for perm in perms:
            c = (_image_mask(perm, e_indices) & h_mask).bit_count()
            tot += c
            if c > best:
                best = c
        gap = ce * ch - best * n
        if gap > 0:
            violations += 1
        if gap > worst:
            worst = gap
        if double_count and tot * n != g_order * ce * ch:
            mismatches += 1
    return BoundAudit(
        pairs=pairs,
        bound_violations=violations,
        double_count_mismatches=mismatches if double_count else None,
        worst_gap_num=worst,
        space_size=n,
    )
