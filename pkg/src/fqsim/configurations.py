"""Constructive search for r-similar and determinant-similar point tuples.

Given a set E in F_q^d and a nonzero square ratio r, a similarity
witness is a pair of (k+1)-tuples (x_i), (y_i) drawn from E whose
pairwise norms satisfy ‖y_i - y_j‖ = r·‖x_i - x_j‖ on a prescribed
edge set.  The finder realizes the counting argument directly: scale E
by a square root of r, translate E over it, and read the witness off
any shift whose overlap reaches k+1 points.  Whenever
|E|^2 >= (k+1)·q^d the overlap bound guarantees success.

The determinant variant replaces translations by unimodular matrices
and the norm relation by det(x-subset) = r·det(y-subset) over every
d-subset of indices.

Every finder re-derives the claimed relations from raw coordinates with
an independent verifier before returning, and the verifiers are public
so serialized witnesses can be re-checked by third parties.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import (
    FieldMismatch,
    InsufficientIntersection,
    NotADthPower,
    NotASquare,
    NotOnSphere,
    OriginInSet,
    VerificationFailed,
    ZeroDilation,
)
from .field import FieldElement, make_field, as_field
from .geometry import ENUMERATION_CAP, Matrix, PointSet, Vector, sphere
from .groups import GroupElement, SpecialLinear, orthogonal_group, special_linear_group
from .intersection import (
    IntersectionReport,
    max_intersection,
    max_translation_intersection_fast,
)


class EdgeSet:
    """Index pairs (i, j), 1 <= i < j <= k+1, selecting which pair norms
    a similarity witness must relate.

    Presets: `all_pairs` (every pair — the simplex), `path` (a chain
    through all k+1 points), `star` (everything joined to point 1), and
    `cycle` (the chain closed up, k >= 2).
    """

    __slots__ = ("k", "pairs")

    def __init__(self, k: int, pairs):
        if k < 1:
            raise ValueError(f"edge sets need k >= 1, got {k}")
        canon = sorted({(int(i), int(j)) for i, j in pairs})
        if not canon:
            raise ValueError("edge set must be nonempty")
        for i, j in canon:
            if not (1 <= i < j <= k + 1):
                raise ValueError(f"edge ({i}, {j}) out of range for k = {k}")
        self.k = k
        self.pairs = tuple(canon)

    @classmethod
    def all_pairs(cls, k: int) -> "EdgeSet":
        return cls(k, itertools.combinations(range(1, k + 2), 2))

    @classmethod
    def path(cls, k: int) -> "EdgeSet":
        return cls(k, [(i, i + 1) for i in range(1, k + 1)])

    @classmethod
    def star(cls, k: int) -> "EdgeSet":
        return cls(k, [(1, j) for j in range(2, k + 2)])

    @classmethod
    def cycle(cls, k: int) -> "EdgeSet":
        if k < 2:
            raise ValueError("a cycle through k+1 points needs k >= 2")
        return cls(k, [(i, i + 1) for i in range(1, k + 1)] + [(1, k + 1)])

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeSet) and other.k == self.k and other.pairs == self.pairs

    def __hash__(self) -> int:
        return hash((self.k, self.pairs))

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs]

    def __repr__(self) -> str:
        return f"EdgeSet(k={self.k}, pairs={list(self.pairs)})"


_EDGE_PRESETS = {
    "simplex": EdgeSet.all_pairs,
    "all-pairs": EdgeSet.all_pairs,
    "cycle": EdgeSet.cycle,
    "path": EdgeSet.path,
    "star": EdgeSet.star,
}


def edge_preset(name: str, k: int) -> EdgeSet:
    try:
        maker = _EDGE_PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown edge preset {name!r}; expected one of {sorted(_EDGE_PRESETS)}"
        )
    return maker(k)


@dataclass(frozen=True)
class SimilarityThreshold:
    """Size guarantee |E|^2 >= (k+1)·q^d, kept in squared form so the
    comparison stays in integers."""

    tuple_size: int  # k + 1
    space_size: int  # q^d

    @property
    def product(self) -> int:
        return self.tuple_size * self.space_size

    @property
    def min_points(self) -> int:
        """Smallest set size meeting the guarantee."""
        if self.product == 0:
            return 0
        return math.isqrt(self.product - 1) + 1

    def met_by(self, n: int) -> bool:
        return n * n >= self.product

    def to_json(self) -> dict:
        return {
            "tuple_size": self.tuple_size,
            "space_size": self.space_size,
            "min_points": self.min_points,
        }


def similarity_threshold(q_or_field, dim: int, k: int) -> SimilarityThreshold:
    field = as_field(q_or_field)
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k == 0:
        warnings.warn("k = 0 is the degenerate single-point case")
    return SimilarityThreshold(tuple_size=k + 1, space_size=field.q ** dim)


@dataclass(frozen=True)
class Verification:
    """Outcome of an independent witness re-check."""

    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class SimilarityWitness:
    """Explicit tuples realizing ‖y_i - y_j‖ = ratio·‖x_i - x_j‖ on an edge set.

    The construction data is carried along: z_i = root·x_i = y_i + shift,
    where root is a square root of the ratio.  `ratio`/`root`/`shift`
    serialize to JSON keys "r"/"sqrt_r"/"a".
    """

    ratio: FieldElement
    root: FieldElement
    shift: Vector
    xs: tuple[Vector, ...]
    ys: tuple[Vector, ...]
    zs: tuple[Vector, ...]
    edges: EdgeSet
    verified: bool = False
    report: Optional[IntersectionReport] = dc_field(default=None, repr=False, compare=False)

    @property
    def k(self) -> int:
        return self.edges.k

    def to_json(self) -> dict:
        return {
            "kind": "similarity",
            "q": self.ratio.field.q,
            "d": self.shift.dim,
            "k": self.k,
            "r": self.ratio.value,
            "sqrt_r": self.root.value,
            "a": list(self.shift.coords),
            "xs": [list(v.coords) for v in self.xs],
            "ys": [list(v.coords) for v in self.ys],
            "zs": [list(v.coords) for v in self.zs],
            "edges": self.edges.to_json(),
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SimilarityWitness":
        field = make_field(obj["q"])
        vec = lambda c: Vector(field, c)
        return cls(
            ratio=field(obj["r"]),
            root=field(obj["sqrt_r"]),
            shift=vec(obj["a"]),
            xs=tuple(vec(c) for c in obj["xs"]),
            ys=tuple(vec(c) for c in obj["ys"]),
            zs=tuple(vec(c) for c in obj["zs"]),
            edges=EdgeSet(obj["k"], obj["edges"]),
            verified=bool(obj.get("verified", False)),
        )


@dataclass
class DetSimilarityWitness:
    """Explicit tuples with det(x-subset) = ratio·det(y-subset) on all d-subsets.

    Construction data: z_i = transform(x_i) = root·y_i, where root is a
    d-th root of the ratio and the transform has determinant 1.
    """

    ratio: FieldElement
    root: FieldElement
    transform: GroupElement
    xs: tuple[Vector, ...]
    ys: tuple[Vector, ...]
    zs: tuple[Vector, ...]
    verified: bool = False
    report: Optional[IntersectionReport] = dc_field(default=None, repr=False, compare=False)

    @property
    def k(self) -> int:
        return len(self.xs) - 1

    def to_json(self) -> dict:
        return {
            "kind": "det-similarity",
            "q": self.ratio.field.q,
            "d": self.xs[0].dim,
            "k": self.k,
            "r": self.ratio.value,
            "root": self.root.value,
            "g": [list(r) for r in self.transform.matrix.rows],
            "xs": [list(v.coords) for v in self.xs],
            "ys": [list(v.coords) for v in self.ys],
            "zs": [list(v.coords) for v in self.zs],
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DetSimilarityWitness":
        field = make_field(obj["q"])
        vec = lambda c: Vector(field, c)
        return cls(
            ratio=field(obj["r"]),
            root=field(obj["root"]),
            transform=SpecialLinear(Matrix(field, obj["g"])),
            xs=tuple(vec(c) for c in obj["xs"]),
            ys=tuple(vec(c) for c in obj["ys"]),
            zs=tuple(vec(c) for c in obj["zs"]),
            verified=bool(obj.get("verified", False)),
        )


def _tuple_field_issues(w, names=("xs", "ys", "zs")) -> list[str]:
    """Structural problems that would make the arithmetic checks crash.

    Verifiers must never raise, so field and dimension agreement is
    established before any witness arithmetic runs.
    """
    reasons = []
    q = w.ratio.field.q
    if w.root.field.q != q:
        reasons.append(f"root lives in F_{w.root.field.q}, ratio in F_{q}")
    dims = set()
    for name in names:
        vs = getattr(w, name)
        if not vs:
            reasons.append(f"{name} is empty")
            continue
        for v in vs:
            if v.field.q != q:
                reasons.append(f"{name} contains a vector over F_{v.field.q}, expected F_{q}")
                break
            dims.add(v.dim)
    if len(dims) > 1:
        reasons.append(f"mixed dimensions {sorted(dims)}")
    return reasons


def verify_similarity(w: SimilarityWitness) -> Verification:
    """Re-derive every claim of a similarity witness from raw coordinates.

    Trusts nothing about how the witness was produced: the stored root
    is only used through the identity root^2 = ratio, and the norm
    relation is recomputed per edge.  Never raises; failures come back
    as a reason list.
    """
    reasons = _tuple_field_issues(w)
    if reasons:
        return Verification(False, tuple(reasons))
    k = w.edges.k
    n = k + 1
    if not (len(w.xs) == len(w.ys) == len(w.zs) == n):
        reasons.append(
            f"expected {n} points per tuple, got {len(w.xs)}/{len(w.ys)}/{len(w.zs)}"
        )
        return Verification(False, tuple(reasons))
    if w.shift.field.q != w.ratio.field.q or w.shift.dim != w.xs[0].dim:
        reasons.append("shift does not match the point tuples' field and dimension")
        return Verification(False, tuple(reasons))

    if w.root * w.root != w.ratio:
        reasons.append("stored root does not square to the ratio")
    for i in range(n):
        if w.root * w.xs[i] != w.zs[i]:
            reasons.append(f"z[{i + 1}] is not root*x[{i + 1}]")
        if w.ys[i] + w.shift != w.zs[i]:
            reasons.append(f"z[{i + 1}] is not y[{i + 1}] + shift")
    if len({v.coords for v in w.xs}) != n:
        reasons.append("distinctness: repeated x point")
    if len({v.coords for v in w.ys}) != n:
        reasons.append("distinctness: repeated y point")
    for i, j in w.edges:
        lhs = (w.ys[i - 1] - w.ys[j - 1]).norm()
        rhs = w.ratio * (w.xs[i - 1] - w.xs[j - 1]).norm()
        if lhs != rhs:
            reasons.append(f"norm relation violated at edge ({i}, {j})")
    return Verification(not reasons, tuple(reasons))


def find_similar_config(points: PointSet, ratio: FieldElement, k: int,
                        edges: EdgeSet | None = None) -> SimilarityWitness:
    """Find (k+1)-tuples in `points` similar with the given square ratio.

    Scales the set by a square root of the ratio, maximizes the overlap
    with the translated original via the difference histogram, and
    extracts the k+1 lexicographically smallest overlap points.  Works
    for any set size; when the overlap tops out below k+1 (possible for
    small sets) the failure carries the achieved count.
    """
    if k < 1:
        raise ValueError(f"similarity search needs k >= 1, got {k}")
    if edges is None:
        edges = EdgeSet.all_pairs(k)
    elif edges.k != k:
        raise ValueError(f"edge set is for k = {edges.k}, search is for k = {k}")
    if ratio.field.q != points.field.q:
        raise FieldMismatch("ratio and point set live in different fields")
    if ratio.is_zero():
        raise ZeroDilation("ratio 0 collapses every tuple to a point")
    if not ratio.is_mth_power(2):
        raise NotASquare(f"{ratio.value} is not a square in F_{ratio.field.q}")
    root = ratio.sqrt()

    scaled = points.scaled(root)
    report = max_translation_intersection_fast(points, scaled)
    if report.best_count < k + 1:
        raise InsufficientIntersection(k + 1, report.best_count)

    shift = report.best_g.vector
    zs = []
    for z in scaled:  # canonical order, so the extraction is deterministic
        if (z - shift) in points:
            zs.append(z)
            if len(zs) == k + 1:
                break
    inv_root = root.inverse()
    xs = tuple(inv_root * z for z in zs)
    ys = tuple(z - shift for z in zs)

    witness = SimilarityWitness(
        ratio=ratio, root=root, shift=shift,
        xs=xs, ys=ys, zs=tuple(zs), edges=edges, report=report,
    )
    check = verify_similarity(witness)
    if not check:
        raise VerificationFailed(check.reasons)
    witness.verified = True
    return witness


def verify_det_similarity(w: DetSimilarityWitness) -> Verification:
    """Re-derive every claim of a determinant-similarity witness.

    All determinants are recomputed by cofactor expansion, a separate
    code path from the elimination determinant the finder's group
    enumeration used.  Never raises.
    """
    reasons = _tuple_field_issues(w)
    if reasons:
        return Verification(False, tuple(reasons))
    n = len(w.xs)
    d = w.xs[0].dim
    if not (len(w.ys) == len(w.zs) == n):
        reasons.append(f"tuple lengths differ: {len(w.xs)}/{len(w.ys)}/{len(w.zs)}")
        return Verification(False, tuple(reasons))
    if n < d + 1:
        reasons.append(f"need at least d+1 = {d + 1} points, got {n}")
        return Verification(False, tuple(reasons))
    if not isinstance(w.transform, SpecialLinear):
        reasons.append("transform is not a unimodular matrix element")
        return Verification(False, tuple(reasons))
    matrix = w.transform.matrix
    if matrix.field.q != w.ratio.field.q or matrix.n != d:
        reasons.append("transform does not match the point tuples' field and dimension")
        return Verification(False, tuple(reasons))

    if w.root ** d != w.ratio:
        reasons.append(f"stored root to the {d}-th power is not the ratio")
    if w.root.is_zero():
        reasons.append("root is zero")
    if w.transform.matrix.determinant_cofactor().value != 1:
        reasons.append("transform determinant is not 1")
    for i in range(n):
        if w.transform.apply(w.xs[i]) != w.zs[i]:
            reasons.append(f"z[{i + 1}] is not transform(x[{i + 1}])")
        if w.root * w.ys[i] != w.zs[i]:
            reasons.append(f"z[{i + 1}] is not root*y[{i + 1}]")
    if len({v.coords for v in w.xs}) != n:
        reasons.append("distinctness: repeated x point")
    if len({v.coords for v in w.ys}) != n:
        reasons.append("distinctness: repeated y point")

    def cof_det(vectors):
        return Matrix.from_columns(vectors).determinant_cofactor()

    for combo in itertools.combinations(range(n), d):
        dx = cof_det([w.xs[i] for i in combo])
        dy = cof_det([w.ys[i] for i in combo])
        dz = cof_det([w.zs[i] for i in combo])
        label = tuple(i + 1 for i in combo)
        if dx != w.ratio * dy:
            reasons.append(f"determinant relation violated at indices {label}")
        if dz != dx:
            reasons.append(f"unimodular step violated at indices {label}")
        if dz != w.ratio * dy:
            reasons.append(f"homogeneity step violated at indices {label}")
    return Verification(not reasons, tuple(reasons))


def find_det_similar(points: PointSet, ratio: FieldElement, k: int, *,
                     cap: int = ENUMERATION_CAP, jobs: int = 1) -> DetSimilarityWitness:
    """Find (k+1)-tuples whose d-subset determinants differ by the ratio.

    Requires k >= d (otherwise no d-subset exists beyond a single one),
    the origin excluded from the set (the unimodular action is only
    transitive away from it), and the ratio a nonzero d-th power.
    """
    d = points.dim
    if k < d:
        raise ValueError(f"determinant similarity needs k >= d = {d}, got k = {k}")
    if ratio.field.q != points.field.q:
        raise FieldMismatch("ratio and point set live in different fields")
    if ratio.is_zero():
        raise ZeroDilation("ratio 0 collapses every determinant relation")
    origin = Vector(points.field, [0] * d)
    if origin in points:
        raise OriginInSet("the set must avoid the origin for the unimodular action")
    if not ratio.is_mth_power(d):
        raise NotADthPower(f"{ratio.value} is not a {d}-th power in F_{ratio.field.q}")
    root = ratio.mth_root(d)

    group = special_linear_group(points.field, d, cap=cap)
    scaled = points.scaled(root)
    report = max_intersection(group, points, scaled, jobs=jobs)
    if report.best_count < k + 1:
        raise InsufficientIntersection(k + 1, report.best_count)

    g = report.best_g
    g_inv = g.inverse()
    zs = []
    for z in scaled:
        if g_inv.apply(z) in points:
            zs.append(z)
            if len(zs) == k + 1:
                break
    inv_root = root.inverse()
    xs = tuple(g_inv.apply(z) for z in zs)
    ys = tuple(inv_root * z for z in zs)

    witness = DetSimilarityWitness(
        ratio=ratio, root=root, transform=g,
        xs=xs, ys=ys, zs=tuple(zs), report=report,
    )
    check = verify_det_similarity(witness)
    if not check:
        raise VerificationFailed(check.reasons)
    witness.verified = True
    return witness


@dataclass
class SphereExperimentReport:
    """Orthogonal-action intersection run on a sphere, with both size
    thresholds reported: the exact one using the true sphere size and
    the coarser q^(d-1) approximation."""

    report: IntersectionReport
    k: int
    sphere_size: int
    coarse_space_size: int  # q^(d-1)
    transitive: bool

    @property
    def meets_exact_threshold(self) -> bool:
        return self.report.moving_size * self.report.fixed_size >= (self.k + 1) * self.sphere_size

    @property
    def meets_coarse_threshold(self) -> bool:
        return (
            self.report.moving_size * self.report.fixed_size
            >= (self.k + 1) * self.coarse_space_size
        )

    @property
    def reaches_target(self) -> bool:
        return self.report.best_count >= self.k + 1

    @property
    def guarantee_holds(self) -> bool:
        """The guarantee max >= k+1 applies only when the action is
        transitive and the exact threshold is met; it must then hold."""
        if self.transitive and self.meets_exact_threshold:
            return self.reaches_target
        return True

    def to_json(self) -> dict:
        out = self.report.to_json()
        out.update(
            k=self.k,
            sphere_size=self.sphere_size,
            coarse_space_size=self.coarse_space_size,
            meets_exact_threshold=self.meets_exact_threshold,
            meets_coarse_threshold=self.meets_coarse_threshold,
            reaches_target=self.reaches_target,
            guarantee_holds=self.guarantee_holds,
        )
        return out


def sphere_experiment(q_or_field, dim: int, radius: int, k: int,
                      e_set: PointSet | None = None, h_set: PointSet | None = None, *,
                      cap: int = ENUMERATION_CAP, jobs: int = 1) -> SphereExperimentReport:
    """Run the orthogonal-group intersection bound on a sphere.

    Defaults both sets to the full sphere.  Transitivity of the action
    on this particular sphere is checked and reported, never assumed
    (it fails, for instance, on spheres through the origin).
    """
    field = as_field(q_or_field)
    surface = sphere(field, dim, radius, cap=cap)
    if e_set is None:
        e_set = surface
    if h_set is None:
        h_set = surface
    for name, ps in (("moving", e_set), ("fixed", h_set)):
        for p in ps:
            if p not in surface:
                raise NotOnSphere(
                    f"{name} set point {p!r} is not on the radius-{radius % field.q} sphere"
                )
    group = orthogonal_group(field, dim, radius=radius, cap=cap)
    report = max_intersection(group, e_set, h_set, jobs=jobs)
    return SphereExperimentReport(
        report=report,
        k=k,
        sphere_size=len(surface),
        coarse_space_size=field.q ** (dim - 1),
        transitive=report.transitive,
    )
