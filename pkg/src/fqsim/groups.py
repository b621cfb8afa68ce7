"""Explicit finite groups acting on explicit finite spaces.

Three families are enumerated element by element: translations of
F_q^d, orthogonal matrices (preserving the sum-of-squares form), and
unimodular matrices (determinant 1).  Element lists are kept in a total
canonical order — variant first, then lexicographic on the serialized
entries — so that every argmax and every listing is reproducible.

The unimodular group acts on the punctured space F_q^d minus the
origin: linear maps fix the origin, so the action on the full space is
never transitive, while on the punctured space it is (for d >= 2).
Orthogonal groups act on the full space or on a sphere; whether a
sphere action is transitive is checked per instance, never assumed.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import EnumerationCapExceeded, NotInSpace
from .field import PrimeField, as_field
from .geometry import (
    ENUMERATION_CAP,
    Matrix,
    PointSet,
    Vector,
    _det_rows,
    all_vectors,
    sphere,
)
from .prng import SplitMix64


class Space:
    """An enumerated set of points of F_q^d on which a group acts."""

    __slots__ = ("field", "dim", "kind", "radius", "elements", "_index")

    def __init__(self, field: PrimeField, dim: int, kind: str,
                 elements: Sequence[Vector], radius: int | None = None):
        self.field = field
        self.dim = dim
        self.kind = kind
        self.radius = radius
        self.elements = tuple(elements)
        self._index = {v.coords: i for i, v in enumerate(self.elements)}

    @classmethod
    def full(cls, q_or_field, dim: int, cap: int = ENUMERATION_CAP) -> "Space":
        field = as_field(q_or_field)
        if field.q ** dim > cap:
            raise EnumerationCapExceeded(
                f"full space needs q^d <= {cap}, got {field.q ** dim}"
            )
        return cls(field, dim, "full", list(all_vectors(field, dim)))

    @classmethod
    def punctured(cls, q_or_field, dim: int, cap: int = ENUMERATION_CAP) -> "Space":
        field = as_field(q_or_field)
        if field.q ** dim > cap:
            raise EnumerationCapExceeded(
                f"punctured space needs q^d <= {cap}, got {field.q ** dim}"
            )
        pts = [v for v in all_vectors(field, dim) if not v.is_zero()]
        return cls(field, dim, "punctured", pts)

    @classmethod
    def sphere(cls, q_or_field, dim: int, radius: int,
               cap: int = ENUMERATION_CAP) -> "Space":
        field = as_field(q_or_field)
        radius = radius % field.q
        pts = sphere(field, dim, radius, cap=cap).points
        return cls(field, dim, "sphere", pts, radius=radius)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, v: Vector) -> int:
        try:
            return self._index[v.coords]
        except KeyError:
            raise NotInSpace(f"{v!r} is not a point of this {self.kind} space") from None

    def __contains__(self, v) -> bool:
        return isinstance(v, Vector) and v.field.q == self.field.q and v.coords in self._index

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.elements)

    def contains_set(self, points: PointSet) -> bool:
        return all(p in self for p in points)

    def as_pointset(self) -> PointSet:
        return PointSet(self.field, self.dim, self.elements)

    def describe(self) -> dict:
        out = {"kind": self.kind, "q": self.field.q, "d": self.dim, "size": self.size}
        if self.radius is not None:
            out["radius"] = self.radius
        return out

    def __repr__(self) -> str:
        r = f", radius={self.radius}" if self.radius is not None else ""
        return f"Space({self.kind}, q={self.field.q}, d={self.dim}{r}, size={self.size})"


class GroupElement:
    """A transformation of F_q^d: a translation or an invertible linear map."""

    __slots__ = ()
    tag = -1

    def apply(self, v: Vector) -> Vector:
        raise NotImplementedError

    def compose(self, other: "GroupElement") -> "GroupElement":
        """The map sending x to self(other(x))."""
        raise NotImplementedError

    def inverse(self) -> "GroupElement":
        raise NotImplementedError

    def is_identity(self) -> bool:
        raise NotImplementedError

    def sort_key(self) -> tuple:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def _like(self, other):
        if type(other) is not type(self):
            raise TypeError(
                f"cannot compose {type(self).__name__} with {type(other).__name__}"
            )
        return other

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and other.sort_key() == self.sort_key()

    def __lt__(self, other: "GroupElement") -> bool:
        return self.sort_key() < other.sort_key()

    def __hash__(self) -> int:
        return hash(self.sort_key())


class Translation(GroupElement):
    """x maps to x + a."""

    __slots__ = ("vector",)
    tag = 0

    def __init__(self, vector: Vector):
        self.vector = vector

    def apply(self, v: Vector) -> Vector:
        return v + self.vector

    def compose(self, other: "Translation") -> "Translation":
        other = self._like(other)
        return Translation(self.vector + other.vector)

    def inverse(self) -> "Translation":
        return Translation(-self.vector)

    def is_identity(self) -> bool:
        return self.vector.is_zero()

    def sort_key(self) -> tuple:
        return (self.tag, self.vector.field.q, self.vector.coords)

    def to_json(self) -> dict:
        return {"type": "translation", "by": list(self.vector.coords)}

    def __repr__(self) -> str:
        return f"Translation({list(self.vector.coords)} mod {self.vector.field.q})"


class _LinearMap(GroupElement):
    """Common base for matrix actions: x maps to Mx."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        self._validate(matrix)
        self.matrix = matrix

    def _validate(self, matrix: Matrix) -> None:
        raise NotImplementedError

    def apply(self, v: Vector) -> Vector:
        return self.matrix.apply(v)

    def compose(self, other):
        other = self._like(other)
        return type(self)(self.matrix @ other.matrix)

    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(self.matrix.field, self.matrix.n)

    def sort_key(self) -> tuple:
        m = self.matrix
        return (self.tag, m.field.q, tuple(e for row in m.rows for e in row))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({[list(r) for r in self.matrix.rows]} mod {self.matrix.field.q})"


class Orthogonal(_LinearMap):
    """Linear map whose matrix has orthonormal columns (norm-preserving)."""

    __slots__ = ()
    tag = 1

    def _validate(self, matrix: Matrix) -> None:
        if not matrix.is_orthogonal():
            raise ValueError("matrix is not orthogonal: transpose times matrix != identity")

    def inverse(self) -> "Orthogonal":
        return Orthogonal(self.matrix.transpose())

    def to_json(self) -> dict:
        return {"type": "orthogonal", "matrix": [list(r) for r in self.matrix.rows]}


class SpecialLinear(_LinearMap):
    """Linear map of determinant 1."""

    __slots__ = ()
    tag = 2

    def _validate(self, matrix: Matrix) -> None:
        if not matrix.is_special_linear():
            raise ValueError("matrix determinant is not 1")

    def inverse(self) -> "SpecialLinear":
        return SpecialLinear(self.matrix.inverse())

    def to_json(self) -> dict:
        return {"type": "special-linear", "matrix": [list(r) for r in self.matrix.rows]}


class FiniteGroup:
    """An explicit element list together with the space it acts on.

    Elements are deduplicated and held in canonical order, so that
    `elements[0]` is the canonically smallest element and scans over the
    group are reproducible regardless of how the list was produced.
    """

    def __init__(self, elements: Iterable[GroupElement], space: Space, kind: str):
        unique = {e.sort_key(): e for e in elements}
        self.elements = tuple(unique[k] for k in sorted(unique))
        self.space = space
        self.kind = kind
        self._element_set = frozenset(self.elements)
        self._perms: list[tuple[int, ...]] | None = None
        self._transitive: bool | None = None
        ident = [e for e in self.elements if e.is_identity()]
        if len(ident) != 1:
            raise ValueError("group must contain exactly one identity element")
        self.identity = ident[0]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._element_set

    def perms(self) -> list[tuple[int, ...]]:
        """Index permutations of the space, one per element, in element order."""
        if self._perms is None:
            idx = self.space.index
            pts = self.space.elements
            self._perms = [tuple(idx(g.apply(x)) for x in pts) for g in self.elements]
        return self._perms

    def orbit(self, x: Vector) -> PointSet:
        """All images of x under the group."""
        self.space.index(x)
        return PointSet(self.space.field, self.space.dim, [g.apply(x) for g in self.elements])

    def stabilizer(self, x: Vector) -> list[GroupElement]:
        """Elements fixing x, by full scan, in canonical order."""
        self.space.index(x)
        return [g for g in self.elements if g.apply(x) == x]

    def transporter(self, x: Vector, y: Vector) -> list[GroupElement]:
        """Elements mapping x to y, by full scan, in canonical order."""
        self.space.index(x)
        self.space.index(y)
        return [g for g in self.elements if g.apply(x) == y]

    def is_transitive(self) -> bool:
        """Single-orbit test: the orbit of the smallest point is the whole space.

        An empty space counts as (vacuously) transitive.
        """
        if self._transitive is None:
            if self.space.size == 0:
                self._transitive = True
            else:
                self._transitive = len(self.orbit(self.space.elements[0])) == self.space.size
        return self._transitive

    def spot_check_axioms(self, trials: int = 100, seed: int = 0) -> bool:
        """Random composites land in the element list; all inverses do too."""
        rng = SplitMix64(seed)
        n = self.order
        for _ in range(trials):
            g = self.elements[rng.next_below(n)]
            h = self.elements[rng.next_below(n)]
            if g.compose(h) not in self._element_set:
                return False
        return all(g.inverse() in self._element_set for g in self.elements)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "space": self.space.describe(),
            "transitive": self.is_transitive(),
        }

    def __repr__(self) -> str:
        return f"FiniteGroup({self.kind}, order={self.order}, on {self.space!r})"


def translations(q_or_field, dim: int, cap: int = ENUMERATION_CAP) -> FiniteGroup:
    """The q^d translations of F_q^d, acting on the full space."""
    field = as_field(q_or_field)
    space = Space.full(field, dim, cap=cap)
    return FiniteGroup([Translation(v) for v in space.elements], space, "translations")


def special_linear_group(q_or_field, dim: int, cap: int = ENUMERATION_CAP) -> FiniteGroup:
    """All d x d matrices of determinant 1, acting on the punctured space.

    Enumerated by scanning all q^(d^2) candidate matrices under the cap.
    """
    field = as_field(q_or_field)
    q = field.q
    if q ** (dim * dim) > cap:
        raise EnumerationCapExceeded(
            f"matrix scan needs q^(d^2) <= {cap}, got {q ** (dim * dim)}"
        )
    els = []
    for flat in itertools.product(range(q), repeat=dim * dim):
        rows = tuple(flat[i * dim:(i + 1) * dim] for i in range(dim))
        # raw-row determinant: skip building Matrix objects for rejects
        if _det_rows(rows, q) == 1:
            els.append(SpecialLinear(Matrix(field, rows)))
    return FiniteGroup(els, Space.punctured(field, dim), "special-linear")


def orthogonal_group(q_or_field, dim: int, radius: int | None = None,
                     cap: int = ENUMERATION_CAP) -> FiniteGroup:
    """All matrices with orthonormal columns, acting on the full space
    or, when a radius is given, on that sphere.

    Enumerated by backtracking over tuples of mutually orthogonal
    norm-one columns, which prunes far earlier than a raw matrix scan
    but produces the same group.
    """
    field = as_field(q_or_field)
    q = field.q
    if q ** (dim * dim) > cap:
        raise EnumerationCapExceeded(
            f"matrix enumeration budget is q^(d^2) <= {cap}, got {q ** (dim * dim)}"
        )
    unit = [v.coords for v in sphere(field, dim, 1, cap=cap).points]

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b)) % q

    matrices = []

    def extend(cols):
        if len(cols) == dim:
            matrices.append(tuple(tuple(c[i] for c in cols) for i in range(dim)))
            return
        for c in unit:
            if all(dot(c, b) == 0 for b in cols):
                extend(cols + [c])

    extend([])
    if radius is None:
        space = Space.full(field, dim, cap=cap)
    else:
        space = Space.sphere(field, dim, radius, cap=cap)
    els = [Orthogonal(Matrix(field, rows)) for rows in matrices]
    return FiniteGroup(els, space, "orthogonal")
