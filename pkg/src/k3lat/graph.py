"""Configuration graphs of rational curves on a polarized surface.

A :class:`CurveConfig` is a loop-free multigraph: vertices carry a
self-intersection number and a polarization degree, edge multiplicities
record pairwise intersection numbers.  The induced integral symmetric form
is negative definite, negative semi-definite, hyperbolic (one positive
direction), or invalid (two or more positive directions, which the Hodge
index theorem forbids inside the Picard lattice of a surface).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import (
    Signature,
    SymMatrix,
    kernel_basis,
    positive_square_vector,
    signature,
)


class SpanKind(enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"
    INVALID = "Invalid"


@dataclass(frozen=True)
class CurveVertex:
    """A rational curve: label, self-intersection and polarization degree."""

    id: str
    square: int = -2
    degree: int = 1

    def __post_init__(self):
        if not self.id:
            raise ValueError("vertex id must be nonempty")
        if self.square % 2 != 0:
            raise ValueError(f"vertex {self.id!r}: square {self.square} must be even")
        if self.square < -2:
            raise ValueError(f"vertex {self.id!r}: square {self.square} must be >= -2")
        if self.degree < 1:
            raise ValueError(f"vertex {self.id!r}: degree {self.degree} must be >= 1")


class CurveConfig:
    """Ordered vertices plus edge multiplicities keyed by unordered pairs."""

    __slots__ = ("name", "vertices", "_index", "_edges")

    def __init__(
        self,
        vertices: Iterable[CurveVertex],
        edges: Mapping[tuple[str, str], int] | Iterable[tuple[str, str, int]] = (),
        name: str = "",
    ):
        self.name = name
        self.vertices = tuple(vertices)
        index: dict[str, int] = {}
        for pos, v in enumerate(self.vertices):
            if v.id in index:
                raise ValueError(f"duplicate vertex id {v.id!r}")
            index[v.id] = pos
        self._index = index
        norm: dict[tuple[int, int], int] = {}
        if isinstance(edges, Mapping):
            items = [(a, b, m) for (a, b), m in edges.items()]
        else:
            items = [(a, b, m) for a, b, m in edges]
        for a, b, mult in items:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise ValueError(f"edge references unknown vertex {missing!r}")
            if a == b:
                raise ValueError(f"loop at vertex {a!r} not allowed")
            if mult < 1:
                raise ValueError(f"edge ({a!r},{b!r}): multiplicity {mult} must be >= 1")
            key = (min(index[a], index[b]), max(index[a], index[b]))
            if key in norm:
                raise ValueError(f"duplicate edge ({a!r},{b!r})")
            norm[key] = mult
        self._edges = dict(sorted(norm.items()))

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    def ids(self) -> tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def index_of(self, vid: str) -> int:
        return self._index[vid]

    def vertex(self, vid: str) -> CurveVertex:
        return self.vertices[self._index[vid]]

    def edge_items(self) -> list[tuple[str, str, int]]:
        return [
            (self.vertices[i].id, self.vertices[j].id, m)
            for (i, j), m in self._edges.items()
        ]

    def edge_mult(self, a: str, b: str) -> int:
        i, j = self._index[a], self._index[b]
        if i == j:
            raise ValueError("no loops")
        return self._edges.get((min(i, j), max(i, j)), 0)

    def degrees(self) -> tuple[int, ...]:
        return tuple(v.degree for v in self.vertices)

    def neighbors(self, vid: str) -> list[str]:
        i = self._index[vid]
        out = []
        for (a, b) in self._edges:
            if a == i:
                out.append(self.vertices[b].id)
            elif b == i:
                out.append(self.vertices[a].id)
        return out

    def induced(self, ids: Sequence[str], name: str = "") -> "CurveConfig":
        """Induced sub-configuration on the given vertex ids (config order)."""
        keep = set(ids)
        verts = [v for v in self.vertices if v.id in keep]
        if len(verts) != len(keep):
            unknown = keep - {v.id for v in self.vertices}
            raise ValueError(f"unknown vertex ids {sorted(unknown)}")
        sub_ids = {v.id for v in verts}
        edges = [
            (a, b, m) for a, b, m in self.edge_items() if a in sub_ids and b in sub_ids
        ]
        return CurveConfig(verts, edges, name=name or self.name)

    def disjoint_union(self, other: "CurveConfig", name: str = "") -> "CurveConfig":
        overlap = set(self.ids()) & set(other.ids())
        if overlap:
            raise ValueError(f"vertex ids overlap: {sorted(overlap)}")
        return CurveConfig(
            self.vertices + other.vertices,
            self.edge_items() + other.edge_items(),
            name=name,
        )

    def connected_components(self) -> list[tuple[str, ...]]:
        """Vertex-id sets of connected components, in config order."""
        n = self.n
        adj: list[set[int]] = [set() for _ in range(n)]
        for (i, j) in self._edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(self.vertices[i].id for i in sorted(comp)))
        return comps

    def __repr__(self) -> str:
        return f"CurveConfig({self.name or 'unnamed'}, n={self.n})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CurveConfig)
            and self.vertices == other.vertices
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self._edges.items())))


def config_from_data(
    vertices: Iterable[tuple[str, int, int] | tuple[str, int]],
    edges: Iterable[tuple[str, str] | tuple[str, str, int]] = (),
    name: str = "",
) -> CurveConfig:
    """Convenience builder: vertices as (id, square[, degree]) tuples and
    edges as (a, b[, mult]) tuples."""
    vs = []
    for item in vertices:
        if len(item) == 2:
            vid, square = item
            vs.append(CurveVertex(vid, square))
        else:
            vid, square, degree = item
            vs.append(CurveVertex(vid, square, degree))
    es = []
    for item in edges:
        if len(item) == 2:
            es.append((item[0], item[1], 1))
        else:
            es.append(item)
    return CurveConfig(vs, es, name=name)


@dataclass(frozen=True)
class LatticeClass:
    """Definiteness class of the span of a configuration."""

    kind: SpanKind
    signature: Signature
    positive_witness: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class Violation:
    """A named constraint breach: rule id, the offending vertices and an
    exact measure of how badly the constraint fails."""

    rule: str
    vertices: tuple[str, ...]
    message: str
    slack: Fraction | None = None


def gram(cfg: CurveConfig) -> SymMatrix:
    """Gram matrix of the intersection form in vertex order."""
    n = cfg.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, v in enumerate(cfg.vertices):
        rows[i][i] = Fraction(v.square)
    for a, b, m in cfg.edge_items():
        i, j = cfg.index_of(a), cfg.index_of(b)
        rows[i][j] = Fraction(m)
        rows[j][i] = Fraction(m)
    return SymMatrix(rows)


def classify(cfg: CurveConfig) -> LatticeClass:
    """Elliptic / parabolic / hyperbolic trichotomy of the span.

    Two or more positive directions cannot occur inside the Picard lattice
    of a surface (Hodge index), so such input is reported as Invalid with an
    explicit positive-square witness vector.
    """
    m = gram(cfg)
    sig = signature(m)
    if sig.n_plus == 0:
        kind = SpanKind.ELLIPTIC if sig.n_zero == 0 else SpanKind.PARABOLIC
        return LatticeClass(kind, sig)
    witness = positive_square_vector(m)
    kind = SpanKind.HYPERBOLIC if sig.n_plus == 1 else SpanKind.INVALID
    return LatticeClass(kind, sig, positive_witness=witness)


def validate_pairings(cfg: CurveConfig, cls: LatticeClass) -> list[Violation]:
    """Check the edge-multiplicity constraints forced by the definiteness
    class: pairings lie in {0,1} for a definite span, in {0,1,2} for a
    semi-definite one, and isotropic vertices meet nothing."""
    out: list[Violation] = []
    if cls.kind is SpanKind.ELLIPTIC:
        for a, b, m in cfg.edge_items():
            if m > 1:
                out.append(
                    Violation(
                        "elliptic-pair",
                        (a, b),
                        f"C.C' = {m} but a negative definite span forces C.C' in {{0,1}}",
                        slack=Fraction(m - 1),
                    )
                )
    elif cls.kind is SpanKind.PARABOLIC:
        for a, b, m in cfg.edge_items():
            if m > 2:
                out.append(
                    Violation(
                        "parabolic-pair",
                        (a, b),
                        f"C.C' = {m} but a negative semi-definite span forces C.C' in {{0,1,2}}",
                        slack=Fraction(m - 2),
                    )
                )
        for v in cfg.vertices:
            if v.square != 0:
                continue
            for w in cfg.neighbors(v.id):
                m = cfg.edge_mult(v.id, w)
                out.append(
                    Violation(
                        "isotropic-orthogonal",
                        (v.id, w),
                        f"isotropic {v.id} meets {w} with D.C = {m}, "
                        "but an isotropic class pairs to zero with every curve",
                        slack=Fraction(m),
                    )
                )
    return out


@dataclass(frozen=True)
class QuotientProjection:
    """Linear projection from vertex space onto the nondegenerate quotient.

    ``basis_ids`` are the vertices whose classes form a basis; ``matrix``
    has one row per basis element and one column per original vertex.
    """

    basis_ids: tuple[str, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def apply(self, vec: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        return tuple(
            sum((row[j] * Fraction(vec[j]) for j in range(len(row))), Fraction(0))
            for row in self.matrix
        )


def quotient_by_kernel(cfg: CurveConfig) -> tuple[SymMatrix, QuotientProjection]:
    """Gram matrix of the quotient by the radical, plus the projection map.

    The quotient is always nondegenerate with signature
    ``(n_plus, n_minus, 0)`` of the input.  When the input is already
    nondegenerate, the projection is the identity.
    """
    m = gram(cfg)
    n = cfg.n
    kern = kernel_basis(m)
    if not kern:
        basis = tuple(v.id for v in cfg.vertices)
        ident = tuple(
            tuple(Fraction(i == j) for j in range(n)) for i in range(n)
        )
        return m, QuotientProjection(basis, ident)
    # row-reduce the kernel to find pivot columns; non-pivot vertices descend
    # to a basis of the quotient
    rows = [[Fraction(x) for x in k] for k in kern]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    basis_pos = [j for j in range(n) if j not in pivots]
    proj = [[Fraction(0)] * n for _ in range(len(basis_pos))]
    for bi, bp in enumerate(basis_pos):
        proj[bi][bp] = Fraction(1)
    for ri, pc in enumerate(pivots):
        # e_pc = -sum over free columns of rows[ri][free] * e_free (mod radical)
        for bi, bp in enumerate(basis_pos):
            proj[bi][pc] = -rows[ri][bp]
    quotient = m.submatrix(basis_pos)
    basis_ids = tuple(cfg.vertices[j].id for j in basis_pos)
    return quotient, QuotientProjection(basis_ids, tuple(tuple(r) for r in proj))


def connected_vertex_subsets(cfg: CurveConfig, max_size: int, prune=None):
    """Yield every connected vertex subset of size <= ``max_size`` exactly
    once, as increasing index tuples.

    Standard enumeration with a forbidden set: each subset is grown from
    its minimal vertex, and once a frontier vertex has been tried at some
    level it is banned from all sibling branches, which makes the
    generation path of every subset unique.  An optional ``prune``
    predicate on index tuples cuts whole branches: a pruned subset is
    neither yielded nor extended, so the predicate must be monotone (every
    supergraph of a pruned subset must also be prunable).
    """
    n = cfg.n
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b, _ in cfg.edge_items():
        i, j = cfg.index_of(a), cfg.index_of(b)
        adj[i].add(j)
        adj[j].add(i)

    def extend(sub: tuple[int, ...], forbidden: frozenset[int]):
        yield sub
        if len(sub) >= max_size:
            return
        in_sub = set(sub)
        frontier = sorted(
            {u for v in sub for u in adj[v]} - in_sub - set(forbidden)
        )
        blocked = set(forbidden)
        for v in frontier:
            grown = tuple(sorted(sub + (v,)))
            if prune is None or not prune(grown):
                yield from extend(grown, frozenset(blocked))
            blocked.add(v)

    for s in range(n):
        if prune is not None and prune((s,)):
            continue
        yield from extend((s,), frozenset(range(s)))


def hodge_filter(cfg: CurveConfig, d: int, h: int) -> list[Violation]:
    """Hodge-index constraints on squares and pairings at polarization
    degree ``2h`` with all curve degrees capped by ``d``.

    Checks, exactly over the rationals:

    * ``C^2 <= d_C^2 / (2h)`` for every vertex;
    * ``C.C' <= d_C d_C'`` for every pair;
    * ``C.C' <= d_C d_C' / h`` when both squares are nonnegative (for large
      ``h`` this forces isotropic curves to be pairwise orthogonal);
    * ``C.C' <= 2`` for pairs of (-2)-curves once ``h > 42 d^2``.
    """
    if d < 1 or h < 1:
        raise ValueError("d and h must be positive")
    for v in cfg.vertices:
        if v.degree > d:
            raise ValueError(f"vertex {v.id!r} has degree {v.degree} > d = {d}")
    out: list[Violation] = []
    for v in cfg.vertices:
        cap = Fraction(v.degree * v.degree, 2 * h)
        if Fraction(v.square) > cap:
            out.append(
                Violation(
                    "square-bound",
                    (v.id,),
                    f"C^2 = {v.square} exceeds (C.H)^2/H^2 = {cap}",
                    slack=Fraction(v.square) - cap,
                )
            )
    for a, b, m in cfg.edge_items():
        va, vb = cfg.vertex(a), cfg.vertex(b)
        bezout = va.degree * vb.degree
        if m > bezout:
            out.append(
                Violation(
                    "pair-bezout",
                    (a, b),
                    f"C.C' = {m} exceeds d_C d_C' = {bezout}",
                    slack=Fraction(m - bezout),
                )
            )
        if va.square >= 0 and vb.square >= 0:
            cap = Fraction(bezout, h)
            if Fraction(m) > cap:
                out.append(
                    Violation(
                        "isotropic-pair",
                        (a, b),
                        f"C.C' = {m} exceeds d_C d_C'/h = {cap}; at this degree "
                        "two isotropic curves must be fibres of one fibration, "
                        "hence orthogonal",
                        slack=Fraction(m) - cap,
                    )
                )
        if va.square == -2 and vb.square == -2 and h > 42 * d * d and m > 2:
            out.append(
                Violation(
                    "pair-cap",
                    (a, b),
                    f"C.C' = {m} > 2 between (-2)-curves is impossible for "
                    f"h > 42 d^2",
                    slack=Fraction(m - 2),
                )
            )
    return out
