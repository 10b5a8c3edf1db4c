"""Recognition of (-2)-curve components as root diagrams.

A connected component of a negative (semi-)definite configuration is either
a simply-laced root diagram A/D/E, its affine extension (negative
semi-definite with a one-dimensional radical carrying the standard positive
multiplicities), a pair of curves joined by a double edge (the degenerate
rank-one extension), or an isolated isotropic vertex.  Recognition goes by
degree sequence and cycle shape first and is then confirmed by the exact
signature, so a wrong match cannot slip through.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import kernel_basis, signature
from .graph import CurveConfig, CurveVertex, SpanKind, classify, gram


class NotNegativeSemidefiniteError(ValueError):
    """Raised when decomposition is asked of a span with a positive direction."""


@dataclass(frozen=True)
class RootComponent:
    """One recognized connected component.

    ``kind`` is one of ``"A"``, ``"D"``, ``"E"``, ``"AffineA"``,
    ``"AffineD"``, ``"AffineE"``, ``"A1Tilde"``, ``"IsotropicVertex"``;
    ``rank_param`` is the subscript (None for A1Tilde / IsotropicVertex).
    ``vertex_ids`` lists the vertices in canonical diagram order and
    ``kernel_vector`` (affine kinds only) gives the radical generator in
    that order.
    """

    kind: str
    rank_param: int | None
    vertex_ids: tuple[str, ...]
    kernel_vector: tuple[int, ...] | None = None

    @property
    def name(self) -> str:
        if self.kind == "A1Tilde":
            return "A~1"
        if self.kind == "IsotropicVertex":
            return "isotropic"
        base = self.kind[-1] if self.kind.startswith("Affine") else self.kind
        tilde = "~" if self.kind.startswith("Affine") or self.kind == "A1Tilde" else ""
        return f"{base}{tilde}{self.rank_param}"

    @property
    def is_affine(self) -> bool:
        return self.kind.startswith("Affine") or self.kind == "A1Tilde"

    @property
    def rank(self) -> int:
        """Rank of the component's span (size minus one for affine kinds)."""
        size = len(self.vertex_ids)
        if self.is_affine:
            return size - 1
        if self.kind == "IsotropicVertex":
            return 0
        return size


@dataclass(frozen=True)
class Decomposition:
    components: tuple[RootComponent, ...]
    unrecognized: tuple[tuple[str, ...], ...]

    def names(self) -> list[str]:
        return sorted(c.name for c in self.components)

    @property
    def total_rank(self) -> int:
        # unrecognized pieces count with full size, a safe upper bound
        return sum(c.rank for c in self.components) + sum(
            len(u) for u in self.unrecognized
        )


def _component_kernel(cfg: CurveConfig, order: tuple[str, ...]) -> tuple[int, ...] | None:
    """Radical generator of an affine component, aligned with ``order``;
    None unless the radical is one-dimensional with all entries >= 1."""
    sub = cfg.induced(order)
    basis = kernel_basis(gram(sub))
    if len(basis) != 1:
        return None
    vec = basis[0]
    aligned = tuple(vec[sub.index_of(vid)] for vid in order)
    if any(x < 1 for x in aligned):
        return None
    return aligned


def _path_order(cfg: CurveConfig, ids: list[str]) -> list[str] | None:
    """Order the vertices of a path graph end to end, smaller-id end first."""
    deg = {v: len([w for w in cfg.neighbors(v) if w in set(ids)]) for v in ids}
    if len(ids) == 1:
        return ids
    ends = sorted(v for v in ids if deg[v] == 1)
    if len(ends) != 2:
        return None
    idset = set(ids)
    order = [ends[0]]
    prev = None
    while len(order) < len(ids):
        cur = order[-1]
        nxt = [w for w in cfg.neighbors(cur) if w in idset and w != prev]
        if len(nxt) != 1:
            return None
        prev = cur
        order.append(nxt[0])
    return order if order[-1] == ends[1] else None


def _cycle_order(cfg: CurveConfig, ids: list[str]) -> list[str] | None:
    """Order the vertices of a cycle starting at the smallest id, walking
    toward its smaller neighbor."""
    idset = set(ids)
    start = min(ids)
    nbrs = sorted(w for w in cfg.neighbors(start) if w in idset)
    if len(nbrs) != 2:
        return None
    order = [start, nbrs[0]]
    while len(order) < len(ids):
        cur, prev = order[-1], order[-2]
        nxt = [w for w in cfg.neighbors(cur) if w in idset and w != prev]
        if len(nxt) != 1:
            return None
        order.append(nxt[0])
    last_nbrs = [w for w in cfg.neighbors(order[-1]) if w in idset]
    return order if start in last_nbrs and len(order) == len(ids) else None


def _arms_from(cfg: CurveConfig, center: str, idset: set[str]) -> list[list[str]] | None:
    """Arms of a tree read from a branch vertex outward; None if any arm
    branches again."""
    arms = []
    for first in sorted(w for w in cfg.neighbors(center) if w in idset):
        arm = [first]
        prev = center
        while True:
            cur = arm[-1]
            nxt = [w for w in cfg.neighbors(cur) if w in idset and w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None
            prev = cur
            arm.append(nxt[0])
        arms.append(arm)
    return arms


def recognize_component(cfg: CurveConfig, ids: tuple[str, ...]) -> RootComponent | None:
    """Recognize one connected induced subgraph as a root component.

    Returns None for anything that is not an ADE diagram, an affine
    extension, a double-edge pair, or an isolated isotropic vertex.  The
    shape match is confirmed against the exact signature before returning.
    """
    idlist = list(ids)
    idset = set(idlist)
    verts = [cfg.vertex(v) for v in idlist]

    if len(idlist) == 1:
        v = verts[0]
        if v.square == 0:
            return RootComponent("IsotropicVertex", None, (v.id,))
        if v.square == -2:
            return RootComponent("A", 1, (v.id,))
        return None

    if any(v.square != -2 for v in verts):
        return None

    edges = [
        (a, b, m)
        for a, b, m in cfg.edge_items()
        if a in idset and b in idset
    ]
    if any(m > 2 for _, _, m in edges):
        return None
    doubles = [(a, b) for a, b, m in edges if m == 2]
    if doubles:
        if len(idlist) == 2 and len(doubles) == 1:
            pair = tuple(sorted(idlist))
            comp = RootComponent("A1Tilde", 1, pair, kernel_vector=(1, 1))
            return _confirmed(cfg, comp, affine=True)
        return None

    n_edges = len(edges)
    n = len(idlist)
    if n_edges > n:
        return None

    if n_edges == n:
        order = _cycle_order(cfg, idlist)
        if order is None:
            return None
        comp = RootComponent(
            "AffineA", n - 1, tuple(order), kernel_vector=tuple([1] * n)
        )
        return _confirmed(cfg, comp, affine=True)

    # tree: classify by branch vertices and arm lengths
    deg = {v: len([w for w in cfg.neighbors(v) if w in idset]) for v in idlist}
    branch = sorted((v for v in idlist if deg[v] >= 3), key=deg.get, reverse=True)
    if not branch:
        order = _path_order(cfg, idlist)
        if order is None:
            return None
        return _confirmed(cfg, RootComponent("A", n, tuple(order)), affine=False)

    if len(branch) == 1:
        center = branch[0]
        if deg[center] == 4:
            arms = _arms_from(cfg, center, idset)
            if arms is None or [len(a) for a in arms] != [1, 1, 1, 1]:
                return None
            order = (center,) + tuple(a[0] for a in arms)
            comp = RootComponent("AffineD", 4, order, kernel_vector=(2, 1, 1, 1, 1))
            return _confirmed(cfg, comp, affine=True)
        if deg[center] != 3:
            return None
        arms = _arms_from(cfg, center, idset)
        if arms is None:
            return None
        arms.sort(key=lambda a: (len(a), a))
        lengths = tuple(len(a) for a in arms)
        if lengths[0] == 1 and lengths[1] == 1:
            # fork at one end only: finite D, read leaves first then the chain
            order = (arms[0][0], arms[1][0], center) + tuple(arms[2])
            return _confirmed(cfg, RootComponent("D", n, order), affine=False)
        table = {
            (1, 2, 2): ("E", 6, False),
            (1, 2, 3): ("E", 7, False),
            (1, 2, 4): ("E", 8, False),
            (2, 2, 2): ("AffineE", 6, True),
            (1, 3, 3): ("AffineE", 7, True),
            (1, 2, 5): ("AffineE", 8, True),
        }
        hit = table.get(lengths)
        if hit is None:
            return None
        kind, param, affine = hit
        order = (center,) + tuple(v for arm in arms for v in arm)
        kern = _component_kernel(cfg, order) if affine else None
        if affine and kern is None:
            return None
        comp = RootComponent(kind, param, order, kernel_vector=kern)
        return _confirmed(cfg, comp, affine=affine)

    if len(branch) == 2:
        # forks at both ends of a chain: affine D of rank n - 1
        f1, f2 = sorted(branch)
        if deg[f1] != 3 or deg[f2] != 3:
            return None
        leaves1 = sorted(w for w in cfg.neighbors(f1) if w in idset and deg[w] == 1)
        leaves2 = sorted(w for w in cfg.neighbors(f2) if w in idset and deg[w] == 1)
        if len(leaves1) != 2 or len(leaves2) != 2:
            return None
        chain = [f1]
        prev = None
        while chain[-1] != f2 and len(chain) <= n:
            cur = chain[-1]
            nxt = [
                w
                for w in cfg.neighbors(cur)
                if w in idset and w != prev and deg[w] >= 2
            ]
            if len(nxt) != 1:
                return None
            prev = cur
            chain.append(nxt[0])
        if chain[-1] != f2 or len(chain) + 4 != n:
            return None
        order = tuple(leaves1) + tuple(chain) + tuple(leaves2)
        kern = _component_kernel(cfg, order)
        if kern is None:
            return None
        comp = RootComponent("AffineD", n - 1, order, kernel_vector=kern)
        return _confirmed(cfg, comp, affine=True)

    return None


def _confirmed(cfg: CurveConfig, comp: RootComponent, affine: bool) -> RootComponent | None:
    """Cross-check the shape match against the exact signature."""
    sub = cfg.induced(comp.vertex_ids)
    sig = signature(gram(sub))
    size = len(comp.vertex_ids)
    want = (0, size - 1, 1) if affine else (0, size, 0)
    if sig.as_tuple() != want:
        return None
    return comp


def decompose(cfg: CurveConfig) -> Decomposition:
    """Split a negative (semi-)definite configuration into recognized root
    components.

    Raises :class:`NotNegativeSemidefiniteError` when the span has a
    positive direction.  Components that match no diagram (possible only
    for adversarial input) are reported in ``unrecognized`` rather than
    raised, so checkers can keep going.
    """
    cls = classify(cfg)
    if cls.kind in (SpanKind.HYPERBOLIC, SpanKind.INVALID):
        raise NotNegativeSemidefiniteError(
            f"span is {cls.kind.value}; decomposition needs a negative "
            "semi-definite configuration"
        )
    components = []
    unrecognized = []
    for comp_ids in cfg.connected_components():
        rec = recognize_component(cfg, comp_ids)
        if rec is None:
            unrecognized.append(comp_ids)
        else:
            components.append(rec)
    return Decomposition(tuple(components), tuple(unrecognized))


def max_rank_check(dec: Decomposition, rho_max: int) -> bool:
    """Whether the definite span fits in a hyperbolic lattice of rank
    ``rho_max``: total rank must not exceed ``rho_max - 1``."""
    return dec.total_rank <= rho_max - 1


# -- standard diagram builders ------------------------------------------


def _chain_edges(ids: list[str]) -> list[tuple[str, str, int]]:
    return [(ids[i], ids[i + 1], 1) for i in range(len(ids) - 1)]


def standard_diagram(kind: str, n: int | None = None, prefix: str = "v") -> CurveConfig:
    """Build the standard diagram of the given kind with (-2)-vertices.

    Kinds: ``A``, ``D`` (n >= 4), ``E`` (n in 6..8), ``AffineA`` (n >= 2),
    ``AffineD`` (n >= 4), ``AffineE`` (n in 6..8), ``A1Tilde``,
    ``IsotropicVertex``.  Vertex ids are ``{prefix}0``, ``{prefix}1``, ...
    in the canonical order used by the recognizer.
    """
    mk = lambda k: f"{prefix}{k}"
    if kind == "IsotropicVertex":
        return CurveConfig([CurveVertex(mk(0), 0)], [], name="isotropic")
    if kind == "A1Tilde":
        vs = [CurveVertex(mk(0)), CurveVertex(mk(1))]
        return CurveConfig(vs, [(mk(0), mk(1), 2)], name="A~1")
    if n is None:
        raise ValueError(f"kind {kind!r} needs a rank parameter")
    if kind == "A":
        if n < 1:
            raise ValueError("A(n) needs n >= 1")
        ids = [mk(i) for i in range(n)]
        return CurveConfig([CurveVertex(v) for v in ids], _chain_edges(ids), name=f"A{n}")
    if kind == "AffineA":
        if n < 2:
            raise ValueError("AffineA(n) needs n >= 2 (use A1Tilde for n = 1)")
        ids = [mk(i) for i in range(n + 1)]
        edges = _chain_edges(ids) + [(ids[-1], ids[0], 1)]
        return CurveConfig([CurveVertex(v) for v in ids], edges, name=f"A~{n}")
    if kind == "D":
        if n < 4:
            raise ValueError("D(n) needs n >= 4")
        # two leaves on a fork, then the chain
        ids = [mk(i) for i in range(n)]
        edges = [(ids[0], ids[2], 1), (ids[1], ids[2], 1)] + _chain_edges(ids[2:])
        return CurveConfig([CurveVertex(v) for v in ids], edges, name=f"D{n}")
    if kind == "AffineD":
        if n < 4:
            raise ValueError("AffineD(n) needs n >= 4")
        ids = [mk(i) for i in range(n + 1)]
        if n == 4:
            edges = [(ids[0], ids[k], 1) for k in range(1, 5)]
            return CurveConfig([CurveVertex(v) for v in ids], edges, name="D~4")
        # leaves 0,1 fork 2, chain, fork n-2, leaves n-1,n
        chain = ids[2 : n - 1]
        edges = (
            [(ids[0], ids[2], 1), (ids[1], ids[2], 1)]
            + _chain_edges(chain)
            + [(ids[n - 2], ids[n - 1], 1), (ids[n - 2], ids[n], 1)]
        )
        return CurveConfig([CurveVertex(v) for v in ids], edges, name=f"D~{n}")
    if kind in ("E", "AffineE"):
        arms = {
            ("E", 6): (1, 2, 2),
            ("E", 7): (1, 2, 3),
            ("E", 8): (1, 2, 4),
            ("AffineE", 6): (2, 2, 2),
            ("AffineE", 7): (1, 3, 3),
            ("AffineE", 8): (1, 2, 5),
        }.get((kind, n))
        if arms is None:
            raise ValueError(f"{kind}({n}) is not a diagram")
        ids = [mk(0)]
        edges = []
        k = 1
        for arm_len in arms:
            prev = ids[0]
            for _ in range(arm_len):
                ids.append(mk(k))
                edges.append((prev, mk(k), 1))
                prev = mk(k)
                k += 1
        tilde = "~" if kind == "AffineE" else ""
        return CurveConfig([CurveVertex(v) for v in ids], edges, name=f"E{tilde}{n}")
    raise ValueError(f"unknown diagram kind {kind!r}")
