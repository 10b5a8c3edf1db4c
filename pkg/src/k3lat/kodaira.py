"""Fiber types of genus-one fibrations and their divisors on a configuration.

The type table records, for each fiber type, the component multiplicities,
the weight (their sum) and the Euler number.  Detection walks the connected
induced subgraphs of a configuration and reports every one that carries an
isotropic effective divisor of fiber shape.  The dual graphs of some type
pairs coincide (two curves meeting twice is a 2-cycle or a tangent pair;
three curves meeting pairwise once is a triangle or three concurrent
lines), so detection returns merged tags for those.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import (
    CurveConfig,
    SpanKind,
    Violation,
    classify,
    connected_vertex_subsets,
)
from .roots import recognize_component

_FIXED_MULTIPLICITIES = {
    "II": (1,),
    "III": (1, 1),
    "IV": (1, 1, 1),
    # branch vertex first, then the arms outward, short arms first
    "IV*": (3, 2, 1, 2, 1, 2, 1),
    "III*": (4, 2, 3, 2, 1, 3, 2, 1),
    "II*": (6, 3, 4, 2, 5, 4, 3, 2, 1),
}

_FIXED_EULER = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}

_TAG_RE = re.compile(r"^I(\*)?(\d+)$")


@dataclass(frozen=True)
class KodairaType:
    """One fiber type: tag, canonical component multiplicities, additivity
    and Euler number.

    Canonical component order: ``In`` lists the cycle in order; ``I*n``
    lists two simple leaves, the chain of double components, then the other
    two simple leaves; the star-shaped types list the branch component
    first and then each arm from the branch outward, shortest arm first.
    """

    tag: str
    multiplicities: tuple[int, ...]
    is_additive: bool
    euler: int

    @property
    def component_count(self) -> int:
        return len(self.multiplicities)

    @property
    def weight(self) -> int:
        return sum(self.multiplicities)


def parse_tag(tag: str) -> tuple[str, int | None]:
    """Split a fiber tag into (series, index): ("I", 4), ("I*", 2) or
    (tag, None) for the fixed additive types."""
    if tag in _FIXED_MULTIPLICITIES:
        return tag, None
    m = _TAG_RE.match(tag)
    if m:
        return ("I*" if m.group(1) else "I"), int(m.group(2))
    raise ValueError(f"unknown fiber type tag {tag!r}")


def type_table(tag: str) -> KodairaType:
    """The filled type record for an exact (unmerged) fiber tag."""
    series, n = parse_tag(tag)
    if series == "I":
        if n == 0:
            # smooth fiber: one component, Euler number zero
            return KodairaType("I0", (1,), False, 0)
        return KodairaType(tag, (1,) * n, False, n)
    if series == "I*":
        if n == 0:
            mults = (2, 1, 1, 1, 1)
        else:
            mults = (1, 1) + (2,) * (n + 1) + (1, 1)
        return KodairaType(tag, mults, True, n + 6)
    return KodairaType(tag, _FIXED_MULTIPLICITIES[tag], True, _FIXED_EULER[tag])


@dataclass(frozen=True)
class KodairaDivisor:
    """An effective isotropic divisor of fiber shape found on a
    configuration: support vertices (canonical diagram order), the positive
    multiplicities, and the tag, possibly merged when the dual graph does
    not separate two types."""

    tag: str
    support: tuple[str, ...]
    multiplicities: tuple[int, ...]
    weight: int
    euler_range: tuple[int, int]
    nodal_or_cuspidal: bool = False

    @property
    def ambiguous(self) -> bool:
        return "_OR_" in self.tag or self.nodal_or_cuspidal

    def multiplicity_of(self, vid: str) -> int:
        return self.multiplicities[self.support.index(vid)]


def _divisor_from_component(comp) -> KodairaDivisor | None:
    """Map a recognized affine root component to its fiber divisor."""
    if comp.kind == "A1Tilde":
        return KodairaDivisor("I2_OR_III", comp.vertex_ids, (1, 1), 2, (2, 3))
    if comp.kind == "AffineA":
        k = comp.rank_param
        if k == 2:
            return KodairaDivisor(
                "I3_OR_IV", comp.vertex_ids, comp.kernel_vector, 3, (3, 4)
            )
        return KodairaDivisor(
            f"I{k + 1}", comp.vertex_ids, comp.kernel_vector, k + 1, (k + 1, k + 1)
        )
    if comp.kind == "AffineD":
        n = comp.rank_param - 4
        wt = sum(comp.kernel_vector)
        return KodairaDivisor(
            f"I*{n}", comp.vertex_ids, comp.kernel_vector, wt, (n + 6, n + 6)
        )
    if comp.kind == "AffineE":
        tag = {6: "IV*", 7: "III*", 8: "II*"}[comp.rank_param]
        e = _FIXED_EULER[tag]
        return KodairaDivisor(
            tag, comp.vertex_ids, comp.kernel_vector, sum(comp.kernel_vector), (e, e)
        )
    return None


def find_kodaira_divisors(
    cfg: CurveConfig, max_weight: int | None = None
) -> list[KodairaDivisor]:
    """All fiber-shaped divisors supported on induced subgraphs of ``cfg``.

    An isolated isotropic vertex counts as a one-component fiber (a nodal
    or cuspidal curve of arithmetic genus one) and is flagged as such.
    Results are capped at ``max_weight`` (default 30, the largest standard
    weight) and sorted by (weight, support ids), which fixes a
    deterministic order.
    """
    cap = 30 if max_weight is None else max_weight
    out: list[KodairaDivisor] = []
    for v in cfg.vertices:
        if v.square == 0 and cap >= 1:
            out.append(
                KodairaDivisor(
                    "I1", (v.id,), (1,), 1, (1, 2), nodal_or_cuspidal=True
                )
            )
    # multi-vertex divisors live on the (-2)-curves only
    roots_only = cfg.induced([v.id for v in cfg.vertices if v.square == -2])
    # weight >= support size for every type, so size-capped enumeration
    # cannot miss a divisor under the weight cap
    for subset in connected_vertex_subsets(
        roots_only, min(cap, roots_only.n), prune=_shape_prune(roots_only)
    ):
        ids = tuple(roots_only.vertices[i].id for i in subset)
        comp = recognize_component(roots_only, ids)
        if comp is None or not comp.is_affine:
            continue
        div = _divisor_from_component(comp)
        if div is not None and div.weight <= cap:
            out.append(div)
    out.sort(key=lambda dv: (dv.weight, tuple(sorted(dv.support))))
    return out


def _shape_prune(cfg: CurveConfig):
    """Branch cutter for the subgraph search: no affine diagram has a
    vertex of degree above 4, more than two branch vertices, a degree-4
    vertex outside the 5-vertex star, a multiple edge beyond the 2-vertex
    case, or a proper supergraph of a cycle.  All of these only grow
    under extension, so pruned branches lose nothing."""
    index_pairs = {}
    for a, b, m in cfg.edge_items():
        i, j = cfg.index_of(a), cfg.index_of(b)
        index_pairs[(min(i, j), max(i, j))] = m

    def prune(subset: tuple[int, ...]) -> bool:
        size = len(subset)
        deg = dict.fromkeys(subset, 0)
        edges = 0
        multi = False
        members = set(subset)
        for (i, j), m in index_pairs.items():
            if i in members and j in members:
                edges += 1
                deg[i] += 1
                deg[j] += 1
                if m >= 2:
                    multi = True
                if m >= 3:
                    return True
        if multi and size > 2:
            return True
        if edges > size:
            return True
        if edges == size and any(d != 2 for d in deg.values()):
            return True
        branch = [d for d in deg.values() if d >= 3]
        if len(branch) > 2:
            return True
        if any(d > 4 for d in branch):
            return True
        if any(d == 4 for d in branch) and size > 5:
            return True
        return False

    return prune


def divisor_degree(div: KodairaDivisor, cfg: CurveConfig) -> int:
    """Polarization degree of the divisor: sum of multiplicity times curve
    degree over the support."""
    return sum(
        m * cfg.vertex(vid).degree for vid, m in zip(div.support, div.multiplicities)
    )


def _pairing_with_divisor(cfg: CurveConfig, vid: str, div: KodairaDivisor) -> int:
    return sum(
        m * cfg.edge_mult(vid, sid)
        for sid, m in zip(div.support, div.multiplicities)
        if sid != vid
    )


def exclusion_6d(cfg: CurveConfig, d: int, h: int) -> list[Violation]:
    """Low-degree fiber divisors are impossible on a hyperbolic
    configuration.

    For ``h > 42 d^2`` a fiber-shaped divisor of degree at most ``6d``
    would force every curve of the configuration into its fibration,
    making the span parabolic.  On a hyperbolic input this reports every
    such divisor, and every curve meeting one positively.  Non-hyperbolic
    input yields no violations (the statement does not apply).
    """
    if d < 1:
        raise ValueError("d must be positive")
    if h <= 42 * d * d:
        raise ValueError(f"h = {h} must exceed 42 d^2 = {42 * d * d}")
    for v in cfg.vertices:
        if v.degree > d:
            raise ValueError(f"vertex {v.id!r} has degree {v.degree} > d = {d}")
    if classify(cfg).kind is not SpanKind.HYPERBOLIC:
        return []
    out: list[Violation] = []
    for div in find_kodaira_divisors(cfg, max_weight=6 * d):
        deg = divisor_degree(div, cfg)
        if deg > 6 * d:
            continue
        out.append(
            Violation(
                "kodaira-low-degree",
                div.support,
                f"divisor of type {div.tag} has degree {deg} <= 6d = {6 * d}; "
                "a hyperbolic configuration cannot support it",
            )
        )
        support = set(div.support)
        for v in cfg.vertices:
            if v.id in support:
                continue
            pairing = _pairing_with_divisor(cfg, v.id, div)
            if pairing > 0:
                out.append(
                    Violation(
                        "meets-low-degree-divisor",
                        (v.id,) + div.support,
                        f"curve {v.id} meets the degree-{deg} divisor of type "
                        f"{div.tag} with pairing {pairing}; a low-degree fiber "
                        "class pairs to zero with every curve",
                    )
                )
    return out
