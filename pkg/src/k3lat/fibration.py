"""Euler-number budgets and curve-count bounds for genus-one fibered
surfaces.

The Euler number 24 of the surface is distributed over the singular fibers
(plus wild ramification in small characteristics); for a quasi-elliptic
fibration the generic cuspidal fiber already contributes, leaving a budget
of 20.  Together with the rank bookkeeping of the trivial lattice this
pins down which uniform fiber configurations can occur and caps the number
of rational fiber components.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .kodaira import KodairaType, type_table


class UnsupportedContextError(ValueError):
    """The hypothesis flags contradict each other."""


@dataclass(frozen=True)
class FiberInstance:
    """A singular fiber with its wild-ramification contribution."""

    type: KodairaType
    delta: int = 0

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError("wild ramification contribution must be >= 0")
        if self.delta > 0 and not self.type.is_additive:
            raise ValueError(
                f"fiber {self.type.tag}: wild ramification occurs only at "
                "additive fibers"
            )

    @property
    def euler_contribution(self) -> int:
        return self.type.euler + self.delta


def fiber(tag: str, delta: int = 0) -> FiberInstance:
    return FiberInstance(type_table(tag), delta)


def _tag_sort_key(inst: FiberInstance) -> tuple:
    return (inst.type.weight, inst.type.tag, inst.delta)


@dataclass(frozen=True)
class FibrationProfile:
    """Multiset of singular fibers of one genus-one fibration."""

    fibers: tuple[FiberInstance, ...]
    quasi_elliptic: bool = False
    characteristic: int | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "fibers", tuple(sorted(self.fibers, key=_tag_sort_key))
        )
        if self.quasi_elliptic and self.characteristic not in (2, 3):
            raise ValueError(
                "quasi-elliptic fibrations exist only in characteristics 2 and 3"
            )
        if any(f.delta > 0 for f in self.fibers) and self.characteristic not in (2, 3):
            raise ValueError(
                "wild ramification occurs only in characteristics 2 and 3"
            )
        if self.quasi_elliptic and any(f.delta > 0 for f in self.fibers):
            raise ValueError(
                "the quasi-elliptic Euler budget carries no wild term"
            )

    def tags(self) -> tuple[str, ...]:
        return tuple(f.type.tag for f in self.fibers)

    def describe(self) -> str:
        counts = Counter(self.tags())
        parts = [
            (f"{k}x{tag}" if k > 1 else tag)
            for tag, k in sorted(counts.items(), key=lambda kv: (type_table(kv[0]).weight, kv[0]))
        ]
        return " + ".join(parts) if parts else "(no singular fibers)"


def profile(
    entries: list[tuple[str, int]] | list[tuple[str, int, int]],
    quasi_elliptic: bool = False,
    characteristic: int | None = None,
) -> FibrationProfile:
    """Build a profile from (tag, count[, delta]) triples."""
    fibers = []
    for item in entries:
        tag, count = item[0], item[1]
        delta = item[2] if len(item) > 2 else 0
        fibers.extend(fiber(tag, delta) for _ in range(count))
    return FibrationProfile(tuple(fibers), quasi_elliptic, characteristic)


@dataclass(frozen=True)
class BudgetReport:
    ok: bool
    mode: str
    total: int
    expected: int
    component_total: int
    messages: tuple[str, ...] = ()


def budget_check(prof: FibrationProfile) -> BudgetReport:
    """Verify the Euler-number identity for the profile.

    Elliptic mode: the fiber Euler numbers plus wild terms must sum to 24.
    Quasi-elliptic mode: every fiber is additive and
    ``4 + sum (e - 2)`` over fibers with ``e > 2`` must equal 24.
    """
    messages: list[str] = []
    component_total = sum(f.type.component_count for f in prof.fibers)
    if prof.quasi_elliptic:
        mode = "quasi-elliptic"
        bad = [f.type.tag for f in prof.fibers if not f.type.is_additive]
        if bad:
            messages.append(
                f"multiplicative fibers {sorted(set(bad))} cannot occur on a "
                "quasi-elliptic fibration"
            )
        if prof.characteristic == 3:
            allowed = {"IV", "IV*", "II*"}
            bad3 = sorted(
                {
                    f.type.tag
                    for f in prof.fibers
                    if f.type.component_count >= 2 and f.type.tag not in allowed
                }
            )
            if bad3:
                messages.append(
                    f"reducible fibers {bad3} cannot occur quasi-elliptically "
                    "in characteristic 3 (only IV, IV*, II*)"
                )
        total = 4 + sum(
            f.type.euler - 2 for f in prof.fibers if f.type.euler > 2
        )
    else:
        mode = "elliptic"
        total = sum(f.euler_contribution for f in prof.fibers)
    ok = total == 24 and not messages
    if total != 24:
        messages.append(f"Euler budget off by {total - 24}")
    return BudgetReport(ok, mode, total, 24, component_total, tuple(messages))


def rational_component_bound(
    prof: FibrationProfile, all_degrees_within_cap: bool = True
) -> int:
    """Cap on the number of rational curves among fiber components.

    Elliptic: the component total itself (at most 24 when the budget
    holds).  Quasi-elliptic: 20 plus the number of reducible fibers, since
    the cuspidal generic-fiber degenerations are excluded from the
    restricted count.  The flag records whether every component degree is
    within the degree cap (the cap is an upper bound either way).
    """
    if prof.quasi_elliptic:
        reducible = sum(1 for f in prof.fibers if f.type.component_count >= 2)
        return 20 + reducible
    return sum(f.type.component_count for f in prof.fibers)


def shioda_tate_rank(prof: FibrationProfile, mw_rank: int = 0) -> int:
    """Rank of the span of fiber components, a general fiber, and sections:
    ``2 + sum (m_t - 1) + mw_rank``."""
    if mw_rank < 0:
        raise ValueError("Mordell-Weil rank must be >= 0")
    return 2 + sum(f.type.component_count - 1 for f in prof.fibers) + mw_rank


def enumerate_uniform(rho_max: int) -> list[FibrationProfile]:
    """All uniform multiplicative configurations ``k x In`` with
    ``n k = 24``, ``n >= 2``, whose trivial lattice fits a Picard lattice
    of rank ``rho_max``."""
    if rho_max < 2:
        raise ValueError("rho_max must be >= 2")
    out = []
    for n in (2, 3, 4, 6, 8, 12, 24):
        k = 24 // n
        prof = profile([(f"I{n}", k)])
        if shioda_tate_rank(prof, 0) <= rho_max:
            out.append(prof)
    return out


@dataclass(frozen=True)
class SurfaceContext:
    """Hypothesis flags selecting the applicable curve-count bound."""

    characteristic: int = 0
    unirational: bool | None = None
    artin_invariant: int | None = None
    rho_max: int = 22

    def __post_init__(self):
        if self.characteristic < 0:
            raise ValueError("characteristic must be 0 or a prime")
        if self.characteristic == 0:
            object.__setattr__(self, "rho_max", 20)


@dataclass(frozen=True)
class SdBound:
    """A curve-count bound with the degree threshold it needs.

    The bound applies to surfaces of polarization degree ``2h`` with
    ``h > h_threshold * d^2`` and caps the number of rational curves of
    degree at most ``d``; ``count`` says whether cuspidal genus-one
    degenerations are excluded (restricted count) or not.
    """

    bound: int
    count: str
    h_threshold: Fraction
    hypotheses: tuple[str, ...] = ()
    conjectural: str | None = None


def sd_bound(ctx: SurfaceContext, restricted: bool = False) -> SdBound:
    """The applicable curve-count bound for the given surface hypotheses.

    Outside characteristics 2 and 3 the count is 24.  In characteristic 2
    (resp. 3) the unrestricted count needs non-unirationality (resp.
    non-unirationality or large Artin invariant); otherwise the restricted
    count is bounded by 40 (resp. 30) at a slightly higher degree
    threshold.
    """
    p = ctx.characteristic
    if p == 0 and ctx.unirational:
        raise UnsupportedContextError(
            "a characteristic-zero surface of this kind is never unirational"
        )
    if p not in (2, 3):
        hyp = [f"characteristic {p}"]
        if restricted:
            hyp.append(
                "restricted count equals the full count outside "
                "characteristics 2 and 3"
            )
        return SdBound(24, "S_d", Fraction(42), tuple(hyp))
    if p == 2:
        if not restricted and ctx.unirational is False:
            return SdBound(
                24, "S_d", Fraction(42), ("characteristic 2", "not unirational")
            )
        hyp = ["characteristic 2"]
        if ctx.unirational is True and not restricted:
            hyp.append(
                "unirational: no unrestricted bound applies, returning the "
                "restricted-count bound"
            )
        return SdBound(
            40,
            "S_d'",
            Fraction(185, 4),
            tuple(hyp),
            conjectural=(
                "for degree-1 curves the restricted bound is expected, but "
                "not proven, to drop to 25"
            ),
        )
    # p == 3
    sigma = ctx.artin_invariant
    if not restricted and (
        ctx.unirational is False or (sigma is not None and sigma > 6)
    ):
        hyp = ["characteristic 3"]
        hyp.append(
            "not unirational"
            if ctx.unirational is False
            else f"Artin invariant {sigma} > 6"
        )
        return SdBound(24, "S_d", Fraction(42), tuple(hyp))
    return SdBound(30, "S_d'", Fraction(43), ("characteristic 3",))


@dataclass(frozen=True)
class ExtremalEntry:
    """A fibration with finite Mordell-Weil group and maximal trivial
    lattice, imported from the classification literature as trusted data."""

    name: str
    characteristic: int
    quasi_elliptic: bool
    fiber_tags: tuple[str, ...]
    lattice_configuration: str
    mordell_weil: str
    note: str = ""


EXTREMAL_TABLE: tuple[ExtremalEntry, ...] = (
    ExtremalEntry(
        "extremal-I7-I7-IIstar",
        7,
        False,
        ("I7", "I7", "II*"),
        "I7 + I7 + II*",
        "trivial",
        "the only extremal elliptic configuration with three singular "
        "fibers avoiding low fiber types; 23 components plus a section",
    ),
    ExtremalEntry(
        "qe3-3xE6tilde-A2-two-sections",
        3,
        True,
        ("IV", "IV*", "IV*", "IV*"),
        "3 x E~6 + A2",
        "Z/3Z",
        "three full additive fibers, a partial IV fiber contributing an A2, "
        "and two of the three sections",
    ),
    ExtremalEntry(
        "qe2-3xD6tilde-2xA1",
        2,
        True,
        ("I*2", "I*2", "I*2", "III", "III"),
        "3 x D~6 + 2 x A1",
        "contains Z/2Z",
        "three full fibers plus one component from each of two III fibers",
    ),
    ExtremalEntry(
        "qe2-2xE7tilde-D6tilde",
        2,
        True,
        ("I*2", "III*", "III*"),
        "2 x E~7 + D~6",
        "Z/2Z",
        "exactly three singular fibers, all fully supported",
    ),
    ExtremalEntry(
        "ell2-A11tilde-E6tilde-A3",
        2,
        False,
        ("I4", "I12", "IV*"),
        "A~11 + E~6 + A3",
        "Z/3Z",
        "elliptic with two full fibers and an A3 from the third",
    ),
    ExtremalEntry(
        "qe3-2xE6tilde-E6-A2",
        3,
        True,
        ("IV", "IV*", "IV*", "IV*"),
        "2 x E~6 + E6 + A2",
        "Z/3Z",
        "two full additive fibers plus definite parts of the others",
    ),
    ExtremalEntry(
        "qe3-3xE6tilde-A2-three-sections",
        3,
        True,
        ("IV", "IV*", "IV*", "IV*"),
        "3 x E~6 + A2",
        "Z/3Z",
        "as the two-section case but with all three sections present",
    ),
)


def extremal_lookup(
    prof: FibrationProfile, characteristic: int | None = None
) -> list[ExtremalEntry]:
    """Catalog entries whose full singular-fiber multiset, characteristic
    and fibration kind match the profile."""
    p = characteristic if characteristic is not None else prof.characteristic
    key = tuple(sorted(prof.tags()))
    return [
        e
        for e in EXTREMAL_TABLE
        if e.characteristic == p
        and e.quasi_elliptic == prof.quasi_elliptic
        and tuple(sorted(e.fiber_tags)) == key
    ]


@dataclass(frozen=True)
class DeclaredCurve:
    label: str
    genus: int
    h_degree: int


@dataclass(frozen=True)
class DeclaredModel:
    """A finite list of declared curve classes against which the
    very-ampleness criterion is checked."""

    h_square: int
    h_two_divisible: bool
    curves: tuple[DeclaredCurve, ...]

    def __post_init__(self):
        if self.h_square % 2 != 0:
            raise ValueError("the polarization square must be even")


@dataclass(frozen=True)
class VeryAmpleVerdict:
    passed: bool
    failed: tuple[str, ...]
    notes: tuple[str, ...]


def very_ample_check(model: DeclaredModel) -> VeryAmpleVerdict:
    """Check the three very-ampleness conditions over the declared curves.

    This verifies the criterion on the declared classes only; it is not a
    proof of very-ampleness, which would quantify over every curve on the
    surface.  The criterion itself assumes characteristic different
    from 2.
    """
    failed = []
    for c in model.curves:
        if c.h_degree <= 0:
            failed.append(
                f"positivity: H.{c.label} = {c.h_degree} is not positive"
            )
    for c in model.curves:
        if c.genus == 1 and c.h_degree <= 2:
            failed.append(
                f"genus-one degree: H.{c.label} = {c.h_degree} must exceed 2"
            )
    if model.h_square < 4:
        failed.append(f"square: H^2 = {model.h_square} must be at least 4")
    elif model.h_square == 8 and model.h_two_divisible:
        failed.append("square: H^2 = 8 with H 2-divisible is excluded")
    return VeryAmpleVerdict(
        passed=not failed,
        failed=tuple(failed),
        notes=(
            "verified on declared classes only, not a proof of "
            "very-ampleness",
            "the criterion assumes characteristic != 2",
        ),
    )
