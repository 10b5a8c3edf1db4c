import pytest

from k3lat.graph import config_from_data, gram
from k3lat.kodaira import (
    divisor_degree,
    exclusion_6d,
    find_kodaira_divisors,
    parse_tag,
    type_table,
)
from k3lat.roots import standard_diagram


def test_type_table_examples():
    t = type_table("I*2")
    assert (t.component_count, t.weight, t.euler) == (7, 10, 8)
    t = type_table("I4")
    assert (t.component_count, t.weight, t.euler) == (4, 4, 4)
    assert not t.is_additive
    t = type_table("II*")
    assert (t.component_count, t.weight, t.euler) == (9, 30, 10)
    assert t.is_additive


def test_type_table_smooth_fiber():
    t = type_table("I0")
    assert t.euler == 0
    assert t.component_count == 1


def test_parse_tag():
    assert parse_tag("I12") == ("I", 12)
    assert parse_tag("I*0") == ("I*", 0)
    assert parse_tag("IV*") == ("IV*", None)
    with pytest.raises(ValueError):
        parse_tag("V")
    with pytest.raises(ValueError):
        parse_tag("I*")


def test_weight_euler_closed_forms_up_to_24():
    for n in range(1, 25):
        t = type_table(f"I{n}")
        assert t.weight == n
        assert t.euler == n
        assert t.component_count == n
    for n in range(0, 25):
        t = type_table(f"I*{n}")
        assert t.weight == 2 * n + 6
        assert t.euler == n + 6
        assert t.component_count == n + 5
    assert type_table("IV*").weight == 12
    assert type_table("III*").weight == 18
    assert type_table("II*").weight == 30
    assert (type_table("II").weight, type_table("III").weight, type_table("IV").weight) == (1, 2, 3)


def test_euler_minus_components_detects_additivity():
    tags = [f"I{n}" for n in range(1, 25)] + [f"I*{n}" for n in range(0, 25)]
    tags += ["II", "III", "IV", "IV*", "III*", "II*"]
    for tag in tags:
        t = type_table(tag)
        diff = t.euler - t.component_count
        assert diff in (0, 1)
        assert (diff == 0) == (not t.is_additive)


def _dual_graph_config(tag):
    """Standard dual-graph configuration matching the canonical component
    order of the type table."""
    series, n = parse_tag(tag)
    if series == "I":
        if n == 1:
            return config_from_data([("v0", 0)])
        if n == 2:
            return standard_diagram("A1Tilde")
        return standard_diagram("AffineA", n - 1)
    if series == "I*":
        return standard_diagram("AffineD", n + 4)
    if tag == "II":
        return config_from_data([("v0", 0)])
    if tag == "III":
        return standard_diagram("A1Tilde")
    if tag == "IV":
        return standard_diagram("AffineA", 2)
    return standard_diagram("AffineE", {"IV*": 6, "III*": 7, "II*": 8}[tag])


@pytest.mark.parametrize(
    "tag", [f"I{n}" for n in range(1, 10)] + [f"I*{n}" for n in range(0, 8)]
    + ["II", "III", "IV", "IV*", "III*", "II*"]
)
def test_multiplicities_annihilate_dual_graph(tag):
    t = type_table(tag)
    cfg = _dual_graph_config(tag)
    assert cfg.n == t.component_count
    assert gram(cfg).apply(t.multiplicities) == (0,) * cfg.n


def test_find_divisors_four_cycle():
    divs = find_kodaira_divisors(standard_diagram("AffineA", 3))
    assert [(d.tag, d.multiplicities) for d in divs] == [("I4", (1, 1, 1, 1))]


def test_find_divisors_star():
    cfg = config_from_data(
        [("z", -2), ("a", -2), ("b", -2), ("c", -2), ("d", -2)],
        [("z", v) for v in "abcd"],
    )
    divs = find_kodaira_divisors(cfg)
    assert [(d.tag, d.support, d.multiplicities) for d in divs] == [
        ("I*0", ("z", "a", "b", "c", "d"), (2, 1, 1, 1, 1))
    ]


def test_find_divisors_double_edge():
    divs = find_kodaira_divisors(standard_diagram("A1Tilde"))
    (d,) = divs
    assert d.tag == "I2_OR_III"
    assert d.euler_range == (2, 3)
    assert d.weight == 2


def test_find_divisors_triangle():
    divs = find_kodaira_divisors(standard_diagram("AffineA", 2))
    (d,) = divs
    assert d.tag == "I3_OR_IV"
    assert d.euler_range == (3, 4)


def test_find_divisors_isotropic_vertex():
    divs = find_kodaira_divisors(config_from_data([("n", 0, 2)]))
    (d,) = divs
    assert d.tag == "I1"
    assert d.nodal_or_cuspidal
    assert d.euler_range == (1, 2)


def test_find_divisors_locality():
    left = standard_diagram("AffineA", 3, prefix="l")
    right = standard_diagram("AffineD", 4, prefix="r")
    both = left.disjoint_union(right)
    tags = sorted(d.tag for d in find_kodaira_divisors(both))
    expected = sorted(
        [d.tag for d in find_kodaira_divisors(left)]
        + [d.tag for d in find_kodaira_divisors(right)]
    )
    assert tags == expected


def test_find_divisors_weight_cap():
    cfg = standard_diagram("AffineD", 10)  # weight 2*6+6 = 18
    assert find_kodaira_divisors(cfg, max_weight=17) == []
    assert len(find_kodaira_divisors(cfg, max_weight=18)) == 1


def test_divisor_degree_cycle():
    cfg = standard_diagram("AffineA", 3)
    (d,) = find_kodaira_divisors(cfg)
    assert divisor_degree(d, cfg) == 4


def test_divisor_degree_star_is_weight():
    cfg = config_from_data(
        [("z", -2), ("a", -2), ("b", -2), ("c", -2), ("d", -2)],
        [("z", v) for v in "abcd"],
    )
    (d,) = find_kodaira_divisors(cfg)
    assert divisor_degree(d, cfg) == 6


def test_divisor_degree_weighted():
    # double-fork chain with degree 2 on the three chain components
    verts = [("f1", -2, 1), ("f2", -2, 1), ("c1", -2, 2), ("c2", -2, 2),
             ("c3", -2, 2), ("f3", -2, 1), ("f4", -2, 1)]
    edges = [("f1", "c1"), ("f2", "c1"), ("c1", "c2"), ("c2", "c3"),
             ("c3", "f3"), ("c3", "f4")]
    cfg = config_from_data(verts, edges)
    (d,) = find_kodaira_divisors(cfg)
    assert d.tag == "I*2"
    # 4 simple components of degree 1 plus 3 double components of degree 2
    assert divisor_degree(d, cfg) == 4 * 1 * 1 + 3 * 2 * 2


def test_exclusion_6d_low_type_violation():
    cfg = config_from_data(
        [("a", -2), ("b", -2), ("x", -2), ("y", -2)],
        [("a", "b", 2), ("x", "y", 3)],
    )
    violations = exclusion_6d(cfg, 1, 43)
    assert len(violations) == 1
    assert violations[0].rule == "kodaira-low-degree"


def test_exclusion_6d_meeting_curve_reported():
    cfg = config_from_data(
        [("a", -2), ("b", -2), ("w", -2)],
        [("a", "b", 2), ("w", "a", 1)],
    )
    rules = [v.rule for v in exclusion_6d(cfg, 1, 43)]
    assert rules.count("kodaira-low-degree") == 1
    assert rules.count("meets-low-degree-divisor") == 1


def test_exclusion_6d_high_degree_divisor_clean():
    # the only fiber divisor has weight 8 > 6, so nothing to report
    verts = [(v, -2) for v in ["f1", "f2", "c1", "c2", "f3", "f4", "w"]]
    edges = [("f1", "c1"), ("f2", "c1"), ("c1", "c2"), ("c2", "f3"),
             ("c2", "f4"), ("w", "f1")]
    cfg = config_from_data(verts, edges)
    divs = find_kodaira_divisors(cfg)
    assert [d.tag for d in divs] == ["I*1"]
    assert exclusion_6d(cfg, 1, 43) == []


def test_exclusion_6d_not_hyperbolic_empty():
    assert exclusion_6d(standard_diagram("AffineA", 3), 1, 43) == []


def test_exclusion_6d_preconditions():
    cfg = standard_diagram("A", 2)
    with pytest.raises(ValueError):
        exclusion_6d(cfg, 1, 42)
    cfg2 = config_from_data([("a", -2, 3)])
    with pytest.raises(ValueError):
        exclusion_6d(cfg2, 1, 43)
