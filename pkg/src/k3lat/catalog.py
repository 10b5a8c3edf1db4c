"""The shipped catalog of named configurations, fibration profiles and
extremal fibrations, each with an expected-results block that is recomputed
on demand.

``verify_catalog`` re-derives every expected value from the live engines,
so it doubles as the integration test of the whole package.  The data
directory can be overridden with the ``K3LAT_CATALOG_DIR`` environment
variable (it must contain ``catalog/`` and ``examples/`` subdirectories).
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import bounds, fibration, formats, kodaira, roots
from .graph import classify, gram
from .exact import inverse


CATALOG_ENV_VAR = "K3LAT_CATALOG_DIR"

_ENTRY_KINDS = ("config", "profile", "extremal", "model")


def data_root() -> Path:
    override = os.environ.get(CATALOG_ENV_VAR)
    if override:
        return Path(override)
    return Path(str(resources.files("k3lat") / "data"))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    description: str
    source: str
    expected: dict
    file: str | None = None
    payload: dict | None = None


def _entry_from_json(data: dict, where: str) -> CatalogEntry:
    for key in ("name", "kind", "description", "source", "expected"):
        if key not in data:
            raise formats.ValidationError(f"{where}: missing field {key!r}")
    if data["kind"] not in _ENTRY_KINDS:
        raise formats.ValidationError(
            f"{where}: unknown kind {data['kind']!r}"
        )
    return CatalogEntry(
        name=data["name"],
        kind=data["kind"],
        description=data["description"],
        source=data["source"],
        expected=data["expected"],
        file=data.get("file"),
        payload=data.get("payload"),
    )


def load_catalog(root: Path | None = None) -> list[CatalogEntry]:
    root = root or data_root()
    cat_dir = root / "catalog"
    entries = []
    for path in sorted(cat_dir.glob("*.json")):
        data = json.loads(path.read_text())
        entries.append(_entry_from_json(data, path.name))
    return sorted(entries, key=lambda e: e.name)


def get_entry(name: str, root: Path | None = None) -> CatalogEntry:
    for entry in load_catalog(root):
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog entry named {name!r}")


def entry_file_text(entry: CatalogEntry, root: Path | None = None) -> str:
    if entry.file is None:
        raise ValueError(f"entry {entry.name!r} has no payload file")
    root = root or data_root()
    return (root / "examples" / entry.file).read_text()


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    expected: str
    actual: str


@dataclass(frozen=True)
class EntryReport:
    name: str
    kind: str
    ok: bool
    checks: tuple[CheckResult, ...]


def _check(name: str, expected, actual) -> CheckResult:
    return CheckResult(name, expected == actual, str(expected), str(actual))


def _verify_config_entry(entry: CatalogEntry, root: Path) -> EntryReport:
    doc = formats.parse_config(entry_file_text(entry, root))
    cfg = doc.config
    exp = entry.expected
    checks = []
    if "vertex_count" in exp:
        checks.append(_check("vertex_count", exp["vertex_count"], cfg.n))
    cls = classify(cfg)
    if "classification" in exp:
        checks.append(_check("classification", exp["classification"], cls.kind.value))
    if "decomposition" in exp:
        names = roots.decompose(cfg).names()
        checks.append(_check("decomposition", sorted(exp["decomposition"]), names))
    if "kodaira" in exp:
        found = Counter(d.tag for d in kodaira.find_kodaira_divisors(cfg))
        checks.append(_check("kodaira", dict(exp["kodaira"]), dict(found)))
    if "entry_sum" in exp:
        total = inverse(gram(cfg)).entry_sum()
        checks.append(
            _check("entry_sum", exp["entry_sum"], formats.format_fraction(total))
        )
    if "rough_bound" in exp:
        d = exp["rough_bound"]["d"]
        cert = bounds.rough_bound(cfg, d)
        ok = bounds.verify_certificate(cert, cfg)
        checks.append(
            _check(
                "rough_bound",
                exp["rough_bound"]["value"],
                formats.format_fraction(cert.bound_on_2h) if ok else "unverified",
            )
        )
    if "box_bound" in exp:
        d = exp["box_bound"]["d"]
        cert = bounds.box_certificate(cfg, d)
        ok = bounds.verify_certificate(cert, cfg)
        checks.append(
            _check(
                "box_bound",
                exp["box_bound"]["value"],
                formats.format_fraction(cert.bound_on_2h) if ok else "unverified",
            )
        )
    for case in exp.get("exclusions", ()):
        verdict = bounds.exclude(cfg, case["d"], case["h"])
        certs_ok = all(
            bounds.verify_certificate(c, cfg) for c in verdict.certificates
        )
        checks.append(
            _check(
                f"exclude(d={case['d']}, h={case['h']})",
                case["status"],
                verdict.status.value if certs_ok else "certificate failed",
            )
        )
    return EntryReport(entry.name, entry.kind, all(c.ok for c in checks), tuple(checks))


def _verify_profile_entry(entry: CatalogEntry, root: Path) -> EntryReport:
    prof = formats.parse_profile(entry_file_text(entry, root))
    exp = entry.expected
    report = fibration.budget_check(prof)
    checks = [
        _check("budget_ok", exp["budget_ok"], report.ok),
        _check("component_total", exp["component_total"], report.component_total),
        _check(
            "component_bound",
            exp["component_bound"],
            fibration.rational_component_bound(prof),
        ),
        _check(
            "st_rank_mw0", exp["st_rank_mw0"], fibration.shioda_tate_rank(prof, 0)
        ),
    ]
    if "sd_bound" in exp:
        want = exp["sd_bound"]
        ctx = fibration.SurfaceContext(characteristic=prof.characteristic or 0)
        got = fibration.sd_bound(ctx, restricted=want.get("restricted", False))
        checks.append(_check("sd_bound.bound", want["bound"], got.bound))
        checks.append(_check("sd_bound.count", want["count"], got.count))
        checks.append(
            _check(
                "sd_bound.threshold",
                want["threshold"],
                formats.format_fraction(got.h_threshold),
            )
        )
    return EntryReport(entry.name, entry.kind, all(c.ok for c in checks), tuple(checks))


def _verify_extremal_entry(entry: CatalogEntry, root: Path) -> EntryReport:
    payload = entry.payload or {}
    prof = fibration.profile(
        [(f["type"], f["count"]) for f in payload["fibers"]],
        quasi_elliptic=payload["quasi_elliptic"],
        characteristic=payload["characteristic"],
    )
    exp = entry.expected
    hits = fibration.extremal_lookup(prof)
    table_name = payload["table_name"]
    self_hit = next((h for h in hits if h.name == table_name), None)
    checks = [
        _check("budget_ok", exp["budget_ok"], fibration.budget_check(prof).ok),
        _check("hits", exp["hits"], len(hits)),
        _check("contains_self", table_name, self_hit.name if self_hit else "missing"),
    ]
    if self_hit is not None:
        checks.append(
            _check("mordell_weil", exp["mordell_weil"], self_hit.mordell_weil)
        )
    return EntryReport(entry.name, entry.kind, all(c.ok for c in checks), tuple(checks))


def _verify_model_entry(entry: CatalogEntry, root: Path) -> EntryReport:
    model = formats.parse_model(entry_file_text(entry, root))
    verdict = fibration.very_ample_check(model)
    exp = entry.expected
    checks = [_check("passes", exp["passes"], verdict.passed)]
    if "failed" in exp:
        checks.append(_check("failed", list(exp["failed"]), list(verdict.failed)))
    return EntryReport(entry.name, entry.kind, all(c.ok for c in checks), tuple(checks))


_VERIFIERS = {
    "config": _verify_config_entry,
    "profile": _verify_profile_entry,
    "extremal": _verify_extremal_entry,
    "model": _verify_model_entry,
}


def verify_entry(entry: CatalogEntry, root: Path | None = None) -> EntryReport:
    return _VERIFIERS[entry.kind](entry, root or data_root())


def verify_catalog(root: Path | None = None) -> list[EntryReport]:
    root = root or data_root()
    return [verify_entry(e, root) for e in load_catalog(root)]
