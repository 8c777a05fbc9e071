"""Bundled small-group catalog: loading, self-test, identification.

Catalog data lives in ``data/catalog/order{8,16,32}/*.grp``.  Each file is
one presentation stanza preceded by header comment lines::

    # id: 16.08
    # hs: 16.012        (optional)
    # name: SD_16
    group G16n08 gens s,t rels s^8, t^2, t*s*t=s^3

The directory can be overridden with the CAPGAP_CATALOG environment
variable or an explicit path; the layout of the override must mirror the
bundled one.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from importlib import resources
from itertools import combinations
from pathlib import Path

from .groups import PermutationGroup, is_isomorphic
from .presentations import Presentation, parse_presentation

ENV_CATALOG = "CAPGAP_CATALOG"

_HEADER = re.compile(r"^#\s*(id|hs|name)\s*:\s*(.+?)\s*$")


class CatalogError(RuntimeError):
    """Inconsistent, incomplete, or ambiguous catalog data."""


@dataclass(frozen=True)
class CatalogEntry:
    order: int
    gid: str           # table id, e.g. "16.08"
    hs: str | None     # Hall-Senior label where one is recorded
    name: str
    presentation: Presentation
    group: PermutationGroup

    def __repr__(self):
        return f"CatalogEntry({self.gid}, {self.name})"


def _parse_grp_file(text: str, source: str) -> tuple[dict, Presentation]:
    headers: dict[str, str] = {}
    body_lines = []
    for line in text.splitlines():
        m = _HEADER.match(line)
        if m and m.group(1) not in headers:
            headers[m.group(1)] = m.group(2)
        else:
            body_lines.append(line)
    for key in ("id", "name"):
        if key not in headers:
            raise CatalogError(f"{source}: missing '# {key}:' header")
    pres = parse_presentation("\n".join(body_lines))
    return headers, pres


class Catalog:
    """Realized catalog groups, indexed by table id."""

    def __init__(self, entries: list[CatalogEntry]):
        self.entries = sorted(entries, key=lambda e: (e.order, e.gid))
        self.by_id: dict[str, CatalogEntry] = {}
        for e in self.entries:
            if e.gid in self.by_id:
                raise CatalogError(f"duplicate catalog id {e.gid}")
            self.by_id[e.gid] = e

    def order(self, n: int) -> list[CatalogEntry]:
        return [e for e in self.entries if e.order == n]

    def orders(self) -> list[int]:
        return sorted({e.order for e in self.entries})

    def __getitem__(self, gid: str) -> CatalogEntry:
        try:
            return self.by_id[gid]
        except KeyError:
            raise CatalogError(f"no catalog entry with id {gid!r}") from None

    def identify(self, G: PermutationGroup) -> CatalogEntry:
        """The unique entry isomorphic to G."""
        pool = [e for e in self.order(G.order) if e.group.fingerprint() == G.fingerprint()]
        hits = [e for e in pool if is_isomorphic(G, e.group)]
        if not hits:
            raise CatalogError(
                f"no catalog entry of order {G.order} is isomorphic to the group"
                " (catalog incomplete)")
        if len(hits) > 1:
            raise CatalogError(
                f"ambiguous identification: {[e.gid for e in hits]} (catalog defect)")
        return hits[0]

    def self_test(self, expected_counts: dict[int, int] | None = None) -> list[str]:
        """Internal-consistency problems, empty when the catalog is sound.

        Checks realized order vs declared order, id uniqueness (enforced at
        load), pairwise non-isomorphism within each order, and optionally
        the expected number of entries per order.
        """
        problems = []
        for e in self.entries:
            if e.group.order != e.order:
                problems.append(
                    f"{e.gid}: realized order {e.group.order} != declared {e.order}")
        for n in self.orders():
            block = self.order(n)
            for a, b in combinations(block, 2):
                if a.group.fingerprint() != b.group.fingerprint():
                    continue
                if is_isomorphic(a.group, b.group):
                    problems.append(f"{a.gid} and {b.gid} are isomorphic")
        if expected_counts:
            for n, want in expected_counts.items():
                have = len(self.order(n))
                if have != want:
                    problems.append(f"order {n}: {have} entries, expected {want}")
        return problems


BUNDLED_COUNTS = {8: 5, 16: 14, 32: 51}


def _bundled_root() -> Path:
    return Path(resources.files("capgap")) / "data" / "catalog"


def load_catalog(root: str | Path | None = None, max_cosets: int = 4096) -> Catalog:
    """Load and realize every .grp file under root (bundled data by default)."""
    if root is None:
        root = os.environ.get(ENV_CATALOG) or _bundled_root()
    root = Path(root)
    if not root.is_dir():
        raise CatalogError(f"catalog directory not found: {root}")
    entries = []
    for sub in sorted(root.glob("order*")):
        if not sub.is_dir():
            continue
        for path in sorted(sub.glob("*.grp")):
            headers, pres = _parse_grp_file(path.read_text(encoding="utf-8"),
                                            str(path))
            gid = headers["id"]
            declared = int(gid.split(".")[0])
            group = PermutationGroup.from_presentation(pres, max_cosets,
                                                       name=headers["name"])
            entries.append(CatalogEntry(
                order=declared,
                gid=gid,
                hs=headers.get("hs"),
                name=headers["name"],
                presentation=pres,
                group=group,
            ))
    if not entries:
        raise CatalogError(f"no .grp files under {root}")
    return Catalog(entries)


def identify_in_catalog(G: PermutationGroup, catalog: Catalog) -> CatalogEntry:
    """The unique catalog entry isomorphic to G (errors if none/ambiguous)."""
    return catalog.identify(G)
