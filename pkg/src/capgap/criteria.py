"""Classification predicates on finite 2-groups.

The central predicate: a group G with an index-2 subgroup H is generated
by the involutions lying outside H.  Scanning a catalog for the pairs
(G, H) satisfying it, computing transfer maps G/G' -> H/H' with their
kernels, and deciding whether a group has a capitulation gap (an order-2
class of G/G' contained in no transfer kernel).
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import Catalog, CatalogError
from .groups import (Perm, PermutationGroup, SubgroupHandle, closure, perm_order,
                     pinv, pmul, index_two_subgroups, is_isomorphic,
                     quotient_cosets, subgroup_closure)
from .presentations import Presentation, Word


# -- involution generation ------------------------------------------------


def involution_generated_outside(
    G: PermutationGroup, H: SubgroupHandle
) -> tuple[bool, frozenset[Perm]]:
    """Is G generated by its involutions outside H?  Returns the witness set."""
    if H.index != 2:
        raise ValueError(f"subgroup has index {H.index}, expected 2")
    witnesses = frozenset(
        g for g in G.elements if g not in H.elements and perm_order(g) == 2
    )
    generated = len(closure(G.degree, sorted(witnesses))) == G.order
    return generated, witnesses


@dataclass(frozen=True)
class ScanRow:
    g_id: str
    g_hs: str | None
    g_name: str
    h_id: str
    h_name: str


def scan_catalog(order: int, catalog: Catalog, include_abelian: bool = False) -> list[ScanRow]:
    """All pairs (G, iso-class of H) of catalog groups with the predicate.

    G runs over the catalog entries of the given order (nonabelian unless
    include_abelian); H runs over iso-classes of index-2 subgroups, which
    are identified against the order/2 catalog.  Rows sorted by (G id, H id).
    """
    if not catalog.order(order):
        raise CatalogError(f"catalog has no groups of order {order}")
    if not catalog.order(order // 2):
        raise CatalogError(f"catalog has no groups of order {order // 2} to identify H")
    rows = []
    for entry in catalog.order(order):
        G = entry.group
        if G.is_abelian() and not include_abelian:
            continue
        h_ids = set()
        for H in index_two_subgroups(G):
            ok, _ = involution_generated_outside(G, H)
            if ok:
                h_ids.add(catalog.identify(H.as_group()).gid)
        for h_id in sorted(h_ids):
            rows.append(ScanRow(entry.gid, entry.hs, entry.name,
                                h_id, catalog[h_id].name))
    rows.sort(key=lambda r: (r.g_id, r.h_id))
    return rows


# -- transfer maps --------------------------------------------------------


class TransferMap:
    """Transfer homomorphism G/G' -> H/H' for an index-2 subgroup H.

    Computed with the two-coset formula: with representatives 1 and t
    (t the least element outside H), Ver(gG') = g * tgt^-1 * H' for g in H
    and g^2 * H' for g outside H.
    """

    def __init__(self, G: PermutationGroup, H: SubgroupHandle,
                 rep_outside: Perm | None = None):
        if H.index != 2:
            raise ValueError(f"subgroup has index {H.index}, expected 2")
        self.G = G
        self.H = H
        self.t = rep_outside if rep_outside is not None else min(
            g for g in G.elements if g not in H.elements)
        if self.t in H.elements:
            raise ValueError("chosen representative lies in the subgroup")
        Hgrp = H.as_group()
        self._Hgrp = Hgrp
        self.derived_G = G.derived()
        self.derived_H = Hgrp.derived()
        self.domain = quotient_cosets(
            G, SubgroupHandle(G, self.derived_G))
        self._h_coset_of: dict[Perm, frozenset[Perm]] = {}
        for h in Hgrp.elements:
            if h not in self._h_coset_of:
                cs = frozenset(pmul(h, d) for d in self.derived_H)
                for x in cs:
                    self._h_coset_of[x] = cs
        self.images: dict[frozenset[Perm], frozenset[Perm]] = {}
        for coset in self.domain:
            g = min(coset)
            if g in H.elements:
                val = pmul(g, pmul(pmul(self.t, g), pinv(self.t)))
            else:
                val = pmul(g, g)
            self.images[coset] = self._h_coset_of[val]

    def __call__(self, g_or_coset) -> frozenset[Perm]:
        if isinstance(g_or_coset, frozenset):
            return self.images[g_or_coset]
        for coset in self.domain:
            if g_or_coset in coset:
                return self.images[coset]
        raise ValueError("element not in group")

    @property
    def identity_coset(self) -> frozenset[Perm]:
        return self._h_coset_of[self._Hgrp.identity]

    def kernel(self) -> frozenset[frozenset[Perm]]:
        """Kernel as a set of G'-cosets (a subgroup of G/G')."""
        ident = self.identity_coset
        return frozenset(c for c, v in self.images.items() if v == ident)

    def kernel_elements(self) -> frozenset[Perm]:
        out: set[Perm] = set()
        for c in self.kernel():
            out |= c
        return frozenset(out)


def transfer_map(G: PermutationGroup, H: SubgroupHandle) -> TransferMap:
    """Transfer homomorphism for an index-2 subgroup."""
    return TransferMap(G, H)


# -- capitulation gaps ----------------------------------------------------


@dataclass(frozen=True)
class TransferEntry:
    subgroup: SubgroupHandle
    ver: TransferMap
    kernel: frozenset[frozenset[Perm]]


@dataclass(frozen=True)
class TransferReport:
    """Per-subgroup transfer kernels plus the gap verdict for one group."""

    group: PermutationGroup
    entries: tuple[TransferEntry, ...]
    order_two_cosets: tuple[frozenset[Perm], ...]
    has_gap: bool
    witness: frozenset[Perm] | None   # coset of G', least representative first

    def witness_label(self) -> str | None:
        if self.witness is None:
            return None
        return coset_label(self.group, self.witness)


def coset_label(G: PermutationGroup, coset: frozenset[Perm]) -> str:
    """Shortest-word label for a coset (ties broken by the rendered string)."""
    best = min((len(G.word_for(x)), G.describe(x)) for x in coset)
    return best[1]


def capitulation_gap(G: PermutationGroup) -> TransferReport:
    """Does some order-2 element of G/G' avoid every index-2 transfer kernel?

    Groups without index-2 subgroups (odd order, trivial) vacuously have a
    gap exactly when an order-2 class exists; for them the answer is still
    False whenever G/G' has no 2-torsion, which covers all abelian cases
    of interest.
    """
    derived = SubgroupHandle(G, G.derived())
    cosets = quotient_cosets(G, derived)
    ident = next(c for c in cosets if G.identity in c)
    coset_of: dict[Perm, frozenset[Perm]] = {}
    for c in cosets:
        for x in c:
            coset_of[x] = c
    order_two = tuple(
        c for c in cosets
        if c is not ident and coset_of[pmul(min(c), min(c))] is ident
    )
    entries = []
    for H in index_two_subgroups(G):
        ver = TransferMap(G, H)
        entries.append(TransferEntry(H, ver, ver.kernel()))
    gap_cosets = [
        c for c in order_two
        if all(c not in e.kernel for e in entries)
    ]
    witness = min(gap_cosets, key=min) if gap_cosets else None
    return TransferReport(
        group=G,
        entries=tuple(entries),
        order_two_cosets=order_two,
        has_gap=witness is not None,
        witness=witness,
    )


# -- semi-dihedral / modular families -------------------------------------


def sd_presentation(n: int) -> Presentation:
    """<s,t : s^(2m) = t^2 = 1, t s t = s^(m-1)>, m = 2^(n-2)."""
    if n < 4:
        raise ValueError("need n >= 4 so that m = 2^(n-2) >= 4")
    m = 2 ** (n - 2)
    return Presentation(
        f"SD{2 ** n}", ("s", "t"),
        (Word(((0, 2 * m),)), Word(((1, 2),)),
         Word(((1, 1), (0, 1), (1, 1), (0, -(m - 1))))),
    )


def md_presentation(n: int) -> Presentation:
    """<s,t : s^(2m) = t^2 = 1, t s t = s^(m+1)>, m = 2^(n-2)."""
    if n < 4:
        raise ValueError("need n >= 4 so that m = 2^(n-2) >= 4")
    m = 2 ** (n - 2)
    return Presentation(
        f"MD{n}_2", ("s", "t"),
        (Word(((0, 2 * m),)), Word(((1, 2),)),
         Word(((1, 1), (0, 1), (1, 1), (0, -(m + 1))))),
    )


@dataclass(frozen=True)
class KernelRow:
    subgroup_label: str
    subgroup: SubgroupHandle
    ver_s: str                       # Ver(s) mod H', as a word label
    ver_t: str
    kernel: frozenset[frozenset[Perm]]
    kernel_label: str                # "<w> G'" for a generating coset w


@dataclass(frozen=True)
class KernelsReport:
    family: str
    n: int
    m: int
    group: PermutationGroup
    rows: tuple[KernelRow, ...]
    gap: TransferReport


def subgroup_of_quotient_label(G: PermutationGroup,
                               kernel: frozenset[frozenset[Perm]]) -> str:
    """Label a subgroup of G/G' by its non-identity cosets."""
    nontrivial = sorted((c for c in kernel if G.identity not in c), key=min)
    if not nontrivial:
        return "trivial"
    labels = ", ".join(coset_label(G, c) for c in nontrivial)
    return f"<{labels}> G'"


class _NormalForms:
    """s^i t^j labels for the two-generator families (t-free forms preferred)."""

    def __init__(self, G: PermutationGroup, s: Perm, t: Perm, two_m: int):
        self.forms: dict[Perm, tuple[int, int]] = {}
        for j in (0, 1):
            cur = G.identity if j == 0 else t
            for i in range(two_m):
                self.forms.setdefault(cur, (j, i))
                cur = pmul(s, cur) if j else pmul(cur, s)

    def label(self, elem: Perm) -> str:
        j, i = self.forms[elem]
        if j == 0:
            return "1" if i == 0 else ("s" if i == 1 else f"s^{i}")
        return "t" if i == 0 else ("s*t" if i == 1 else f"s^{i}*t")

    def coset_label(self, coset: frozenset[Perm]) -> str:
        best = min(self.forms[x] for x in coset)
        return self.label(next(x for x in coset if self.forms[x] == best))

    def kernel_label(self, G: PermutationGroup,
                     kernel: frozenset[frozenset[Perm]]) -> str:
        nontrivial = [c for c in kernel if G.identity not in c]
        if not nontrivial:
            return "trivial"
        labels = sorted(self.coset_label(c) for c in nontrivial)
        return f"<{', '.join(labels)}> G'"


def kernels_table(family: str, n: int) -> KernelsReport:
    """Transfer images and kernels for the three index-2 subgroups of
    SD_(2^n) or MD_n(2), in the order <s>, <s^2,t>, <s^2,s*t>."""
    family = family.lower()
    if family == "sd":
        pres = sd_presentation(n)
    elif family == "md":
        pres = md_presentation(n)
    else:
        raise ValueError("family must be 'sd' or 'md'")
    m = 2 ** (n - 2)
    G = PermutationGroup.from_presentation(pres)
    s, t = G.gen_perm("s"), G.gen_perm("t")
    subgroups = [
        ("<s>", subgroup_closure(G, [s])),
        ("<s^2,t>", subgroup_closure(G, [pmul(s, s), t])),
        ("<s^2,s*t>", subgroup_closure(G, [pmul(s, s), pmul(s, t)])),
    ]
    expected = {h.elements for h in index_two_subgroups(G)}
    if {h.elements for _, h in subgroups} != expected:
        raise AssertionError("the three listed subgroups are not the index-2 subgroups")
    nf = _NormalForms(G, s, t, 2 * m)
    rows = []
    for label, H in subgroups:
        ver = TransferMap(G, H)
        rows.append(KernelRow(
            subgroup_label=label,
            subgroup=H,
            ver_s=_image_label(nf, ver(s)),
            ver_t=_image_label(nf, ver(t)),
            kernel=ver.kernel(),
            kernel_label=nf.kernel_label(G, ver.kernel()),
        ))
    return KernelsReport(family, n, m, G, tuple(rows), capitulation_gap(G))


def _image_label(nf: _NormalForms, image: frozenset[Perm]) -> str:
    label = nf.coset_label(image)
    return f"{label} H'" if label != "1" else "H'"


# -- the holomorph family --------------------------------------------------


def holomorph_presentation(n: int) -> Presentation:
    """<a,x,y : a^(2m) = x^2 = y^2 = (xy)^2 = 1, xax = a^-1, yay = a^(m+1)>."""
    if n < 4:
        raise ValueError("need n >= 4 so that m = 2^(n-2) >= 4")
    m = 2 ** (n - 2)
    A, X, Y = 0, 1, 2
    rels = (
        Word(((A, 2 * m),)),
        Word(((X, 2),)),
        Word(((Y, 2),)),
        Word(((X, 1), (Y, 1), (X, 1), (Y, 1))),
        Word(((X, 1), (A, 1), (X, 1), (A, 1))),
        Word(((Y, 1), (A, 1), (Y, 1), (A, -(m + 1)))),
    )
    return Presentation(f"Hol{n}", ("a", "x", "y"), rels)


@dataclass(frozen=True)
class HolomorphFamily:
    """C_(2^(n-1)) extended by the involutions of its automorphism group."""

    n: int
    m: int
    group: PermutationGroup
    a: Perm
    x: Perm
    y: Perm
    sub_sd: SubgroupHandle    # <a, xy>
    sub_md: SubgroupHandle    # <a, y>


def build_holomorph_family(n: int, check: bool = True) -> HolomorphFamily:
    """Realize the family group and its two distinguished maximal subgroups.

    With check=True (default) the claimed structure is verified: the order
    is 2^(n+1), <a,xy> and <a,y> are semi-dihedral resp. modular of order
    2^n, and the group is generated by involutions outside each of them.
    """
    if n < 4:
        raise ValueError("need n >= 4 so that m = 2^(n-2) >= 4")
    m = 2 ** (n - 2)
    G = PermutationGroup.from_presentation(holomorph_presentation(n))
    a, x, y = G.gen_perm("a"), G.gen_perm("x"), G.gen_perm("y")
    fam = HolomorphFamily(
        n=n, m=m, group=G, a=a, x=x, y=y,
        sub_sd=subgroup_closure(G, [a, pmul(x, y)]),
        sub_md=subgroup_closure(G, [a, y]),
    )
    if check:
        if G.order != 2 ** (n + 1):
            raise AssertionError(f"family group has order {G.order}, expected {2 ** (n + 1)}")
        sd = PermutationGroup.from_presentation(sd_presentation(n))
        md = PermutationGroup.from_presentation(md_presentation(n))
        if not is_isomorphic(fam.sub_sd.as_group(), sd):
            raise AssertionError("<a,xy> is not semi-dihedral")
        if not is_isomorphic(fam.sub_md.as_group(), md):
            raise AssertionError("<a,y> is not modular")
        for H in (fam.sub_sd, fam.sub_md):
            ok, _ = involution_generated_outside(G, H)
            if not ok:
                raise AssertionError("family group not generated by involutions outside "
                                     "a distinguished subgroup")
    return fam


@dataclass(frozen=True)
class UniquenessReport:
    n: int
    mode: str                      # "uniqueness" | "existence"
    family_order: int
    sd_overgroups: tuple[str, ...]  # catalog ids admitting the SD subgroup
    md_overgroups: tuple[str, ...]
    unique: bool | None            # None in existence-only mode
    family_id: str | None          # catalog id of the family group, when known


def verify_dt1_uniqueness(n: int, catalog: Catalog | None = None,
                          require_uniqueness: bool = False) -> UniquenessReport:
    """Existence (any n >= 4) and, when a full catalog of order 2^(n+1) is
    available, uniqueness of the over-group generated by outside involutions.
    """
    fam = build_holomorph_family(n)
    target_order = 2 ** (n + 1)
    have_catalog = catalog is not None and len(catalog.order(target_order)) > 0
    if require_uniqueness and not have_catalog:
        raise CatalogError(
            f"uniqueness mode needs a catalog of order {target_order}")
    if not have_catalog:
        return UniquenessReport(n, "existence", fam.group.order, (), (), None, None)

    sd = PermutationGroup.from_presentation(sd_presentation(n))
    md = PermutationGroup.from_presentation(md_presentation(n))
    sd_hits, md_hits = [], []
    for entry in catalog.order(target_order):
        G = entry.group
        for H in index_two_subgroups(G):
            ok, _ = involution_generated_outside(G, H)
            if not ok:
                continue
            K = H.as_group()
            if is_isomorphic(K, sd):
                sd_hits.append(entry.gid)
            if is_isomorphic(K, md):
                md_hits.append(entry.gid)
    sd_ids = tuple(sorted(set(sd_hits)))
    md_ids = tuple(sorted(set(md_hits)))
    family_id = catalog.identify(fam.group).gid
    unique = (sd_ids == md_ids == (family_id,))
    return UniquenessReport(n, "uniqueness", fam.group.order, sd_ids, md_ids,
                            unique, family_id)
