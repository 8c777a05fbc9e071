"""Concrete finite-group computations on small permutation groups.

Groups are realized as tuples of point images and enumerated in full;
everything here assumes orders up to a few hundred, where exhaustive
methods are the simplest correct choice.  All values are immutable after
construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .coset import DEFAULT_MAX_COSETS, coset_enumerate
from .presentations import Presentation, Word, reduce_word

Perm = tuple[int, ...]


def pmul(a: Perm, b: Perm) -> Perm:
    """Product 'a then b': (a*b)[i] = b[a[i]]."""
    return tuple(b[x] for x in a)


def pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def perm_order(a: Perm) -> int:
    seen = [False] * len(a)
    result = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        result = lcm(result, length)
    return result


def closure(degree: int, gens: list[Perm] | tuple[Perm, ...]) -> frozenset[Perm]:
    """Smallest permutation group (as an element set) containing gens."""
    e = identity_perm(degree)
    found = {e}
    frontier = [e]
    gens = [g for g in gens if g != e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(found)


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism-invariant profile used to filter isomorphism tests."""

    order: int
    element_orders: tuple[int, ...]
    class_sizes: tuple[int, ...]
    center_order: int
    derived_order: int
    exponent: int
    abelianization: tuple[int, ...]


class PermutationGroup:
    """Finite permutation group with its full element set enumerated."""

    def __init__(self, degree: int, generators: tuple[Perm, ...], name: str | None = None,
                 presentation: Presentation | None = None):
        for g in generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of degree {degree}: {g}")
        self.degree = degree
        self.generators = tuple(generators)
        self.name = name
        self.presentation = presentation
        self.elements: tuple[Perm, ...] = tuple(sorted(closure(degree, list(generators))))
        self._eset = frozenset(self.elements)
        self._cache: dict[str, object] = {}

    @classmethod
    def from_presentation(cls, pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS,
                          name: str | None = None) -> "PermutationGroup":
        """Realize a presentation on its own coset space (regular action)."""
        action = coset_enumerate(pres, (), max_cosets)
        return cls(action.ncosets, action.permutations, name or pres.name, pres)

    # -- basics ---------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def __contains__(self, g: Perm) -> bool:
        return g in self._eset

    def __iter__(self):
        return iter(self.elements)

    def mul(self, a: Perm, b: Perm) -> Perm:
        return pmul(a, b)

    def inv(self, a: Perm) -> Perm:
        return pinv(a)

    def conjugate(self, a: Perm, by: Perm) -> Perm:
        return pmul(pmul(pinv(by), a), by)

    def gen_perm(self, name: str) -> Perm:
        """Generator permutation by presentation generator name."""
        if self.presentation is None:
            raise ValueError("group was not built from a presentation")
        return self.generators[self.presentation.gen_index(name)]

    def perm_of_word(self, w: Word | str) -> Perm:
        if isinstance(w, str):
            if self.presentation is None:
                raise ValueError("group was not built from a presentation")
            w = self.presentation.word(w)
        out = self.identity
        for g, e in reduce_word(w).letters:
            p = self.generators[g] if e > 0 else pinv(self.generators[g])
            for _ in range(abs(e)):
                out = pmul(out, p)
        return out

    def word_for(self, g: Perm) -> Word:
        """A shortest word in the generators evaluating to g (BFS, deterministic)."""
        words: dict[Perm, Word] = self._cache.get("words")  # type: ignore[assignment]
        if words is None:
            words = {self.identity: Word()}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for x in frontier:
                    for i, gen in enumerate(self.generators):
                        y = pmul(x, gen)
                        if y not in words:
                            words[y] = reduce_word(Word(words[x].letters + ((i, 1),)))
                            nxt.append(y)
                frontier = nxt
            self._cache["words"] = words
        if g not in words:
            raise ValueError("element not in group")
        return words[g]

    def describe(self, g: Perm) -> str:
        """Readable label for an element: a shortest generator word."""
        w = self.word_for(g)
        if self.presentation is not None:
            return self.presentation.word_str(w)
        if not w.letters:
            return "1"
        return "*".join(f"g{i}" if e == 1 else f"g{i}^{e}" for i, e in w.letters)

    # -- derived data ---------------------------------------------------

    def center(self) -> frozenset[Perm]:
        if "center" not in self._cache:
            self._cache["center"] = frozenset(
                x for x in self.elements
                if all(pmul(x, g) == pmul(g, x) for g in self.generators)
            )
        return self._cache["center"]  # type: ignore[return-value]

    def conjugacy_class_sizes(self) -> dict[Perm, int]:
        if "classes" not in self._cache:
            sizes: dict[Perm, int] = {}
            seen: set[Perm] = set()
            for x in self.elements:
                if x in seen:
                    continue
                orbit = {x}
                frontier = [x]
                while frontier:
                    nxt = []
                    for y in frontier:
                        for g in self.generators:
                            z = self.conjugate(y, g)
                            if z not in orbit:
                                orbit.add(z)
                                nxt.append(z)
                    frontier = nxt
                for y in orbit:
                    sizes[y] = len(orbit)
                seen |= orbit
            self._cache["classes"] = sizes
        return self._cache["classes"]  # type: ignore[return-value]

    def derived(self) -> frozenset[Perm]:
        if "derived" not in self._cache:
            comms = {
                pmul(pmul(pinv(a), pinv(b)), pmul(a, b))
                for a in self.elements for b in self.generators
            }
            self._cache["derived"] = closure(self.degree, sorted(comms))
        return self._cache["derived"]  # type: ignore[return-value]

    def is_abelian(self) -> bool:
        return all(
            pmul(a, b) == pmul(b, a)
            for i, a in enumerate(self.generators) for b in self.generators[i + 1:]
        )

    def fingerprint(self) -> Fingerprint:
        if "fingerprint" not in self._cache:
            orders = tuple(sorted(perm_order(x) for x in self.elements))
            sizes = tuple(sorted(self.conjugacy_class_sizes().values()))
            self._cache["fingerprint"] = Fingerprint(
                order=self.order,
                element_orders=orders,
                class_sizes=sizes,
                center_order=len(self.center()),
                derived_order=len(self.derived()),
                exponent=lcm(*orders),
                abelianization=abelian_invariants(self, SubgroupHandle(self, self.derived())),
            )
        return self._cache["fingerprint"]  # type: ignore[return-value]

    def minimal_generating_set(self) -> tuple[Perm, ...]:
        """Deterministic small generating set (Burnside basis for 2-groups)."""
        if "mingens" not in self._cache:
            n = self.order
            if n == 1:
                self._cache["mingens"] = ()
                return ()
            if n & (n - 1) == 0:  # 2-group: lift a basis of G/(G' G^2)
                frat = closure(self.degree, sorted(
                    {pmul(x, x) for x in self.elements} | set(self.derived())
                ))
            else:
                frat = frozenset([self.identity])
            chosen: list[Perm] = []
            span = frat
            for x in self.elements:
                if x in span:
                    continue
                chosen.append(x)
                span = closure(self.degree, sorted(span | {x}))
                if len(span) == n:
                    break
            # the lift can be redundant for non-2-groups; shrink greedily
            changed = True
            while changed and len(chosen) > 1:
                changed = False
                for i in range(len(chosen)):
                    rest = chosen[:i] + chosen[i + 1:]
                    if len(closure(self.degree, rest)) == n:
                        chosen = rest
                        changed = True
                        break
            self._cache["mingens"] = tuple(chosen)
        return self._cache["mingens"]  # type: ignore[return-value]


@dataclass(frozen=True)
class SubgroupHandle:
    """Subgroup of a parent group, held as its element set."""

    parent: PermutationGroup
    elements: frozenset[Perm]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // len(self.elements)

    def as_group(self, name: str | None = None) -> PermutationGroup:
        gens = tuple(sorted(self.elements))
        return PermutationGroup(self.parent.degree, gens, name)

    def sort_key(self) -> tuple:
        return tuple(sorted(self.elements))


# -- spec operations ------------------------------------------------------


def element_order(G: PermutationGroup, g: Perm) -> int:
    """Least k >= 1 with g^k = identity."""
    if g not in G:
        raise ValueError("element not in group")
    return perm_order(g)


def subgroup_closure(G: PermutationGroup, gens) -> SubgroupHandle:
    """Smallest subgroup of G containing gens."""
    gens = list(gens)
    for g in gens:
        if g not in G:
            raise ValueError("element not in group")
    return SubgroupHandle(G, closure(G.degree, gens))


def derived_subgroup(G: PermutationGroup) -> SubgroupHandle:
    """Subgroup generated by all commutators."""
    return SubgroupHandle(G, G.derived())


def is_normal(G: PermutationGroup, H: SubgroupHandle) -> bool:
    return all(
        G.conjugate(h, g) in H.elements for h in H.elements for g in G.generators
    )


def index_two_subgroups(G: PermutationGroup) -> list[SubgroupHandle]:
    """All index-2 subgroups: preimages of hyperplanes of G/(G' G^2)."""
    squares = {pmul(x, x) for x in G.elements}
    N = closure(G.degree, sorted(squares | set(G.derived())))
    r = (len(G.elements) // len(N)).bit_length() - 1
    if len(N) << r != len(G.elements):
        raise AssertionError("G/(G' G^2) is not elementary abelian")
    if r == 0:
        return []
    # coset decomposition of N, with F2 coordinates assigned greedily
    coset_of: dict[Perm, int] = {}
    cosets: list[frozenset[Perm]] = []
    for x in G.elements:
        if x in coset_of:
            continue
        cs = frozenset(pmul(x, n) for n in N)
        idx = len(cosets)
        cosets.append(cs)
        for y in cs:
            coset_of[y] = idx
    reps = [min(cs) for cs in cosets]
    coords: dict[int, int] = {coset_of[G.identity]: 0}
    basis: list[int] = []
    for idx, rep in enumerate(cosets):
        if idx in coords:
            continue
        rep = reps[idx]
        bit = 1 << len(basis)
        basis.append(idx)
        for known_idx, vec in list(coords.items()):
            prod = coset_of[pmul(reps[known_idx], rep)]
            if prod not in coords:
                coords[prod] = vec | bit
    subgroups = []
    for functional in range(1, 1 << r):
        members: set[Perm] = set()
        for idx, vec in coords.items():
            if bin(vec & functional).count("1") % 2 == 0:
                members |= cosets[idx]
        subgroups.append(SubgroupHandle(G, frozenset(members)))
    subgroups.sort(key=SubgroupHandle.sort_key)
    return subgroups


def quotient_cosets(G: PermutationGroup, N: SubgroupHandle) -> list[frozenset[Perm]]:
    """Cosets of a normal subgroup, sorted by least representative."""
    if not N.elements <= G._eset:
        raise ValueError("subgroup not contained in group")
    if not is_normal(G, N):
        raise ValueError("subgroup is not normal")
    seen: set[Perm] = set()
    cosets = []
    for x in G.elements:
        if x in seen:
            continue
        cs = frozenset(pmul(x, n) for n in N.elements)
        cosets.append(cs)
        seen |= cs
    cosets.sort(key=min)
    return cosets


def _prime_factors(n: int) -> list[int]:
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    return primes


def invariant_factors_from_orders(n: int, orders: list[int]) -> tuple[int, ...]:
    """Invariant factors of an abelian group from its element orders.

    For each prime p the counts #{x : x^(p^k) = 1} determine the partition
    of the p-primary component; aligning partitions largest-first gives the
    invariant factor chain, returned ascending (d_1 | d_2 | ...).
    """
    if n == 1:
        return ()
    partitions: dict[int, list[int]] = {}
    for p in _prime_factors(n):
        target = sum(1 for o in orders if _ppart(o, p) == o)  # p-power-order elements
        counts = [1]  # counts[k] = #{x : x^(p^k) = 1}
        pk = 1
        while counts[-1] < target:
            pk *= p
            counts.append(sum(1 for o in orders if pk % o == 0))
        lam_conj = []
        for k in range(1, len(counts)):
            ratio = counts[k] // counts[k - 1]
            e = 0
            while p ** e < ratio:
                e += 1
            if p ** e != ratio or counts[k] != counts[k - 1] * ratio:
                raise AssertionError("element order counts inconsistent with an abelian group")
            lam_conj.append(e)
        height = lam_conj[0] if lam_conj else 0
        partitions[p] = [sum(1 for c in lam_conj if c >= i + 1) for i in range(height)]
    width = max(len(v) for v in partitions.values())
    factors = []
    for i in range(width):
        d = 1
        for p, lam in partitions.items():
            if i < len(lam):
                d *= p ** lam[i]
        factors.append(d)
    factors.sort()
    return tuple(factors)


def _ppart(o: int, p: int) -> int:
    """Largest power of p dividing o."""
    r = 1
    while o % p == 0:
        o //= p
        r *= p
    return r


def abelian_invariants(G: PermutationGroup, N: SubgroupHandle) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of the abelian quotient G/N."""
    cosets = quotient_cosets(G, N)
    reps = [min(cs) for cs in cosets]
    lookup = {}
    for cs in cosets:
        for x in cs:
            lookup[x] = cs
    for a in reps:
        for b in reps:
            if lookup[pmul(a, b)] is not lookup[pmul(b, a)]:
                raise ValueError("quotient is not abelian")
    ident = lookup[G.identity]
    orders = []
    for a in reps:
        k = 1
        x = a
        while lookup[x] is not ident:
            x = pmul(x, a)
            k += 1
        orders.append(k)
    return invariant_factors_from_orders(len(cosets), orders)


def is_isomorphic(G: PermutationGroup, H: PermutationGroup) -> bool:
    """Fingerprint filter, then exhaustive generator-image search."""
    if G.order != H.order:
        return False
    if G.fingerprint() != H.fingerprint():
        return False
    gens = G.minimal_generating_set()
    if not gens:
        return True
    gen_orders = [perm_order(g) for g in gens]
    g_sizes = G.conjugacy_class_sizes()
    h_sizes = H.conjugacy_class_sizes()
    candidates = [
        [h for h in H.elements
         if perm_order(h) == gen_orders[i] and h_sizes[h] == g_sizes[gens[i]]]
        for i in range(len(gens))
    ]
    prefix_sizes = []
    acc: list[Perm] = []
    for g in gens:
        acc.append(g)
        prefix_sizes.append(len(closure(G.degree, acc)))

    def verify(images: list[Perm]) -> bool:
        # extend gen images over all of G along the expression tree, then
        # confirm the extension is multiplicative and bijective
        phi: dict[Perm, Perm] = {G.identity: H.identity}
        pending = [G.identity]
        while pending:
            nxt = []
            for x in pending:
                for i, g in enumerate(gens):
                    y = pmul(x, g)
                    im = pmul(phi[x], images[i])
                    if y in phi:
                        if phi[y] != im:
                            return False
                    else:
                        phi[y] = im
                        nxt.append(y)
            pending = nxt
        if len(set(phi.values())) != G.order:
            return False
        for x in G.elements:
            for i, g in enumerate(gens):
                if phi[pmul(x, g)] != pmul(phi[x], images[i]):
                    return False
        return True

    def backtrack(k: int, images: list[Perm]) -> bool:
        if k == len(gens):
            return verify(images)
        for cand in candidates[k]:
            images.append(cand)
            if len(closure(H.degree, images)) == prefix_sizes[k]:
                if backtrack(k + 1, images):
                    return True
            images.pop()
        return False

    return backtrack(0, [])
