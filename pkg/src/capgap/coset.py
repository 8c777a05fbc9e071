"""Coset enumeration for finitely presented groups.

Relator-tracing enumeration on a coset graph with union-find coincidence
handling.  Every relator (and each of its cyclic rotations, so the table
closes for every generator that occurs in some relator) is traced from
every live coset; tracing fills in missing edges, and coincidences are
merged eagerly.  Deterministic for a fixed input order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .presentations import Presentation, Word, reduce_word

DEFAULT_MAX_COSETS = 4096

_UNSET = -1


class CosetLimitExceeded(RuntimeError):
    """Enumeration allocated more cosets than allowed (infinite or too-large index)."""


@dataclass(frozen=True)
class CosetAction:
    """Transitive action of the presentation's generators on coset numbers.

    Coset 0 is the subgroup itself.  permutations[i][c] is the image of
    coset c under generator i acting on the right.
    """

    ncosets: int
    permutations: tuple[tuple[int, ...], ...]


def _word_to_edges(w: Word) -> tuple[int, ...]:
    # edge labels: generator i forward = 2i, inverse = 2i + 1
    out: list[int] = []
    for g, e in reduce_word(w).letters:
        label = 2 * g if e > 0 else 2 * g + 1
        out.extend([label] * abs(e))
    return tuple(out)


def _rotations(edges: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [edges[k:] + edges[:k] for k in range(len(edges))]


class _Graph:
    def __init__(self, nlabels: int, limit: int):
        self.nlabels = nlabels
        self.limit = limit
        self.parent: list[int] = []
        self.neighbors: list[list[int]] = []
        self.allocated = 0

    def add_vertex(self) -> int:
        if self.allocated >= self.limit:
            raise CosetLimitExceeded(
                f"more than {self.limit} cosets defined; raise max_cosets "
                "if the index really is this large"
            )
        v = len(self.parent)
        self.parent.append(v)
        self.neighbors.append([_UNSET] * self.nlabels)
        self.allocated += 1
        return v

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def step(self, v: int, label: int) -> int:
        v = self.find(v)
        nbrs = self.neighbors[v]
        if nbrs[label] == _UNSET:
            w = self.add_vertex()
            nbrs[label] = w
            self.neighbors[w][label ^ 1] = v
        return self.find(nbrs[label])

    def trace(self, v: int, edges: tuple[int, ...]) -> int:
        for label in edges:
            v = self.step(v, label)
        return v

    def unify(self, a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            na, nb = self.neighbors[a], self.neighbors[b]
            for label in range(self.nlabels):
                if nb[label] == _UNSET:
                    continue
                if na[label] == _UNSET:
                    na[label] = nb[label]
                else:
                    queue.append((na[label], nb[label]))


def coset_enumerate(
    pres: Presentation,
    subgroup_gens: tuple[Word, ...] | list[Word] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> CosetAction:
    """Enumerate cosets of the subgroup generated by subgroup_gens.

    With no subgroup generators the coset count is the group order.
    Raises CosetLimitExceeded when more than max_cosets cosets get
    allocated, and ValueError if the table cannot close (a generator
    occurring in no relator stays unconstrained).
    """
    if max_cosets <= 0:
        raise ValueError("max_cosets must be positive")
    ngens = len(pres.generators)
    graph = _Graph(2 * ngens, max_cosets)
    base = graph.add_vertex()

    relator_edges: list[tuple[int, ...]] = []
    for rel in pres.relators:
        edges = _word_to_edges(rel)
        if edges:
            relator_edges.extend(_rotations(edges))

    for word in subgroup_gens:
        graph.unify(graph.trace(base, _word_to_edges(word)), base)

    visit = 0
    while visit < len(graph.parent):
        if graph.find(visit) == visit:
            for edges in relator_edges:
                graph.unify(graph.trace(visit, edges), visit)
        visit += 1

    # canonical renumbering: breadth-first from the base coset
    live = [v for v in range(len(graph.parent)) if graph.find(v) == v]
    for v in live:
        for label in range(2 * ngens):
            if graph.neighbors[v][label] == _UNSET:
                raise ValueError(
                    f"coset table did not close: generator "
                    f"{pres.generators[label // 2]!r} is unconstrained"
                )
    number = {graph.find(base): 0}
    order: list[int] = [graph.find(base)]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for label in range(2 * ngens):
            w = graph.find(graph.neighbors[v][label])
            if w not in number:
                number[w] = len(order)
                order.append(w)
    if len(order) != len(live):
        raise AssertionError("coset graph not transitive")

    perms = tuple(
        tuple(number[graph.find(graph.neighbors[v][2 * g])] for v in order)
        for g in range(ngens)
    )
    action = CosetAction(len(order), perms)
    _check_action(pres, subgroup_gens, action)
    return action


def _check_action(pres, subgroup_gens, action: CosetAction) -> None:
    # post-conditions: relators act trivially, subgroup generators fix coset 0
    n = action.ncosets
    identity = tuple(range(n))

    def act(word: Word) -> tuple[int, ...]:
        cur = identity
        for g, e in reduce_word(word).letters:
            p = action.permutations[g]
            if e < 0:
                inv = [0] * n
                for i, j in enumerate(p):
                    inv[j] = i
                p = tuple(inv)
            for _ in range(abs(e)):
                cur = tuple(p[c] for c in cur)
        return cur

    for rel in pres.relators:
        if act(rel) != identity:
            raise AssertionError(f"relator {pres.word_str(rel)} does not act trivially")
    for word in subgroup_gens:
        if act(word)[0] != 0:
            raise AssertionError("subgroup generator moves the base coset")
