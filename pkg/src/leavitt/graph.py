"""Finitely presented directed multigraphs.

A graph is an ordered list of vertices plus an ordered list of edge
*bundles*.  A bundle groups parallel edges sharing one source vertex and
one range vertex; its multiplicity is a positive integer or ``OMEGA``
(countably many parallel edges, which is how infinite emitters are
presented finitely).  Individual edges are addressed as
``EdgeRef(bundle_name, index)``.

Vertices are classified as sinks (no outgoing edge), infinite emitters
(some outgoing bundle has multiplicity ``OMEGA``) or regular vertices.
Sinks and infinite emitters together are the singular vertices.

All set-valued results are returned as tuples ordered by the graph's
declared vertex (or bundle) order, so every operation is deterministic.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import product

from .errors import (
    ContractError,
    GraphError,
    NotFinitelyPresentableError,
    UnknownNameError,
)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class _Omega:
    """Singleton multiplicity marker for countably infinite bundles."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "omega"


OMEGA = _Omega()

# A bundle multiplicity: a positive int, or OMEGA.
Multiplicity = int | _Omega


def is_omega(m: Multiplicity) -> bool:
    return m is OMEGA


@dataclass(frozen=True)
class Bundle:
    """A bundle of parallel edges from ``source`` to ``range``."""

    name: str
    source: str
    range: str
    multiplicity: Multiplicity = 1


@dataclass(frozen=True)
class EdgeRef:
    """One concrete edge: position ``index`` inside bundle ``bundle``."""

    bundle: str
    index: int = 0

    def key(self) -> tuple[str, int]:
        return (self.bundle, self.index)


@dataclass(frozen=True)
class Path:
    """A finite path: either a single vertex or a nonempty edge sequence.

    A length-0 path stores its vertex in ``vertex``; a path of positive
    length stores only its edges (the endpoint vertices are recovered
    through the graph).
    """

    vertex: str | None = None
    edges: tuple[EdgeRef, ...] = ()

    def __post_init__(self):
        if (self.vertex is None) == (len(self.edges) == 0):
            raise ContractError("a path is a vertex or a nonempty edge sequence, not both")

    @property
    def length(self) -> int:
        return len(self.edges)


def vertex_path(v: str) -> Path:
    return Path(vertex=v)


def path_key(p: Path) -> tuple:
    """Deterministic sort key: length, then (name, index) per edge.

    Length-0 paths compare by vertex name (with index -1 so the key shape
    matches edge paths).
    """
    if p.length == 0:
        return (0, ((p.vertex, -1),))
    return (len(p.edges), tuple(e.key() for e in p.edges))


def concat(p: Path, q: Path) -> Path:
    """Concatenate two composable paths (composability is not re-checked)."""
    if p.length == 0:
        return q
    if q.length == 0:
        return p
    return Path(edges=p.edges + q.edges)


def starts_with(g: "Graph", p: Path, q: Path) -> bool:
    """True iff ``q`` is a prefix of ``p`` (a vertex path prefixes anything it sources)."""
    if q.length == 0:
        return g.path_source(p) == q.vertex
    return p.edges[: q.length] == q.edges


def strip_prefix(g: "Graph", p: Path, q: Path) -> Path:
    """The remainder of ``p`` after its prefix ``q``."""
    if p.length == q.length:
        return vertex_path(g.path_range(p))
    return Path(edges=p.edges[q.length :])


class VertexClass(enum.Enum):
    SINK = "sink"
    REGULAR = "regular"
    INFINITE_EMITTER = "infinite-emitter"


@dataclass(frozen=True)
class Graph:
    """An immutable finitely presented directed multigraph."""

    vertices: tuple[str, ...]
    bundles: tuple[Bundle, ...] = ()

    def __post_init__(self):
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise GraphError(f"invalid vertex name {v!r}")
            if v in seen:
                raise GraphError(f"duplicate vertex name {v!r}")
            seen.add(v)
        bseen = set()
        vset = seen
        for b in self.bundles:
            if not isinstance(b.name, str) or not _NAME_RE.match(b.name):
                raise GraphError(f"invalid bundle name {b.name!r}")
            if b.name in bseen:
                raise GraphError(f"duplicate bundle name {b.name!r}")
            bseen.add(b.name)
            if b.source not in vset:
                raise GraphError(f"bundle {b.name!r}: unknown source {b.source!r}")
            if b.range not in vset:
                raise GraphError(f"bundle {b.name!r}: unknown range {b.range!r}")
            if not is_omega(b.multiplicity) and (
                not isinstance(b.multiplicity, int) or b.multiplicity < 1
            ):
                raise GraphError(
                    f"bundle {b.name!r}: multiplicity must be a positive integer or omega"
                )

    # -- lookups ---------------------------------------------------------

    def vertex_index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise UnknownNameError(f"unknown vertex {v!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self.vertices

    def bundle(self, name: str) -> Bundle:
        for b in self.bundles:
            if b.name == name:
                return b
        raise UnknownNameError(f"unknown bundle {name!r}")

    def out_bundles(self, v: str) -> tuple[Bundle, ...]:
        self.vertex_index(v)
        return tuple(b for b in self.bundles if b.source == v)

    def in_bundles(self, v: str) -> tuple[Bundle, ...]:
        self.vertex_index(v)
        return tuple(b for b in self.bundles if b.range == v)

    # -- edges and paths -------------------------------------------------

    def check_edge(self, ref: EdgeRef) -> None:
        b = self.bundle(ref.bundle)
        if ref.index < 0:
            raise ContractError(f"edge index must be nonnegative: {ref}")
        if not is_omega(b.multiplicity) and ref.index >= b.multiplicity:
            raise ContractError(
                f"edge index {ref.index} out of range for bundle {b.name!r} "
                f"of multiplicity {b.multiplicity}"
            )

    def source_of(self, ref: EdgeRef) -> str:
        return self.bundle(ref.bundle).source

    def range_of(self, ref: EdgeRef) -> str:
        return self.bundle(ref.bundle).range

    def edge(self, bundle: str, index: int = 0) -> EdgeRef:
        ref = EdgeRef(bundle, index)
        self.check_edge(ref)
        return ref

    def edge_refs(self) -> tuple[EdgeRef, ...]:
        """All concrete edges, in bundle order; requires finite multiplicities."""
        refs = []
        for b in self.bundles:
            if is_omega(b.multiplicity):
                raise NotFinitelyPresentableError(
                    f"bundle {b.name!r} has multiplicity omega; its edges cannot be listed"
                )
            refs.extend(EdgeRef(b.name, i) for i in range(b.multiplicity))
        return tuple(refs)

    def vertex_path(self, v: str) -> Path:
        self.vertex_index(v)
        return vertex_path(v)

    def path(self, *atoms: str | EdgeRef | tuple[str, int]) -> Path:
        """Build a path from bundle names, (name, index) pairs, or EdgeRefs."""
        refs = []
        for a in atoms:
            if isinstance(a, EdgeRef):
                refs.append(a)
            elif isinstance(a, tuple):
                refs.append(EdgeRef(a[0], a[1]))
            else:
                refs.append(EdgeRef(a, 0))
        p = Path(edges=tuple(refs))
        self.check_path(p)
        return p

    def check_path(self, p: Path) -> None:
        if p.length == 0:
            self.vertex_index(p.vertex)
            return
        for ref in p.edges:
            self.check_edge(ref)
        for a, b in zip(p.edges, p.edges[1:]):
            if self.range_of(a) != self.source_of(b):
                raise ContractError(
                    f"edges {a} and {b} do not compose: "
                    f"{self.range_of(a)!r} != {self.source_of(b)!r}"
                )

    def path_source(self, p: Path) -> str:
        return p.vertex if p.length == 0 else self.source_of(p.edges[0])

    def path_range(self, p: Path) -> str:
        return p.vertex if p.length == 0 else self.range_of(p.edges[-1])


def render_edge_ref(g: Graph, ref: EdgeRef) -> str:
    """``bundle#index``, with ``#0`` elided for multiplicity-1 bundles."""
    b = g.bundle(ref.bundle)
    if ref.index == 0 and b.multiplicity == 1:
        return b.name
    return f"{b.name}#{ref.index}"


def render_path(g: Graph, p: Path) -> str:
    if p.length == 0:
        return p.vertex
    return "".join(render_edge_ref(g, e) for e in p.edges)


# -- vertex classification ----------------------------------------------


def classify_vertex(g: Graph, v: str) -> VertexClass:
    out = g.out_bundles(v)
    if not out:
        return VertexClass.SINK
    if any(is_omega(b.multiplicity) for b in out):
        return VertexClass.INFINITE_EMITTER
    return VertexClass.REGULAR


def is_singular(g: Graph, v: str) -> bool:
    return classify_vertex(g, v) is not VertexClass.REGULAR


def singular_vertices(g: Graph) -> tuple[str, ...]:
    return tuple(v for v in g.vertices if is_singular(g, v))


def out_degree(g: Graph, v: str) -> Multiplicity:
    """Total number of edges emitted by ``v`` (OMEGA if any bundle is infinite)."""
    total = 0
    for b in g.out_bundles(v):
        if is_omega(b.multiplicity):
            return OMEGA
        total += b.multiplicity
    return total


# -- reachability ------------------------------------------------------


def tree_of(g: Graph, v: str) -> tuple[str, ...]:
    """All vertices reachable from ``v`` (including ``v``), in declared order."""
    g.vertex_index(v)
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for b in g.out_bundles(u):
            if b.range not in seen:
                seen.add(b.range)
                stack.append(b.range)
    return tuple(u for u in g.vertices if u in seen)


def _ordered(g: Graph, vs) -> tuple[str, ...]:
    vs = set(vs)
    return tuple(v for v in g.vertices if v in vs)


def _check_subset(g: Graph, hs) -> set:
    h = set(hs)
    for v in h:
        g.vertex_index(v)
    return h


def is_hereditary(g: Graph, h) -> bool:
    """True iff every edge with source in ``h`` has range in ``h``."""
    hset = _check_subset(g, h)
    return all(b.range in hset for b in g.bundles if b.source in hset)


def is_saturated(g: Graph, h) -> bool:
    """True iff every regular vertex whose outgoing ranges all lie in ``h`` is in ``h``."""
    hset = _check_subset(g, h)
    for v in g.vertices:
        if v in hset or classify_vertex(g, v) is not VertexClass.REGULAR:
            continue
        if all(b.range in hset for b in g.out_bundles(v)):
            return False
    return True


def saturation_stages(g: Graph, h) -> list[tuple[str, ...]]:
    """Fixed-point stages H0 <= H1 <= ... of the saturation of a hereditary set.

    Each round adjoins every regular vertex all of whose outgoing edges
    land in the previous stage.  The last stage is the saturation.
    """
    hset = _check_subset(g, h)
    if not is_hereditary(g, hset):
        raise ContractError("saturation requires a hereditary set")
    stages = [_ordered(g, hset)]
    while True:
        new = set(hset)
        for v in g.vertices:
            if v in new or classify_vertex(g, v) is not VertexClass.REGULAR:
                continue
            if all(b.range in hset for b in g.out_bundles(v)):
                new.add(v)
        if new == hset:
            return stages
        hset = new
        stages.append(_ordered(g, hset))


def saturate(g: Graph, h) -> tuple[str, ...]:
    """Smallest saturated set containing the hereditary set ``h``."""
    return saturation_stages(g, h)[-1]


def breaking_vertices(g: Graph, h) -> tuple[str, ...]:
    """Singular vertices with finitely many (but at least one) edges escaping ``h``.

    ``h`` must be saturated hereditary.  Only infinite emitters can
    qualify: a sink emits nothing, and a vertex with an omega bundle into
    the complement has infinitely many escaping edges.
    """
    hset = _check_subset(g, h)
    if not is_hereditary(g, hset) or not is_saturated(g, hset):
        raise ContractError("breaking vertices are defined for saturated hereditary sets")
    result = []
    for v in g.vertices:
        if v in hset or not is_singular(g, v):
            continue
        count = 0
        infinite = False
        for b in g.out_bundles(v):
            if b.range in hset:
                continue
            if is_omega(b.multiplicity):
                infinite = True
                break
            count += b.multiplicity
        if not infinite and count > 0:
            result.append(v)
    return tuple(result)


def escaping_edges(g: Graph, h, v: str) -> tuple[EdgeRef, ...]:
    """The concrete edges from ``v`` whose range lies outside ``h``."""
    hset = _check_subset(g, h)
    refs = []
    for b in g.out_bundles(v):
        if b.range in hset:
            continue
        if is_omega(b.multiplicity):
            raise NotFinitelyPresentableError(
                f"bundle {b.name!r} escapes {sorted(hset)} with multiplicity omega"
            )
        refs.extend(EdgeRef(b.name, i) for i in range(b.multiplicity))
    return tuple(refs)


def downward_directed(g: Graph) -> bool:
    """True iff any two vertices have a common descendant (paths may be trivial)."""
    trees = {v: set(tree_of(g, v)) for v in g.vertices}
    vs = g.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if not (trees[vs[i]] & trees[vs[j]]):
                return False
    return True


# -- strongly connected components and cycles ---------------------------


def strongly_connected_components(g: Graph) -> tuple[tuple[str, ...], ...]:
    """SCC partition, each component ordered, components by first vertex."""
    index = {v: i for i, v in enumerate(g.vertices)}
    adj = {v: sorted({b.range for b in g.out_bundles(v)}, key=index.get) for v in g.vertices}
    # Tarjan, iterative.
    low = {}
    disc = {}
    on_stack = set()
    stack = []
    comps = []
    counter = [0]

    def strongconnect(root):
        work = [(root, iter(adj[root]))]
        disc[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == disc[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)

    for v in g.vertices:
        if v not in disc:
            strongconnect(v)
    ordered = [tuple(sorted(c, key=index.get)) for c in comps]
    ordered.sort(key=lambda c: index[c[0]])
    return tuple(ordered)


def vertices_on_cycles(g: Graph) -> tuple[str, ...]:
    """Vertices lying on at least one cycle."""
    on = set()
    for comp in strongly_connected_components(g):
        cset = set(comp)
        if len(comp) > 1:
            on.update(comp)
        elif any(b.source in cset and b.range in cset for b in g.bundles):
            on.update(comp)
    return _ordered(g, on)


def has_cycle(g: Graph) -> bool:
    return bool(vertices_on_cycles(g))


def bundle_circuits(g: Graph) -> tuple[tuple[Bundle, ...], ...]:
    """Elementary circuits at bundle level (no vertex repeated), up to rotation.

    Each circuit is anchored at its smallest-index vertex, so every
    rotation class appears exactly once.  Parallel edges within a bundle
    are not expanded here.
    """
    index = {v: i for i, v in enumerate(g.vertices)}
    out = {v: [b for b in g.bundles if b.source == v] for v in g.vertices}
    circuits = []

    def dfs(start, v, chain, visited):
        for b in out[v]:
            w = b.range
            if w == start:
                circuits.append(tuple(chain + [b]))
            elif index[w] > index[start] and w not in visited:
                visited.add(w)
                chain.append(b)
                dfs(start, w, chain, visited)
                chain.pop()
                visited.remove(w)

    for s in g.vertices:
        dfs(s, s, [], {s})
    return tuple(circuits)


def _least_rotation(cycle: tuple[EdgeRef, ...]) -> tuple[EdgeRef, ...]:
    keys = [tuple(e.key() for e in cycle[i:] + cycle[:i]) for i in range(len(cycle))]
    best = min(range(len(cycle)), key=lambda i: keys[i])
    return cycle[best:] + cycle[:best]


def simple_cycles(g: Graph) -> tuple[tuple[EdgeRef, ...], ...]:
    """Every simple cycle once, as its lexicographically least rotation.

    Simple means no vertex repeats.  Parallel edges inside one bundle
    count as distinct edges, so a circuit through a bundle of multiplicity
    m is reported m times (once per index).  A circuit through an omega
    bundle would yield infinitely many cycles and is refused.
    """
    cycles = set()
    for circuit in bundle_circuits(g):
        for b in circuit:
            if is_omega(b.multiplicity):
                raise NotFinitelyPresentableError(
                    f"bundle {b.name!r} has multiplicity omega and lies on a cycle; "
                    "the simple cycles cannot be listed"
                )
        for choice in product(*(range(b.multiplicity) for b in circuit)):
            refs = tuple(EdgeRef(b.name, i) for b, i in zip(circuit, choice))
            cycles.add(_least_rotation(refs))
    return tuple(sorted(cycles, key=lambda c: (len(c), tuple(e.key() for e in c))))


# -- line points ---------------------------------------------------------


def line_points(g: Graph) -> tuple[str, ...]:
    """Vertices whose reachability tree is a simple line.

    ``v`` is a line point iff no vertex reachable from it emits two or
    more edges (counting bundle multiplicities; omega counts as two or
    more) and no reachable vertex lies on a cycle.  Every sink is a line
    point.
    """
    cyc = set(vertices_on_cycles(g))
    result = []
    for v in g.vertices:
        ok = True
        for w in tree_of(g, v):
            if w in cyc:
                ok = False
                break
            d = out_degree(g, w)
            if is_omega(d) or d > 1:
                ok = False
                break
        if ok:
            result.append(v)
    return tuple(result)


def line_through(g: Graph, v: str) -> tuple[tuple[str, ...], tuple[EdgeRef, ...]]:
    """The vertex chain w0=v, w1, ... and its edges for a line point."""
    if v not in line_points(g):
        raise ContractError(f"{v!r} is not a line point")
    chain = [v]
    edges = []
    cur = v
    while True:
        out = g.out_bundles(cur)
        if not out:
            return tuple(chain), tuple(edges)
        b = out[0]
        edges.append(EdgeRef(b.name, 0))
        chain.append(b.range)
        cur = b.range


# -- path counting -------------------------------------------------------


def _ancestors(g: Graph, v: str) -> set:
    """Vertices that reach ``v`` (including ``v``)."""
    rev = {u: set() for u in g.vertices}
    for b in g.bundles:
        rev[b.range].add(b.source)
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in rev[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def count_paths_into(g: Graph, v: str) -> int | None:
    """Number of finite paths with range ``v`` (vertex path included).

    Returns None when the count is countably infinite, i.e. when a cycle
    passes through an ancestor of ``v`` or an omega bundle lands on one.
    """
    g.vertex_index(v)
    anc = _ancestors(g, v)
    cyc = set(vertices_on_cycles(g))
    if anc & cyc:
        return None
    for b in g.bundles:
        if b.range in anc and is_omega(b.multiplicity):
            return None
    memo = {}

    def count_from(u):
        if u in memo:
            return memo[u]
        total = 1 if u == v else 0
        for b in g.out_bundles(u):
            if b.range in anc:
                total += b.multiplicity * count_from(b.range)
        memo[u] = total
        return total

    return sum(count_from(u) for u in anc)


def paths_into(g: Graph, v: str) -> tuple[Path, ...]:
    """All finite paths with range ``v``, sorted by ``path_key``.

    Raises when the set is infinite (see ``count_paths_into``).
    """
    if count_paths_into(g, v) is None:
        raise NotFinitelyPresentableError(
            f"infinitely many paths end at {v!r} (a cycle or omega bundle feeds it)"
        )
    anc = _ancestors(g, v)
    memo = {}

    def into(u):
        # paths from u to v, as edge tuples
        if u in memo:
            return memo[u]
        acc = [()] if u == v else []
        for b in g.out_bundles(u):
            if b.range not in anc:
                continue
            for tail in into(b.range):
                acc.extend((EdgeRef(b.name, i),) + tail for i in range(b.multiplicity))
        memo[u] = acc
        return acc

    paths = []
    for u in anc:
        for edges in into(u):
            paths.append(vertex_path(v) if not edges else Path(edges=edges))
    return tuple(sorted(set(paths), key=path_key))
