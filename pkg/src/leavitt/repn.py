"""Boundary-path representations with exact rational matrices.

For an acyclic graph with finite multiplicities the boundary paths are
exactly the finite paths into sinks; they form the basis of the
representation space.  Each generator acts as a partial injection of the
basis: ``s_e`` prepends the edge e where sources match, ``s_e*`` strips
it, and ``p_v`` projects onto paths starting at v.  Dense matrices with
exact rational entries are derived from these maps on demand.

The basis splits into blocks indexed by shift-tail classes (here: by the
sink a path ends at); every generator preserves the blocks, each block
carries an irreducible representation, and the intertwiner space between
two blocks has dimension 1 on the diagonal and 0 off it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    ZERO,
    AlgebraElement,
    Monomial,
    dimension,
    element,
    multiply_monomials,
)
from .errors import (
    ContractError,
    InternalInvariantError,
    NotFinitelyPresentableError,
    UnsupportedGraphError,
)
from .graph import (
    EdgeRef,
    Graph,
    Path,
    concat,
    count_paths_into,
    has_cycle,
    is_omega,
    line_through,
    path_key,
    paths_into,
    render_edge_ref,
    saturate,
    starts_with,
    strip_prefix,
    tree_of,
    vertex_path,
)

PartialMap = dict[int, int]


class BoundaryRepresentation:
    """The boundary-path representation of an acyclic finite-multiplicity graph.

    Immutable after construction.  ``basis`` lists the boundary paths;
    ``classes`` partitions basis positions by shift-tail class (one block
    per sink, in vertex order).
    """

    def __init__(self, g: Graph):
        if any(is_omega(b.multiplicity) for b in g.bundles):
            raise UnsupportedGraphError("the representation requires finite multiplicities")
        if has_cycle(g):
            raise UnsupportedGraphError("the representation requires an acyclic graph")
        self.graph = g
        sinks = [v for v in g.vertices if not g.out_bundles(v)]
        basis: list[Path] = []
        for t in sinks:
            basis.extend(paths_into(g, t))
        basis.sort(key=path_key)
        self.basis = tuple(basis)
        self.index = {p: i for i, p in enumerate(basis)}
        by_sink = {t: [] for t in sinks}
        for i, p in enumerate(basis):
            by_sink[g.path_range(p)].append(i)
        self.classes = tuple(tuple(by_sink[t]) for t in sinks)
        self.class_of = [0] * len(basis)
        for c, block in enumerate(self.classes):
            for i in block:
                self.class_of[i] = c
        self._maps: dict[str, PartialMap] = {}
        for v in g.vertices:
            self._maps[f"p_{v}"] = {
                i: i for i, p in enumerate(basis) if g.path_source(p) == v
            }
        for ref in g.edge_refs():
            fwd = {}
            r = g.range_of(ref)
            for i, p in enumerate(basis):
                if g.path_source(p) == r:
                    fwd[i] = self.index[Path(edges=(ref,) + p.edges)]
            self._maps[f"s_{render_edge_ref(g, ref)}"] = fwd
            self._maps[f"s_{render_edge_ref(g, ref)}*"] = {j: i for i, j in fwd.items()}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def generator_labels(self) -> tuple[str, ...]:
        return tuple(self._maps)

    def generator_map(self, label: str) -> PartialMap:
        return dict(self._maps[label])

    def vertex_map(self, v: str) -> PartialMap:
        return dict(self._maps[f"p_{v}"])

    def edge_map(self, ref: EdgeRef) -> PartialMap:
        return dict(self._maps[f"s_{render_edge_ref(self.graph, ref)}"])

    def edge_star_map(self, ref: EdgeRef) -> PartialMap:
        return dict(self._maps[f"s_{render_edge_ref(self.graph, ref)}*"])

    def matrix(self, label: str) -> tuple[tuple[Fraction, ...], ...]:
        """Dense matrix of a generator: entry [image, argument] is 1."""
        n = len(self.basis)
        m = self._maps[label]
        rows = [[Fraction(0)] * n for _ in range(n)]
        for j, i in m.items():
            rows[i][j] = Fraction(1)
        return tuple(tuple(r) for r in rows)


def build_rho(g: Graph) -> BoundaryRepresentation:
    return BoundaryRepresentation(g)


def _compose(a: PartialMap, b: PartialMap) -> PartialMap:
    """The partial map 'apply b, then a' (the matrix product a.b)."""
    return {j: a[i] for j, i in b.items() if i in a}


def verify_relations(R: BoundaryRepresentation) -> None:
    """Check the four generating relation families on the partial maps.

    Raises InternalInvariantError with the failing relation.
    """
    g = R.graph
    for ref in g.edge_refs():
        e = R.edge_map(ref)
        estar = R.edge_star_map(ref)
        ps = R.vertex_map(g.source_of(ref))
        pr = R.vertex_map(g.range_of(ref))
        name = render_edge_ref(g, ref)
        if _compose(ps, e) != e or _compose(e, pr) != e:
            raise InternalInvariantError(f"relation p s = s = s p fails for {name}")
        if _compose(pr, estar) != estar or _compose(estar, ps) != estar:
            raise InternalInvariantError(f"relation p s* = s* = s* p fails for {name}")
        for other in g.edge_refs():
            prod = _compose(estar, R.edge_map(other))
            expected = pr if other == ref else {}
            if prod != expected:
                raise InternalInvariantError(
                    f"relation s*{name} s{render_edge_ref(g, other)} fails"
                )
    for v in g.vertices:
        out = g.out_bundles(v)
        if not out:
            continue
        union: PartialMap = {}
        for b in out:
            for i in range(b.multiplicity):
                ref = EdgeRef(b.name, i)
                piece = _compose(R.edge_map(ref), R.edge_star_map(ref))
                for j, i2 in piece.items():
                    if j != i2 or j in union:
                        raise InternalInvariantError(f"summands at {v!r} overlap")
                    union[j] = i2
        if union != R.vertex_map(v):
            raise InternalInvariantError(f"relation p_v = sum s_e s_e* fails at {v!r}")


def evaluate(R: BoundaryRepresentation, x: AlgebraElement) -> tuple[tuple[Fraction, ...], ...]:
    """Dense matrix of an algebra element in the representation."""
    g = R.graph
    n = len(R.basis)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for m, c in x.terms:
        g.check_path(m.alpha)
        g.check_path(m.beta)
        for j, delta in enumerate(R.basis):
            if not starts_with(g, delta, m.beta):
                continue
            rest = strip_prefix(g, delta, m.beta)
            gamma = concat(m.alpha, rest)
            i = R.index.get(gamma)
            if i is not None:
                rows[i][j] += c
    return tuple(tuple(r) for r in rows)


def decompose_blocks(R: BoundaryRepresentation) -> tuple[tuple[tuple[Path, ...], int], ...]:
    """The block decomposition: (paths of the block, block dimension) per class."""
    return tuple(
        (tuple(R.basis[i] for i in block), len(block)) for block in R.classes
    )


def blocks_invariant(R: BoundaryRepresentation) -> bool:
    """True iff every generator maps each block into itself."""
    for label in R.generator_labels():
        for j, i in R.generator_map(label).items():
            if R.class_of[j] != R.class_of[i]:
                return False
    return True


def verify_irreducible_block(
    R: BoundaryRepresentation, block_index: int
) -> tuple[bool, dict[Path, tuple[Path, ...]]]:
    """Orbit test for irreducibility of one block.

    For every basis vector of the block, the smallest invariant subspace
    containing it must be the whole block.  Since generators map basis
    vectors to basis vectors (or zero), that subspace is spanned by the
    orbit of the starting vector, which the certificate records.
    """
    block = R.classes[block_index]
    block_set = set(block)
    maps = [R.generator_map(label) for label in R.generator_labels()]
    certificate = {}
    ok = True
    for start in block:
        seen = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for m in maps:
                nxt = m.get(cur)
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        certificate[R.basis[start]] = tuple(
            R.basis[i] for i in sorted(seen, key=lambda i: path_key(R.basis[i]))
        )
        if seen != block_set:
            ok = False
    return ok, certificate


def hom_space_dim(R: BoundaryRepresentation, a: int, b: int) -> int:
    """Dimension of the intertwiner space between blocks ``a`` and ``b``.

    Solves T rho_a(gen) = rho_b(gen) T for all generators exactly.  The
    generators are partial injections, so every constraint either equates
    two entries of T or forces one to zero; a union-find over the entries
    gives the dimension as the number of free entry classes.
    """
    A = R.classes[a]
    B = R.classes[b]
    pos_a = {gi: j for j, gi in enumerate(A)}
    pos_b = {gi: i for i, gi in enumerate(B)}
    na, nb = len(A), len(B)
    size = na * nb
    parent = list(range(size + 1))
    zero = size

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    def entry(i: int, j: int) -> int:
        return i * na + j

    for label in R.generator_labels():
        m = R.generator_map(label)
        f = {}
        for gj, gi in m.items():
            if gj in pos_a:
                if gi not in pos_a:
                    raise InternalInvariantError("generator leaves a block")
                f[pos_a[gj]] = pos_a[gi]
        h = {}
        for gj, gi in m.items():
            if gj in pos_b:
                h[pos_b[gj]] = pos_b[gi]
        h_inv = {i: j for j, i in h.items()}
        for j in range(na):
            fj = f.get(j)
            for i in range(nb):
                hi = h_inv.get(i)
                if fj is not None and hi is not None:
                    union(entry(i, fj), entry(hi, j))
                elif fj is not None:
                    union(entry(i, fj), zero)
                elif hi is not None:
                    union(entry(hi, j), zero)
    zero_root = find(zero)
    roots = {find(e) for e in range(size)}
    roots.discard(zero_root)
    return len(roots)


# -- matrix units ----------------------------------------------------------


@dataclass(frozen=True)
class MatrixUnitSystem:
    """Matrix units e_{alpha,beta} indexed by the entry paths of a line point.

    ``lam`` lists the index set: the line vertices (as length-0 paths)
    followed by the paths entering the line from outside; ``grid[i][j]``
    is the unit for (lam[i], lam[j]).  All units are single monomials.
    """

    line: tuple[str, ...]
    line_edges: tuple[EdgeRef, ...]
    lam: tuple[Path, ...]
    grid: tuple[tuple[AlgebraElement, ...], ...]

    def unit(self, i: int, j: int) -> AlgebraElement:
        return self.grid[i][j]


def lambda_index_set(g: Graph, v: str) -> tuple[tuple[str, ...], tuple[EdgeRef, ...], tuple[Path, ...]]:
    """The line through ``v`` and the index set of its matrix units.

    The index set contains one length-0 path per line vertex plus every
    path whose last edge enters the line from outside (no shorter prefix
    already ends on the line).  Raises when the set is infinite.
    """
    chain, edges = line_through(g, v)
    tset = set(chain)
    entering = []
    for w in chain:
        for b in g.in_bundles(w):
            if b.source in tset:
                continue
            if is_omega(b.multiplicity):
                raise NotFinitelyPresentableError(
                    f"omega bundle {b.name!r} feeds the line at {w!r}; "
                    "the matrix-unit index set is infinite"
                )
            heads = paths_into(g, b.source)
            for head in heads:
                for i in range(b.multiplicity):
                    entering.append(Path(edges=head.edges + (EdgeRef(b.name, i),)))
    entering.sort(key=path_key)
    lam = tuple(vertex_path(w) for w in chain) + tuple(entering)
    return chain, edges, lam


def lambda_size(g: Graph, v: str) -> int | None:
    """|Lambda| for the line point ``v``; None when countably infinite."""
    chain, _ = line_through(g, v)
    tset = set(chain)
    total = len(chain)
    for w in chain:
        for b in g.in_bundles(w):
            if b.source in tset:
                continue
            if is_omega(b.multiplicity):
                return None
            heads = count_paths_into(g, b.source)
            if heads is None:
                return None
            total += b.multiplicity * heads
    return total


def matrix_units(g: Graph, v: str) -> MatrixUnitSystem:
    """Build and verify the matrix units of the ideal generated by a line point.

    For entry paths alpha, beta ending at line positions i <= j the unit
    is s_(alpha mu) s_beta* with mu the line path from i to j (the
    adjoint shape when i > j).  All delta relations and the star relation
    are verified symbolically before returning.
    """
    chain, edges, lam = lambda_index_set(g, v)
    pos = {w: i for i, w in enumerate(chain)}

    def line_path(i: int, j: int) -> Path:
        return Path(edges=edges[i:j]) if i < j else vertex_path(chain[i])

    monos = []
    for pa in lam:
        row = []
        i = pos[g.path_range(pa)]
        for pb in lam:
            j = pos[g.path_range(pb)]
            if i <= j:
                row.append(Monomial(concat(pa, line_path(i, j)), pb))
            else:
                row.append(Monomial(pa, concat(pb, line_path(j, i))))
        monos.append(row)
    n = len(lam)
    line_edges = set(edges)
    for i in range(n):
        for j in range(n):
            m = monos[i][j]
            if Monomial(m.beta, m.alpha) != monos[j][i]:
                raise InternalInvariantError("matrix units are not star symmetric")
    for i in range(n):
        for j in range(n):
            mij = monos[i][j]
            for k in range(n):
                for l in range(n):
                    prod = multiply_monomials(g, mij, monos[k][l])
                    if j == k:
                        # products sit further down the line than the
                        # target unit; the shared tail contracts one
                        # edge at a time through the line relations
                        if prod is None or (
                            _collapse_line_tail(g, line_edges, prod)
                            != monos[i][l]
                        ):
                            raise InternalInvariantError(
                                f"unit product ({i},{j})({k},{l}) is not unit ({i},{l})"
                            )
                    elif prod is not None:
                        raise InternalInvariantError(
                            f"unit product ({i},{j})({k},{l}) should vanish"
                        )
    grid = tuple(
        tuple(element([(m, Fraction(1))]) for m in row) for row in monos
    )
    return MatrixUnitSystem(chain, edges, lam, grid)


def naimark_isomorphism(g: Graph, v: str) -> MatrixUnitSystem:
    """Matrix units realizing the whole algebra for a witnessing line point.

    Requires that the saturation of the line point's tree is every
    vertex.  Checks that the algebra dimension equals |Lambda| squared
    and that rewriting each sink-basis monomial into unit coordinates is
    a bijection onto Lambda x Lambda.
    """
    if set(saturate(g, tree_of(g, v))) != set(g.vertices):
        raise ContractError(
            f"line point {v!r} does not witness the uniqueness condition"
        )
    sys = matrix_units(g, v)
    n = len(sys.lam)
    if dimension(g) != n * n:
        raise InternalInvariantError("algebra dimension differs from |Lambda|^2")
    tset = set(sys.line)
    line_edges = set(sys.line_edges)
    lam_index = {p: i for i, p in enumerate(sys.lam)}

    def coordinate(p: Path) -> int:
        # shortest prefix of p whose range lies on the line
        if g.path_source(p) in tset:
            prefix = vertex_path(g.path_source(p))
        else:
            prefix = None
            for k in range(1, p.length + 1):
                if g.range_of(p.edges[k - 1]) in tset:
                    prefix = Path(edges=p.edges[:k])
                    break
            if prefix is None:
                raise InternalInvariantError(f"basis path never meets the line: {p}")
        i = lam_index.get(prefix)
        if i is None:
            raise InternalInvariantError(f"entry prefix is not a Lambda member: {prefix}")
        return i

    seen = set()
    sinks = [t for t in g.vertices if not g.out_bundles(t)]
    for t in sinks:
        for alpha in paths_into(g, t):
            for beta in paths_into(g, t):
                i, j = coordinate(alpha), coordinate(beta)
                expected = monomial_of(sys, i, j)
                got = _collapse_line_tail(g, line_edges, Monomial(alpha, beta))
                if got != expected:
                    raise InternalInvariantError(
                        "sink monomial does not reduce to its matrix unit"
                    )
                if (i, j) in seen:
                    raise InternalInvariantError("unit coordinates repeat")
                seen.add((i, j))
    if len(seen) != n * n:
        raise InternalInvariantError("unit coordinates do not cover Lambda x Lambda")
    return sys


def monomial_of(sys: MatrixUnitSystem, i: int, j: int) -> Monomial:
    return sys.grid[i][j].terms[0][0]


def _drop_last(g: Graph, p: Path) -> Path:
    if p.length == 1:
        return vertex_path(g.source_of(p.edges[0]))
    return Path(edges=p.edges[:-1])


def _collapse_line_tail(g: Graph, line_edges: set, m: Monomial) -> Monomial:
    """Strip a shared line tail: s_(a e) s_(b e)* = s_a s_b* for line edges e.

    Valid because every line vertex is regular with a single outgoing
    edge, so its summation relation has one term.
    """
    alpha, beta = m.alpha, m.beta
    while (
        alpha.length > 0
        and beta.length > 0
        and alpha.edges[-1] == beta.edges[-1]
        and alpha.edges[-1] in line_edges
    ):
        alpha, beta = _drop_last(g, alpha), _drop_last(g, beta)
    return Monomial(alpha, beta)
