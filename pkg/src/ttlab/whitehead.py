"""Taken-turn closure, local/stable/ideal Whitehead graphs, and index lists."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import GrowthCapError, PnpNotVerifiedError, PrimitivityError
from .mapcore import DEFAULT_MAX_IMAGE_LEN, GraphMap, direction_map, map_fingerprint
from .traintrack import gates as compute_gates, is_train_track, turns_of_word
from .wordops import word_turn_pairs


def _require_train_track(g):
    ok, cert = is_train_track(g)
    if not ok:
        raise PrimitivityError(f"operation requires a train track map: {cert}")


def taken_turns(g: GraphMap):
    """All turns crossed by some iterated edge image.

    Seeds are the turns taken by single edge images; the set is closed under
    the induced map on turns, following each seed until it re-enters the
    accumulated set.  Taken turns of a train track map are legal, so the
    turn map never degenerates on the closure.
    """
    _require_train_track(g)
    dmap = direction_map(g)
    seeds = set()
    for e in range(1, g.n + 1):
        seeds.update(turns_of_word(g.images[e - 1]))
    closure = set()
    for seed in sorted(seeds):
        t = seed
        while t not in closure:
            closure.add(t)
            a, b = dmap(t[0]), dmap(t[1])
            if a == b:
                raise AssertionError("taken turn mapped to a degenerate turn")
            t = (a, b) if a < b else (b, a)
    return frozenset(closure)


def brute_force_taken_turns(g: GraphMap, kmax, max_len=DEFAULT_MAX_IMAGE_LEN):
    """Turns appearing in some g^k(e), k <= kmax, by direct scan of the
    literal iterated words."""
    _require_train_track(g)
    found = set()
    words = {e: (e,) for e in range(1, g.n + 1)}
    for _ in range(kmax):
        new = {}
        for e, w in words.items():
            out = []
            for x in w:
                out.extend(g.image_of(x))
            if len(out) > max_len:
                raise GrowthCapError("brute-force scan exceeds cap", cap=max_len)
            found.update(tuple(p) for p in word_turn_pairs(out))
            new[e] = tuple(out)
        words = new
    return frozenset(found)


@dataclass(frozen=True)
class WhiteheadGraph:
    """Graph on directions: local at one vertex, its stable subgraph, or a
    component of the ideal graph."""

    kind: str  # "local" | "stable" | "ideal-component"
    vertex: object  # graph vertex id (None only hypothetically)
    nodes: frozenset
    edges: frozenset  # canonical direction pairs

    def components(self):
        nodes = set(self.nodes)
        adj = {d: set() for d in nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        comps = []
        while nodes:
            stack = [nodes.pop()]
            comp = set(stack)
            while stack:
                for nb in adj[stack.pop()]:
                    if nb not in comp:
                        comp.add(nb)
                        nodes.discard(nb)
                        stack.append(nb)
            comps.append(frozenset(comp))
        return sorted(comps, key=lambda c: sorted(c))

    def is_connected(self):
        return len(self.components()) <= 1


def local_whitehead_graph(g: GraphMap, v, turns=None) -> WhiteheadGraph:
    if turns is None:
        turns = taken_turns(g)
    nodes = frozenset(g.graph.directions_at(v))
    edges = frozenset(t for t in turns if t[0] in nodes and t[1] in nodes)
    return WhiteheadGraph("local", v, nodes, edges)


def stable_whitehead_graph(g: GraphMap, v, turns=None, periodic=None) -> WhiteheadGraph:
    local = local_whitehead_graph(g, v, turns)
    if periodic is None:
        periodic = compute_gates(g).periodic
    per = {d for d, _ in periodic}
    nodes = frozenset(d for d in local.nodes if d in per)
    edges = frozenset(t for t in local.edges if t[0] in nodes and t[1] in nodes)
    return WhiteheadGraph("stable", v, nodes, edges)


def _check_certificate(g, pnp_certificate):
    if pnp_certificate is None:
        raise PnpNotVerifiedError("a Nielsen-path certificate is required")
    if pnp_certificate.map_fingerprint != map_fingerprint(g):
        raise PnpNotVerifiedError("certificate does not belong to this map")
    if pnp_certificate.verdict != "pnp_free":
        raise PnpNotVerifiedError(f"certificate verdict is {pnp_certificate.verdict!r}")


def ideal_whitehead_graph(g: GraphMap, pnp_certificate):
    """Components of the disjoint union of stable graphs over vertices with
    at least three periodic directions; valid only for maps certified free
    of periodic Nielsen paths."""
    _check_certificate(g, pnp_certificate)
    turns = taken_turns(g)
    gs = compute_gates(g)
    comps = []
    for v in range(g.graph.num_vertices):
        if len(gs.periodic_at(v)) < 3:
            continue
        sw = stable_whitehead_graph(g, v, turns, gs.periodic)
        for nodes in sw.components():
            edges = frozenset(t for t in sw.edges if t[0] in nodes and t[1] in nodes)
            comps.append(WhiteheadGraph("ideal-component", v, nodes, edges))
    return comps


@dataclass(frozen=True)
class IndexList:
    """Multiset of negative half-integer singularity indices."""

    entries: tuple  # sorted Fractions
    rank: int

    @property
    def total(self):
        return sum(self.entries, Fraction(0))

    def inequality(self):
        """Position of the index sum in the window 0 > sum >= 1 - rank."""
        s = self.total
        if s >= 0 or s < 1 - self.rank:
            return "violated"
        return "boundary" if s == 1 - self.rank else "strict"

    def as_strings(self):
        return [str(e) for e in self.entries]


def index_list_pnp_free(g: GraphMap, pnp_certificate) -> IndexList:
    """One entry 1 - k/2 per ideal Whitehead graph component on k >= 3
    directions."""
    comps = ideal_whitehead_graph(g, pnp_certificate)
    entries = sorted(
        Fraction(1) - Fraction(len(c.nodes), 2) for c in comps if len(c.nodes) >= 3
    )
    return IndexList(tuple(entries), g.graph.rank)


def index_list_general(g: GraphMap, records, gate_structure=None) -> IndexList:
    """Index list from Nielsen classes of periodic points.

    ``records`` must be the complete set of indivisible periodic Nielsen
    paths.  A class with gate total n and m records inside contributes
    1 - (n - m)/2 when nonzero; interior endpoints carry exactly two gates
    (the two germs of their edge at the fixed point).
    """
    from .nielsen import nielsen_classes

    _require_train_track(g)
    gs = gate_structure or compute_gates(g)
    entries = []
    for members in nielsen_classes(g, records):
        member_set = set(members)
        total = sum(gs.num_gates_at(p[1]) if p[0] == "vertex" else 2 for p in members)
        inside = sum(1 for rec in records if set(rec.endpoint_keys()) <= member_set)
        value = Fraction(1) - Fraction(total - inside, 2)
        if value != 0:
            entries.append(value)
    return IndexList(tuple(sorted(entries)), g.graph.rank)
