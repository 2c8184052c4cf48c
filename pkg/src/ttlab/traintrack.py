"""Legality structure of a graph map: periodic directions, illegal turns,
gates, and the train track property with its brute-force oracle."""

from dataclasses import dataclass
from math import lcm

from .errors import GrowthCapError
from .mapcore import DEFAULT_MAX_IMAGE_LEN, GraphMap, direction_map
from .wordops import is_reduced, word_turn_pairs


def turn(d1, d2):
    """Canonical unordered pair of directions; degenerate pairs rejected."""
    if d1 == d2:
        raise ValueError("degenerate turn")
    return (d1, d2) if d1 < d2 else (d2, d1)


def turns_of_word(word):
    return [tuple(p) for p in word_turn_pairs(word)]


def periodic_directions(dmap):
    """Directions on cycles of the direction map, with minimal periods."""
    out = {}
    for d in dmap.graph.alphabet.directions():
        orbit, entry = dmap.orbit(d)
        cycle = orbit[entry:]
        if orbit[0] in cycle:
            out[d] = len(cycle)
    return out


def illegal_turns(g: GraphMap):
    """Nondegenerate same-vertex turns whose directions some power of the
    direction map identifies.

    Computed by refining the 'same image under D^k' identification until it
    stabilizes; the direction count bounds the number of rounds.
    """
    dmap = direction_map(g)
    dirs = g.graph.alphabet.directions()
    # collide[d] tracks the eventual collision class: iterate to a power
    # where the image partition stabilizes
    images = {d: d for d in dirs}
    collided = set()
    for _ in range(len(dirs)):
        images = {d: dmap(images[d]) for d in dirs}
        for i, d1 in enumerate(dirs):
            for d2 in dirs[i + 1 :]:
                if images[d1] == images[d2]:
                    collided.add(turn(d1, d2))
    return frozenset(
        t for t in collided if g.graph.vertex_of(t[0]) == g.graph.vertex_of(t[1])
    )


@dataclass(frozen=True)
class GateStructure:
    """Per-vertex gates plus the global legality data they come from."""

    graph: object
    gates: tuple  # tuple of frozensets of directions
    illegal: frozenset
    periodic: tuple  # ((direction, period), ...)

    def gates_at(self, v):
        return tuple(s for s in self.gates if self.graph.vertex_of(next(iter(s))) == v)

    def num_gates_at(self, v):
        return len(self.gates_at(v))

    def periodic_at(self, v):
        return tuple(d for d, _ in self.periodic if self.graph.vertex_of(d) == v)

    def is_legal(self, t):
        return t not in self.illegal

    def direction_period_lcm(self):
        periods = [p for _, p in self.periodic] or [1]
        return lcm(*periods)


def gates(g: GraphMap) -> GateStructure:
    ill = illegal_turns(g)
    graph = g.graph
    dirs = graph.alphabet.directions()
    parent = {d: d for d in dirs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d1, d2 in ill:
        parent[find(d1)] = find(d2)
    classes = {}
    for d in dirs:
        classes.setdefault(find(d), []).append(d)
    per = periodic_directions(direction_map(g))
    ordered = sorted(classes.values(), key=lambda c: (graph.vertex_of(c[0]), sorted(c)))
    return GateStructure(
        graph,
        tuple(frozenset(c) for c in ordered),
        ill,
        tuple(sorted(per.items())),
    )


def global_power_bound(g: GraphMap):
    """lcm of direction-cycle and vertex-cycle lengths: the least power
    fixing every periodic direction and every periodic vertex."""
    dmap = direction_map(g)
    per = periodic_directions(dmap)
    graph = g.graph
    vmap = {v: graph.vertex_of(dmap(graph.directions_at(v)[0])) for v in range(graph.num_vertices)}
    vperiods = []
    for v in vmap:
        seen = {}
        x = v
        while x not in seen:
            seen[x] = len(seen)
            x = vmap[x]
        if x == v:
            vperiods.append(len(seen) - seen[x])
    return lcm(*(list(per.values()) + vperiods or [1]))


def is_train_track(g: GraphMap):
    """(flag, certificate): reduced images that never take an illegal turn.

    The certificate names the offending edge and turn on failure, and is
    None on success.  Validated elsewhere against the direct local
    injectivity oracle.
    """
    al = g.graph.alphabet
    for e in range(1, g.n + 1):
        if not is_reduced(g.images[e - 1]):
            return False, {"edge": al.token(e), "reason": "image not reduced"}
    ill = illegal_turns(g)
    for e in range(1, g.n + 1):
        for t in turns_of_word(g.images[e - 1]):
            if t in ill:
                return False, {
                    "edge": al.token(e),
                    "reason": "image takes an illegal turn",
                    "turn": [al.token(t[0]), al.token(t[1])],
                }
    return True, None


def brute_force_local_injectivity(g: GraphMap, kmax=6, max_len=DEFAULT_MAX_IMAGE_LEN):
    """Directly check that the literal (unreduced) composite g^k(e) is a
    reduced word for every edge and every k <= kmax."""
    words = {e: (e,) for e in range(1, g.n + 1)}
    for _ in range(kmax):
        new = {}
        for e, w in words.items():
            out = []
            for x in w:
                out.extend(g.image_of(x))
                if len(out) > max_len:
                    raise GrowthCapError("brute-force iterate exceeds cap", cap=max_len)
            if not is_reduced(out):
                return False
            new[e] = tuple(out)
        words = new
    return True
