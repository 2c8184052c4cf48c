"""Graph self-maps: iteration, the induced direction map, and the integer
transition matrix with exact Perron-Frobenius tests."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GrowthCapError, MalformedMapError, MalformedPathError, PrimitivityError
from .graph import MarkedGraph, infer_graph_structure
from .wordops import (
    count_letters,
    image_table,
    inverse_word,
    is_reduced,
    iterate_word,
    reduce_word,
    substitute,
)

DEFAULT_MAX_IMAGE_LEN = 10**6


@dataclass(frozen=True)
class GraphMap:
    """A self-map of a marked graph given by reduced images of positive edges."""

    graph: MarkedGraph
    images: tuple  # images[e-1] is the word for positive edge e

    def __post_init__(self):
        g = self.graph
        for e, w in enumerate(self.images, start=1):
            if not w:
                raise MalformedMapError(f"empty image for edge {g.alphabet.token(e)}")
            if not is_reduced(w):
                raise MalformedMapError(f"image of {g.alphabet.token(e)} is not reduced")
            if not g.is_composable(w):
                raise MalformedMapError(f"image of {g.alphabet.token(e)} is not composable")
        # endpoint coherence: equivalent directions must map to a common vertex
        for v in range(g.num_vertices):
            targets = {g.vertex_of(self.initial_direction(d)) for d in g.directions_at(v)}
            if len(targets) > 1:
                raise MalformedMapError("map does not send vertices to vertices")

    @classmethod
    def from_images(cls, edge_images, rank, alphabet=None, declared_vertices=None, strict=False):
        graph, images = infer_graph_structure(
            edge_images, rank, alphabet=alphabet, declared_vertices=declared_vertices, strict=strict
        )
        return cls(graph, tuple(images[e] for e in range(1, graph.n_edges + 1)))

    @property
    def n(self):
        return self.graph.n_edges

    def image_of(self, letter):
        return self.images[letter - 1] if letter > 0 else inverse_word(self.images[-letter - 1])

    def initial_direction(self, direction):
        """The direction map D: d = D0(e) maps to D0(g(e))."""
        return self.image_of(direction)[0]

    def table(self):
        return image_table({e: self.images[e - 1] for e in range(1, self.n + 1)}, self.n)

    def describe(self):
        al = self.graph.alphabet
        return {al.token(e): al.text(self.images[e - 1]) for e in range(1, self.n + 1)}


def map_fingerprint(g: GraphMap):
    """Identity of a map for certificate validation."""
    return (g.graph.alphabet.names, g.graph.vertex_of_slot, g.images)


def apply_to_path(g: GraphMap, path, reduce=True, max_len=DEFAULT_MAX_IMAGE_LEN):
    """Image of an edge path: concatenated edge images, reduced on request."""
    path = tuple(path)
    if not g.graph.is_composable(path):
        raise MalformedPathError("path is not composable in the graph")
    if reduce:
        try:
            return substitute(path, g.table(), g.n, -1, max_len)
        except OverflowError:
            raise GrowthCapError("image exceeds length cap", cap=max_len) from None
    out = []
    for x in path:
        out.extend(g.image_of(x))
        if len(out) > max_len:
            raise GrowthCapError("image exceeds length cap", cap=max_len)
    return tuple(out)


def iterate(g: GraphMap, k, max_len=DEFAULT_MAX_IMAGE_LEN) -> GraphMap:
    """The k-fold composite as a GraphMap with reduced images."""
    if k < 1:
        raise ValueError("k must be >= 1")
    table = g.table()
    new_images = []
    for e in range(1, g.n + 1):
        try:
            w = iterate_word((e,), table, g.n, k, -1, max_len)
        except OverflowError:
            raise GrowthCapError(f"iterate({k}) exceeds length cap", cap=max_len) from None
        w = reduce_word(w)
        if not w:
            raise MalformedMapError("an edge image collapses under iteration")
        new_images.append(tuple(w))
    return GraphMap(g.graph, tuple(new_images))


@dataclass(frozen=True)
class DirectionMap:
    """The induced dynamics on the finite direction set."""

    graph: MarkedGraph
    mapping: dict = field(compare=False)

    def __call__(self, direction):
        return self.mapping[direction]

    def orbit(self, direction):
        seen = {}
        d = direction
        while d not in seen:
            seen[d] = len(seen)
            d = self.mapping[d]
        return list(seen), seen[d]

    def items(self):
        return self.mapping.items()


def direction_map(g: GraphMap) -> DirectionMap:
    return DirectionMap(g.graph, {d: g.initial_direction(d) for d in g.graph.alphabet.directions()})


@dataclass(frozen=True)
class TransitionMatrix:
    """Nonnegative integer matrix counting unsigned edge crossings."""

    entries: tuple  # row-major, entry[i][j] = crossings of edge i+1 by image of j+1

    @property
    def n(self):
        return len(self.entries)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def column_sums(self):
        n = self.n
        return tuple(sum(self.entries[i][j] for i in range(n)) for j in range(n))

    def mul(self, other):
        n = self.n
        a, b = self.entries, other.entries
        return TransitionMatrix(
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )
        )

    def power(self, k):
        n = self.n
        result = TransitionMatrix(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result

    def is_positive(self):
        return all(v > 0 for row in self.entries for v in row)

    def mul_vector(self, v):
        n = self.n
        return [sum(self.entries[i][j] * v[j] for j in range(n)) for i in range(n)]

    def rows(self):
        return [list(r) for r in self.entries]


def transition_matrix(g: GraphMap) -> TransitionMatrix:
    n = g.n
    cols = [count_letters(g.images[j - 1], n) for j in range(1, n + 1)]
    return TransitionMatrix(tuple(tuple(cols[j][i + 1] for j in range(n)) for i in range(n)))


def wielandt_bound(n):
    return n * n - 2 * n + 2 if n > 1 else 1


def is_primitive(m: TransitionMatrix):
    """(flag, witness): least exponent within the Wielandt bound whose power
    is strictly positive, or (False, None)."""
    bound = wielandt_bound(m.n)
    p = m
    for k in range(1, bound + 1):
        if p.is_positive():
            return True, k
        p = p.mul(m)
    return False, None


def pf_eigenvalue(m: TransitionMatrix, rel_tol=Fraction(1, 10**9), max_rounds=10000):
    """Dominant eigenvalue of a primitive matrix by integer power iteration.

    Returns (estimate, lower, upper) with exact rational Collatz-Wielandt
    bounds; the bracket is tightened until its relative width is below
    ``rel_tol``, so the rationals are rigorous outer bounds.
    """
    primitive, witness = is_primitive(m)
    if not primitive:
        raise PrimitivityError("pf_eigenvalue requires a primitive matrix")
    b = m.power(witness)  # strictly positive: Collatz-Wielandt bracket contracts
    v = [1] * m.n
    lo, hi = Fraction(0), None
    for _ in range(max_rounds):
        w = b.mul_vector(v)
        ratios = [Fraction(w[i], v[i]) for i in range(m.n)]
        lo_b, hi_b = min(ratios), max(ratios)
        lo = max(lo, lo_b)
        hi = hi_b if hi is None else min(hi, hi_b)
        if hi - lo <= rel_tol * lo:
            break
        shrink = min(w)
        v = [x // shrink if shrink > 1 else x for x in w]
    root = lambda f: float(f) ** (1.0 / witness)
    lo_l, hi_l = _nth_root_bounds(lo, witness), _nth_root_bounds(hi, witness, upper=True)
    return root((lo + hi) / 2), lo_l, hi_l


def _nth_root_bounds(value: Fraction, k: int, upper=False, tol=Fraction(1, 10**12)):
    """Rational bound on value**(1/k), from below (default) or above."""
    if k == 1:
        return value
    if value <= 0:
        return Fraction(0)
    lo, hi = Fraction(0), max(Fraction(1), value)
    while hi - lo > tol * max(hi, 1):
        mid = (lo + hi) / 2
        if mid**k <= value:
            lo = mid
        else:
            hi = mid
    return hi if upper else lo
