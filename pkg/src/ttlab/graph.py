"""Graphs with an inverse-closed edge alphabet, and vertex-structure inference.

Conventions used throughout the package:

* a positive edge is a lowercase symbol; its inverse is the same symbol
  uppercased (``A`` means a-bar);
* internally a letter is a nonzero int, +e / -e for the e-th edge (1-based);
* a *direction* is the germ of an oriented edge at its initial vertex, so
  directions and letters coincide: direction +e sits at the initial vertex
  of e, direction -e at its terminal vertex;
* an edge path is a tuple of letters, composable when the terminal vertex
  of each letter equals the initial vertex of the next.
"""

import warnings
from dataclasses import dataclass
from itertools import count

from .errors import MalformedMapError, MalformedPathError, RankMismatchError
from .wordops import inverse_word, is_reduced, reduce_word

__all__ = [
    "Alphabet",
    "MarkedGraph",
    "reduce_path",
    "inverse_path",
    "infer_graph_structure",
]


@dataclass(frozen=True)
class Alphabet:
    """Names for the positive edges; uppercase renders the inverse."""

    names: tuple

    def __post_init__(self):
        seen = set()
        for nm in self.names:
            if not nm.isalpha() or not nm.islower():
                raise MalformedMapError(f"edge symbol {nm!r} must be lowercase alphabetic")
            if nm in seen:
                raise MalformedMapError(f"duplicate edge symbol {nm!r}")
            seen.add(nm)

    @property
    def n(self):
        return len(self.names)

    def letter(self, token):
        base = token.lower()
        try:
            e = self.names.index(base) + 1
        except ValueError:
            raise MalformedMapError(f"unknown edge symbol {token!r}") from None
        return -e if token != base else e

    def token(self, letter):
        name = self.names[abs(letter) - 1]
        return name.upper() if letter < 0 else name

    def word(self, text):
        """Parse a word; accepts 'cab', 'c a b' or an iterable of tokens."""
        tokens = text.split() if isinstance(text, str) and " " in text else list(text)
        if len(tokens) == 1 and isinstance(tokens[0], str) and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        return tuple(self.letter(t) for t in tokens)

    def text(self, word, sep=""):
        return sep.join(self.token(x) for x in word)

    def directions(self):
        n = self.n
        return tuple(range(1, n + 1)) + tuple(range(-1, -n - 1, -1))


@dataclass(frozen=True)
class MarkedGraph:
    """Finite graph presented by its direction set partitioned into vertices.

    ``vertex_of`` maps each direction (via ``slot``) to a vertex id in
    ``range(num_vertices)``.  Rank is |edges| - |vertices| + 1 and must be
    at least 1.  The valence >= 3 convention is enforced only in strict
    mode; otherwise low-valence vertices draw a warning.
    """

    alphabet: Alphabet
    vertex_of_slot: tuple
    rank: int

    @property
    def n_edges(self):
        return self.alphabet.n

    @property
    def num_vertices(self):
        return max(self.vertex_of_slot) + 1

    def vertex_of(self, direction):
        return self.vertex_of_slot[direction + self.n_edges]

    def initial_vertex(self, letter):
        return self.vertex_of(letter)

    def terminal_vertex(self, letter):
        return self.vertex_of(-letter)

    def directions_at(self, v):
        return tuple(d for d in self.alphabet.directions() if self.vertex_of(d) == v)

    def vertices(self):
        return tuple(frozenset(self.directions_at(v)) for v in range(self.num_vertices))

    def valence(self, v):
        return len(self.directions_at(v))

    def is_composable(self, word):
        return all(
            self.terminal_vertex(word[i]) == self.initial_vertex(word[i + 1])
            for i in range(len(word) - 1)
        )

    def check_valences(self, strict=False):
        bad = [v for v in range(self.num_vertices) if self.valence(v) < 3]
        if bad and strict:
            raise MalformedMapError(f"vertices {bad} have valence < 3")
        if bad:
            warnings.warn(f"vertices {bad} have valence < 3", stacklevel=2)
        return not bad


def reduce_path(word, graph=None):
    """Freely reduce an edge path; idempotent.

    With a graph, non-composable input is rejected first.
    """
    word = tuple(word)
    if graph is not None and not graph.is_composable(word):
        raise MalformedPathError("path is not composable in the graph")
    return reduce_word(word)


def inverse_path(word):
    return inverse_word(tuple(word))


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            return True
        return False


def infer_graph_structure(edge_images, declared_rank, alphabet=None, declared_vertices=None, strict=False):
    """Finest vertex partition making every image composable and the vertex
    map well defined; verified against the declared rank.

    ``edge_images`` maps each positive edge (symbol or 1-based int) to a word
    (string or letter tuple).  An explicit partition overrides inference but
    is checked for consistency (it must coarsen the inferred one).
    """
    if alphabet is None:
        names = sorted(str(k).lower() for k in edge_images)
        alphabet = Alphabet(tuple(names))
    n = alphabet.n
    images = {}
    for key, val in edge_images.items():
        e = key if isinstance(key, int) else alphabet.letter(key)
        if e < 0:
            raise MalformedMapError("edge images must be given on positive edges")
        word = alphabet.word(val) if isinstance(val, str) else tuple(val)
        if not word:
            raise MalformedMapError(f"empty image for edge {alphabet.token(e)}")
        if not is_reduced(word):
            raise MalformedMapError(f"image of edge {alphabet.token(e)} is not reduced")
        images[e] = word
    if sorted(images) != list(range(1, n + 1)):
        raise MalformedMapError("images must cover every positive edge exactly once")

    dirs = alphabet.directions()
    uf = _UnionFind(dirs)
    # composability inside every image word
    for w in images.values():
        for i in range(len(w) - 1):
            uf.union(-w[i], w[i + 1])

    def d0(direction):
        if direction > 0:
            return images[direction][0]
        return -images[-direction][-1]

    # congruence: equivalent directions must have equivalent image directions
    changed = True
    while changed:
        changed = False
        classes = {}
        for d in dirs:
            classes.setdefault(uf.find(d), []).append(d)
        for members in classes.values():
            head = d0(members[0])
            for d in members[1:]:
                if uf.union(head, d0(d)):
                    changed = True

    roots = {}
    ids = count()
    vertex_of = {}
    for d in dirs:
        r = uf.find(d)
        if r not in roots:
            roots[r] = next(ids)
        vertex_of[d] = roots[r]

    if declared_vertices is not None:
        declared = [frozenset(alphabet.letter(t) for t in cls) for cls in declared_vertices]
        flat = [d for cls in declared for d in cls]
        if sorted(flat) != sorted(dirs):
            raise MalformedMapError("vertex declaration must partition the direction set")
        where = {}
        for i, cls in enumerate(declared):
            for d in cls:
                where[d] = i
        for d in dirs:
            # declared classes may only merge inferred ones, never split them
            if where[d] != where[min(c for c in dirs if vertex_of[c] == vertex_of[d])]:
                raise MalformedMapError(
                    "vertex declaration splits directions forced together by the map"
                )
        vertex_of = where

    num_vertices = len(set(vertex_of.values()))
    rank = n - num_vertices + 1
    if rank != declared_rank:
        raise RankMismatchError(
            f"inferred rank {rank} (edges={n}, vertices={num_vertices}) "
            f"!= declared rank {declared_rank}"
        )
    if rank < 1:
        raise MalformedMapError("graph rank must be at least 1")

    slots = [0] * (2 * n + 1)
    for d in dirs:
        slots[d + n] = vertex_of[d]
    graph = MarkedGraph(alphabet, tuple(slots), rank)
    graph.check_valences(strict=strict)
    return graph, images
