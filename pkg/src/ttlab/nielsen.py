"""Periodic Nielsen path detection.

Two independent routes:

* ``find_ipnps`` runs the guided case analysis per illegal turn: grow a pair
  of legal stems, compare their iterated images, and branch on the shape of
  the cancellation (contained image -> edge addition; legal overhang turn ->
  rejection; stem-containing overhangs -> a certified path between fixed
  points).  Bounded by a power bound (the least power fixing all periodic
  directions and vertices) and a length bound from bounded cancellation.

* ``bounded_pnp_oracle`` enumerates every reduced composable candidate up to
  caps, including truncations at interior fixed points, and tests the
  invariance condition directly.

Interior fixed points stay symbolic: the fixed point of g^k inside edge e is
named by an interior occurrence of e in g^k(e).  Occurrence q of n letters
is strictly inside e exactly when 1 < q < n; q = 1 and q = n degenerate to
the endpoints of e.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconclusiveSearchError, PrimitivityError
from .mapcore import (
    DEFAULT_MAX_IMAGE_LEN,
    GraphMap,
    direction_map,
    is_primitive,
    map_fingerprint,
    pf_eigenvalue,
    transition_matrix,
)
from .traintrack import gates as compute_gates, global_power_bound, is_train_track, turn
from .wordops import backend, concat_reduce, inverse_word, lcp_len, reduce_word


# ---------------------------------------------------------------------------
# symbolic fixed points inside edges


@dataclass(frozen=True, order=True)
class InteriorPoint:
    """Fixed point of g^period strictly inside a positive edge, named by the
    interior occurrence of that edge in its own iterated image."""

    edge: int  # positive letter
    period: int
    occurrence: int  # 1-based position, strictly interior

    def key(self):
        return ("interior", self.edge, self.period, self.occurrence)


class _PowerWords:
    """Materialized g^k(direction) words with a hard length guard."""

    def __init__(self, gm: GraphMap, max_len=DEFAULT_MAX_IMAGE_LEN):
        self.gm = gm
        self.n = gm.n
        self.table = gm.table()
        self.max_len = max_len
        self.matrix = transition_matrix(gm)
        self._words = {
            1: {d: list(self.table[d + self.n]) for d in gm.graph.alphabet.directions()}
        }

    def word(self, direction, k):
        kernel = backend()
        while k not in self._words:
            prev = max(self._words)
            self._words[prev + 1] = {
                d: kernel.substitute(w, self.table, self.n, -1, self.max_len)
                for d, w in self._words[prev].items()
            }
        return self._words[k][direction]

    def length(self, direction, k):
        return len(self.word(direction, k))


def interior_occurrences(word, direction):
    return [q for q in range(2, len(word)) if word[q - 1] == direction]


def lift_occurrence(pw: _PowerWords, edge, q, d, target):
    """Occurrence position at power ``target`` (a multiple of d) of the
    g^d-fixed point inside ``edge`` at occurrence ``q``.

    Letters strictly before the point obey
    pos(s+d) = |g^s(prefix_{q-1}(g^d(edge)))| + pos(s).
    """
    if target % d:
        raise ValueError("target power must be a multiple of the period")
    n = pw.n
    counts = [0] * n
    for x in pw.word(edge, d)[: q - 1]:
        counts[abs(x) - 1] += 1
    pos = q - 1
    s = d
    while s < target:
        m = pw.matrix.power(s)
        image_len = sum(
            sum(m.entries[i][j] for i in range(n)) * counts[j] for j in range(n)
        )
        pos += image_len
        s += d
    return pos + 1


def canonical_interior_point(pw: _PowerWords, direction, q, k) -> InteriorPoint:
    """Canonical descriptor: positive-edge coordinates and minimal period."""
    e = abs(direction)
    if direction < 0:
        q = pw.length(e, k) + 1 - q  # mirror into positive-edge coordinates
    for d in sorted(x for x in range(1, k + 1) if k % x == 0):
        wd = pw.word(e, d)
        for qd in interior_occurrences(wd, e):
            if lift_occurrence(pw, e, qd, d, k) == q:
                return InteriorPoint(e, d, qd)
    raise AssertionError("occurrence does not name a fixed point")


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class Side:
    """One side of a candidate path: whole edges, then optionally a partial
    edge ending at an interior fixed point."""

    word: tuple
    partial: int = 0  # oriented letter entered but not completed (0: none)
    point: InteriorPoint = None

    def first_direction(self):
        return self.word[0] if self.word else self.partial

    def traversal(self):
        return self.word + ((self.partial,) if self.partial else ())


@dataclass(frozen=True)
class NielsenPathRecord:
    """An indivisible periodic Nielsen path: two sides joined at an illegal
    turn, endpoints at periodic vertices or interior fixed points."""

    side1: Side
    side2: Side
    base_turn: tuple
    period: int
    vertex_slots: tuple = field(compare=False, default=None, repr=False)

    def path_word(self):
        """The path read end to end, partial edges written as whole letters."""
        return inverse_word(self.side1.traversal()) + self.side2.traversal()

    def endpoint_key(self, side: Side):
        if side.point is not None:
            return side.point.key()
        last = side.word[-1]
        n = len(self.vertex_slots) // 2
        return ("vertex", self.vertex_slots[-last + n])

    def endpoint_keys(self):
        return (self.endpoint_key(self.side1), self.endpoint_key(self.side2))

    def core_length(self):
        return len(self.side1.word) + len(self.side2.word)

    def canonical_key(self):
        k1 = (self.endpoint_key(self.side1), self.path_word(), self.endpoint_key(self.side2))
        k2 = (k1[2], inverse_word(k1[1]), k1[0])
        return min(k1, k2)


def _make_record(gm, side1, side2, period):
    bt = turn(side1.first_direction(), side2.first_direction())
    rec = NielsenPathRecord(side1, side2, bt, period, gm.graph.vertex_of_slot)
    k1 = (rec.endpoint_key(side1), rec.path_word(), rec.endpoint_key(side2))
    k2 = (k1[2], inverse_word(k1[1]), k1[0])
    if k2 < k1:
        rec = NielsenPathRecord(side2, side1, bt, period, gm.graph.vertex_of_slot)
    return rec


def side_image_word(pw: _PowerWords, side: Side, k):
    """g^k image of the side up to its endpoint, in whole letters."""
    out = []
    for x in side.word:
        out += pw.word(x, k)
    if side.partial:
        point = side.point
        q = lift_occurrence(pw, point.edge, point.occurrence, point.period, k)
        if side.partial < 0:
            q = pw.length(point.edge, k) + 1 - q
        out += pw.word(side.partial, k)[: q - 1]
    return reduce_word(out)


def verify_record(gm: GraphMap, rec: NielsenPathRecord, pw: _PowerWords = None):
    """Exact re-check: tighten g^period of the path against the path itself,
    rel its symbolic endpoints."""
    pw = pw or _PowerWords(gm)
    k = rec.period
    for side in (rec.side1, rec.side2):
        if side.point is not None and k % side.point.period:
            return False
        if not side.word and not side.partial:
            return False
    u1 = side_image_word(pw, rec.side1, k)
    u2 = side_image_word(pw, rec.side2, k)
    lhs = concat_reduce(inverse_word(tuple(u1)), tuple(u2))
    rhs = inverse_word(rec.side1.word) + rec.side2.word
    return tuple(lhs) == tuple(rhs)


def _minimal_period(gm, side1, side2, period, pw):
    bt = turn(side1.first_direction(), side2.first_direction())
    for d in sorted(x for x in range(1, period) if period % x == 0):
        if side1.point is not None and d % side1.point.period:
            continue
        if side2.point is not None and d % side2.point.period:
            continue
        cand = NielsenPathRecord(side1, side2, bt, d, gm.graph.vertex_of_slot)
        if verify_record(gm, cand, pw):
            return d
    return period


# ---------------------------------------------------------------------------
# the guided search


@dataclass
class PnpCertificate:
    verdict: str  # "pnp_free" | "pnps_found" | "inconclusive"
    records: tuple
    search_bounds: dict
    trace: dict  # per illegal turn (token string) -> branch tree
    map_fingerprint: tuple

    def summary(self):
        return {
            "verdict": self.verdict,
            "num_records": len(self.records),
            "bounds": dict(self.search_bounds),
        }


def _growth_data(gm):
    """(C, lambda lower bound) for the bounded-cancellation length bound."""
    c = sum(len(w) for w in gm.images)
    m = transition_matrix(gm)
    primitive, _ = is_primitive(m)
    if not primitive:
        raise PrimitivityError("Nielsen search requires a primitive transition matrix")
    _, lo, _ = pf_eigenvalue(m)
    return c, lo


def default_bounds(gm):
    """(power bound, length bound) used by the search when not overridden."""
    p = global_power_bound(gm)
    c, lo = _growth_data(gm)
    if lo <= 1:
        raise PrimitivityError("Nielsen search requires an expanding map (PF value > 1)")
    length = math.ceil(Fraction(2 * c, 1) / (lo - 1))
    return p, max(length, 2)


def find_ipnps(
    gm: GraphMap,
    power_cap=None,
    length_cap=None,
    max_len=DEFAULT_MAX_IMAGE_LEN,
) -> PnpCertificate:
    """Identify all indivisible periodic Nielsen paths by the per-illegal-turn
    case analysis.  Caps below the derived bounds demote the verdict to
    inconclusive when hit; the derived bounds themselves terminate
    conclusively.  Requires a train track map with primitive, expanding
    transition matrix."""
    ok, cert = is_train_track(gm)
    if not ok:
        raise PrimitivityError(f"find_ipnps requires a train track map: {cert}")
    p_derived, l_derived = default_bounds(gm)
    power_bound = p_derived if power_cap is None else power_cap
    length_bound = l_derived if length_cap is None else length_cap
    power_conclusive = power_bound >= p_derived
    length_conclusive = length_bound >= l_derived

    gs = compute_gates(gm)
    dmap = direction_map(gm)
    al = gm.graph.alphabet
    graph = gm.graph
    pw = _PowerWords(gm, max_len=max_len)
    kernel = backend()
    inconclusive = []
    records = {}

    def tok(d):
        return al.token(d)

    def turn_tokens(t):
        return [tok(t[0]), tok(t[1])]

    def d_power(d, j):
        for _ in range(j):
            d = dmap(d)
        return d

    def first_collision(t):
        x, y = t
        for j in range(1, 2 * len(al.directions()) + 2):
            x, y = dmap(x), dmap(y)
            if x == y:
                return j
        raise AssertionError("turn is not illegal")

    def certify(stems, j):
        """Case (C)(i)/(C')(i): locate the fixed endpoints inside (or at the
        ends of) the last stem edges; build and verify the record."""
        images = [[], []]
        cums = [[0], [0]]
        for s in (0, 1):
            for x in stems[s]:
                images[s] += pw.word(x, j)
                cums[s].append(len(images[s]))
        gamma = lcp_len(images[0], images[1])
        sides = []
        for s in (0, 1):
            stem = stems[s]
            p = gamma + len(stem)  # 1-based position of the stem's last letter
            if not (cums[s][-2] < p <= cums[s][-1]):
                return None
            cut = p - cums[s][-2]
            nlen = cums[s][-1] - cums[s][-2]
            if cut == nlen:
                side = Side(tuple(stem))
            elif cut == 1:
                if len(stem) == 1:
                    return None
                side = Side(tuple(stem[:-1]))
            else:
                point = canonical_interior_point(pw, stem[-1], cut, j)
                side = Side(tuple(stem[:-1]), stem[-1], point)
            sides.append(side)
        trial = NielsenPathRecord(
            sides[0],
            sides[1],
            turn(sides[0].first_direction(), sides[1].first_direction()),
            j,
            graph.vertex_of_slot,
        )
        if not verify_record(gm, trial, pw):
            return None
        period = _minimal_period(gm, sides[0], sides[1], j, pw)
        rec = _make_record(gm, sides[0], sides[1], period)
        key = rec.canonical_key()
        if key not in records or records[key].period > rec.period:
            records[key] = rec
        return rec

    def run(t, stems, j, node):
        w = [[], []]
        for s in (0, 1):
            for x in stems[s]:
                w[s] += pw.word(x, j)
        while True:
            if j > power_bound:
                node["terminal"] = {
                    "case": "C(ii)-power-exhausted",
                    "j": j,
                    "conclusive": power_conclusive,
                }
                if not power_conclusive:
                    inconclusive.append(("power-cap", turn_tokens(t)))
                return
            gamma = lcp_len(w[0], w[1])
            a1, a2 = w[0][gamma:], w[1][gamma:]
            primed = not (len(stems[0]) == 1 and len(stems[1]) == 1)
            if not a1 and not a2:
                node["terminal"] = {
                    "case": "degenerate-equal-images",
                    "j": j,
                    "conclusive": True,
                }
                return
            if not a1 or not a2:
                side = 0 if not a1 else 1
                sigma = a2 if side == 0 else a1
                label = "A'" if primed else "A"
                if len(stems[side]) + 1 > length_bound:
                    node["terminal"] = {
                        "case": "length-exhausted",
                        "j": j,
                        "conclusive": length_conclusive,
                    }
                    if not length_conclusive:
                        inconclusive.append(("length-cap", turn_tokens(t)))
                    return
                last = stems[side][-1]
                cands = []
                for x in al.directions():
                    if graph.vertex_of(x) != graph.vertex_of(-last) or x == -last:
                        continue
                    if turn(-last, x) in gs.illegal:
                        continue  # sides of a Nielsen path are legal
                    dx = d_power(x, j)
                    if dx != sigma[0] and turn(dx, sigma[0]) not in gs.illegal:
                        continue  # the overhang must keep cancelling eventually
                    cands.append(x)
                node["events"].append(
                    {"case": label, "j": j, "side": side + 1, "candidates": [tok(x) for x in cands]}
                )
                if not cands:
                    node["terminal"] = {"case": "no-edge-candidates", "j": j, "conclusive": True}
                    return
                for x in cands:
                    child = {"events": [], "children": {}}
                    node["children"][tok(x)] = child
                    new_stems = [list(stems[0]), list(stems[1])]
                    new_stems[side].append(x)
                    run(t, new_stems, j, child)
                return
            tk = turn(a1[0], a2[0])
            if tk not in gs.illegal:
                node["terminal"] = {
                    "case": "B'" if primed else "B",
                    "j": j,
                    "legal_turn": turn_tokens(tk),
                    "conclusive": True,
                }
                return
            contained = (
                len(a1) >= len(stems[0])
                and a1[: len(stems[0])] == list(stems[0])
                and len(a2) >= len(stems[1])
                and a2[: len(stems[1])] == list(stems[1])
            )
            if contained:
                rec = certify(stems, j)
                if rec is not None:
                    node["events"].append(
                        {
                            "case": "C'(i)" if primed else "C(i)",
                            "j": j,
                            "record": record_summary(gm, rec),
                        }
                    )
                else:
                    node["events"].append({"case": "C-containment-unverified", "j": j})
            else:
                node["events"].append({"case": "C'(ii)" if primed else "C(ii)", "j": j})
            j += 1
            try:
                w[0] = kernel.substitute(w[0], pw.table, pw.n, -1, max_len)
                w[1] = kernel.substitute(w[1], pw.table, pw.n, -1, max_len)
            except OverflowError:
                node["terminal"] = {"case": "growth-cap", "j": j, "conclusive": False}
                inconclusive.append(("growth-cap", turn_tokens(t)))
                return

    trace = {}
    for t in sorted(gs.illegal):
        root = {"events": [], "children": {}}
        run(t, [[t[0]], [t[1]]], first_collision(t), root)
        trace[" ".join(turn_tokens(t))] = root

    recs = tuple(sorted(records.values(), key=lambda r: r.canonical_key()))
    verdict = "inconclusive" if inconclusive else ("pnps_found" if recs else "pnp_free")
    return PnpCertificate(
        verdict,
        recs,
        {
            "power_bound": power_bound,
            "length_bound": length_bound,
            "derived_power_bound": p_derived,
            "derived_length_bound": l_derived,
        },
        trace,
        map_fingerprint(gm),
    )


def record_summary(gm, rec: NielsenPathRecord):
    al = gm.graph.alphabet

    def side_desc(side):
        d = {"word": al.text(side.word)}
        if side.partial:
            d["partial"] = al.token(side.partial)
            d["point"] = {
                "edge": al.token(side.point.edge),
                "period": side.point.period,
                "occurrence": side.point.occurrence,
            }
        return d

    return {
        "side1": side_desc(rec.side1),
        "side2": side_desc(rec.side2),
        "base_turn": [al.token(rec.base_turn[0]), al.token(rec.base_turn[1])],
        "period": rec.period,
    }


def is_pnp_free(gm: GraphMap, certificate=None):
    """True iff the search concludes there are no periodic Nielsen paths;
    an inconclusive search raises instead of answering."""
    cert = certificate or find_ipnps(gm)
    if cert.verdict == "inconclusive":
        raise InconclusiveSearchError("Nielsen path search hit a configured bound")
    return cert.verdict == "pnp_free"


# ---------------------------------------------------------------------------
# exhaustive bounded oracle


def bounded_pnp_oracle(
    gm: GraphMap,
    length_cap,
    power_cap,
    indivisible_only=True,
    interior_len_cap=300000,
    max_len=DEFAULT_MAX_IMAGE_LEN,
    return_details=False,
):
    """All periodic Nielsen paths with core within ``length_cap`` letters and
    period within ``power_cap``, by direct enumeration plus invariance
    testing; filtered to the indivisible ones unless asked otherwise.

    Interior-endpoint candidates are tested at the powers whose edge images
    fit in ``interior_len_cap`` (which covers the direction-period power on
    every bundled map; the searched powers are reported in the details).
    On non-expanding maps every invariant path up to the caps is returned
    when ``indivisible_only=False``; the guided search is unsupported there.
    """
    ok, cert = is_train_track(gm)
    if not ok:
        raise PrimitivityError(f"bounded_pnp_oracle requires a train track map: {cert}")
    n = gm.n
    graph = gm.graph
    al = graph.alphabet
    pw = _PowerWords(gm, max_len=max_len)
    gs = compute_gates(gm)
    illegal = set(gs.illegal)

    m = transition_matrix(gm)
    primitive, _ = is_primitive(m)
    lam_lo = None
    if primitive:
        _, lam_lo, _ = pf_eigenvalue(m)
    expanding = bool(primitive and lam_lo is not None and lam_lo > 1)
    c_total = sum(len(w) for w in gm.images)

    interior_ks = []
    for k in range(1, power_cap + 1):
        try:
            if max(pw.length(d, k) for d in al.directions()) <= interior_len_cap:
                interior_ks.append(k)
            else:
                break
        except OverflowError:
            break

    # per-power test thresholds; a true hit's intermediate iterates are
    # themselves invariant paths, so they respect the same bounds
    if expanding:
        l_vertex = math.ceil(Fraction(2 * c_total, 1) / (lam_lo - 1))
        l_vertex = 4 * l_vertex + 2 * c_total + 16  # generous slack
    else:
        l_vertex = max_len
    t_test = {}
    for k in range(1, power_cap + 1):
        t = max(length_cap, l_vertex)
        if k in interior_ks:
            mk = max(pw.length(d, k) for d in al.directions())
            t = max(t, length_cap + 2 * mk)
        t_test[k] = t
    cont = [0] * (power_cap + 2)
    for k in range(power_cap, 0, -1):
        cont[k] = min(max(t_test[j] for j in range(k, power_cap + 1)), max_len)

    tables = {
        k: [list(pw.word(d, k)) if d else [] for d in range(-n, n + 1)] for k in interior_ks
    }
    occs = {
        k: [interior_occurrences(tables[k][d + n], d) if d else [] for d in range(-n, n + 1)]
        for k in interior_ks
    }
    dirs = sorted(al.directions())
    allowed = [[] for _ in range(2 * n + 1)]
    allowed[n] = dirs
    for x in al.directions():
        allowed[x + n] = [y for y in dirs if y != -x and graph.vertex_of(y) == graph.vertex_of(-x)]

    hits = backend().oracle_scan(
        n,
        pw.table,
        allowed,
        illegal,
        length_cap,
        power_cap,
        cont,
        interior_ks,
        tables,
        occs,
        expanding,
        max_len,
    )

    raw = {}
    for kind, word, k, extra in hits:
        entry = _raw_from_hit(gm, pw, gs, kind, word, k, extra)
        if entry is None:
            continue
        key, payload = entry
        if key not in raw or raw[key][0] > payload[0]:
            raw[key] = payload

    keyset = set(raw)
    for key in list(raw):
        keyset.add(_reverse_raw_key(key))

    records = set()
    for key, (k, sides) in raw.items():
        if indivisible_only and _splits(key, keyset):
            continue
        rec = _make_record(gm, sides[0], sides[1], _minimal_period(gm, sides[0], sides[1], k, pw))
        records.add(rec)
    records = frozenset(records)
    if return_details:
        return records, {
            "length_cap": length_cap,
            "power_cap": power_cap,
            "interior_powers": interior_ks,
            "raw_count": len(raw),
            "expanding": expanding,
        }
    return records


def _raw_from_hit(gm, pw, gs, kind, word, k, extra):
    """Validate a scan hit exactly and normalize it to a keyed raw path."""
    n = gm.n
    graph = gm.graph
    left = right = None
    if kind in (1, 3):
        q1 = extra if kind == 1 else extra[0]
        left = canonical_interior_point(pw, -word[0], q1, k)
    if kind in (2, 3):
        q2 = extra if kind == 2 else extra[1]
        right = canonical_interior_point(pw, word[-1], q2, k)

    core = list(word)
    if left is not None:
        core = core[1:]
    if right is not None:
        core = core[:-1]
    z = backend().iterate_word(core, pw.table, n, k, -1, pw.max_len)
    u1 = []
    if left is not None:
        eps1 = -word[0]
        ql = lift_occurrence(pw, left.edge, left.occurrence, left.period, k)
        if eps1 < 0:
            ql = pw.length(left.edge, k) + 1 - ql
        u1 = pw.word(eps1, k)[: ql - 1]
    u2 = []
    if right is not None:
        eps2 = word[-1]
        qr = lift_occurrence(pw, right.edge, right.occurrence, right.period, k)
        if eps2 < 0:
            qr = pw.length(right.edge, k) + 1 - qr
        u2 = pw.word(eps2, k)[: qr - 1]
    lhs = concat_reduce(inverse_word(tuple(u1)), tuple(z), tuple(u2))
    if list(lhs) != core:
        return None

    lk = left.key() if left is not None else ("vertex", graph.vertex_of(word[0]))
    rk = right.key() if right is not None else ("vertex", graph.vertex_of(-word[-1]))
    key = ((lk, tuple(word), rk), (left is not None, right is not None))
    sides = _sides_from_raw(gm, gs, key, left, right)
    if sides is None:
        return None
    rev = _reverse_raw_key(key)
    if rev < key:
        key = rev
    return key, (k, sides)


def _reverse_raw_key(key):
    (lk, word, rk), (lt, rt) = key
    return ((rk, inverse_word(word), lk), (rt, lt))


def _sides_from_raw(gm, gs, key, left, right):
    """Split the path at its unique illegal turn into two sides."""
    (lk, word, rk), (lt, rt) = key
    cuts = [i for i in range(len(word) - 1) if turn(-word[i], word[i + 1]) in gs.illegal]
    if not cuts:
        return None  # invariant legal path: impossible for expanding maps
    i = cuts[0]
    w1 = inverse_word(word[: i + 1])
    w2 = word[i + 1 :]
    side1 = Side(w1[:-1], w1[-1], left) if lt else Side(w1)
    side2 = Side(w2[:-1], w2[-1], right) if rt else Side(w2)
    return side1, side2


def _splits(key, keyset):
    """Does the path decompose at a known invariant path's endpoint?"""
    (lk, word, rk), (lt, rt) = key
    m = len(word)
    for other in keyset:
        (olk, ow, ork), (olt, ort) = other
        if other == key or olk != lk or olt != lt:
            continue
        lo = len(ow)
        if ort:
            if lo > m or tuple(ow) != tuple(word[:lo]):
                continue
            piece2 = ((ork, tuple(word[lo - 1 :]), rk), (True, rt))
        else:
            if lo >= m or tuple(ow) != tuple(word[:lo]):
                continue
            piece2 = ((ork, tuple(word[lo:]), rk), (False, rt))
        if piece2 in keyset or _reverse_raw_key(piece2) in keyset:
            return True
    return False


# ---------------------------------------------------------------------------
# Nielsen classes


def periodic_vertices(gm: GraphMap):
    dmap = direction_map(gm)
    graph = gm.graph
    vmap = {
        v: graph.vertex_of(dmap(graph.directions_at(v)[0])) for v in range(graph.num_vertices)
    }
    out = set()
    for v in vmap:
        seen = set()
        x = v
        while x not in seen:
            seen.add(x)
            x = vmap[x]
        if x == v:
            out.add(v)
    return out


def nielsen_classes(gm: GraphMap, records):
    """Partition of the relevant periodic points (periodic vertices plus
    record endpoints) under the 'joined by a record' relation."""
    points = {("vertex", v) for v in periodic_vertices(gm)}
    for rec in records:
        points.update(rec.endpoint_keys())
    points = sorted(points)
    parent = {p: p for p in points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rec in records:
        k1, k2 = rec.endpoint_keys()
        parent[find(k1)] = find(k2)
    classes = {}
    for p in points:
        classes.setdefault(find(p), []).append(p)
    return sorted(classes.values())
