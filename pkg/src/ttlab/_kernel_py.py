"""Pure-Python word kernel.

Letters are nonzero ints: +e for the positive edge e (1-based), -e for its
inverse.  Image tables are lists of length 2n+1 indexed by ``letter + n``
(slot n, for letter 0, is unused).  Every function here has an identical
twin in the compiled ``_kernel`` module; this module is the fallback and the
reference used by the differential tests.
"""

IS_COMPILED = False


def reduce_word(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def count_letters(w, n):
    counts = [0] * (n + 1)
    for x in w:
        counts[x if x > 0 else -x] += 1
    return counts


def word_turn_pairs(w):
    """Distinct turns taken by a path, as canonical (min,max) int pairs."""
    seen = set()
    for i in range(len(w) - 1):
        a, b = -w[i], w[i + 1]
        seen.add((a, b) if a < b else (b, a))
    return sorted(seen)


def substitute(w, imgs, n, abort_len=-1, max_len=-1):
    """Reduced image of ``w`` under the edge map given by ``imgs``.

    Returns None if the result length certifiably exceeds ``abort_len``
    (a prune, not an error); raises OverflowError past ``max_len``.  The
    stack can shrink by at most the number of letters still to be pushed,
    which is what the abort test charges against.
    """
    out = []
    if max_len < 0:
        max_len = 1 << 60
    remaining = 0
    if abort_len >= 0:
        for x in w:
            remaining += len(imgs[x + n])
    for x in w:
        img = imgs[x + n]
        if abort_len >= 0:
            remaining -= len(img)
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
        if len(out) > max_len:
            raise OverflowError("image length exceeds cap")
        if abort_len >= 0 and len(out) - remaining > abort_len:
            return None
    return out


def iterate_word(w, imgs, n, k, abort_len=-1, max_len=-1):
    cur = list(w)
    for _ in range(k):
        cur = substitute(cur, imgs, n, abort_len, max_len)
        if cur is None:
            return None
    return cur


def _lcp_len(u, v):
    m = min(len(u), len(v))
    i = 0
    while i < m and u[i] == v[i]:
        i += 1
    return i


def _is_prefix(p, w):
    if len(p) > len(w):
        return False
    return _lcp_len(p, w) == len(p)


def oracle_scan(
    n,
    imgs,
    allowed,
    illegal,
    length_cap,
    power_cap,
    cont_caps,
    interior_ks,
    tables,
    occs,
    require_illegal,
    max_len,
):
    """Enumerate reduced composable words and report periodic-path hits.

    ``allowed[slot]`` lists the letters that may follow a letter (composable
    at the shared vertex, backtracking excluded); ``allowed[n]`` lists the
    letters that may start a word.  ``illegal`` is the set of canonical
    (min,max) direction pairs forming illegal turns.  ``cont_caps[k]``
    bounds |reduce(g^k(w))| past which a candidate's power chain is cut
    off.  ``tables[k]``/``occs[k]`` give, per direction slot, the word
    g^k(d) and the 1-based positions of its interior occurrences of d
    (potential interior fixed points).  A hit is (kind, word, k, extra):

      kind 0  vertex to vertex:   reduce(g^k(w)) == w
      kind 1  interior left end:  extra = q1, occurrence in g^k(-w[0])
      kind 2  interior right end: extra = q2, occurrence in g^k(w[-1])
      kind 3  both ends interior: extra = (q1, q2)

    Spurious hits are tolerated (the caller re-verifies every one); misses
    are not.
    """
    hits = []
    word = []
    illegal_count = [0]
    interior_set = set(interior_ks)

    def tests():
        z = word
        d = len(word)
        for k in range(1, power_cap + 1):
            z = substitute(z, imgs, n, cont_caps[k], max_len)
            if z is None:
                return
            # kind 0
            if len(z) == d and z == word:
                hits.append((0, tuple(word), k, None))
            if k not in interior_set or d < 2:
                continue
            eps1 = -word[0]
            eps2 = word[-1]
            g1 = tables[k][eps1 + n]
            g2 = tables[k][eps2 + n]
            # kind 1: Z == U1 . core, U1 a nonempty prefix of g^k(eps1)
            # ending just before an interior eps1-occurrence
            core = word[1:]
            lc = d - 1
            if len(z) > lc and z[-lc:] == core:
                q1 = len(z) - lc + 1
                if q1 <= len(g1) - 1 and g1[q1 - 1] == eps1 and _is_prefix(z[: q1 - 1], g1):
                    hits.append((1, tuple(word), k, q1))
            # kind 2: U2 = reduce(inv(Z) . core) prefix of g^k(eps2)
            core = word[:-1]
            sound = len(z) - len(core)  # u2[t] == -z[-1-t] for t < sound
            ok = True
            for t in range(min(3, sound - 1)):
                if t >= len(g2) or g2[t] != -z[len(z) - 1 - t]:
                    ok = False
                    break
            if ok:
                u2 = reduce_word([-x for x in reversed(z)] + core)
                q2 = len(u2) + 1
                if u2 and q2 <= len(g2) - 1 and g2[q2 - 1] == eps2 and _is_prefix(u2, g2):
                    hits.append((2, tuple(word), k, q2))
            # kind 3: both ends interior; q1 ranges over interior
            # eps1-occurrences, U2 is then forced as inv(Z) U1 core
            core = word[1:-1]
            for q1 in occs[k][eps1 + n]:
                u1 = g1[: q1 - 1]
                t = _lcp_len(z, u1)
                # head of R = reduce(inv(Z[t:]) u1[t:] core) is predictable
                # when the segment carrying it outweighs later cancellation
                if t < len(z):
                    if len(z) - t > (len(u1) - t) + len(core) and g2[0] != -z[len(z) - 1]:
                        continue
                elif t < len(u1):
                    if len(u1) - t > len(core) and g2[0] != u1[t]:
                        continue
                r = reduce_word([-x for x in reversed(z)] + list(u1) + core)
                q2 = len(r) + 1
                if r and q2 <= len(g2) - 1 and g2[q2 - 1] == eps2 and _is_prefix(r, g2):
                    hits.append((3, tuple(word), k, (q1, q2)))

    def dfs():
        d = len(word)
        if d and not (require_illegal and illegal_count[0] == 0):
            tests()
        if d == length_cap:
            return
        for x in allowed[(word[-1] + n) if d else n]:
            ill = 0
            if d:
                a, b = -word[-1], x
                tk = (a, b) if a < b else (b, a)
                ill = 1 if tk in illegal else 0
                illegal_count[0] += ill
            word.append(x)
            dfs()
            word.pop()
            illegal_count[0] -= ill

    dfs()
    return hits
