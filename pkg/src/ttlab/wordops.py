"""Word operations over an inverse-closed alphabet, with kernel selection.

The compiled kernel is used when the extension built; otherwise the pure
Python twin takes over.  ``backend_name()`` reports which one is active.
Words at the API level are tuples of nonzero ints (+e edge, -e inverse).
"""

from . import _kernel_py

try:  # pragma: no cover - depends on build environment
    from . import _kernel  # type: ignore[attr-defined]

    _impl = _kernel
except ImportError:  # pragma: no cover
    _impl = _kernel_py

IS_COMPILED = bool(getattr(_impl, "IS_COMPILED", False))


def backend_name():
    return "compiled" if IS_COMPILED else "pure-python"


def backend(compiled=None):
    """The active kernel module, or the requested one (for benchmarks)."""
    if compiled is None:
        return _impl
    if compiled and not IS_COMPILED:
        raise RuntimeError("compiled kernel not available")
    return _impl if compiled else _kernel_py


def reduce_word(w):
    return tuple(_impl.reduce_word(list(w)))


def inverse_word(w):
    return tuple(-x for x in reversed(w))


def is_reduced(w):
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def concat_reduce(*words):
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def lcp_len(u, v):
    m = min(len(u), len(v))
    i = 0
    while i < m and u[i] == v[i]:
        i += 1
    return i


def image_table(images, n):
    """Slot-indexed (letter+n) image list from positive-edge images."""
    table = [()] * (2 * n + 1)
    for e in range(1, n + 1):
        w = tuple(images[e])
        table[e + n] = list(w)
        table[-e + n] = [-x for x in reversed(w)]
    return table


def substitute(w, table, n, abort_len=-1, max_len=-1):
    out = _impl.substitute(list(w), table, n, abort_len, max_len)
    return None if out is None else tuple(out)


def iterate_word(w, table, n, k, abort_len=-1, max_len=-1):
    out = _impl.iterate_word(list(w), table, n, k, abort_len, max_len)
    return None if out is None else tuple(out)


def count_letters(w, n):
    return _impl.count_letters(list(w), n)


def word_turn_pairs(w):
    return _impl.word_turn_pairs(list(w))
