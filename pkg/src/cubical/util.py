"""Small shared helpers: total ordering over mixed vertex ids."""

from __future__ import annotations


def skey(x):
    """Sort key giving a total order over the id types we allow (int, str,
    float, and tuples thereof). Needed because ints and strs do not compare."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, float):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(skey(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted((skey(y) for y in x))))
    raise TypeError(f"unsortable id type: {type(x)!r}")


def ssorted(xs):
    return sorted(xs, key=skey)
