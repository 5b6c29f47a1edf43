"""Indexing of P^(m-1)(F_p).

Representatives have first nonzero coordinate 1 and are ordered
lexicographically.  That puts the points whose leading 1 sits in the last
slot first, then those with the leading 1 one slot earlier, and so on; each
stratum lists its free trailing coordinates in base-p order.
"""

from __future__ import annotations

import numpy as np


def count(p: int, m: int) -> int:
    """Number of points of P^(m-1)(F_p)."""
    return (p ** m - 1) // (p - 1)


def _strata(p: int, m: int):
    # (leading position, offset, size)
    out = []
    off = 0
    for lead in range(m - 1, -1, -1):
        size = p ** (m - 1 - lead)
        out.append((lead, off, size))
        off += size
    return out


def point(p: int, m: int, idx: int):
    if not 0 <= idx < count(p, m):
        raise IndexError(idx)
    for lead, off, size in _strata(p, m):
        if idx < off + size:
            r = idx - off
            v = [0] * m
            v[lead] = 1
            for k in range(m - 1, lead, -1):
                v[k] = r % p
                r //= p
            return tuple(v)
    raise AssertionError("unreachable")


def index(p: int, v) -> int:
    """Index of the projective point through the nonzero vector v."""
    v = [int(x) % p for x in v]
    m = len(v)
    lead = next((i for i, x in enumerate(v) if x), None)
    if lead is None:
        raise ValueError("zero vector has no projective point")
    inv = pow(v[lead], -1, p)
    v = [(x * inv) % p for x in v]
    off = sum(p ** (m - 1 - i) for i in range(lead + 1, m))
    r = 0
    for k in range(lead + 1, m):
        r = r * p + v[k]
    return off + r


def normalize(p: int, v):
    """Canonical representative of the point through v."""
    return point(p, len(v), index(p, v))


def points_array(p: int, m: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Representatives with indices in [start, stop) as an int64 array."""
    if stop is None:
        stop = count(p, m)
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((len(idx), m), dtype=np.int64)
    for lead, off, size in _strata(p, m):
        sel = (idx >= off) & (idx < off + size)
        if not sel.any():
            continue
        r = idx[sel] - off
        block = np.zeros((len(r), m), dtype=np.int64)
        block[:, lead] = 1
        for k in range(m - 1, lead, -1):
            block[:, k] = r % p
            r = r // p
        out[sel] = block
    return out


def iter_points(p: int, m: int):
    for i in range(count(p, m)):
        yield point(p, m, i)


def chunks(total: int, parts: int):
    """Split range(total) into at most ``parts`` contiguous (start, stop) pieces."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out = []
    s = 0
    for i in range(parts):
        e = s + step + (1 if i < extra else 0)
        out.append((s, e))
        s = e
    return out
