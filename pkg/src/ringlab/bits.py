"""Bitmask helpers. Element sets of a finite structure are Python ints."""

import numpy as np


def mask_of(indices):
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def members(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def to_bool(mask, n):
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


def from_bool(arr):
    return mask_of(np.flatnonzero(arr))


def full_mask(n):
    return (1 << n) - 1


def first_true(arr):
    """Index tuple of the lexicographically first True entry, or None."""
    hits = np.argwhere(arr)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])
