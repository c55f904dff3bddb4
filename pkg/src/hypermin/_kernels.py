"""Compiled inner loops for the cardinality-sorted minimization."""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def sorted_minimal_mask(words, cards, keys, key_bits):
    """Flag the inclusion-minimal rows of a deduplicated word matrix.

    ``words`` must be sorted by ``cards`` ascending and free of duplicate rows.
    Accepted rows are indexed by ``keys`` (their restriction to ``key_bits``
    chosen vertices); a candidate only visits buckets whose key is a submask
    of its own key.  Each bucket is a linked list in acceptance order, i.e.
    by cardinality ascending.
    """
    D, W = words.shape
    keep = np.zeros(D, dtype=np.bool_)
    head = np.full(1 << key_bits, -1, dtype=np.int64)
    tail = np.full(1 << key_bits, -1, dtype=np.int64)
    nxt = np.full(D, -1, dtype=np.int64)
    i = 0
    while i < D:
        j = i
        while j < D and cards[j] == cards[i]:
            j += 1
        for t in range(i, j):
            ck = keys[t]
            s = ck
            dominated = False
            while True:
                a = head[s]
                while a != -1:
                    inside = True
                    for w in range(W):
                        if words[a, w] & ~words[t, w]:
                            inside = False
                            break
                    if inside:
                        dominated = True
                        break
                    a = nxt[a]
                if dominated or s == 0:
                    break
                s = (s - 1) & ck
            keep[t] = not dominated
        # equal-cardinality distinct rows never contain each other
        for t in range(i, j):
            if keep[t]:
                k = keys[t]
                if head[k] == -1:
                    head[k] = t
                else:
                    nxt[tail[k]] = t
                tail[k] = t
        i = j
    return keep
