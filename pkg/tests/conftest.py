"""Shared helpers: naive reference implementations and frozen tables.

The naive functions here are deliberately slow and literal.  They share
no code with the package and serve as independent oracles.
"""

from __future__ import annotations

from itertools import combinations

# Reference values for k=3, frozen.
# d(n, s): diagrams with exactly s short blocks.
D_TABLE_K3 = {
    1: (0, 1),
    2: (7, 2, 1),
    3: (219, 53, 7, 1),
    4: (12861, 2296, 226, 16, 1),
    5: (1215794, 171785, 13080, 710, 30, 1),
    6: (169509845, 19796274, 1228655, 53740, 1835, 50, 1),
}

# c(n, q): diagrams with exactly q connected components of short blocks.
C_TABLE_K3 = {
    1: (0, 1),
    2: (7, 3),
    3: (219, 56, 5),
    4: (12861, 2352, 183, 4),
    5: (1215794, 174137, 11145, 323, 1),
    6: (169509845, 19970411, 1078977, 30833, 334),
}

# T(m, s): fully non-crossing diagrams with m blocks and s short blocks,
# s running from 1 (every non-empty non-crossing diagram has one).
T_TABLE_K3 = {
    1: (1,),
    2: (2, 1),
    3: (4, 7, 1),
    4: (8, 30, 16, 1),
    5: (16, 104, 122, 30, 1),
    6: (32, 320, 660, 365, 50, 1),
    7: (64, 912, 2920, 2875, 903, 77, 1),
}


def naive_blocks(word):
    """Positions of each label, in first-occurrence order."""
    order: list = []
    pos: dict = {}
    for i, lab in enumerate(word):
        if lab not in pos:
            pos[lab] = []
            order.append(lab)
        pos[lab].append(i)
    return [tuple(pos[lab]) for lab in order]


def naive_crossing(block_a, block_b) -> bool:
    """Literal definition: a pair of A-vertices straddles part of B.

    Blocks interleave exactly when some open interval between two
    A-vertices contains a proper, non-empty subset of B.
    """
    for a1, a2 in combinations(block_a, 2):
        inside = sum(1 for b in block_b if a1 < b < a2)
        if 0 < inside < len(block_b):
            return True
    return False


def _strictly_inside(block, lo, hi) -> bool:
    return all(lo < v < hi for v in block)


def naive_stats(word):
    """(short, components, noncrossing, crossing_pairs) by definition."""
    blocks = naive_blocks(word)
    k = len(blocks[0]) if blocks else 0
    shorts = [b[-1] - b[0] == k - 1 for b in blocks]
    short_count = sum(shorts)

    # components: maximal runs of adjacent short blocks
    comp = 0
    prev_end = None
    for start in sorted(b[0] for b, s in zip(blocks, shorts) if s):
        if start != prev_end:
            comp += 1
        prev_end = start + k

    crossing_pairs = sum(
        1 for a, b in combinations(blocks, 2) if naive_crossing(a, b)
    )
    return short_count, comp, len(naive_noncrossing_set(word)), crossing_pairs


def naive_noncrossing_set(word) -> set:
    """Indices (in first-occurrence order) of the non-crossing blocks."""
    blocks = naive_blocks(word)
    good = {
        i
        for i in range(len(blocks))
        if not any(
            naive_crossing(blocks[i], blocks[j])
            for j in range(len(blocks))
            if j != i
        )
    }
    changed = True
    while changed:
        changed = False
        for i in list(good):
            lo, hi = blocks[i][0], blocks[i][-1]
            for j in range(len(blocks)):
                if j != i and j not in good and _strictly_inside(blocks[j], lo, hi):
                    good.discard(i)
                    changed = True
                    break
    return good


def delete_block(word, index: int):
    """Word with the index-th block (first-occurrence order) removed."""
    blocks = naive_blocks(word)
    victim = set(blocks[index])
    return tuple(lab for pos, lab in enumerate(word) if pos not in victim)


def naive_enumerate(k: int, n: int):
    """All canonical words, by recursive block extraction."""
    size = k * n
    out = []

    def rec(free, acc):
        if not free:
            out.append(tuple(acc))
            return
        first = free[0]
        rest = free[1:]
        for others in combinations(rest, k - 1):
            chosen = (first,) + others
            remaining = [p for p in rest if p not in others]
            rec(remaining, acc + [chosen])

    rec(list(range(size)), [])
    words = []
    for blocks in out:
        word = [0] * size
        for label, block in enumerate(blocks):
            for p in block:
                word[p] = label
        words.append(tuple(word))
    return words
