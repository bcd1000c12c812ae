"""Linear k-chord diagrams.

A diagram places ``k*n`` linearly ordered vertices into ``n`` blocks
("chords") of ``k`` vertices each.  The canonical form is the word that
lists, for each position, the label of its block, with labels numbered
by first occurrence.  This module provides canonicalization, exhaustive
enumeration (with deterministic sub-range partitioning for parallel
runs), per-diagram statistics, the lattice-path encoding of non-crossing
diagrams, and a brute-force statistics survey used as the test oracle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterator, Sequence

DEFAULT_ORACLE_BUDGET = 10**7


class BudgetExceededError(Exception):
    """Raised when an exhaustive enumeration would visit too many objects."""

    def __init__(self, total: int, budget: int):
        super().__init__(f"enumeration size {total} exceeds budget {budget}")
        self.total = total
        self.budget = budget


def oracle_budget(override: int | None = None) -> int:
    """Enumeration cap for brute-force surveys.

    Priority: explicit argument, then the ``KCHORD_ORACLE_BUDGET``
    environment variable, then the default of 10**7.
    """
    if override is not None:
        return int(override)
    env = os.environ.get("KCHORD_ORACLE_BUDGET")
    return int(env) if env else DEFAULT_ORACLE_BUDGET


@dataclass(frozen=True)
class Diagram:
    """A linear k-chord diagram in canonical form.

    ``word[i]`` is the label of the block covering position ``i``; labels
    are 0..n-1 in order of first occurrence, and each label occurs
    exactly ``k`` times.  Two diagrams are equal iff their words are.
    """

    k: int
    n: int
    word: tuple[int, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"block size must be at least 2, got {self.k}")
        if self.n < 0:
            raise ValueError(f"block count must be nonnegative, got {self.n}")
        if len(self.word) != self.k * self.n:
            raise ValueError(
                f"word length {len(self.word)} != k*n = {self.k * self.n}"
            )
        counts = [0] * self.n
        seen = 0
        for label in self.word:
            if not isinstance(label, int) or not 0 <= label < self.n:
                raise ValueError(f"label {label!r} out of range")
            if label > seen:
                raise ValueError("labels must appear in first-occurrence order")
            if label == seen:
                seen += 1
            counts[label] += 1
        if any(c != self.k for c in counts):
            raise ValueError("every label must occur exactly k times")

    def blocks(self) -> list[tuple[int, ...]]:
        """Vertex positions of each block, sorted, indexed by label."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for pos, label in enumerate(self.word):
            out[label].append(pos)
        return [tuple(b) for b in out]

    def as_text(self) -> str:
        return ",".join(str(c) for c in self.word)


@dataclass(frozen=True)
class BlockStats:
    """Per-diagram statistics.

    short_chords   blocks occupying k consecutive positions
    components     maximal runs of position-adjacent short chords
    noncrossing    blocks that are crossed by no block and whose span
                   contains only such blocks (innermost-outward fixpoint)
    crossing_pairs unordered block pairs that interleave
    """

    short_chords: int
    components: int
    noncrossing: int
    crossing_pairs: int


@dataclass(frozen=True)
class LatticePath:
    """A path of U (north) and D (east) steps.

    Encodes a non-crossing diagram: U for a vertex that is not the last
    of its block, D for the last.  U steps outnumber D steps (k-1):1,
    so the path starts and ends on the line y = (k-1)x.
    """

    steps: str

    def __post_init__(self):
        if set(self.steps) - {"U", "D"}:
            raise ValueError("steps must consist of 'U' and 'D' only")

    @property
    def up_count(self) -> int:
        return self.steps.count("U")

    @property
    def down_count(self) -> int:
        return self.steps.count("D")

    def peaks(self) -> int:
        """Number of UD factors."""
        return self.steps.count("UD")


def canonicalize(word: Sequence[Hashable], k: int | None = None) -> Diagram:
    """Relabel a block word by first occurrence.

    Symbols may be arbitrary hashables; each must occur exactly ``k``
    times.  ``k`` is inferred from the multiplicities when omitted (an
    empty word then needs an explicit ``k``).

    >>> canonicalize(["b", "a", "a", "b"]).word
    (0, 1, 1, 0)
    """
    if not word:
        if k is None:
            raise ValueError("empty word needs an explicit k")
        return Diagram(k, 0, ())
    order: dict[Hashable, int] = {}
    relabeled = []
    for sym in word:
        if sym not in order:
            order[sym] = len(order)
        relabeled.append(order[sym])
    n = len(order)
    if k is None:
        k, rem = divmod(len(word), n)
        if rem:
            raise ValueError("word length not divisible by symbol count")
    counts = [0] * n
    for lab in relabeled:
        counts[lab] += 1
    bad = [sym for sym, lab in order.items() if counts[lab] != k]
    if bad:
        raise ValueError(f"symbol {bad[0]!r} occurs {counts[order[bad[0]]]} times, expected {k}")
    return Diagram(k, n, tuple(relabeled))


def block0_placements(k: int, n: int) -> list[tuple[int, ...]]:
    """All possible position sets for block 0 (always containing 0).

    Fixing one of these splits the enumeration into independent,
    deterministic sub-ranges.
    """
    if n == 0:
        return []
    return [(0,) + rest for rest in combinations(range(1, k * n), k - 1)]


def enumerate_diagrams(
    k: int, n: int, block0: Sequence[int] | None = None
) -> Iterator[Diagram]:
    """Yield every canonical diagram, in lexicographic word order.

    ``block0`` restricts the walk to diagrams whose block 0 occupies
    exactly those positions (one sub-range of ``block0_placements``).
    """
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    kn = k * n
    if n == 0:
        yield Diagram(k, 0, ())
        return
    block0_set: frozenset[int] | None = None
    if block0 is not None:
        block0_set = frozenset(block0)
        if len(block0_set) != k or 0 not in block0_set:
            raise ValueError("block0 must be k distinct positions including 0")
        if any(not 0 <= p < kn for p in block0_set):
            raise ValueError("block0 positions out of range")

    word = [0] * kn
    counts = [0] * n

    def walk(pos: int, started: int) -> Iterator[Diagram]:
        if pos == kn:
            yield Diagram(k, n, tuple(word))
            return
        if block0_set is not None:
            if pos in block0_set:
                if counts[0] < k:
                    word[pos] = 0
                    counts[0] += 1
                    yield from walk(pos + 1, max(started, 1))
                    counts[0] -= 1
                return
            lo = 1
        else:
            lo = 0
        for label in range(lo, started):
            if counts[label] < k:
                word[pos] = label
                counts[label] += 1
                yield from walk(pos + 1, started)
                counts[label] -= 1
        if started < n and (block0_set is None or started > 0):
            word[pos] = started
            counts[started] += 1
            yield from walk(pos + 1, started + 1)
            counts[started] -= 1

    yield from walk(0, 0)


def _pair_crosses(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Whether two disjoint sorted position tuples interleave.

    The blocks cross iff the merged sequence has at least four maximal
    runs of same-block positions (an abab or baba pattern exists).
    """
    ia = ib = 0
    la, lb = len(a), len(b)
    runs = 0
    prev = -1
    while ia < la and ib < lb:
        if a[ia] < b[ib]:
            cur = 0
            ia += 1
        else:
            cur = 1
            ib += 1
        if cur != prev:
            runs += 1
            prev = cur
    if ia < la and prev != 0:
        runs += 1
    if ib < lb and prev != 1:
        runs += 1
    return runs >= 4


def stats(diagram: Diagram) -> BlockStats:
    """Compute the four block statistics of a diagram."""
    k, n = diagram.k, diagram.n
    blocks = diagram.blocks()
    mins = [b[0] for b in blocks]
    maxs = [b[-1] for b in blocks]
    short = [maxs[i] - mins[i] == k - 1 for i in range(n)]

    crossing_pairs = 0
    crossed = [False] * n
    for i in range(n):
        for j in range(i + 1, n):
            if _pair_crosses(blocks[i], blocks[j]):
                crossing_pairs += 1
                crossed[i] = crossed[j] = True

    # Maximal runs of adjacent short chords, scanned left to right.
    components = 0
    last_end = -2
    for i in sorted(range(n), key=lambda i: mins[i]):
        if short[i]:
            if mins[i] != last_end + 1:
                components += 1
            last_end = maxs[i]

    # Non-crossing fixpoint.  Blocks are processed innermost-outward
    # (narrower spans first) so nested verdicts are available in time.
    noncrossing = 0
    nc = [False] * n
    for i in sorted(range(n), key=lambda i: maxs[i] - mins[i]):
        if crossed[i]:
            continue
        ok = True
        for j in range(n):
            if j != i and mins[i] < mins[j] and maxs[j] < maxs[i] and not nc[j]:
                ok = False
                break
        if ok:
            nc[i] = True
            noncrossing += 1

    return BlockStats(
        short_chords=sum(short),
        components=components,
        noncrossing=noncrossing,
        crossing_pairs=crossing_pairs,
    )


def encode_lattice_path(diagram: Diagram) -> LatticePath:
    """Encode a non-crossing diagram as a U/D lattice path.

    Every vertex that is not the last of its block becomes U; each
    block's last vertex becomes D.  Rejects diagrams with any crossing.
    """
    last = {}
    for pos, label in enumerate(diagram.word):
        last[label] = pos
    blocks = diagram.blocks()
    for i in range(diagram.n):
        for j in range(i + 1, diagram.n):
            if _pair_crosses(blocks[i], blocks[j]):
                raise ValueError(f"blocks {i} and {j} cross; diagram has no path encoding")
    lasts = set(last.values())
    return LatticePath("".join("D" if p in lasts else "U" for p in range(len(diagram.word))))


def enumerate_noncrossing(k: int, n: int) -> Iterator[Diagram]:
    """Yield every non-crossing diagram exactly once.

    Recursive construction: the block holding the final position splits
    the rest into a left region plus k-1 arches, each holding a smaller
    non-crossing diagram.  The total count is the Fuss-Catalan number.
    """
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")

    memo: dict[int, list[tuple[int, ...]]] = {}

    def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    def build(m: int) -> list[tuple[int, ...]]:
        if m in memo:
            return memo[m]
        if m == 0:
            memo[0] = [()]
            return memo[0]
        out: list[tuple[int, ...]] = []
        for comp in compositions(m - 1, k):
            subs = [build(c) for c in comp]
            for pick in _product_lists(subs):
                word: list[int] = []
                base = 0
                regions = []
                for sub in pick:
                    regions.append([lab + base for lab in sub])
                    base += max(sub, default=-1) + 1
                new = base
                word.extend(regions[0])
                for region in regions[1:]:
                    word.append(new)
                    word.extend(region)
                word.append(new)
                out.append(canonicalize(word, k).word)
        memo[m] = out
        return out

    for w in build(n):
        yield Diagram(k, n, w)


def _product_lists(lists: list[list[tuple[int, ...]]]) -> Iterator[list[tuple[int, ...]]]:
    if not lists:
        yield []
        return
    for head in lists[0]:
        for tail in _product_lists(lists[1:]):
            yield [head] + tail


def survey(
    k: int,
    n: int,
    block0: Sequence[int] | None = None,
    budget: int | None = None,
) -> dict[tuple[int, int, int], int]:
    """Brute-force joint histogram over (short_chords, components, noncrossing).

    Visits every diagram (or the sub-range with block 0 fixed) by direct
    recursion on partner choices for the smallest free position; the
    statistics are maintained incrementally.  This is the oracle that
    every counting formula in the package is tested against.
    """
    from .counting import total_diagrams

    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    cap = oracle_budget(budget)
    if block0 is None and total_diagrams(k, n) > cap:
        raise BudgetExceededError(total_diagrams(k, n), cap)

    hist: dict[tuple[int, int, int], int] = {}
    if n == 0:
        hist[(0, 0, 0)] = 1
        return hist

    kn = k * n
    blocks: list[tuple[int, ...]] = [()] * n
    mins = [0] * n
    maxs = [0] * n
    short = [False] * n
    cross_ct = [0] * n
    nc = [False] * n
    ncomb = combinations

    def leaf():
        shorts = 0
        comps = 0
        last_end = -2
        for i in range(n):
            if short[i]:
                shorts += 1
                if mins[i] != last_end + 1:
                    comps += 1
                last_end = maxs[i]
        # mins are increasing with the block index, so any block nested
        # inside block i has a larger index; scan outward from the right.
        m_ct = 0
        for i in range(n - 1, -1, -1):
            if cross_ct[i]:
                nc[i] = False
                continue
            mi = maxs[i]
            ok = True
            for j in range(i + 1, n):
                if maxs[j] < mi and not nc[j]:
                    ok = False
                    break
            nc[i] = ok
            if ok:
                m_ct += 1
        key = (shorts, comps, m_ct)
        hist[key] = hist.get(key, 0) + 1

    def place(avail: tuple[int, ...], depth: int):
        p0 = avail[0]
        rest = avail[1:]
        last_block = depth == n - 1
        for partners in ncomb(rest, k - 1):
            block = (p0,) + partners
            blocks[depth] = block
            mins[depth] = p0
            maxs[depth] = partners[-1]
            short[depth] = partners[-1] - p0 == k - 1
            # crossing counts against all earlier blocks
            touched = []
            cc = 0
            for i in range(depth):
                if maxs[i] < p0:
                    continue
                if _pair_crosses(blocks[i], block):
                    cross_ct[i] += 1
                    touched.append(i)
                    cc += 1
            cross_ct[depth] = cc
            if last_block:
                leaf()
            else:
                taken = set(partners)
                place(tuple(p for p in rest if p not in taken), depth + 1)
            for i in touched:
                cross_ct[i] -= 1

    if block0 is not None:
        b0 = tuple(sorted(block0))
        if len(b0) != k or b0[0] != 0 or b0[-1] >= kn or len(set(b0)) != k:
            raise ValueError("block0 must be k distinct positions including 0")
        blocks[0] = b0
        mins[0] = 0
        maxs[0] = b0[-1]
        short[0] = b0[-1] == k - 1
        cross_ct[0] = 0
        if n == 1:
            leaf()
        else:
            b0set = set(b0)
            place(tuple(p for p in range(kn) if p not in b0set), 1)
    else:
        place(tuple(range(kn)), 0)
    return hist


def _survey_worker(args: tuple[int, int, tuple[int, ...]]) -> dict[tuple[int, int, int], int]:
    k, n, placement = args
    return survey(k, n, block0=placement)


def survey_parallel(
    k: int,
    n: int,
    jobs: int = 1,
    budget: int | None = None,
) -> dict[tuple[int, int, int], int]:
    """Like :func:`survey`, split across worker processes.

    The work is partitioned by block 0's placement, so the result is
    deterministic and identical to the sequential survey.
    """
    from .counting import total_diagrams

    cap = oracle_budget(budget)
    if total_diagrams(k, n) > cap:
        raise BudgetExceededError(total_diagrams(k, n), cap)
    if jobs <= 1 or n <= 1:
        return survey(k, n, budget=budget)
    from multiprocessing import Pool

    merged: dict[tuple[int, int, int], int] = {}
    tasks = [(k, n, pl) for pl in block0_placements(k, n)]
    with Pool(jobs) as pool:
        for part in pool.imap_unordered(_survey_worker, tasks, chunksize=8):
            for key, val in part.items():
                merged[key] = merged.get(key, 0) + val
    return merged
