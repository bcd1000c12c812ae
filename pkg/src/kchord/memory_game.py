"""The memory game on graphs.

The kn cards of a concentration-style game with n ranks of k matching
cards are dealt onto the vertices of a board graph.  A rank whose cards
land on a connected k-vertex induced subgraph is a "polyomino"; the
polyomino-occupied vertices split into connected components.  A path
board recovers the linear diagram statistics: polyominoes are short
chords and the components coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb, sqrt
from typing import Iterator, Sequence

import numpy as np

from .counting import total_diagrams
from .diagrams import BudgetExceededError, oracle_budget

SAMPLE_CHUNK = 1 << 14
RNG_ALGORITHM = "philox4x64/seedseq(entropy=seed,spawn_key=(chunk,))"


@dataclass(frozen=True)
class Board:
    """An undirected simple graph with vertices 0..vertex_count-1."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    label: str = ""

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("negative vertex count")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add(key)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)


def path_board(m: int) -> Board:
    """The path on m vertices, the board of the linear diagram model."""
    return Board(m, tuple((i, i + 1) for i in range(m - 1)), f"path:{m}")


def _grid_edges(rows: int, cols: int, wrap: bool) -> set[tuple[int, int]]:
    def vid(r: int, c: int) -> int:
        return r * cols + c

    edges: set[tuple[int, int]] = set()

    def add(a: int, b: int):
        if a != b:
            edges.add((a, b) if a < b else (b, a))

    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                add(vid(r, c), vid(r, c + 1))
            elif wrap and cols > 1:
                add(vid(r, c), vid(r, 0))
            if r + 1 < rows:
                add(vid(r, c), vid(r + 1, c))
            elif wrap and rows > 1:
                add(vid(r, c), vid(0, c))
    return edges


def grid_board(rows: int, cols: int) -> Board:
    if rows < 1 or cols < 1:
        raise ValueError("grid needs positive dimensions")
    return Board(rows * cols, tuple(sorted(_grid_edges(rows, cols, False))), f"grid:{rows}x{cols}")


def torus_board(rows: int, cols: int) -> Board:
    """Grid with wraparound; wrap edges that duplicate grid edges are merged."""
    if rows < 1 or cols < 1:
        raise ValueError("torus needs positive dimensions")
    return Board(rows * cols, tuple(sorted(_grid_edges(rows, cols, True))), f"torus:{rows}x{cols}")


def board_from_edges(vertex_count: int, edges: Sequence[Sequence[int]], label: str = "") -> Board:
    """Explicit edge-list board; endpoints are ordered, lists deduplicated
    only by validation (a repeated edge is an input error)."""
    normalized = tuple(
        (int(u), int(v)) if u <= v else (int(v), int(u)) for u, v in edges
    )
    return Board(vertex_count, normalized, label or f"edges:{vertex_count}")


def board_from_spec(text: str) -> Board:
    """Parse ``path:M``, ``grid:RxC`` or ``torus:RxC``."""
    kind, _, rest = text.partition(":")
    if kind == "path":
        return path_board(int(rest))
    if kind in ("grid", "torus"):
        r, _, c = rest.partition("x")
        make = grid_board if kind == "grid" else torus_board
        return make(int(r), int(c))
    raise ValueError(f"unknown board spec {text!r}")


def connected_k_sets(board: Board, k: int) -> Iterator[int]:
    """Yield each connected k-vertex set exactly once, as a bitmask.

    Frontier-extension enumeration: grow from each anchor vertex using
    only higher-numbered vertices, extending by exclusive neighbors, so
    no set is reached twice.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    nbrs = board.neighbor_masks
    v_count = board.vertex_count

    def extend(sub: int, forbidden: int, ext: int, size: int) -> Iterator[int]:
        if size == k:
            yield sub
            return
        while ext:
            w_bit = ext & -ext
            ext ^= w_bit
            w = w_bit.bit_length() - 1
            new_ext = ext | (nbrs[w] & anchor_gt & ~forbidden)
            yield from extend(sub | w_bit, forbidden | nbrs[w] | w_bit, new_ext, size + 1)

    for v in range(v_count):
        anchor_gt = -1 << (v + 1)
        start = nbrs[v] & anchor_gt
        yield from extend(1 << v, (1 << v) | nbrs[v], start, 1)


def connected_k_subgraphs(board: Board, k: int) -> int:
    """Number of k-vertex subsets inducing a connected subgraph.

    >>> connected_k_subgraphs(path_board(6), 3)
    4
    """
    return sum(1 for _ in connected_k_sets(board, k))


def mean_polyominoes(board: Board, k: int, n: int | None = None) -> Fraction:
    """Expected polyomino count of a uniform deal: n * r / C(kn, k).

    >>> mean_polyominoes(grid_board(2, 2), 2)
    Fraction(4, 3)
    """
    n = _resolve_n(board, k, n)
    if n == 0:
        return Fraction(0)
    r = connected_k_subgraphs(board, k)
    return Fraction(n * r, comb(k * n, k))


def _resolve_n(board: Board, k: int, n: int | None) -> int:
    if k < 2:
        raise ValueError("need k >= 2")
    blocks, rem = divmod(board.vertex_count, k)
    if rem:
        raise ValueError(f"{board.vertex_count} vertices not divisible by k={k}")
    if n is not None and n != blocks:
        raise ValueError(f"n={n} inconsistent with board size {board.vertex_count}")
    return blocks


@dataclass(frozen=True)
class Placement:
    """A deal: vertex i holds a card of rank ``assignment[i]``.

    Ranks are unlabeled; the stored assignment is normalized to
    first-occurrence order.
    """

    board: Board
    k: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        n = _resolve_n(self.board, self.k, None)
        if len(self.assignment) != self.board.vertex_count:
            raise ValueError("assignment length must match vertex count")
        counts = [0] * n
        seen = 0
        for lab in self.assignment:
            if not 0 <= lab < n:
                raise ValueError(f"rank {lab} out of range")
            if lab > seen:
                raise ValueError("ranks must appear in first-occurrence order")
            if lab == seen:
                seen += 1
            counts[lab] += 1
        if any(c != self.k for c in counts):
            raise ValueError("every rank must occur exactly k times")

    def block_masks(self) -> list[int]:
        n = self.board.vertex_count // self.k
        masks = [0] * n
        for vertex, lab in enumerate(self.assignment):
            masks[lab] |= 1 << vertex
        return masks


def make_placement(board: Board, k: int, labels: Sequence[int]) -> Placement:
    """Build a placement from any labeling, normalizing rank names."""
    order: dict[int, int] = {}
    normalized = []
    for lab in labels:
        if lab not in order:
            order[lab] = len(order)
        normalized.append(order[lab])
    return Placement(board, k, tuple(normalized))


def _mask_components(nbrs: Sequence[int], mask: int) -> int:
    comps = 0
    rem = mask
    while rem:
        comps += 1
        comp = rem & -rem
        frontier = comp
        while frontier:
            grow = 0
            while frontier:
                bit = frontier & -frontier
                frontier ^= bit
                grow |= nbrs[bit.bit_length() - 1]
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        rem &= ~comp
    return comps


def placement_stats(placement: Placement) -> tuple[int, int]:
    """(polyomino count, connected components of the polyomino area)."""
    nbrs = placement.board.neighbor_masks
    union = 0
    polyominoes = 0
    for mask in placement.block_masks():
        if _mask_components(nbrs, mask) == 1:
            polyominoes += 1
            union |= mask
    return polyominoes, _mask_components(nbrs, union)


def exhaustive_distribution(
    board: Board, k: int, n: int | None = None, budget: int | None = None
) -> dict[tuple[int, int], int]:
    """Histogram of (polyominoes, components) over every deal.

    Deals are partitions of the vertices into unlabeled k-sets; the
    count is total_diagrams(k, n), checked against the oracle budget.
    """
    n = _resolve_n(board, k, n)
    cap = oracle_budget(budget)
    total = total_diagrams(k, n)
    if total > cap:
        raise BudgetExceededError(total, cap)
    hist: dict[tuple[int, int], int] = {}
    if n == 0:
        hist[(0, 0)] = 1
        return hist
    nbrs = board.neighbor_masks
    connected = set(connected_k_sets(board, k))
    poly_masks = [0] * n

    def place(avail: tuple[int, ...], depth: int, poly_count: int):
        v0 = avail[0]
        rest = avail[1:]
        for partners in combinations(rest, k - 1):
            mask = 1 << v0
            for p in partners:
                mask |= 1 << p
            is_poly = mask in connected
            poly_masks[depth] = mask if is_poly else 0
            new_count = poly_count + is_poly
            if depth == n - 1:
                union = 0
                for pm in poly_masks:
                    union |= pm
                key = (new_count, _mask_components(nbrs, union))
                hist[key] = hist.get(key, 0) + 1
            else:
                taken = set(partners)
                place(tuple(p for p in rest if p not in taken), depth + 1, new_count)

    place(tuple(range(board.vertex_count)), 0, 0)
    return hist


@dataclass(frozen=True)
class SampleResult:
    """Monte Carlo estimate of the polyomino count distribution."""

    samples: int
    seed: int
    mean: Fraction
    stderr: float
    histogram: dict[int, int]
    rng_algorithm: str


def sample_placements(
    board: Board,
    k: int,
    samples: int,
    seed: int,
    n: int | None = None,
    chunk_size: int = SAMPLE_CHUNK,
) -> SampleResult:
    """Sample uniform deals and estimate the mean polyomino count.

    Sampling is a seeded shuffle of the vertex list cut into consecutive
    k-blocks.  Streams are reproducible: chunk c of the run uses a
    Philox generator seeded with SeedSequence(seed, spawn_key=(c,)), so
    results are deterministic for fixed (seed, samples, chunk_size) and
    chunks may be evaluated in parallel.
    """
    n = _resolve_n(board, k, n)
    if samples < 1:
        raise ValueError("need samples >= 1")
    v_count = board.vertex_count
    use_lookup = v_count <= 22
    if use_lookup:
        lookup = np.zeros(1 << v_count, dtype=bool)
        for mask in connected_k_sets(board, k):
            lookup[mask] = True
    else:
        conn_set = set(connected_k_sets(board, k))
    counts_hist = np.zeros(n + 1, dtype=np.int64)
    done = 0
    chunk_index = 0
    while done < samples:
        m = min(chunk_size, samples - done)
        ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(chunk_index,))
        rng = np.random.Generator(np.random.Philox(ss))
        perms = rng.permuted(
            np.tile(np.arange(v_count, dtype=np.int64), (m, 1)), axis=1
        )
        blocks = perms.reshape(m, n, k)
        masks = np.bitwise_or.reduce(np.int64(1) << blocks, axis=2)
        if use_lookup:
            flags = lookup[masks]
            per_sample = flags.sum(axis=1)
        else:
            per_sample = np.fromiter(
                (sum(int(b) in conn_set for b in row) for row in masks),
                dtype=np.int64,
                count=m,
            )
        counts_hist += np.bincount(per_sample, minlength=n + 1)
        done += m
        chunk_index += 1
    total = int(np.arange(n + 1) @ counts_hist)
    mean = Fraction(total, samples)
    if samples > 1:
        sq = sum(int(c) * (Fraction(v) - mean) ** 2 for v, c in enumerate(counts_hist))
        variance = sq / (samples - 1)
        stderr = sqrt(float(variance) / samples)
    else:
        stderr = float("nan")
    histogram = {v: int(c) for v, c in enumerate(counts_hist) if c}
    return SampleResult(
        samples=samples,
        seed=seed,
        mean=mean,
        stderr=stderr,
        histogram=histogram,
        rng_algorithm=f"{RNG_ALGORITHM},chunk={chunk_size}",
    )
