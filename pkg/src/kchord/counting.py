"""Exact closed-form counts for linear k-chord diagrams.

Everything here is arbitrary-precision integer or rational arithmetic;
no floats.  The alternating sums are evaluated term by term with each
term kept integral (binomial times binomial times diagram count), so no
rational intermediate is needed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial


@lru_cache(maxsize=None)
def _fact(m: int) -> int:
    return factorial(m)


@lru_cache(maxsize=None)
def total_diagrams(k: int, n: int) -> int:
    """Number of diagrams with n blocks of k vertices: (kn)! / ((k!)^n n!).

    >>> total_diagrams(3, 2)
    10
    >>> total_diagrams(2, 3)
    15
    """
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    return _fact(k * n) // (_fact(k) ** n * _fact(n))


def subpath_choices(k: int, path_len: int, j: int) -> int:
    """Ways to choose j pairwise disjoint k-vertex subpaths of a path.

    Equals C(path_len - j(k-1), j): contracting each chosen subpath to a
    single vertex leaves path_len - j(k-1) slots from which the j
    contracted vertices are picked.

    >>> subpath_choices(2, 4, 2)
    1
    >>> subpath_choices(3, 6, 1)
    4
    """
    if j < 0 or path_len < 0:
        raise ValueError("need j >= 0 and path_len >= 0")
    top = path_len - j * (k - 1)
    if top < 0:
        return 0
    return comb(top, j)


def count_at_least(k: int, n: int, j: int) -> int:
    """Placements of j disjoint marked short chords among n blocks.

    N(k, n-j) * C(kn - j(k-1), j).  This is the binomial transform
    sum_q C(q, j) * count_exact_short(k, n, q) -- each diagram with q
    short chords is counted once per j-subset of them -- not the number
    of diagrams with at least j short chords.
    """
    if j < 0 or j > n:
        return 0
    return total_diagrams(k, n - j) * subpath_choices(k, k * n, j)


def count_exact_short(k: int, n: int, shorts: int) -> int:
    """Number of diagrams with exactly the given count of short chords.

    Inclusion-exclusion over marked placements:

        d(n, s) = sum_{j=s}^{n} (-1)^(j-s) C(j, s) C(k(n-j)+j, j) N(k, n-j)

    >>> count_exact_short(3, 4, 2)
    226
    """
    if shorts < 0 or shorts > n:
        return 0
    total = 0
    for j in range(shorts, n + 1):
        term = comb(j, shorts) * comb(k * (n - j) + j, j) * total_diagrams(k, n - j)
        total += -term if (j - shorts) & 1 else term
    return total


def count_zero_short(k: int, n: int) -> int:
    """Number of diagrams with no short chord.

    sum_j (-1)^j N(k, n-j) * subpath_choices(k, kn, j).

    >>> count_zero_short(2, 3)
    5
    >>> count_zero_short(3, 1)
    0
    """
    total = 0
    kn = k * n
    for j in range(n + 1):
        term = total_diagrams(k, n - j) * subpath_choices(k, kn, j)
        total += -term if j & 1 else term
    return total


def mean_short_chords(k: int, n: int) -> Fraction:
    """Expected number of short chords of a uniform diagram.

    n(kn - (k-1)) / C(kn, k).  Exactly 1 for k = 2 and every n >= 1.

    >>> mean_short_chords(3, 2)
    Fraction(2, 5)
    >>> mean_short_chords(2, 17)
    Fraction(1, 1)
    """
    if n < 1:
        raise ValueError("need n >= 1")
    return Fraction(n * (k * n - (k - 1)), comb(k * n, k))


@lru_cache(maxsize=None)
def component_row(k: int, n: int) -> tuple[int, ...]:
    """Counts of diagrams by number of components, for q = 0..n.

    A component is a maximal run of adjacent short chords.  Extracted
    from the series expansion of the component generating function:

        c(n, q) = sum_{l>=q} (-1)^(l-q) C(l, q) S(l),
        S(l) = sum_r (-1)^r N(k, n-l-r) C(k(n-l-r)+1, l-r) C(k(n-l-r)+r, r).
    """
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    if n == 0:
        return (1,)
    inner = [0] * (n + 1)
    for ell in range(n + 1):
        acc = 0
        for r in range(0, min(ell, n - ell) + 1):
            j = n - ell - r
            term = (
                total_diagrams(k, j)
                * comb(k * j + 1, ell - r)
                * comb(k * j + r, r)
            )
            acc += -term if r & 1 else term
        inner[ell] = acc
    row = [0] * (n + 1)
    for q in range(n + 1):
        acc = 0
        for ell in range(q, n + 1):
            term = comb(ell, q) * inner[ell]
            acc += -term if (ell - q) & 1 else term
        row[q] = acc
    return tuple(row)


def count_components(k: int, n: int, q: int) -> int:
    """Number of diagrams whose short chords form exactly q runs.

    >>> count_components(3, 2, 1)
    3
    """
    if q < 0 or q > n:
        return 0
    return component_row(k, n)[q]


def narayana(m: int, j: int) -> int:
    """Narayana number C(m, j) C(m, j-1) / m (0 for j outside 1..m)."""
    if m < 1 or j < 1 or j > m:
        return 0
    return comb(m, j) * comb(m, j - 1) // m


def triple_count_closed_k2(n: int, shorts: int, noncrossing: int) -> int:
    """Diagrams with given short and non-crossing chord counts, k = 2 only.

        d(n, s, m) = ((2n-2m+1)/m) C(m, s) C(2n-m, s-1) d(n-m, 0),  m >= 1,

    and the m = 0 slice is the zero-short column.
    """
    m = noncrossing
    if not 0 <= shorts <= m <= n:
        return 0
    if m == 0:
        return count_zero_short(2, n) if shorts == 0 else 0
    if shorts == 0:
        return 0
    value = Fraction(2 * n - 2 * m + 1, m) * comb(m, shorts) * comb(2 * n - m, shorts - 1)
    value *= count_zero_short(2, n - m)
    if value.denominator != 1:
        raise ArithmeticError("closed form did not produce an integer")
    return int(value)
