"""Truncated bivariate power series with exact integer coefficients.

The generating functions here are formal objects: none of them converge
as functions, so every operation is truncation-preserving polynomial
arithmetic.  Coefficient extraction from these series is the "series"
route for the count tables, independent of the recurrences.
"""

from __future__ import annotations

from math import comb

from .counting import count_zero_short, total_diagrams


class BivariateSeries:
    """A series truncated at (order1, order2); coeffs[i][j] multiplies
    var1^i * var2^j.  Variable names are metadata only."""

    __slots__ = ("order1", "order2", "coeffs", "var_names")

    def __init__(
        self,
        order1: int,
        order2: int,
        coeffs: list[list[int]] | None = None,
        var_names: tuple[str, str] = ("x", "y"),
    ):
        if order1 < 0 or order2 < 0:
            raise ValueError("orders must be nonnegative")
        self.order1 = order1
        self.order2 = order2
        if coeffs is None:
            coeffs = [[0] * (order2 + 1) for _ in range(order1 + 1)]
        else:
            if len(coeffs) != order1 + 1 or any(len(r) != order2 + 1 for r in coeffs):
                raise ValueError("coefficient grid does not match orders")
        self.coeffs = coeffs
        self.var_names = var_names

    @classmethod
    def zero(cls, order1: int, order2: int, var_names=("x", "y")) -> "BivariateSeries":
        return cls(order1, order2, None, var_names)

    @classmethod
    def monomial(
        cls, order1: int, order2: int, i: int, j: int, c: int = 1, var_names=("x", "y")
    ) -> "BivariateSeries":
        out = cls(order1, order2, None, var_names)
        if i <= order1 and j <= order2:
            out.coeffs[i][j] = c
        return out

    @classmethod
    def one(cls, order1: int, order2: int, var_names=("x", "y")) -> "BivariateSeries":
        return cls.monomial(order1, order2, 0, 0, 1, var_names)

    def coefficient(self, i: int, j: int) -> int:
        if not (0 <= i <= self.order1 and 0 <= j <= self.order2):
            raise IndexError(f"coefficient ({i},{j}) beyond truncation")
        return self.coeffs[i][j]

    def is_zero(self) -> bool:
        return all(not c for row in self.coeffs for c in row)

    def _check_compatible(self, other: "BivariateSeries"):
        if (self.order1, self.order2) != (other.order1, other.order2):
            raise ValueError("series truncated at different orders")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return (
            self.order1 == other.order1
            and self.order2 == other.order2
            and all(
                list(mine) == list(theirs)
                for mine, theirs in zip(self.coeffs, other.coeffs)
            )
        )

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._check_compatible(other)
        return BivariateSeries(
            self.order1,
            self.order2,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.coeffs, other.coeffs)
            ],
            self.var_names,
        )

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._check_compatible(other)
        return BivariateSeries(
            self.order1,
            self.order2,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.coeffs, other.coeffs)
            ],
            self.var_names,
        )

    def scale(self, c: int) -> "BivariateSeries":
        return BivariateSeries(
            self.order1,
            self.order2,
            [[c * a for a in row] for row in self.coeffs],
            self.var_names,
        )

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._check_compatible(other)
        o1, o2 = self.order1, self.order2
        out = [[0] * (o2 + 1) for _ in range(o1 + 1)]
        bco = other.coeffs
        for i1, row1 in enumerate(self.coeffs):
            for j1, c1 in enumerate(row1):
                if not c1:
                    continue
                jmax = o2 - j1
                for i2 in range(o1 - i1 + 1):
                    row2 = bco[i2]
                    target = out[i1 + i2]
                    for j2 in range(jmax + 1):
                        c2 = row2[j2]
                        if c2:
                            target[j1 + j2] += c1 * c2
        return BivariateSeries(o1, o2, out, self.var_names)

    def pow(self, e: int) -> "BivariateSeries":
        if e < 0:
            raise ValueError("negative powers are not truncation-safe here")
        result = BivariateSeries.one(self.order1, self.order2, self.var_names)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __repr__(self) -> str:
        terms = sum(1 for row in self.coeffs for c in row if c)
        return (
            f"BivariateSeries(order=({self.order1},{self.order2}), "
            f"vars={self.var_names}, nonzero={terms})"
        )


def neg_binomial_expand(u: BivariateSeries, r: int) -> BivariateSeries:
    """(1 + u)^(-r) for a series u with zero constant term.

    Expanded as sum_i C(r-1+i, i) (-u)^i; u^i has total degree >= i,
    so the loop stops once the running power truncates to zero.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if u.coeffs[0][0] != 0:
        raise ValueError("constant term must be zero")
    acc = BivariateSeries.one(u.order1, u.order2, u.var_names)
    power = acc
    neg_u = u.scale(-1)
    for i in range(1, u.order1 + u.order2 + 1):
        power = power * neg_u
        if power.is_zero():
            break
        acc = acc + power.scale(comb(r - 1 + i, i))
    return acc


def L_series(k: int, order1: int, order2: int) -> BivariateSeries:
    """Lattice-path series 1 / (1 - y (1 + x^k y^(k-1))).

    Coefficient of x^(kj) y^s counts the paths of s D-runs with j of the
    U-runs of maximal height; it equals subpath_choices(k, s, j) after
    the change of viewpoint from paths back to chords.
    """
    x_part = BivariateSeries.monomial(order1, order2, k, k - 1, 1, ("x", "y"))
    inner = BivariateSeries.one(order1, order2, ("x", "y")) + x_part
    y = BivariateSeries.monomial(order1, order2, 0, 1, 1, ("x", "y"))
    return neg_binomial_expand((y * inner).scale(-1), 1)


def F_series(k: int, n_max: int) -> BivariateSeries:
    """Short-chord generating series, truncated at (n_max, n_max).

        F(w, z) = sum_j N(k, j) w^j / (1 + w(1-z))^(kj+1)

    The coefficient of w^n z^s is the number of diagrams with n blocks
    and s short chords.  Formal only; the sum diverges as a function.
    """
    names = ("w", "z")
    u = BivariateSeries.monomial(n_max, n_max, 1, 0, 1, names) + BivariateSeries.monomial(
        n_max, n_max, 1, 1, -1, names
    )
    total = BivariateSeries.zero(n_max, n_max, names)
    for j in range(n_max + 1):
        term = neg_binomial_expand(u, k * j + 1)
        wj = BivariateSeries.monomial(n_max, n_max, j, 0, total_diagrams(k, j), names)
        total = total + wj * term
    return total


def C_series(k: int, n_max: int) -> BivariateSeries:
    """Component generating series, truncated at (n_max, n_max).

        C(y, z) = sum_j N(k, j) y^j ((1 - y(1-z)) / (1 - y^2 (1-z)))^(kj+1)

    The coefficient of y^n z^q is the number of diagrams with n blocks
    whose short chords form exactly q maximal runs.
    """
    names = ("y", "z")
    numer = (
        BivariateSeries.one(n_max, n_max, names)
        + BivariateSeries.monomial(n_max, n_max, 1, 0, -1, names)
        + BivariateSeries.monomial(n_max, n_max, 1, 1, 1, names)
    )
    denom_u = BivariateSeries.monomial(n_max, n_max, 2, 0, -1, names) + BivariateSeries.monomial(
        n_max, n_max, 2, 1, 1, names
    )
    total = BivariateSeries.zero(n_max, n_max, names)
    for j in range(n_max + 1):
        factor = numer.pow(k * j + 1) * neg_binomial_expand(denom_u, k * j + 1)
        yj = BivariateSeries.monomial(n_max, n_max, j, 0, total_diagrams(k, j), names)
        total = total + yj * factor
    return total


def T_series(k: int, order1: int, order2: int) -> BivariateSeries:
    """Non-crossing diagram series, the fixpoint of

        T = 1 + x T^k - x (1 - y) T.

    Each substitution pass fixes one more x-degree, so order1 passes
    converge the truncation.  Coefficient of x^m y^s: non-crossing
    diagrams with m blocks and s short chords.
    """
    names = ("x", "y")
    one = BivariateSeries.one(order1, order2, names)
    x = BivariateSeries.monomial(order1, order2, 1, 0, 1, names)
    x_one_minus_y = x + BivariateSeries.monomial(order1, order2, 1, 1, -1, names)
    t = one
    for _ in range(order1):
        t = one + x * t.pow(k) - x_one_minus_y * t
    return t


def triple_count(k: int, n: int, shorts: int, noncrossing: int) -> int:
    """Diagrams with the given short-chord and non-crossing-chord counts.

    [x^m y^s] T(x,y)^(k(n-m)+1) * count_zero_short(k, n-m), with m the
    non-crossing count: the k(n-m) vertices of the remainder (the blocks
    that are not non-crossing) leave k(n-m)+1 gaps, each holding an
    independent non-crossing diagram, while the remainder contracts to a
    short-chord-free diagram.
    """
    m = noncrossing
    if not 0 <= shorts <= m <= n:
        return 0
    t = T_series(k, m, shorts)
    power = t.pow(k * (n - m) + 1)
    return power.coefficient(m, shorts) * count_zero_short(k, n - m)


def triple_table(k: int, n: int) -> list[list[int]]:
    """All triple counts for n blocks: ``out[m][s]`` with 0 <= s <= m <= n."""
    t = T_series(k, n, n)
    tk = t.pow(k)
    zero_free = [count_zero_short(k, j) for j in range(n + 1)]
    out: list[list[int]] = [[] for _ in range(n + 1)]
    power = t
    for m in range(n, -1, -1):
        out[m] = [power.coefficient(m, s) * zero_free[n - m] for s in range(m + 1)]
        if m:
            power = power * tk
    return out
