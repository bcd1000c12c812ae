"""Limit behavior of the diagram statistics.

Short chords and components are asymptotically Poisson; the number of
short chords in a uniform *non-crossing* diagram is asymptotically
normal.  Everything exact stays exact: Poisson masses involve e^(-lam),
which is handled as a rational interval with outward rounding so that
"the distance decreased" is a rigorous verdict, not a float one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import counting, tables

TAIL_TOLERANCE = Fraction(1, 10**12)


def poisson_lambda(k: int, n: int) -> Fraction:
    """Limiting rate k! k^(1-k) n^(2-k) of the short-chord count.

    >>> poisson_lambda(2, 100)
    Fraction(1, 1)
    >>> poisson_lambda(3, 9)
    Fraction(2, 27)
    """
    if n < 1:
        raise ValueError("need n >= 1")
    return Fraction(factorial(k), k ** (k - 1) * n ** (k - 2))


def factorial_moment(row: Sequence[int], j: int) -> Fraction:
    """j-th falling factorial moment of a count histogram row."""
    if j < 0:
        raise ValueError("need j >= 0")
    total = sum(row)
    if total == 0:
        raise ValueError("empty distribution")
    acc = 0
    for value, count in enumerate(row):
        ff = 1
        for i in range(j):
            ff *= value - i
        if ff:
            acc += ff * count
    return Fraction(acc, total)


def _exp_neg_interval(lam: Fraction) -> tuple[Fraction, Fraction]:
    """Rational bounds on e^(-lam), lam >= 0, via the alternating series.

    Once the terms decrease, consecutive partial sums bracket the value;
    iteration continues until the bracket is narrower than 2^-200.
    """
    if lam < 0:
        raise ValueError("need lam >= 0")
    if lam == 0:
        return Fraction(1), Fraction(1)
    width_goal = Fraction(1, 2**200)
    term = Fraction(1)
    partial = Fraction(1)
    i = 0
    prev = None
    while True:
        i += 1
        term *= -lam / i
        partial += term
        if prev is not None and abs(term) < width_goal and i > lam:
            lo, hi = (partial, prev) if partial <= prev else (prev, partial)
            return lo, hi
        prev = partial


def _poisson_mass_interval(
    lam: Fraction, exp_lo: Fraction, exp_hi: Fraction, j: int
) -> tuple[Fraction, Fraction]:
    w = lam**j / factorial(j)
    return w * exp_lo, w * exp_hi


def tv_distance_interval(
    row: Sequence[int], lam: Fraction, tail_tolerance: Fraction = TAIL_TOLERANCE
) -> tuple[Fraction, Fraction]:
    """Certified bounds on the total-variation distance between the
    normalized histogram ``row`` and Poisson(lam).

    The Poisson support is cut at the first point where the certified
    tail mass drops below ``tail_tolerance``; both tails enter the
    distance, so the bounds cover the full supports.
    """
    total = sum(row)
    if total <= 0:
        raise ValueError("empty distribution")
    exp_lo, exp_hi = _exp_neg_interval(lam)
    masses: list[tuple[Fraction, Fraction]] = []
    sum_lo = Fraction(0)
    j = 0
    while True:
        lo, hi = _poisson_mass_interval(lam, exp_lo, exp_hi, j)
        masses.append((lo, hi))
        sum_lo += lo
        tail_upper = 1 - sum_lo
        if j >= len(row) - 1 and j >= lam and tail_upper < tail_tolerance:
            break
        j += 1
        if j > 10_000:
            raise ArithmeticError("Poisson tail failed to shrink")
    cut = len(masses)
    q_tail_hi = 1 - sum_lo
    q_tail_lo = max(Fraction(0), 1 - sum(hi for _, hi in masses))
    p_head = sum(row[: min(cut, len(row))])
    p_tail = Fraction(total - p_head, total)

    dist_lo = Fraction(0)
    dist_hi = Fraction(0)
    for idx in range(cut):
        p = Fraction(row[idx], total) if idx < len(row) else Fraction(0)
        q_lo, q_hi = masses[idx]
        if p >= q_hi:
            dist_lo += p - q_hi
            dist_hi += p - q_lo
        elif p <= q_lo:
            dist_lo += q_lo - p
            dist_hi += q_hi - p
        else:
            dist_hi += max(q_hi - p, p - q_lo)
    lo = (dist_lo + p_tail + q_tail_lo) / 2
    hi = (dist_hi + p_tail + q_tail_hi) / 2
    return lo, hi


@dataclass(frozen=True)
class AsymptoticReport:
    """Per-n exact statistics against a limit, with certified errors.

    ``errors`` are upper bounds; ``errors_lower`` the matching lower
    bounds (equal for exact comparisons).  ``monotone`` certifies that
    the error intervals strictly decrease along ``n``.
    """

    k: int
    kind: str
    n: tuple[int, ...]
    exact: tuple[Fraction, ...]
    limit: Fraction
    errors: tuple[Fraction, ...]
    errors_lower: tuple[Fraction, ...]
    monotone: bool

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind,
            "n": list(self.n),
            "exact": [decimal_str(x) for x in self.exact],
            "limit": decimal_str(self.limit),
            "errors": [decimal_str(e, round_up=True) for e in self.errors],
            "monotone": self.monotone,
        }

    def to_csv_text(self) -> str:
        lines = ["n,exact,limit,abs_error"]
        for nv, ex, err in zip(self.n, self.exact, self.errors):
            lines.append(
                f"{nv},{decimal_str(ex)},{decimal_str(self.limit)},"
                f"{decimal_str(err, round_up=True)}"
            )
        return "\n".join(lines) + "\n"


def decimal_str(x: Fraction, places: int = 18, round_up: bool = False) -> str:
    """Render an exact rational as a decimal string.

    Rounds toward zero by default (round_up=True rounds away from zero,
    for certified upper bounds); trailing zeros are trimmed.
    """
    sign = "-" if x < 0 else ""
    num, den = abs(x).numerator, abs(x).denominator
    scaled = num * 10**places
    q, r = divmod(scaled, den)
    if round_up and r:
        q += 1
    digits = str(q).rjust(places + 1, "0")
    whole, frac = digits[:-places], digits[-places:]
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def _short_chord_rows(k: int, n_values: Sequence[int]) -> dict[int, tuple[int, ...]]:
    table = tables.d_table_kp2(k, max(n_values))
    return {n: table.rows[n] for n in n_values}


def _component_rows(k: int, n_values: Sequence[int]) -> dict[int, tuple[int, ...]]:
    return {n: counting.component_row(k, n) for n in n_values}


def poisson_convergence_report(
    k: int, n_values: Sequence[int], kind: str = "short_chords"
) -> AsymptoticReport:
    """Total-variation distance to Poisson(lambda(k, n)) along ``n_values``.

    ``kind`` selects short chords (rows from the append recurrence) or
    components (rows from the closed form).  The ``errors`` sequence is
    the certified TV upper bound per n; ``monotone`` holds only if the
    intervals strictly decrease.
    """
    if not n_values:
        raise ValueError("need at least one n")
    n_values = list(n_values)
    if kind == "short_chords":
        rows = _short_chord_rows(k, n_values)
    elif kind == "components":
        rows = _component_rows(k, n_values)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    exact = []
    errs_hi = []
    errs_lo = []
    for n in n_values:
        row = rows[n]
        exact.append(factorial_moment(row, 1))
        lo, hi = tv_distance_interval(row, poisson_lambda(k, n))
        errs_lo.append(lo)
        errs_hi.append(hi)
    monotone = all(errs_hi[i + 1] < errs_lo[i] for i in range(len(n_values) - 1))
    limit = Fraction(1) if k == 2 else Fraction(0)
    return AsymptoticReport(
        k=k,
        kind=kind,
        n=tuple(n_values),
        exact=tuple(exact),
        limit=limit,
        errors=tuple(errs_hi),
        errors_lower=tuple(errs_lo),
        monotone=monotone,
    )


def nc_mean_variance(k: int, n: int) -> tuple[Fraction, Fraction]:
    """Limiting mean and variance of the short-chord count of a uniform
    non-crossing diagram with n blocks.

        mu      = ((k-1)/k)^(k-1) n
        sigma^2 = ((k-1)/k)^(2k) (k/(k-1)^2)
                  (1 - 2k + (k-1)(k/(k-1))^k) n

    >>> nc_mean_variance(2, 8)
    (Fraction(4, 1), Fraction(1, 1))
    """
    if n < 0:
        raise ValueError("need n >= 0")
    ratio = Fraction(k - 1, k)
    mean = ratio ** (k - 1) * n
    var = (
        ratio ** (2 * k)
        * Fraction(k, (k - 1) ** 2)
        * (1 - 2 * k + (k - 1) * Fraction(k, k - 1) ** k)
        * n
    )
    return mean, var


def nc_mean_report(k: int, n_values: Sequence[int]) -> AsymptoticReport:
    """Exact mean/n of the non-crossing short-chord table against its limit."""
    if not n_values:
        raise ValueError("need at least one n")
    n_values = list(n_values)
    table = tables.noncrossing_table(k, max(n_values))
    limit = Fraction(k - 1, k) ** (k - 1)
    exact = []
    errors = []
    for n in n_values:
        row = table.rows[n]
        mean = factorial_moment(row, 1)
        exact.append(mean / n)
        errors.append(abs(mean / n - limit))
    monotone = all(errors[i + 1] < errors[i] for i in range(len(n_values) - 1))
    return AsymptoticReport(
        k=k,
        kind="noncrossing_short_mean",
        n=tuple(n_values),
        exact=tuple(exact),
        limit=limit,
        errors=tuple(errors),
        errors_lower=tuple(errors),
        monotone=monotone,
    )


# --- characteristic equation of the non-crossing model -----------------
#
# Series in eps = y - 1, truncated after eps^2, with Fraction
# coefficients: enough to read off the mean and variance growth rates.

_Eps = tuple[Fraction, Fraction, Fraction]

_ZERO: _Eps = (Fraction(0), Fraction(0), Fraction(0))
_ONE: _Eps = (Fraction(1), Fraction(0), Fraction(0))
_EPS: _Eps = (Fraction(0), Fraction(1), Fraction(0))


def _eadd(a: _Eps, b: _Eps) -> _Eps:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def _esub(a: _Eps, b: _Eps) -> _Eps:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _emul(a: _Eps, b: _Eps) -> _Eps:
    return (
        a[0] * b[0],
        a[0] * b[1] + a[1] * b[0],
        a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
    )


def _epow(a: _Eps, e: int) -> _Eps:
    out = _ONE
    for _ in range(e):
        out = _emul(out, a)
    return out


def _einv(a: _Eps) -> _Eps:
    c0, c1, c2 = a
    if c0 == 0:
        raise ZeroDivisionError("series has no reciprocal")
    i0 = 1 / c0
    i1 = -c1 / c0**2
    i2 = (c1 * c1 - c0 * c2) / c0**3
    return (i0, i1, i2)


@dataclass(frozen=True)
class CharacteristicExpansion:
    """Second-order expansion of the saddle point about y = 1.

    ``tau`` expands the characteristic root, ``rho`` the singularity
    radius rho(y) = tau / phi(tau) with phi(u) = (1+u)^k - (1-y)(1+u).
    The log-derivatives of rho at y = 1 give the growth rates of the
    short-chord mean and variance over non-crossing diagrams.
    """

    k: int
    tau: _Eps
    rho: _Eps

    @property
    def mean_coefficient(self) -> Fraction:
        return -self.rho[1] / self.rho[0]

    @property
    def variance_coefficient(self) -> Fraction:
        r1 = self.rho[1] / self.rho[0]
        r2 = 2 * self.rho[2] / self.rho[0]
        return -r2 - r1 + r1 * r1


def characteristic_expansion(k: int) -> CharacteristicExpansion:
    """Solve phi(tau) = tau phi'(tau) as a series in y - 1.

    tau(y) is found by undetermined coefficients, matching orders 0..2;
    the order-0 root is 1/(k-1).  The equation is affine in each unknown
    coefficient, so two evaluations pin each one down.
    """
    if k < 2:
        raise ValueError("need k >= 2")

    def residual(tau: _Eps) -> _Eps:
        one_plus = _eadd(_ONE, tau)
        phi = _eadd(_epow(one_plus, k), _emul(_EPS, one_plus))
        grad = _epow(one_plus, k - 1)
        dphi = _eadd((k * grad[0], k * grad[1], k * grad[2]), _EPS)
        return _esub(phi, _emul(tau, dphi))

    tau0 = Fraction(1, k - 1)
    base = residual((tau0, Fraction(0), Fraction(0)))
    if base[0] != 0:
        raise ArithmeticError("order-0 root check failed")

    probe = residual((tau0, Fraction(1), Fraction(0)))
    slope1 = probe[1] - base[1]
    tau1 = -base[1] / slope1

    base2 = residual((tau0, tau1, Fraction(0)))
    probe2 = residual((tau0, tau1, Fraction(1)))
    slope2 = probe2[2] - base2[2]
    tau2 = -base2[2] / slope2

    tau: _Eps = (tau0, tau1, tau2)
    check = residual(tau)
    if check != _ZERO:
        raise ArithmeticError("series solve left a residual")

    one_plus = _eadd(_ONE, tau)
    phi = _eadd(_epow(one_plus, k), _emul(_EPS, one_plus))
    rho = _emul(tau, _einv(phi))
    return CharacteristicExpansion(k=k, tau=tau, rho=rho)
