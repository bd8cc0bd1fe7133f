"""Exact ensemble-average weight spectra of (c, d)-regular codes over GF(q).

The ensemble averages admit closed rational forms: the number of weight-l
words in a random code, averaged over all socket permutations and nonzero
edge multipliers, equals

    E[A(l)] = C(n, l) * a(c*l) / (C(c*n, c*l) * (q-1)**((c-1)*l))

where a(m) is the coefficient of x**m in the generating polynomial of the
check-side weight counts, itself the N-th power (N = c*n/d checks) of a
fixed degree-d polynomial whose coefficients count single-check solutions
by weight.  Everything here is exact integer and Fraction arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, ParameterError
from .gf import ORDER_LIMIT, _factor_prime_power

# Default cap on the block length of a full exact spectrum request.
DEFAULT_N_CAP = 2000


@dataclass(frozen=True)
class EnsembleParams:
    """Parameters of a (c, d)-regular ensemble over GF(q) at block length n.

    q is a prime power, every variable meets c checks, every check meets d
    variables, and d must divide c*n so the socket count splits into whole
    checks.
    """

    q: int
    c: int
    d: int
    n: int

    def __post_init__(self) -> None:
        if _factor_prime_power(self.q) is None or not 2 <= self.q <= ORDER_LIMIT:
            raise ParameterError(f"q must be a prime power in [2, {ORDER_LIMIT}], got {self.q}")
        if self.c < 1:
            raise ParameterError(f"c must be at least 1, got {self.c}")
        if self.d < 1:
            raise ParameterError(f"d must be at least 1, got {self.d}")
        if self.n < 1:
            raise ParameterError(f"n must be at least 1, got {self.n}")
        if (self.c * self.n) % self.d != 0:
            raise ParameterError(
                f"d = {self.d} must divide c*n = {self.c * self.n}; "
                f"this block length does not admit whole checks"
            )

    @property
    def num_checks(self) -> int:
        return self.c * self.n // self.d

    @property
    def num_sockets(self) -> int:
        return self.c * self.n


@dataclass(frozen=True)
class CheckCoeffTable:
    """Coefficients a(0..M) of the check-side generating polynomial power."""

    q: int
    d: int
    N: int
    M: int
    coeffs: tuple[int, ...]


@dataclass(frozen=True)
class SpectrumTable:
    """Exact average weight distribution E[A(l)] for l = 0..n."""

    params: EnsembleParams
    values: tuple[Fraction, ...]


def single_check_coeffs(q: int, d: int) -> list[int]:
    """Weight enumerator coefficients of one degree-d check over GF(q).

    Entry i counts the solutions of a single parity check with exactly i of
    its d positions nonzero, divided by the (q-1)**i multiplier symmetry:
    the count is C(d, i) * b(i) with b(i) = ((q-1)**i + (-1)**i (q-1)) / q,
    which is always an integer.  b(0) = 1, b(1) = 0, b(2) = q - 1.
    """
    if _factor_prime_power(q) is None or q < 2:
        raise ParameterError(f"q must be a prime power, got {q}")
    if d < 1:
        raise ParameterError(f"d must be at least 1, got {d}")
    out = []
    for i in range(d + 1):
        num = (q - 1) ** i + (-1) ** i * (q - 1)
        if num % q != 0:
            raise AssertionError(f"non-integral check coefficient at q={q}, i={i}")
        out.append(math.comb(d, i) * (num // q))
    return out


def check_coeffs(q: int, d: int, N: int, M: int) -> CheckCoeffTable:
    """Coefficients of x**m, m = 0..M, in the N-check generating polynomial.

    Runs the convolution recurrence one check at a time with a rolling row,
    so memory is O(M) regardless of N.

    Parameters
    ----------
    q, d : int
        Field order (prime power) and check degree.
    N : int
        Number of checks, at least 0.
    M : int
        Highest coefficient index retained.
    """
    if N < 0:
        raise ParameterError(f"N must be nonnegative, got {N}")
    if M < 0:
        raise ParameterError(f"M must be nonnegative, got {M}")
    base = single_check_coeffs(q, d)
    terms = [(i, b) for i, b in enumerate(base) if b != 0]
    row = [0] * (M + 1)
    row[0] = 1
    for _ in range(N):
        new = [0] * (M + 1)
        for m in range(M + 1):
            acc = 0
            for i, b in terms:
                if i > m:
                    break
                prev = row[m - i]
                if prev:
                    acc += b * prev
            new[m] = acc
        row = new
    return CheckCoeffTable(q=q, d=d, N=N, M=M, coeffs=tuple(row))


def _avg_weight_from_coeffs(params: EnsembleParams, coeffs, l: int) -> Fraction:
    q, c, n = params.q, params.c, params.n
    cl = c * l
    numerator = math.comb(n, l) * coeffs[cl]
    denominator = math.comb(c * n, cl) * (q - 1) ** ((c - 1) * l)
    return Fraction(numerator, denominator)


def avg_weight_distribution(params: EnsembleParams, n_cap: int = DEFAULT_N_CAP) -> SpectrumTable:
    """Exact E[A(l)] for every weight l = 0..n.

    Raises
    ------
    CapacityError
        If n exceeds n_cap; the full table needs O(n**2) big-integer work.
    """
    if params.n > n_cap:
        raise CapacityError(
            f"block length {params.n} exceeds the cap {n_cap}; "
            f"raise n_cap explicitly to proceed"
        )
    table = check_coeffs(params.q, params.d, params.num_checks, params.num_sockets)
    values = tuple(
        _avg_weight_from_coeffs(params, table.coeffs, l) for l in range(params.n + 1)
    )
    return SpectrumTable(params=params, values=values)


def avg_weight_at(params: EnsembleParams, l: int) -> Fraction:
    """Exact E[A(l)] for a single weight, with the coefficient row truncated at c*l."""
    if not 0 <= l <= params.n:
        raise ParameterError(f"weight {l} outside [0, {params.n}]")
    table = check_coeffs(params.q, params.d, params.num_checks, params.c * l)
    return _avg_weight_from_coeffs(params, table.coeffs, l)


def avg_weight_d2(params: EnsembleParams) -> SpectrumTable:
    """Closed-form E[A(l)] for cycle-code ensembles (d = 2).

    E[A(l)] = C(n, l) * C(c*n/2, c*l/2) / ((q-1)**(c*l/2 - l) * C(c*n, c*l))
    when c*l is even, and 0 otherwise.
    """
    if params.d != 2:
        raise ParameterError(f"closed form applies to d = 2 only, got d = {params.d}")
    q, c, n = params.q, params.c, params.n
    values = []
    for l in range(n + 1):
        cl = c * l
        if cl % 2 != 0:
            values.append(Fraction(0))
            continue
        numerator = math.comb(n, l) * math.comb(c * n // 2, cl // 2)
        denominator = (q - 1) ** (cl // 2 - l) * math.comb(c * n, cl)
        values.append(Fraction(numerator, denominator))
    return SpectrumTable(params=params, values=tuple(values))


def beta(n: int, l: int) -> float:
    """Gap between the binary entropy at l/n and the normalized log-binomial.

    beta(n, l) = H2(l/n) - ln(C(n, l)) / n, always nonnegative, and at most
    ln(l*(n-l)/n) / (2n) + (ln(2*pi)/2 + 1/6) / n for 0 < l < n.
    """
    if n < 1:
        raise ParameterError(f"n must be at least 1, got {n}")
    if not 0 <= l <= n:
        raise ParameterError(f"l = {l} outside [0, {n}]")
    x = l / n
    h2 = 0.0
    if 0.0 < x < 1.0:
        h2 = -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)
    return h2 - math.log(math.comb(n, l)) / n


def log_fraction(value: Fraction) -> float:
    """Natural log of a positive rational, stable for huge numerators."""
    if value <= 0:
        raise ParameterError("logarithm of a nonpositive rational")
    return math.log(value.numerator) - math.log(value.denominator)


def log_avg_upper_bound(params: EnsembleParams, l: int) -> float:
    """Upper bound on (1/n) ln E[A(l)] from the growth rate plus Stirling gaps.

    The bound is omega(l/n) + c * beta(c*n, c*l); it dominates the exact
    normalized log for every finite n.  Needs d >= 2.
    """
    from . import growth

    if not 0 <= l <= params.n:
        raise ParameterError(f"weight {l} outside [0, {params.n}]")
    if params.d < 2:
        raise ParameterError("the upper bound needs check degree d >= 2")
    x = l / params.n
    if params.d == 2:
        om = (1.0 - params.c / 2.0) * growth.entropy_q(x, params.q)
    else:
        om = growth.omega(params.q, params.c, params.d, x).omega
    return om + params.c * beta(params.c * params.n, params.c * l)


@dataclass(frozen=True)
class ScalingReport:
    """Log-log scaling of E[A(l)] at fixed small weight l across block lengths.

    Either the degenerate-zero flag is set (where the average vanishes
    identically: single-check columns at weight 1, or q = 2 with c*l odd)
    or a least-squares slope of ln E[A(l)] against ln n is reported along
    with the exact per-n values.
    """

    q: int
    c: int
    d: int
    l: int
    n_list: tuple[int, ...]
    values: tuple[Fraction, ...]
    exact_zero: bool
    slope: float | None
    predicted_exponent: int


def small_weight_scaling(q: int, c: int, d: int, l: int, n_list) -> ScalingReport:
    """Fit the polynomial decay of E[A(l)] in n at fixed weight l.

    For non-degenerate parameters the average scales like
    n**(-ceil((c-2)*l/2)); the report carries that predicted exponent and
    the fitted slope over the supplied block lengths.
    """
    n_list = tuple(int(n) for n in n_list)
    if l < 1:
        raise ParameterError(f"weight must be at least 1, got {l}")
    params_list = [EnsembleParams(q=q, c=c, d=d, n=n) for n in n_list]
    for p in params_list:
        if l > p.n:
            raise ParameterError(f"weight {l} exceeds block length {p.n}")
    values = tuple(avg_weight_at(p, l) for p in params_list)
    degenerate = (c == 1 and l == 1) or (q == 2 and (c * l) % 2 == 1)
    predicted = -math.ceil((c - 2) * l / 2)
    if degenerate:
        if any(v != 0 for v in values):
            raise AssertionError("degenerate case produced a nonzero average")
        return ScalingReport(
            q=q, c=c, d=d, l=l, n_list=n_list, values=values,
            exact_zero=True, slope=None, predicted_exponent=predicted,
        )
    usable = [(math.log(n), log_fraction(v)) for n, v in zip(n_list, values) if v > 0]
    if len(usable) < 3:
        raise ParameterError(
            f"need at least 3 block lengths with nonzero averages, got {len(usable)}"
        )
    xs = [u[0] for u in usable]
    ys = [u[1] for u in usable]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    return ScalingReport(
        q=q, c=c, d=d, l=l, n_list=n_list, values=values,
        exact_zero=False, slope=sxy / sxx, predicted_exponent=predicted,
    )
