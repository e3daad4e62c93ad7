"""High-precision measurement harness for the solver's output.

Everything exact lives elsewhere; this module is the one place that
evaluates in (software) floating point.  It measures sup-norm and
Chebyshev-weighted L2 errors, estimates best-approximation errors by a
discrete Remez exchange (with a Chebyshev-truncation cross-check), and
assembles the near-optimality ratio

    ||y^(k) - y_n^(k)|| / E[n-k, y^(k)]

whose boundedness over n is the method's quality statement.  Default
working precision is 192 bits: at the top of the degree sweep the
denominators sit near 1e-17, far below what double precision resolves.

All functions take an explicit ``PrecisionConfig``; none of them reads
or mutates global precision state outside a ``workprec`` scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from mpmath import mp

from .errors import (
    EmptySamplesError,
    RemezConvergenceError,
    UnreliableDenominatorError,
)
from .ode import IvpProblem, taylor_reference
from .polynomial import Poly
from .solver import solve_at_degree

SUP_NORM = "sup"
WEIGHTED_L2 = "weighted-l2"
NORM_KINDS = (SUP_NORM, WEIGHTED_L2)


@dataclass(frozen=True)
class PrecisionConfig:
    working_bits: int = 192
    grid_size: int = 4097

    def __post_init__(self):
        if self.working_bits < 53:
            raise ValueError("working_bits must be at least 53")
        if self.grid_size < 2:
            raise ValueError("grid_size must be at least 2")


DEFAULT_CONFIG = PrecisionConfig()


@dataclass(frozen=True)
class FunctionSamples:
    """Values of a function on a grid (Chebyshev-extrema points by default)."""

    grid: tuple
    values: tuple

    def __post_init__(self):
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values must have equal length")

    def __len__(self) -> int:
        return len(self.grid)


@dataclass(frozen=True)
class RatioRow:
    """One row of the near-optimality table."""

    n: int
    numerator: object
    denominator: object
    ratio: object
    norm_kind: str


@dataclass(frozen=True)
class RatioFailure:
    """A degree whose row could not be computed; batches keep going."""

    n: int
    error: str


Interval = tuple[Fraction, Fraction]


def _interval_mpf(interval: Interval):
    a, b = interval
    return _to_mpf(a), _to_mpf(b)


def _to_mpf(value):
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


def chebyshev_grid(interval: Interval, size: int, config: PrecisionConfig = DEFAULT_CONFIG):
    """Ascending Chebyshev-extrema points, endpoints included."""
    if size < 2:
        raise ValueError("grid needs at least two points")
    with mp.workprec(config.working_bits):
        a, b = _interval_mpf(interval)
        mid, half = (a + b) / 2, (b - a) / 2
        return tuple(mid - half * mp.cos(mp.pi * i / (size - 1)) for i in range(size))


def poly_evaluator(p: Poly, config: PrecisionConfig = DEFAULT_CONFIG) -> Callable:
    """Working-precision Horner evaluator for an exact polynomial."""
    with mp.workprec(config.working_bits):
        coeffs = [_to_mpf(c) for c in p.coeffs]

    def evaluate(x):
        acc = mp.mpf(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    return evaluate


def sample_function(f: Callable, interval: Interval,
                    config: PrecisionConfig = DEFAULT_CONFIG) -> FunctionSamples:
    with mp.workprec(config.working_bits):
        grid = chebyshev_grid(interval, config.grid_size, config)
        return FunctionSamples(grid=grid, values=tuple(f(x) for x in grid))


def sample_poly(p: Poly, interval: Interval,
                config: PrecisionConfig = DEFAULT_CONFIG) -> FunctionSamples:
    return sample_function(poly_evaluator(p, config), interval, config)


def reference_derivative_samples(problem: IvpProblem, taylor_degree: int,
                                 config: PrecisionConfig = DEFAULT_CONFIG) -> FunctionSamples:
    """Samples of the exact solution's k-th derivative on the problem interval.

    The solution is taken from ``taylor_reference`` at the given degree,
    so the caller controls the truncation error of the reference.
    """
    k = problem.operator.order()
    reference = taylor_reference(problem, taylor_degree).derivative(k)
    return sample_poly(reference, problem.interval, config)


def sup_norm_error(f: FunctionSamples, p: Poly,
                   config: PrecisionConfig = DEFAULT_CONFIG):
    """max |f - p| over the sample grid (a lower bound on the true sup norm)."""
    if len(f) == 0:
        raise EmptySamplesError("cannot take a sup norm over zero samples")
    with mp.workprec(config.working_bits):
        evaluate = poly_evaluator(p, config)
        return max(abs(v - evaluate(x)) for x, v in zip(f.grid, f.values))


def weighted_l2_norm(v: Union[Poly, FunctionSamples, Callable], interval: Interval,
                     config: PrecisionConfig = DEFAULT_CONFIG, nodes: int | None = None):
    """Chebyshev-weighted L2 norm: (integral of v^2 * rho(z(x)) dx)^(1/2).

    rho(z) = (1-z^2)^(-1/2) with z the affine map of [a, b] onto [-1, 1].
    Polynomials and callables integrate by Gauss-Chebyshev quadrature
    (exact for a Poly whenever nodes >= deg(v)+1, the default);
    FunctionSamples integrate by the theta-trapezoid rule on their own
    grid, which assumes the standard Chebyshev-extrema layout that the
    module's sampling helpers produce.
    """
    with mp.workprec(config.working_bits):
        a, b = _interval_mpf(interval)
        half = (b - a) / 2

        if isinstance(v, FunctionSamples):
            if len(v) < 2:
                raise EmptySamplesError("need at least two samples for a norm")
            count = len(v)
            total = sum(val * val for val in v.values[1:-1])
            total += (v.values[0] ** 2 + v.values[-1] ** 2) / 2
            return mp.sqrt(half * mp.pi / (count - 1) * total)

        if isinstance(v, Poly):
            degree = v.degree()
            count = nodes if nodes is not None else (degree + 1 if degree is not None else 1)
            count = max(count, 1)
            evaluate = poly_evaluator(v, config)
        else:
            count = nodes if nodes is not None else config.grid_size
            evaluate = v

        mid = (a + b) / 2
        total = mp.mpf(0)
        for i in range(count):
            z = mp.cos(mp.pi * (2 * i + 1) / (2 * count))
            fx = evaluate(mid + half * z)
            total += fx * fx
        return mp.sqrt(half * mp.pi / count * total)


def chebyshev_coefficients(f: FunctionSamples, count: int,
                           config: PrecisionConfig = DEFAULT_CONFIG) -> list:
    """First ``count`` Chebyshev interpolation coefficients of the samples.

    Assumes the Chebyshev-extrema grid.  Returns c_j with
    f ~ sum c_j T_j(z(x)); for j far below the grid size these match the
    function's Chebyshev series coefficients to working precision.
    """
    n = len(f) - 1
    if n < 1:
        raise EmptySamplesError("need at least two samples")
    count = min(count, n + 1)
    with mp.workprec(config.working_bits):
        # values run from x=a (z=-1, theta=pi) up to x=b (z=+1, theta=0)
        out = []
        for j in range(count):
            acc = (f.values[0] * mp.cos(mp.pi * j) + f.values[-1]) / 2
            for i in range(1, n):
                acc += f.values[i] * mp.cos(mp.pi * j * (n - i) / n)
            c = 2 * acc / n
            if j == 0 or j == n:
                c /= 2
            out.append(c)
        return out


def best_approx_error(f: FunctionSamples, degree: int, interval: Interval,
                      method: str = "remez",
                      config: PrecisionConfig = DEFAULT_CONFIG):
    """Estimate E[degree, f]: the sup-norm best-approximation error.

    ``remez``: discrete exchange on the sample grid, iterated until the
    equioscillation level and the grid maximum agree to one part in 1e6;
    returns the final level (a guaranteed lower bound for the minimax
    error over the grid).  ``cheb-truncation``: sum of |Chebyshev
    coefficients| beyond the degree -- an upper bound within a factor of
    about 2, used as a cross-check and as a fallback when the remez
    levels drown in working-precision noise.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if len(f) < degree + 2:
        raise ValueError(f"{len(f)} samples cannot support degree {degree}")
    if method == "remez":
        try:
            return _remez_level(f, degree, interval, config)
        except RemezConvergenceError as exc:
            with mp.workprec(config.working_bits):
                scale = max(abs(v) for v in f.values)
                floor = mp.ldexp(max(scale, mp.mpf(1)), -(config.working_bits - 24))
                if exc.level_high < floor:
                    # the target error drowned in working-precision noise;
                    # the truncation estimate is the usable fallback
                    return best_approx_error(f, degree, interval,
                                             "cheb-truncation", config)
            raise
    if method == "cheb-truncation":
        with mp.workprec(config.working_bits):
            limit = min(len(f) - 1, 2 * degree + 64)
            coeffs = chebyshev_coefficients(f, limit + 1, config)
            return sum(abs(c) for c in coeffs[degree + 1:])
    raise ValueError(f"unknown method {method!r}")


def _clenshaw(coeffs, z):
    b1 = b2 = mp.mpf(0)
    for c in reversed(coeffs[1:]):
        b1, b2 = c + 2 * z * b1 - b2, b1
    return coeffs[0] + z * b1 - b2


def _remez_level(f: FunctionSamples, degree: int, interval: Interval,
                 config: PrecisionConfig, max_iterations: int = 100):
    npts = degree + 2
    size = len(f)
    with mp.workprec(config.working_bits):
        a, b = _interval_mpf(interval)
        width = b - a
        zs = [(2 * x - a - b) / width for x in f.grid]

        reference = [i * (size - 1) // (npts - 1) for i in range(npts)]
        level = peak = mp.mpf(0)
        for _ in range(max_iterations):
            coeffs, level = _levelled_fit(f, zs, reference, degree)
            residual = [v - _clenshaw(coeffs, z) for z, v in zip(zs, f.values)]
            peak = max(abs(r) for r in residual)
            if peak == 0:
                return peak  # f is itself a polynomial of this degree on the grid
            if peak - abs(level) <= mp.mpf("1e-6") * peak:
                return abs(level)
            candidates = _alternating_peaks(residual)
            if len(candidates) < npts:
                break
            candidates = _trim_candidates(candidates, residual, npts)
            if candidates == reference:
                break
            reference = candidates
        raise RemezConvergenceError(
            f"exchange did not level off for degree {degree} "
            f"(|h|={mp.nstr(abs(level), 8)}, max|e|={mp.nstr(peak, 8)})",
            level_low=abs(level),
            level_high=peak,
        )


def _levelled_fit(f: FunctionSamples, zs, reference, degree):
    """Solve for the polynomial taking errors exactly +-h on the reference."""
    npts = len(reference)
    M = mp.matrix(npts, npts)
    rhs = mp.matrix(npts, 1)
    for row, gi in enumerate(reference):
        z = zs[gi]
        t_prev, t_cur = mp.mpf(1), z
        M[row, 0] = t_prev
        if degree >= 1:
            M[row, 1] = t_cur
        for j in range(2, degree + 1):
            t_prev, t_cur = t_cur, 2 * z * t_cur - t_prev
            M[row, j] = t_cur
        M[row, degree + 1] = mp.mpf(1 if row % 2 == 0 else -1)
        rhs[row] = f.values[gi]
    solution = mp.lu_solve(M, rhs)
    return [solution[j] for j in range(degree + 1)], solution[degree + 1]


def _alternating_peaks(residual) -> list[int]:
    """One index of max |residual| per maximal same-sign run."""
    peaks: list[int] = []
    run_sign = 0
    run_best = 0
    for i, r in enumerate(residual):
        sign = 1 if r > 0 else (-1 if r < 0 else 0)
        if sign == 0:
            continue
        if run_sign == 0:
            run_sign, run_best = sign, i
        elif sign == run_sign:
            if abs(r) > abs(residual[run_best]):
                run_best = i
        else:
            peaks.append(run_best)
            run_sign, run_best = sign, i
    if run_sign != 0:
        peaks.append(run_best)
    return peaks


def _trim_candidates(candidates: list[int], residual, npts: int) -> list[int]:
    """Drop end candidates (smaller |residual| end first) down to npts.

    Consecutive candidates alternate in sign by construction, so
    removing ends preserves the alternation.
    """
    out = list(candidates)
    while len(out) > npts:
        if abs(residual[out[0]]) <= abs(residual[out[-1]]):
            out.pop(0)
        else:
            out.pop()
    return out


def optimality_ratio(problem: IvpProblem, reference_kth: FunctionSamples, n: int,
                     norm_kind: str = SUP_NORM,
                     config: PrecisionConfig = DEFAULT_CONFIG) -> RatioRow:
    """One near-optimality row: method error over best-approximation error.

    The numerator compares the k-th derivative of the degree-n solution
    against the reference samples; the denominator is the best possible
    error of any degree n-k polynomial against the same reference.  A
    numerator of exactly zero short-circuits to ratio 0 (the reference
    was the solution's own derivative).
    """
    if norm_kind not in NORM_KINDS:
        raise ValueError(f"unknown norm kind {norm_kind!r}")
    k = problem.operator.order()
    solution = solve_at_degree(problem, n)
    derivative = solution.y_n.derivative(k)

    with mp.workprec(config.working_bits):
        if norm_kind == SUP_NORM:
            numerator = sup_norm_error(reference_kth, derivative, config)
        else:
            evaluate = poly_evaluator(derivative, config)
            diff = FunctionSamples(
                grid=reference_kth.grid,
                values=tuple(v - evaluate(x)
                             for x, v in zip(reference_kth.grid, reference_kth.values)),
            )
            numerator = weighted_l2_norm(diff, problem.interval, config)

        if numerator == 0:
            return RatioRow(n=n, numerator=numerator, denominator=mp.mpf(0),
                            ratio=mp.mpf(0), norm_kind=norm_kind)

        if norm_kind == SUP_NORM:
            denominator = best_approx_error(
                reference_kth, n - k, problem.interval, "remez", config)
        else:
            denominator = _l2_truncation_error(
                reference_kth, n - k, problem.interval, config)

        scale = max(abs(v) for v in reference_kth.values) if reference_kth.values else mp.mpf(1)
        floor = mp.ldexp(max(scale, mp.mpf(1)), -(config.working_bits - 16))
        if denominator < floor:
            raise UnreliableDenominatorError(
                f"best-approximation error {mp.nstr(denominator, 6)} at degree "
                f"{n - k} is below the {config.working_bits}-bit resolution "
                "floor; increase working precision"
            )
        return RatioRow(n=n, numerator=numerator, denominator=denominator,
                        ratio=numerator / denominator, norm_kind=norm_kind)


def _l2_truncation_error(f: FunctionSamples, degree: int, interval: Interval,
                         config: PrecisionConfig):
    """Weighted-L2 best-approximation error: the orthogonal-projection tail."""
    with mp.workprec(config.working_bits):
        a, b = _interval_mpf(interval)
        limit = min(len(f) - 1, 2 * degree + 64)
        coeffs = chebyshev_coefficients(f, limit + 1, config)
        tail = sum(c * c for c in coeffs[degree + 1:])
        return mp.sqrt((b - a) / 2 * mp.pi / 2 * tail)


def convergence_table(problem: IvpProblem, reference: FunctionSamples,
                      ns: Sequence[int], norm_kind: str = SUP_NORM,
                      config: PrecisionConfig = DEFAULT_CONFIG) -> list:
    """Rows for each degree; per-degree failures are collected, not raised."""
    rows: list = []
    for n in ns:
        try:
            rows.append(optimality_ratio(problem, reference, n, norm_kind, config))
        except Exception as exc:  # noqa: BLE001 - batch semantics by contract
            rows.append(RatioFailure(n=n, error=f"{type(exc).__name__}: {exc}"))
    return rows
