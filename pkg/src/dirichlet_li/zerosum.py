"""Conditional Li coefficients from critical-line zeros.

Chebyshev sum over ordinates: with x_k = (4 gamma_k^2 - 1)/(4 gamma_k^2 + 1),

    lambda_chi(n, N) = 2 sum_{k<=N} alpha_k (1 - T_n(x_k)),

every term nonnegative, so the partial sums increase to lambda_chi(n) under
RH.  T_n(x_k) is evaluated as cos(2 n arctan(1/(2 gamma_k))), which stays
accurate for x_k exponentially close to 1 where the recurrence and even
arccos lose ground.  The factor 2 presumes a conjugate-symmetric zero set
(real chi, positive ordinates listed once); lists flagged symmetric=false
(e.g. merged chi / conj(chi) spectra for a complex character) are summed
without it.

Also here: the closed-form tail bound with its Lambert-W height chooser, the
step-function integral form (piecewise-exact, plus an adaptive-Simpson
cross-check), the partial-RH positivity report, and the two-term asymptotic
model (1/2) n log n + c_chi n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .characters import DirichletCharacter
from .errors import EmptyZeroList, NExceedsList, WDomainError
from .lfunc import ZeroList
from .precision import ZERO_SUM_BITS, PrecisionConfig
from .results import LiResult
from .specfun import lambert_w_m1

# Doubling cap for the choose_T0 post-check (2^60 covers any sane target).
_T0_MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class PartialSumParams:
    N: int
    T: float
    k_exp: int | None = None  # target exponent when chosen via choose_T0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if not self.T > 0:
            raise ValueError("T must be positive")


@lru_cache(maxsize=8)
def _half_angles(zeros: ZeroList, bits: int):
    """arctan(1/(2 gamma_k)) for every record, at the requested precision."""
    with mpmath.workprec(bits):
        return tuple(mpmath.atan(1 / (2 * mpmath.mpf(r.gamma)))
                     for r in zeros.records)


def li_zero_sum(n: int, zeros: ZeroList, params: PartialSumParams | None = None,
                prec: PrecisionConfig | None = None) -> LiResult:
    """lambda_chi(n, N) from the first N records of a zero list (RH assumed).

    The truncation height is min(gamma_N, zeros.height): the bound must
    reflect the ordinates actually summed.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if len(zeros) == 0:
        raise EmptyZeroList("zero-sum formula needs at least one zero")
    N = params.N if params is not None else len(zeros)
    if N > len(zeros):
        raise NExceedsList(f"requested N={N} but the list holds {len(zeros)}")
    bits = prec.working_bits if prec is not None else ZERO_SUM_BITS
    factor = 2 if zeros.symmetric else 1
    with mpmath.workprec(bits + 10):
        angles = _half_angles(zeros, bits + 10)
        total = mpmath.mpf(0)
        for k in range(N):
            total += zeros.records[k].alpha * (1 - mpmath.cos(2 * n * angles[k]))
        value = factor * total
    T = min(zeros.records[N - 1].gamma, zeros.height)
    q = zeros.chi_id[0]
    return LiResult(n=n, value=float(value), method="zero_sum",
                    error_bound=tail_bound(n, T, q),
                    params=PartialSumParams(N=N, T=T,
                                            k_exp=params.k_exp if params else None),
                    chi_id=zeros.chi_id, conditional=True)


def zero_sum_values(zeros: ZeroList, ns, N: int | None = None) -> np.ndarray:
    """lambda_chi(n, N) for a whole n-array at once, in float64.

    Rounding is ~1e-12 over 10^4 terms, far below the truncation tail; this
    is the path for table sweeps and asymptotic scans.
    """
    if len(zeros) == 0:
        raise EmptyZeroList("zero-sum formula needs at least one zero")
    N = len(zeros) if N is None else N
    if N > len(zeros):
        raise NExceedsList(f"requested N={N} but the list holds {len(zeros)}")
    g = zeros.gammas()[:N]
    alpha = zeros.alphas()[:N].astype(np.float64)
    phi = 2.0 * np.arctan(1.0 / (2.0 * g))
    ns = np.asarray(ns, dtype=np.float64)
    factor = 2.0 if zeros.symmetric else 1.0
    return factor * ((1.0 - np.cos(np.outer(ns, phi))) @ alpha)


def zero_sum_prefix(n: int, zeros: ZeroList) -> np.ndarray:
    """Partial sums lambda_chi(n, N') for N' = 1..len(zeros), in float64."""
    if len(zeros) == 0:
        raise EmptyZeroList("zero-sum formula needs at least one zero")
    g = zeros.gammas()
    alpha = zeros.alphas().astype(np.float64)
    phi = 2.0 * np.arctan(1.0 / (2.0 * g))
    factor = 2.0 if zeros.symmetric else 1.0
    return factor * np.cumsum(alpha * (1.0 - np.cos(n * phi)))


def _tail_closed_form(n: int, T: float, q: int) -> float:
    """The printed tail estimate (3n^2 / 2T^2) [ (1/2pi) T log T
    + (1/pi + log(q/2pi e)) T + 1/2 ], with no applicability guards."""
    bracket = (T * math.log(T) / (2 * math.pi)
               + (1 / math.pi + math.log(q / (2 * math.pi * math.e))) * T
               + 0.5)
    return 3 * n * n / (2 * T * T) * bracket


def tail_bound(n: int, T: float, q: int) -> float:
    """Bound on lambda_chi(n) - lambda_chi(n, T), +inf when inapplicable.

    The closed form needs T >= max(n, 3); for small q its bracket also goes
    negative at moderate T (the two T-terms nearly cancel, q=3 needs
    T > ~7.6e3), which we likewise report as +inf rather than a meaningless
    nonpositive "bound".  Even where positive, the bracket can sit below the
    zero-counting main term it is meant to majorize, so this bound is best
    treated as an estimate, not a certificate; see the cross-method
    comparison report.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if T < max(n, 3):
        return math.inf
    val = _tail_closed_form(n, T, q)
    if val <= 0:
        return math.inf
    return val


def choose_T0(n: int, k_exp: int, q: int | None = None) -> float:
    """Smallest height with (log T)/T <= c = (4 pi / 9 n^2) 10^(-k), by the
    W_{-1} branch: T0 = -(1/c) W_{-1}(-c).

    When q is given the closed-form tail bound is post-checked at T0 and the
    height doubled until it is <= 3*10^(-k) (the chooser controls only the
    dominant (log T)/T term; the slack absorbs the rest).
    """
    if n < 1 or k_exp < 0:
        raise ValueError("need n >= 1 and k_exp >= 0")
    c = 4 * math.pi / (9 * n * n) * 10.0 ** (-k_exp)
    if -c < -1 / math.e:
        raise WDomainError(f"-(4 pi / 9 n^2) 10^-k = {-c} below the branch point -1/e")
    T0 = float(-lambert_w_m1(-c) / c)
    if q is not None:
        target = 3 * 10.0 ** (-k_exp)
        for _ in range(_T0_MAX_DOUBLINGS):
            if tail_bound(n, T0, q) <= target:
                break
            T0 *= 2
        else:
            raise ArithmeticError(
                f"tail bound did not reach {target} within {_T0_MAX_DOUBLINGS} doublings")
    return T0


def li_integral(n: int, zeros: ZeroList, quadrature_check: bool = False,
                prec: PrecisionConfig | None = None) -> LiResult:
    """lambda_chi(n) as 32n Int_0^inf g (4g^2+1)^(-2) N_chi(g) U_{n-1}(x(g)) dg
    with the step zero-counting function, evaluated exactly piecewise.

    On each interval where N_chi is the constant c, the substitution
    x = (4g^2-1)/(4g^2+1) and Int U_{n-1} dx = T_n/n reduce the piece to
    2c [T_n(x_right) - T_n(x_left)]; the total telescopes to the Chebyshev
    zero sum.  With quadrature_check=True each smooth piece is also
    integrated by adaptive Simpson (tolerance 1e-8) and the two results are
    compared.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if len(zeros) == 0:
        raise EmptyZeroList("integral formula needs at least one zero")
    bits = prec.working_bits if prec is not None else ZERO_SUM_BITS
    factor = 2 if zeros.symmetric else 1
    with mpmath.workprec(bits + 10):
        angles = _half_angles(zeros, bits + 10)
        # T_n(x_k) = cos(2 n arctan(1/(2 gamma_k))); the step function starts
        # at the first zero and the last piece runs to x -> 1 where T_n -> 1
        tvals = [mpmath.cos(2 * n * a) for a in angles]
        total = mpmath.mpf(0)
        count = 0
        for k in range(len(zeros)):
            count += zeros.records[k].alpha
            t_right = tvals[k + 1] if k + 1 < len(zeros) else mpmath.mpf(1)
            total += count * (t_right - tvals[k])
        value = factor * total
    if quadrature_check:
        approx = _integral_quadrature(n, zeros)
        exact_over_range = _integral_piecewise_range(n, zeros)
        if abs(approx - exact_over_range) > 1e-6:
            raise ArithmeticError(
                f"quadrature check failed: piecewise {exact_over_range} vs "
                f"Simpson {approx}")
    T = min(zeros.records[-1].gamma, zeros.height)
    return LiResult(n=n, value=float(value), method="integral",
                    error_bound=tail_bound(n, T, zeros.chi_id[0]),
                    params=PartialSumParams(N=len(zeros), T=T),
                    chi_id=zeros.chi_id, conditional=True)


def _integrand(n: int, g: float, count: int, factor: int) -> float:
    x = (4 * g * g - 1) / (4 * g * g + 1)
    # U_{n-1}(cos t) = sin(nt)/sin(t)
    t = math.acos(x)
    u = n if t == 0 else math.sin(n * t) / math.sin(t)
    return factor * 16 * n * g / (4 * g * g + 1) ** 2 * count * u


def _adaptive_simpson(f, a, b, tol=1e-8, max_depth=20):
    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6 * (flo + 4 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, depth):
        mid = 0.5 * (lo + hi)
        lmid, rmid = 0.5 * (lo + mid), 0.5 * (mid + hi)
        fl, fr = f(lmid), f(rmid)
        left = simpson(lo, mid, flo, fl, fmid)
        right = simpson(mid, hi, fmid, fr, fhi)
        if depth >= max_depth or abs(left + right - whole) < 15 * tol:
            return left + right + (left + right - whole) / 15
        return (recurse(lo, mid, flo, fl, fmid, left, depth + 1)
                + recurse(mid, hi, fmid, fr, fhi, right, depth + 1))

    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0)


def _integral_quadrature(n: int, zeros: ZeroList) -> float:
    """Adaptive Simpson over [gamma_1, gamma_N], piece by smooth piece."""
    g = zeros.gammas()
    alpha = zeros.alphas()
    factor = 2 if zeros.symmetric else 1
    total = 0.0
    count = 0
    for k in range(len(g) - 1):
        count += int(alpha[k])
        total += _adaptive_simpson(
            lambda x, c=count: _integrand(n, x, c, factor), g[k], g[k + 1])
    return total


def _integral_piecewise_range(n: int, zeros: ZeroList) -> float:
    """The exact piecewise value restricted to [gamma_1, gamma_N] (what the
    quadrature covers: no final piece to infinity)."""
    g = zeros.gammas()
    alpha = zeros.alphas()
    factor = 2 if zeros.symmetric else 1
    phi = 2.0 * np.arctan(1.0 / (2.0 * g))
    tvals = np.cos(n * phi)
    total = 0.0
    count = 0
    for k in range(len(g) - 1):
        count += int(alpha[k])
        total += factor * count * (tvals[k + 1] - tvals[k])
    return total


@dataclass(frozen=True)
class PartialRHReport:
    height: float
    n_max: int
    provenance: str
    record_count: int
    warning: str | None = None

    def __str__(self):
        if self.warning:
            return f"partial-RH report: {self.warning}"
        lines = [
            f"zeros verified on the critical line up to T = {self.height:g} "
            f"({self.record_count} ordinates, provenance: {self.provenance})",
            f"=> lambda_chi(n) >= 0 for all n <= T^2 = {self.n_max}",
        ]
        if self.record_count >= 10 ** 4:
            lines.append(
                "at 10^4 verified zeros the same reasoning puts the first "
                "~10^8 Li coefficients on the nonnegative side")
        return "\n".join(lines)


def partial_rh_report(zeros: ZeroList) -> PartialRHReport:
    """Positivity range implied by on-line zeros up to the list height:
    all zeros with |Im rho| < T on the critical line forces
    lambda_chi(n) >= 0 for n <= T^2."""
    if len(zeros) == 0:
        return PartialRHReport(height=0.0, n_max=0, provenance=zeros.provenance,
                               record_count=0,
                               warning="empty zero list, nothing is implied")
    T = zeros.height
    return PartialRHReport(height=T, n_max=int(T * T),
                           provenance=zeros.provenance,
                           record_count=len(zeros))


def asymptotic_model(n: int, q_or_chi) -> float:
    """Two-term model (1/2) n log n + c_chi n with
    c_chi = (gamma - 1)/2 + (1/2) log(q/pi)."""
    if n < 1:
        raise ValueError("need n >= 1")
    q = q_or_chi.modulus if isinstance(q_or_chi, DirichletCharacter) else float(q_or_chi)
    c = 0.5 * (float(mpmath.euler) - 1) + 0.5 * math.log(q / math.pi)
    return 0.5 * n * math.log(n) + c * n
