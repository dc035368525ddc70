"""Unconditional Li coefficients by the arithmetic (prime-power) formula.

lambda_chi(n) = (n/2)(log(q/pi) - gamma) + tau_chi(n)
                - sum_{k} (Lambda(k)/k) chi(k) L^1_{n-1}(log k),

truncated at prime powers k <= M with the explicit truncation bound and the
Lambert-W-derived choice of M.  The Laguerre-kernel form of the k-sum is the
production path (per-term error polynomial in n); the raw alternating
binomial double sum needs O(n) extra bits and is kept only as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .characters import DirichletCharacter
from .errors import ConductorOne, NotPrimitive
from .precision import PrecisionConfig, arith_precision
from .primes import is_prime, prime_powers
from .results import LiResult
from .specfun import laguerre_L1, lambert_w_m1, zeta_int

# Below this bound the |E_M| estimate is not in its stated regime.
_BOUND_MIN_M = 16

# Kernel sums over this many prime powers switch to the vectorized float64
# path (truncation error >= 1e-3 dominates the ~1e-10 rounding there).
_FAST_PATH_MIN_M = 100_000


@dataclass(frozen=True)
class TruncationParams:
    M: int
    nu: int
    bound_case: str  # "m_plus_one_prime" | "generic"
    candidate_prime_M: int | None = None  # W_{-1}-branch diagnostic value

    def __post_init__(self):
        if self.M < 2:
            raise ValueError("M must be >= 2")
        if self.nu < 1 and self.bound_case != "generic":
            raise ValueError("nu must be >= 1")


def tau_chi(n: int, parity_a: int, prec: PrecisionConfig | None = None) -> mpmath.mpf:
    """Archimedean/trivial-zero term of the arithmetic formula.

    even chi (a=0): sum_{j=2}^n C(n,j)(-1)^j (1 - 2^-j) zeta(j) - (n/2) * 2 log 2
    odd chi  (a=1): sum_{j=2}^n C(n,j)(-1)^j 2^-j zeta(j)

    The constant sum_l 1/(l(2l-1)) telescopes to 2 log 2 (validated in the
    tests against partial sums).  The alternating binomial sum cancels ~2n
    bits and runs at elevated precision.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if parity_a not in (0, 1):
        raise ValueError("parity_a must be 0 or 1")
    prec = prec or arith_precision(n, 2, 2)
    with mpmath.workprec(prec.working_bits + 2 * n + 20):
        total = mpmath.mpf(0)
        wide = PrecisionConfig(working_bits=mpmath.mp.prec, target_abs_error=prec.target_abs_error)
        for j in range(2, n + 1):
            zj = zeta_int(j, wide)
            w = mpmath.mpf(2) ** (-j)
            factor = w if parity_a == 1 else 1 - w
            total += math.comb(n, j) * (-1) ** j * factor * zj
        if parity_a == 0:
            total -= n * mpmath.log(2)  # (n/2) * 2 log 2
        return +total


def prime_power_kernel_sum(n: int, chi: DirichletCharacter, M: int,
                           prec: PrecisionConfig | None = None) -> mpmath.mpc:
    """-sum over prime powers k = p^m <= M of (log p / k) chi(k) L^1_{n-1}(log k).

    Large M at ordinary accuracy targets runs vectorized in float64 (the
    Laguerre recurrence is stable and the truncation bound dwarfs rounding);
    small M or tight targets run in big floats.
    """
    if n < 1 or M < 2:
        raise ValueError("need n >= 1 and M >= 2")
    # Large cutoffs go vectorized in float64: the truncation bound at
    # M >= 1e5 is at least ~1e-2 sqrt(n), many orders above the ~1e-11
    # rounding of the vectorized sum, so big floats buy nothing there.
    if M >= _FAST_PATH_MIN_M:
        return _kernel_sum_fast(n, chi, M)
    prec = prec or arith_precision(n, chi.modulus, M)
    return _kernel_sum_mp(n, chi, M, prec)


def _kernel_sum_mp(n, chi, M, prec):
    q = chi.modulus
    with prec.workprec(20):
        ks, logps = prime_powers(M)
        total = mpmath.mpc(0)
        for k in ks.tolist():
            if chi.exponents[k % q] is None:
                continue
            logk = mpmath.log(k)
            total += chi.value(k, prec) * _log_base_prime(k) / k * laguerre_L1(n - 1, logk, prec)
        return +(-total)


def _log_base_prime(k: int) -> mpmath.mpf:
    """log p for a prime power k = p^m, at the ambient mpmath precision."""
    for p in range(2, int(math.isqrt(k)) + 1):
        if k % p == 0:
            return mpmath.log(p)
    return mpmath.log(k)


def _kernel_sum_fast(n, chi, M):
    q = chi.modulus
    ks, logps = prime_powers(M)
    vals = np.array([complex(chi(int(r))) for r in range(q)])
    w = vals[ks % q]
    keep = w != 0
    ks, logps, w = ks[keep], logps[keep], w[keep]
    logk = np.log(ks.astype(np.float64))
    # upward Laguerre recurrence vectorized over all k at once
    prev = np.ones_like(logk)
    cur = 2.0 - logk
    if n - 1 == 0:
        cur = prev
    else:
        for k_i in range(1, n - 1):
            prev, cur = cur, ((2 * k_i + 2 - logk) * cur - (k_i + 1) * prev) / (k_i + 1)
    total = -np.sum(w * (logps / ks) * cur)
    if chi.is_real:
        total = complex(total.real, 0.0)
    return mpmath.mpc(total)


def error_bound_EM(n: int, M: int) -> float:
    """Truncation bound for the prime-power sum cut at M:

    sqrt(n/log M) (log M + 2)/sqrt(M)   if M+1 is prime,
    3 sqrt(n)/sqrt(M)                   otherwise.

    Returns +inf below M = 16 (outside the bound's regime).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if M < _BOUND_MIN_M:
        return math.inf
    if is_prime(M + 1):
        lm = math.log(M)
        return math.sqrt(n / lm) * (lm + 2) / math.sqrt(M)
    return 3 * math.sqrt(n) / math.sqrt(M)


def choose_M(n: int, nu: int) -> TruncationParams:
    """Truncation cutoff with |E_M| <= 10^-nu.

    The generic-branch M = 9 n 10^(2 nu) is the default (verified a
    posteriori, incrementing past any M whose successor is prime); the
    W_{-1}-branch candidate (n/4) W_{-1}(-10^-nu / sqrt n)^2 + 4 n 10^(2 nu)
    is recorded for diagnostics when its argument is in the branch domain.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    target = 10.0 ** (-nu)
    candidate = None
    x = -(10.0 ** (-nu)) / math.sqrt(n)
    if x >= -1 / math.e:
        w = float(lambert_w_m1(x))
        candidate = math.ceil(n / 4 * w * w + 4 * n * 10.0 ** (2 * nu))
    M = math.ceil(9 * n * 10.0 ** (2 * nu))
    if M >= _BOUND_MIN_M:
        while error_bound_EM(n, M) >= target:
            M += 1
    case = "m_plus_one_prime" if is_prime(M + 1) else "generic"
    return TruncationParams(M=M, nu=nu, bound_case=case, candidate_prime_M=candidate)


def li_arith(n: int, chi: DirichletCharacter, params: TruncationParams,
             prec: PrecisionConfig | None = None) -> LiResult:
    """Unconditional lambda_chi(n) truncated at prime powers <= params.M.

    For complex chi the real part is returned with the complex_character
    flag set (the zero sum pairs rho with 1 - conj(rho), so lambda is
    1 - Re[(1 - 1/rho)^n] summed; Im cancels only jointly with conj(chi)).
    """
    if chi.conductor == 1:
        raise ConductorOne("arithmetic formula requires conductor q > 1")
    if not chi.is_primitive:
        raise NotPrimitive("arithmetic formula requires a primitive character")
    q = chi.modulus
    prec = prec or arith_precision(n, q, params.M)
    with prec.workprec(20):
        main = mpmath.mpf(n) / 2 * (mpmath.log(mpmath.mpf(q) / mpmath.pi) - mpmath.euler)
        tau = tau_chi(n, chi.parity_a, prec)
        kernel = prime_power_kernel_sum(n, chi, params.M, prec)
        value = main + tau + mpmath.re(kernel)
    return LiResult(n=n, value=float(value), method="arith",
                    error_bound=error_bound_EM(n, params.M), params=params,
                    chi_id=(chi.modulus, chi.label),
                    complex_character=not chi.is_real)
