"""Working-precision configuration for all big-float evaluation.

Every high-precision operation takes a :class:`PrecisionConfig`; the pair
(binary working precision, target absolute error) governs Euler-Maclaurin
truncation depths, iteration stopping rules and the guard bits added on top
of the requested precision.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import mpmath

# Guard bits added on top of working_bits inside kernels so that the final
# rounded result meets the 2^(-working_bits + GUARD_BITS) remainder contract.
GUARD_BITS = 10

# Default working precision for zero-sum evaluations.
ZERO_SUM_BITS = 96

_ENV_BITS = "LI_PREC_BITS"


@dataclass(frozen=True)
class PrecisionConfig:
    working_bits: int = ZERO_SUM_BITS
    target_abs_error: float = 1e-20

    def __post_init__(self):
        if self.working_bits < 64:
            raise ValueError(f"working_bits must be >= 64, got {self.working_bits}")
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")

    @property
    def eps(self) -> mpmath.mpf:
        """2^(-working_bits), the unit roundoff of the configured precision."""
        return mpmath.mpf(2) ** (-self.working_bits)

    def workprec(self, extra: int = GUARD_BITS):
        """Context manager setting mpmath precision to working_bits + extra."""
        return mpmath.workprec(self.working_bits + extra)


def default_precision(bits: int | None = None) -> PrecisionConfig:
    """Default config; `bits` overrides, else the LI_PREC_BITS env var, else 96."""
    if bits is None:
        env = os.environ.get(_ENV_BITS)
        bits = int(env) if env else ZERO_SUM_BITS
    return PrecisionConfig(working_bits=bits, target_abs_error=float(mpmath.mpf(2) ** (-bits + GUARD_BITS)))


def arith_precision(n: int, q: int, M: int) -> PrecisionConfig:
    """Precision for arithmetic-formula calls.

    The alternating binomial sum in tau_chi cancels roughly 2n bits and the
    intermediate binomials grow like C(n, n/2) ~ 2^n, so the working precision
    scales with n and with log2(q*M).
    """
    bits = 64 + 2 * n + math.ceil(math.log2(max(2, q * M)))
    return PrecisionConfig(working_bits=bits, target_abs_error=float(mpmath.mpf(2) ** (-bits + 2 * GUARD_BITS)))
