"""Arbitrary-precision scalars, roots of unity and deterministic summation.

Everything numeric in this package runs on mpmath with an explicit binary
precision.  Sums over level-k coefficient vectors are accumulated in fixed
ascending index order so that results are bit-reproducible at a given
precision.  The colored-Jones hot loop lives in :mod:`wrt8.jones` and uses
gmpy2 internally for speed; this module owns the precision policy.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field

from mpmath import mp, mpc, mpf

DEFAULT_PRECISION = 192

#: extra mantissa bits carried by derived quantities so that identities
#: checked "within precision" are not eaten by the last few roundings
GUARD_BITS = 32


@contextmanager
def bits(prec: int):
    """Context manager running a block at ``prec`` binary digits."""
    if prec < 2:
        raise ValueError("precision must be at least 2 bits")
    with mp.workprec(prec):
        yield mp


def sweep_precision(k: int, prec: int = DEFAULT_PRECISION) -> int:
    """Working precision for a level-k sweep.

    Unit-magnitude oscillatory sums over 2k terms lose O(log k) bits, so the
    driver never goes below ``64 + 8*ceil(log2 k)``.
    """
    return max(prec, 64 + 8 * math.ceil(math.log2(max(k, 2))))


def fixed_sum(terms):
    """Plain left fold in the order given; no reordering, no compensation."""
    acc = None
    for t in terms:
        acc = t if acc is None else acc + t
    return acc if acc is not None else mpf(0)


def quantum_integer(ell: int, t) -> mpc:
    """Quantum integer [ell] = (t^{2 ell} - t^{-2 ell}) / (t^2 - t^{-2}).

    Odd in ell.  Raises for degenerate t with t^4 = 1, where the denominator
    vanishes.
    """
    t = mpc(t)
    if t == 0:
        raise ValueError("t must be nonzero")
    den = t**2 - t**-2
    if abs(den) < mpf(2) ** (-mp.prec + 8):
        raise ValueError("degenerate evaluation point: t^4 = 1")
    return (t ** (2 * ell) - t ** (-2 * ell)) / den


@dataclass
class UnitRoot:
    """The root-of-unity evaluation point t_k = -exp(i pi / 2k).

    Powers of t_k are cached per instance; instances are cheap and should be
    used per task when sharing across threads.
    """

    k: int
    precision: int = DEFAULT_PRECISION
    _pow_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")

    @property
    def t(self) -> mpc:
        return self.t_pow(1)

    @property
    def q(self) -> mpc:
        """q_k = e^{i pi / k} = t_k^2."""
        return self.t_pow(2)

    def t_pow(self, j: int) -> mpc:
        """t_k^j, reduced exactly mod t_k^{4k} = 1."""
        r = j % (4 * self.k)
        got = self._pow_cache.get(r)
        if got is None:
            # t_k = exp(i pi (2k+1)/(2k)); reduce the pi-multiple exactly
            frac = (r * (2 * self.k + 1)) % (4 * self.k)
            with bits(self.precision):
                got = mp.expjpi(mpf(frac) / (2 * self.k))
            self._pow_cache[r] = got
        return got

    def sin_pi(self, j: int) -> mpf:
        """sin(pi j / k), the building block of quantum integers at t_k."""
        with bits(self.precision):
            return mp.sinpi(mpf(j % (2 * self.k)) / self.k)

    def quantum_integer(self, ell: int) -> mpf:
        """[ell](t_k) = sin(pi ell / k) / sin(pi / k), real at t_k."""
        if self.k == 1:
            raise ValueError("degenerate evaluation point: t_1^4 = 1")
        with bits(self.precision):
            return self.sin_pi(ell) / self.sin_pi(1)
