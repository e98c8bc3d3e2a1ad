"""Closed-form integer invariants of the Wall manifolds Q(m, n).

The Wall manifold Q(m, n) is the mapping torus of the involution on the
Dold manifold P(m, n) = (S^m x CP^n) / (antipode x conjugation) induced by
negating the last sphere coordinate; it has dimension m + 2n + 1.  Its
projective span (maximal number of linearly independent tangent line
fields) is 2*nu(n+1) + m + 1, where nu is the 2-adic valuation.  This
module holds that closed form together with the related bounds it is
checked against: the stable span of CP^n, the fibration upper bound, the
Hurwitz-Radon numbers and the flag-manifold lower bound.

Everything here is exact integer arithmetic; all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass


def nu(k: int) -> int:
    """2-adic valuation: the largest e such that 2**e divides k.

    Defined for k >= 1 only; nu(0) would be infinite.
    """
    if k < 1:
        raise ValueError(f"2-adic valuation needs k >= 1, got {k}")
    return (k & -k).bit_length() - 1


@dataclass(frozen=True)
class WallParams:
    """Parameters of the Wall manifold Q(m, n): m >= 1, n >= 0."""

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"sphere dimension m must be >= 1, got {self.m}")
        if self.n < 0:
            raise ValueError(f"complex projective dimension n must be >= 0, got {self.n}")

    @property
    def nu(self) -> int:
        """nu(n + 1), the valuation entering every bound for Q(m, n)."""
        return nu(self.n + 1)

    @property
    def delta(self) -> int:
        """Number of independent quasi-invariant fields constructed: 2*nu + m + 1."""
        return 2 * self.nu + self.m + 1

    @property
    def dim(self) -> int:
        return self.m + 2 * self.n + 1


def pspan_wall(p: WallParams) -> int:
    """Projective span of Q(m, n): 2*nu(n+1) + m + 1."""
    return 2 * nu(p.n + 1) + p.m + 1


def sspan_cpn(n: int) -> int:
    """Stable span of complex projective space CP^n: 2*nu(n+1)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    return 2 * nu(n + 1)


def upper_bound_fibration(p: WallParams) -> int:
    """Upper bound for pspan(Q(m, n)) via the bundle CP^n -> Q(m, n) -> Q(m, 0).

    The bound is sspan_cpn(n) + dim Q(m, 0) = 2*nu(n+1) + m + 1, which
    coincides with the closed form; `pspan_wall` must always agree.
    """
    return sspan_cpn(p.n) + p.m + 1


def hurwitz_radon(n: int) -> int:
    """Hurwitz-Radon number rho(n); span(S^(n-1)) = rho(n) - 1.

    Classical closed form: writing n = 2^(4a+b) * odd with 0 <= b <= 3,
    rho(n) = 8a + 2^b.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    a, b = divmod(nu(n), 4)
    return 8 * a + 2**b


def flag_lower_bound(k: int) -> int:
    """Lower bound binom(k, 2) for the projective span of RF(1, ..., 1, n-k).

    The tangent bundle of a real flag manifold splits into the pairwise
    tensor products of the tautological subbundles; with k one-dimensional
    flags the k-choose-2 products of line bundles are line bundles.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    return k * (k - 1) // 2
