"""Numerical evaluation of the quasi-invariant vector fields on CP^n x S^m x S^1.

Points of CP^n x S^m x S^1 are represented upstairs as (z, v, lambda) with z
a unit vector in C^(n+1), v a unit vector in R^(m+1) and |lambda| = 1.
Tangent vectors are ambient triples (w, u, mu) with

    <z, w> = 0  (Hermitian),   <v, u> = 0,   lambda * conj(mu) in i*R;

w is the horizontal lift of a tangent vector to CP^n, so independence of
lifts is equivalent to independence downstairs and no quotient-space data
structure is needed.

Two commuting free involutions act:

    sigma([z], v, lambda) = ([conj z], -v, lambda)
    tau(  [z], v, lambda) = ([z], rho(v), -lambda)      (rho negates v_last)

and their quotient is the Wall manifold Q(m, n).  The module evaluates
delta = 2*nu(n+1) + m + 1 vector fields:

* the "low" fields, built from a Clifford family A_j via
  beta_j(z) = <z, A_j z>:

      xi_j = (A_j z + beta_j z,  i beta_j (e_1 - <v,e_1> v),  beta_j <v,e_1> lambda)

* the "high" fields, from the stable trivialisation of T(S^m x S^1):

      xi_(2nu+j) = (0,  e_j - <v,e_j> v,  -i <v,e_j> lambda),   j = 2..m+1

and checks tangency, representative-independence, the quasi-invariance
signs under both involutions, and linear independence via singular values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .clifford import CliffordFamily, predicted_sign

POINT_TOL = 1e-12
TANGENCY_TOL = 1e-10
INVARIANCE_TOL = 1e-9
RANK_REL_TOL = 1e-8


class InvolutionKind(str, Enum):
    SIGMA = "sigma"
    TAU = "tau"


@dataclass(frozen=True)
class TotalSpacePoint:
    """A point (z, v, lambda) of S^(2n+1) x S^m x S^1, unit norms within 1e-12."""

    z: np.ndarray
    v: np.ndarray
    lam: complex

    def __post_init__(self) -> None:
        z = np.asarray(self.z, dtype=np.complex128)
        v = np.asarray(self.v, dtype=np.float64)
        lam = complex(self.lam)
        if z.ndim != 1 or v.ndim != 1 or z.size == 0 or v.size == 0:
            raise ValueError("z and v must be nonempty vectors")
        if abs(np.vdot(z, z).real - 1.0) > POINT_TOL:
            raise ValueError("z must be a unit vector")
        if abs(v @ v - 1.0) > POINT_TOL:
            raise ValueError("v must be a unit vector")
        if abs(abs(lam) - 1.0) > POINT_TOL:
            raise ValueError("lambda must lie on the unit circle")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "lam", lam)

    @property
    def n(self) -> int:
        return self.z.size - 1

    @property
    def m(self) -> int:
        return self.v.size - 1


@dataclass(frozen=True)
class AmbientTangent:
    """Ambient tangent triple (w, u, mu) anchored at some TotalSpacePoint."""

    w: np.ndarray
    u: np.ndarray
    mu: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", np.asarray(self.w, dtype=np.complex128))
        object.__setattr__(self, "u", np.asarray(self.u, dtype=np.float64))
        object.__setattr__(self, "mu", complex(self.mu))

    def __neg__(self) -> AmbientTangent:
        return AmbientTangent(-self.w, -self.u, -self.mu)


def stream(seed: int, *key: int) -> np.random.Generator:
    """Deterministic RNG substream: (seed, key) always yields the same state."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def sample_point(n: int, m: int, rng: np.random.Generator) -> TotalSpacePoint:
    """Rotation-invariant sample: normalised Gaussian z, v; uniform lambda."""
    z = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    z /= np.linalg.norm(z)
    v = rng.standard_normal(m + 1)
    v /= np.linalg.norm(v)
    theta = rng.uniform(0.0, 2.0 * np.pi)
    return TotalSpacePoint(z, v, complex(np.cos(theta), np.sin(theta)))


def xi_high(j: int, p: TotalSpacePoint) -> AmbientTangent:
    """Field from the stable trivialisation of TS^m, for j = 2, ..., m+1."""
    if not 2 <= j <= p.m + 1:
        raise ValueError(f"need 2 <= j <= m+1 = {p.m + 1}, got j = {j}")
    coeff = p.v[j - 1]  # <v, e_j>
    e = np.zeros(p.m + 1)
    e[j - 1] = 1.0
    return AmbientTangent(
        w=np.zeros(p.n + 1, dtype=np.complex128),
        u=e - coeff * p.v,
        mu=-1j * coeff * p.lam,
    )


def xi_low(j: int, p: TotalSpacePoint, family: CliffordFamily) -> AmbientTangent:
    """Field from the j-th Clifford automorphism, for j = 1, ..., 2*nu+1.

    i*beta_j(z) is real because beta_j is purely imaginary; its real part is
    taken so that u is an exactly real vector.
    """
    if family.n != p.n:
        raise ValueError(f"family is for n = {family.n}, point has n = {p.n}")
    if not 1 <= j <= 2 * family.nu + 1:
        raise ValueError(f"need 1 <= j <= {2 * family.nu + 1}, got j = {j}")
    a = family.matrices[j - 1]
    az = a.apply(p.z)
    b = complex(np.vdot(az, p.z))  # beta_j(z)
    t = p.v[0]  # <v, e_1>
    e1 = np.zeros(p.m + 1)
    e1[0] = 1.0
    return AmbientTangent(
        w=az + b * p.z,
        u=(1j * b).real * (e1 - t * p.v),
        mu=b * t * p.lam,
    )


def evaluate_field(j: int, p: TotalSpacePoint, family: CliffordFamily) -> AmbientTangent:
    """The j-th of the delta = 2*nu + 1 + m fields, low fields first."""
    low_count = 2 * family.nu + 1
    delta = low_count + p.m
    if not 1 <= j <= delta:
        raise ValueError(f"need 1 <= j <= delta = {delta}, got j = {j}")
    if j <= low_count:
        return xi_low(j, p, family)
    return xi_high(j - low_count + 1, p)


def reflect_last(v: np.ndarray) -> np.ndarray:
    out = np.array(v)
    out[-1] = -out[-1]
    return out


def apply_involution(kind: InvolutionKind, p: TotalSpacePoint) -> TotalSpacePoint:
    if kind is InvolutionKind.SIGMA:
        return TotalSpacePoint(np.conj(p.z), -p.v, p.lam)
    return TotalSpacePoint(p.z, reflect_last(p.v), -p.lam)


def apply_differential(kind: InvolutionKind, p: TotalSpacePoint, t: AmbientTangent) -> AmbientTangent:
    """Pushforward of t along the involution; anchored at apply_involution(kind, p)."""
    if kind is InvolutionKind.SIGMA:
        return AmbientTangent(np.conj(t.w), -t.u, t.mu)
    return AmbientTangent(t.w, reflect_last(t.u), -t.mu)


def tangent_distance(a: AmbientTangent, b: AmbientTangent) -> float:
    """Largest componentwise deviation across the three slots."""
    return max(
        float(np.max(np.abs(a.w - b.w))),
        float(np.max(np.abs(a.u - b.u))),
        abs(a.mu - b.mu),
    )


def tangency_residuals(p: TotalSpacePoint, t: AmbientTangent) -> tuple[float, float, float]:
    """(|<z,w>|, |<v,u>|, |Re(lambda conj(mu))|) — all ~0 for genuine tangents."""
    return (
        abs(complex(np.vdot(t.w, p.z))),
        abs(float(p.v @ t.u)),
        abs((p.lam * t.mu.conjugate()).real),
    )


def check_well_defined(
    j: int,
    p: TotalSpacePoint,
    family: CliffordFamily,
    omega: complex,
    tol: float = TANGENCY_TOL,
) -> bool:
    """Representative independence: moving z to omega*z must scale w by omega
    and leave (u, mu) unchanged, i.e. [omega z, omega w] = [z, w] in T CP^n."""
    omega = complex(omega)
    if abs(abs(omega) - 1.0) > POINT_TOL:
        raise ValueError("omega must lie on the unit circle")
    base = evaluate_field(j, p, family)
    moved = evaluate_field(j, TotalSpacePoint(omega * p.z, p.v, p.lam), family)
    expected = AmbientTangent(omega * base.w, base.u, base.mu)
    return tangent_distance(moved, expected) <= tol


def quasi_invariance_sign(
    j: int,
    kind: InvolutionKind,
    p: TotalSpacePoint,
    family: CliffordFamily,
    tol: float = INVARIANCE_TOL,
) -> int | None:
    """The sign s with d(inv) o xi_j = s * xi_j o inv at p, or None on failure.

    Both sides are anchored at the same representative of the image point,
    so the comparison is direct componentwise equality within tol.
    """
    pushed = apply_differential(kind, p, evaluate_field(j, p, family))
    there = evaluate_field(j, apply_involution(kind, p), family)
    if tangent_distance(pushed, there) <= tol:
        return 1
    if tangent_distance(pushed, -there) <= tol:
        return -1
    return None


def expected_quasi_sign(j: int, kind: InvolutionKind, nu_value: int, m: int) -> int:
    """The point-independent sign table.

    Low fields (j <= 2*nu+1): sigma-sign eps_j, tau-sign +1.  High fields:
    sigma-sign -1 for all; tau-sign +1 except -1 for the last field, whose
    sphere direction is negated by the reflection.
    """
    low_count = 2 * nu_value + 1
    delta = low_count + m
    if not 1 <= j <= delta:
        raise ValueError(f"need 1 <= j <= delta = {delta}, got j = {j}")
    if j <= low_count:
        return predicted_sign(j, nu_value) if kind is InvolutionKind.SIGMA else 1
    if kind is InvolutionKind.SIGMA:
        return -1
    return -1 if j == delta else 1


def tangent_matrix(tangents: list[AmbientTangent]) -> np.ndarray:
    """Stack tangents as real rows [Re w | Im w | u | Re mu | Im mu]."""
    return np.array(
        [
            np.concatenate([t.w.real, t.w.imag, t.u, [t.mu.real, t.mu.imag]])
            for t in tangents
        ]
    )


def svd_rank(mat: np.ndarray, rel_tol: float = RANK_REL_TOL) -> tuple[int, float]:
    """(rank, smallest/largest singular value) with a relative threshold."""
    sv = np.linalg.svd(mat, compute_uv=False)
    top = float(sv[0])
    if top == 0.0:
        return 0, 0.0
    return int(np.sum(sv > rel_tol * top)), float(sv[-1] / top)


@dataclass(frozen=True)
class IndependenceReport:
    rank: int
    delta: int
    min_relative_sv: float

    @property
    def full_rank(self) -> bool:
        return self.rank == self.delta


def independence_report(
    p: TotalSpacePoint, family: CliffordFamily, rel_tol: float = RANK_REL_TOL
) -> IndependenceReport:
    """Rank of the full field family at p, certified by singular values."""
    delta = 2 * family.nu + 1 + p.m
    mat = tangent_matrix([evaluate_field(j, p, family) for j in range(1, delta + 1)])
    rank, min_rel = svd_rank(mat, rel_tol)
    return IndependenceReport(rank=rank, delta=delta, min_relative_sv=min_rel)
