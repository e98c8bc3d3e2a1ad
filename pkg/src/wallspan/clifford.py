"""Exact construction of the anticommuting skew-Hermitian automorphisms of C^(n+1).

For n + 1 = 2^nu * b with b odd, the complex Clifford algebra on 2*nu + 1
generators acts irreducibly on the spinor space (C^2)^(tensor nu).  Pushing
the generator images through the b-fold block-diagonal embedding into
End(C^(n+1)) produces 2*nu + 1 automorphisms A_1, ..., A_(2nu+1) that

* pairwise anticommute,
* are skew-Hermitian, and
* commute with componentwise complex conjugation up to a sign eps_j
  (a quasi-real structure).

All entries live in {0, +-1, +-i}, so every identity is verified with exact
integer arithmetic.  The direct sum and tensor factors are identified with
C^(n+1) lexicographically (blocks outer, tensor factors by Kronecker
ordering); under that identification componentwise conjugation on the
factors is componentwise conjugation on C^(n+1), so no basis change is
needed and the identities can be checked entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .invariants import nu as nu_of


class GaussMatrix:
    """Square matrix over the Gaussian integers, stored as int64 re/im parts."""

    __slots__ = ("re", "im", "_complex")

    def __init__(self, re, im) -> None:
        re = np.asarray(re, dtype=np.int64)
        im = np.asarray(im, dtype=np.int64)
        if re.shape != im.shape or re.ndim != 2 or re.shape[0] != re.shape[1]:
            raise ValueError(f"need matching square shapes, got {re.shape} and {im.shape}")
        re.setflags(write=False)
        im.setflags(write=False)
        self.re = re
        self.im = im
        self._complex: np.ndarray | None = None

    @classmethod
    def identity(cls, size: int) -> GaussMatrix:
        eye = np.eye(size, dtype=np.int64)
        return cls(eye, np.zeros_like(eye))

    @classmethod
    def zeros(cls, size: int) -> GaussMatrix:
        z = np.zeros((size, size), dtype=np.int64)
        return cls(z, z)

    @property
    def size(self) -> int:
        return self.re.shape[0]

    def __matmul__(self, other: GaussMatrix) -> GaussMatrix:
        return GaussMatrix(
            self.re @ other.re - self.im @ other.im,
            self.re @ other.im + self.im @ other.re,
        )

    def __add__(self, other: GaussMatrix) -> GaussMatrix:
        return GaussMatrix(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussMatrix) -> GaussMatrix:
        return GaussMatrix(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussMatrix:
        return GaussMatrix(-self.re, -self.im)

    def scaled(self, s: int) -> GaussMatrix:
        return GaussMatrix(s * self.re, s * self.im)

    def times_i(self) -> GaussMatrix:
        """Multiply every entry by i: a + bi -> -b + ai."""
        return GaussMatrix(-self.im, self.re)

    def conj(self) -> GaussMatrix:
        """Entrywise complex conjugation."""
        return GaussMatrix(self.re, -self.im)

    def conj_transpose(self) -> GaussMatrix:
        return GaussMatrix(self.re.T, -self.im.T)

    def is_zero(self) -> bool:
        return not self.re.any() and not self.im.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussMatrix):
            return NotImplemented
        return np.array_equal(self.re, other.re) and np.array_equal(self.im, other.im)

    __hash__ = None  # type: ignore[assignment]

    def to_complex(self) -> np.ndarray:
        if self._complex is None:
            self._complex = self.re.astype(np.complex128) + 1j * self.im.astype(np.complex128)
            self._complex.setflags(write=False)
        return self._complex

    def apply(self, z: np.ndarray) -> np.ndarray:
        """The matrix acting on a complex vector."""
        z = np.asarray(z, dtype=np.complex128)
        if z.shape != (self.size,):
            raise ValueError(f"vector length {z.shape} does not match matrix size {self.size}")
        return self.to_complex() @ z

    def entry_str(self, i: int, j: int) -> str:
        a, b = int(self.re[i, j]), int(self.im[i, j])
        if b == 0:
            return str(a)
        if a == 0:
            return {1: "i", -1: "-i"}.get(b, f"{b}i")
        return f"{a}{b:+}i"

    def pretty(self) -> str:
        cells = [[self.entry_str(i, j) for j in range(self.size)] for i in range(self.size)]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)

    def __repr__(self) -> str:
        return f"GaussMatrix({self.size}x{self.size})"


def kronecker(a: GaussMatrix, b: GaussMatrix) -> GaussMatrix:
    """Kronecker product, left factor major (lexicographic basis order)."""
    return GaussMatrix(
        np.kron(a.re, b.re) - np.kron(a.im, b.im),
        np.kron(a.re, b.im) + np.kron(a.im, b.re),
    )


def tensor_power(a: GaussMatrix, k: int) -> GaussMatrix:
    """k-fold Kronecker power; the empty product is the 1x1 identity."""
    result = GaussMatrix.identity(1)
    for _ in range(k):
        result = kronecker(result, a)
    return result


def block_diagonal(blocks: list[GaussMatrix]) -> GaussMatrix:
    sizes = [b.size for b in blocks]
    total = sum(sizes)
    re = np.zeros((total, total), dtype=np.int64)
    im = np.zeros((total, total), dtype=np.int64)
    offset = 0
    for b in blocks:
        re[offset : offset + b.size, offset : offset + b.size] = b.re
        im[offset : offset + b.size, offset : offset + b.size] = b.im
        offset += b.size
    return GaussMatrix(re, im)


_GENERATORS_2X2 = {
    "E": (((1, 0), (0, 1)), ((0, 0), (0, 0))),
    "g1": (((0, 0), (0, 0)), ((1, 0), (0, -1))),
    "g2": (((0, 0), (0, 0)), ((0, 1), (1, 0))),
    "T": (((0, 0), (0, 0)), ((0, -1), (1, 0))),
}


def generator_2x2(name: str) -> GaussMatrix:
    """The four generating 2x2 matrices: E = id, g1 = diag(i, -i),
    g2 = antidiag(i, i), T = [[0, -i], [i, 0]]."""
    if name not in _GENERATORS_2X2:
        raise ValueError(f"unknown generator {name!r}; expected one of {sorted(_GENERATORS_2X2)}")
    re, im = _GENERATORS_2X2[name]
    return GaussMatrix(re, im)


def spin_generator(j: int, nu: int) -> GaussMatrix:
    """Image of the j-th Clifford generator on the spinor space, size 2^nu.

    For 1 <= j <= 2*nu the image is
        E^(nu - 1 - t) (x) g_alpha (x) T^t,   t = floor((j-1)/2),
    with g_alpha = g1 for j odd and g2 for j even.  For j = 2*nu + 1 it is
    i * T^nu; at nu = 0 that degenerates to the 1x1 matrix [i].
    """
    if nu < 0:
        raise ValueError(f"need nu >= 0, got {nu}")
    if not 1 <= j <= 2 * nu + 1:
        raise ValueError(f"need 1 <= j <= {2 * nu + 1}, got j = {j}")
    t_mat = generator_2x2("T")
    if j == 2 * nu + 1:
        return tensor_power(t_mat, nu).times_i()
    t = (j - 1) // 2
    g = generator_2x2("g1" if j % 2 == 1 else "g2")
    left = tensor_power(generator_2x2("E"), nu - 1 - t)
    return kronecker(kronecker(left, g), tensor_power(t_mat, t))


def predicted_sign(j: int, nu: int) -> int:
    """Sign eps_j in conj(A_j z) = eps_j * A_j(conj z).

    Follows from how componentwise conjugation moves past the tensor
    factors: it commutes with E, anticommutes with g1, g2 and T.  For
    j <= 2*nu the sign is -1 iff floor((j-1)/2) is even; for j = 2*nu + 1
    it is -1 iff nu is even.
    """
    if nu < 0:
        raise ValueError(f"need nu >= 0, got {nu}")
    if not 1 <= j <= 2 * nu + 1:
        raise ValueError(f"need 1 <= j <= {2 * nu + 1}, got j = {j}")
    if j == 2 * nu + 1:
        return -1 if nu % 2 == 0 else 1
    return -1 if ((j - 1) // 2) % 2 == 0 else 1


@dataclass(frozen=True)
class CliffordFamily:
    """The 2*nu(n+1) + 1 automorphisms of C^(n+1) with their conjugation signs."""

    n: int
    nu: int
    b: int
    matrices: tuple[GaussMatrix, ...]
    predicted_signs: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.matrices)


def build_family(n: int) -> CliffordFamily:
    """Build the family for C^(n+1): b-fold block diagonals of the spin generators."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    v = nu_of(n + 1)
    b = (n + 1) >> v
    matrices = tuple(
        block_diagonal([spin_generator(j, v)] * b) for j in range(1, 2 * v + 2)
    )
    signs = tuple(predicted_sign(j, v) for j in range(1, 2 * v + 2))
    return CliffordFamily(n=n, nu=v, b=b, matrices=matrices, predicted_signs=signs)


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool


@dataclass(frozen=True)
class FamilyReport:
    n: int
    checks: tuple[IdentityCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[IdentityCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def verify_family(family: CliffordFamily) -> FamilyReport:
    """Exact verification of the three defining identities.

    (a) A_j A_k + A_k A_j = 0 for j != k;
    (b) A_j + A_j^* = 0 (conjugate transpose);
    (c) conj(A_j) = eps_j A_j entrywise, eps_j the predicted sign.

    Failures are report content, not exceptions.
    """
    mats = family.matrices
    checks: list[IdentityCheck] = []
    for j in range(len(mats)):
        for k in range(j + 1, len(mats)):
            ok = (mats[j] @ mats[k] + mats[k] @ mats[j]).is_zero()
            checks.append(IdentityCheck(f"anticommute[{j + 1},{k + 1}]", ok))
    for j, a in enumerate(mats):
        checks.append(IdentityCheck(f"skew_hermitian[{j + 1}]", (a + a.conj_transpose()).is_zero()))
    for j, (a, sign) in enumerate(zip(mats, family.predicted_signs)):
        checks.append(IdentityCheck(f"conjugation_sign[{j + 1}]", a.conj() == a.scaled(sign)))
    return FamilyReport(n=family.n, checks=tuple(checks))


def beta(z: np.ndarray, a: GaussMatrix) -> complex:
    """The Hermitian form <z, A z> = (A z)^* z; purely imaginary for skew-Hermitian A."""
    z = np.asarray(z, dtype=np.complex128)
    if z.shape != (a.size,):
        raise ValueError(f"vector length {z.shape} does not match matrix size {a.size}")
    return complex(np.vdot(a.apply(z), z))
