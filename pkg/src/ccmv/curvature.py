"""Riemann curvature and its traces on a frame model.

Curvature convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
- nabla_{[X,Y]} Z, lowered as R(X,Y,Z,W) = g(R(X,Y)Z, W).  On an
invariant frame this reduces to a closed polynomial in the connection
coefficients and structure constants.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    ZERO,
    DimensionMismatch,
    Endomorphism,
    FrameVector,
    Scalar,
    Tensor4,
    inner_product,
)
from .connection import ConnectionCoeffs
from .model import ManifoldModel


class DegeneratePlane(ValueError):
    """Sectional curvature requested for vectors that do not span a plane."""


@dataclass(frozen=True)
class CurvTensor:
    """Fully lowered curvature; r[i][j][k][l] = R(e_i, e_j, e_k, e_l).

    Symmetry of the entries is a consequence of the construction and is
    asserted by the verification suite, not by this container.
    """

    r: Tensor4

    @property
    def dim(self) -> int:
        return self.r.dim

    def entry(self, i: int, j: int, k: int, el: int) -> Scalar:
        return self.r.entry(i, j, k, el)

    def vector(self, i: int, j: int, k: int) -> FrameVector:
        """R(e_i, e_j) e_k as a frame vector."""
        return FrameVector(self.r.entries[i][j][k])


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form over the frame."""

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        side = len(self.entries)
        if any(len(row) != side for row in self.entries):
            raise DimensionMismatch("bilinear form matrix must be square")
        for i in range(side):
            for j in range(i + 1, side):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"bilinear form not symmetric at ({i}, {j})")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def value(self, x: FrameVector, y: FrameVector) -> Scalar:
        total = ZERO
        for i, xi in enumerate(x.coefficients):
            if not xi:
                continue
            row = self.entries[i]
            for j, yj in enumerate(y.coefficients):
                if yj and row[j]:
                    total += xi * yj * row[j]
        return total


def riemann(m: ManifoldModel, conn: ConnectionCoeffs) -> CurvTensor:
    """Assemble the lowered curvature tensor from the connection table."""
    d = m.dim
    gamma = conn.gamma
    c = m.constants.c

    def component(i: int, j: int, k: int, el: int) -> Scalar:
        total = ZERO
        for mm in range(d):
            total += gamma[j][k][mm] * gamma[i][mm][el]
            total -= gamma[i][k][mm] * gamma[j][mm][el]
            total -= c[i][j][mm] * gamma[mm][k][el]
        return total

    return CurvTensor(Tensor4.from_function(d, component))


def curvature_value(rt: CurvTensor, x: FrameVector, y: FrameVector,
                    z: FrameVector, w: FrameVector) -> Scalar:
    """R(x, y, z, w) by quadrilinear contraction."""
    return rt.r.contract(x, y, z, w)


def ricci(m: ManifoldModel, rt: CurvTensor) -> BilinearForm:
    """Frame trace rho(e_j, e_k) = sum_a R(e_a, e_j, e_k, e_a)."""
    d = m.dim
    entries = tuple(tuple(sum((rt.entry(a, j, k, a) for a in range(d)), ZERO)
                          for k in range(d))
                    for j in range(d))
    return BilinearForm(entries)


def ricci_operator(rho: BilinearForm) -> Endomorphism:
    """Metric-equivalent endomorphism Q; with an identity metric the
    matrix coincides with the form's matrix."""
    return Endomorphism(rho.entries)


def scalar_curvature(rho: BilinearForm) -> Scalar:
    """Trace of the Ricci form over the orthonormal frame."""
    return sum((rho.entry(a, a) for a in range(rho.dim)), ZERO)


def sectional(rt: CurvTensor, x: FrameVector, y: FrameVector) -> Scalar:
    """K(x, y) = R(x, y, y, x) / (g(x,x) g(y,y) - g(x,y)^2)."""
    denominator = (inner_product(x, x) * inner_product(y, y)
                   - inner_product(x, y) ** 2)
    if not denominator:
        raise DegeneratePlane("vectors do not span a nondegenerate plane")
    return curvature_value(rt, x, y, y, x) / denominator


def holomorphic_sectional(m: ManifoldModel, rt: CurvTensor,
                          x: FrameVector) -> Scalar:
    """K(x, Jx); defined for nonzero x since J is a Hermitian isometry."""
    if x.is_zero():
        raise DegeneratePlane("holomorphic sectional curvature of the zero vector")
    return sectional(rt, x, m.J.apply(x))


def second_bianchi_cyclic_sum(m: ManifoldModel, conn: ConnectionCoeffs,
                              rt: CurvTensor, mm: int, i: int, j: int,
                              k: int, el: int) -> Scalar:
    """Cyclic sum over the first three indices of (nabla R); zero when the
    differential Bianchi identity holds.  R is differentiated as an
    invariant 4-tensor: each slot picks up a -gamma contraction."""

    def nabla_r(s: int, a: int, b: int, cc: int, dd: int) -> Scalar:
        total = ZERO
        for p in range(m.dim):
            total -= conn.gamma[s][a][p] * rt.entry(p, b, cc, dd)
            total -= conn.gamma[s][b][p] * rt.entry(a, p, cc, dd)
            total -= conn.gamma[s][cc][p] * rt.entry(a, b, p, dd)
            total -= conn.gamma[s][dd][p] * rt.entry(a, b, cc, p)
        return total

    return (nabla_r(mm, i, j, k, el) + nabla_r(i, j, mm, k, el)
            + nabla_r(j, mm, i, k, el))


def second_bianchi_failures(m: ManifoldModel, conn: ConnectionCoeffs,
                            rt: CurvTensor) -> tuple[int, ...] | None:
    """First (m, i, j, k, l) tuple violating the differential Bianchi
    identity, or None.  Exhaustive sweep of all index tuples, accelerated
    with sparse connection rows; agrees with second_bianchi_cyclic_sum
    tuple by tuple."""
    d = m.dim
    entry = rt.r.entry
    gamma = conn.gamma
    rows = [[[(p, gamma[s][a][p]) for p in range(d) if gamma[s][a][p]]
             for a in range(d)] for s in range(d)]

    def nabla_r(s: int, a: int, b: int, cc: int, dd: int) -> Scalar:
        total = ZERO
        for p, q in rows[s][a]:
            total -= q * entry(p, b, cc, dd)
        for p, q in rows[s][b]:
            total -= q * entry(a, p, cc, dd)
        for p, q in rows[s][cc]:
            total -= q * entry(a, b, p, dd)
        for p, q in rows[s][dd]:
            total -= q * entry(a, b, cc, p)
        return total

    for mm, i, j, k, el in product(range(d), repeat=5):
        total = (nabla_r(mm, i, j, k, el) + nabla_r(i, j, mm, k, el)
                 + nabla_r(j, mm, i, k, el))
        if total:
            return (mm, i, j, k, el)
    return None


def riemann_symmetry_failures(rt: CurvTensor) -> tuple[int, ...] | None:
    """First index tuple violating the pair symmetries, or None."""
    d = rt.dim
    for i, j, k, el in product(range(d), repeat=4):
        value = rt.entry(i, j, k, el)
        if (value != -rt.entry(j, i, k, el) or value != -rt.entry(i, j, el, k)
                or value != rt.entry(k, el, i, j)):
            return (i, j, k, el)
    return None
