"""Exact linear algebra over a fixed orthonormal frame.

All quantities are coefficient containers over a single global frame of
some dimension d: vectors, endomorphisms (matrices acting on frame
vectors), 1-forms, antisymmetric 2-forms, and 4-index tensors.  Every
coefficient is an exact rational; no floating point appears anywhere.
The metric is the identity in this frame, so the inner product is the
plain coefficient dot product.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Operands built over frames of different dimensions."""


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"

    def __str__(self) -> str:
        return self.value


def _require_same_dim(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"dimension mismatch: {a} vs {b}")


_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?\Z")


def parse_scalar(text: str) -> Scalar:
    """Parse an exact rational written as `p` or `p/q`; nothing else."""
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_scalar(value: Scalar) -> str:
    """Render a rational as `p` when integral, else `p/q`."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class FrameVector:
    """Vector as a coefficient tuple over the frame."""

    coefficients: tuple[Scalar, ...]

    @staticmethod
    def zero(dim: int) -> FrameVector:
        return FrameVector((ZERO,) * dim)

    @staticmethod
    def basis(dim: int, index: int) -> FrameVector:
        if not 0 <= index < dim:
            raise IndexError(f"frame index {index} out of range for dim {dim}")
        return FrameVector(tuple(ONE if k == index else ZERO for k in range(dim)))

    @staticmethod
    def from_coeffs(coeffs: Iterable[Scalar | int]) -> FrameVector:
        return FrameVector(tuple(Fraction(c) for c in coeffs))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, index: int) -> Scalar:
        return self.coefficients[index]

    def __add__(self, other: FrameVector) -> FrameVector:
        _require_same_dim(self.dim, other.dim)
        return FrameVector(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: FrameVector) -> FrameVector:
        _require_same_dim(self.dim, other.dim)
        return FrameVector(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> FrameVector:
        return FrameVector(tuple(-a for a in self.coefficients))

    def scale(self, factor: Scalar | int) -> FrameVector:
        f = Fraction(factor)
        return FrameVector(tuple(f * a for a in self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)


def inner_product(x: FrameVector, y: FrameVector) -> Scalar:
    """Metric pairing; the frame is orthonormal so this is the dot product."""
    _require_same_dim(x.dim, y.dim)
    return sum((a * b for a, b in zip(x.coefficients, y.coefficients)), ZERO)


def vector_combine(coeff_pairs: Sequence[tuple[Scalar | int, FrameVector]]) -> FrameVector:
    """Exact linear combination sum(c_i * v_i); needs at least one pair."""
    if not coeff_pairs:
        raise ValueError("vector_combine needs at least one (coefficient, vector) pair")
    dim = coeff_pairs[0][1].dim
    acc = [ZERO] * dim
    for coeff, vec in coeff_pairs:
        _require_same_dim(dim, vec.dim)
        f = Fraction(coeff)
        if not f:
            continue
        for k, a in enumerate(vec.coefficients):
            if a:
                acc[k] += f * a
    return FrameVector(tuple(acc))


@dataclass(frozen=True)
class Endomorphism:
    """Linear map on frame vectors; entries[k][i] = coefficient of e_k in A(e_i)."""

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        side = len(self.entries)
        if any(len(row) != side for row in self.entries):
            raise DimensionMismatch("endomorphism matrix must be square")

    @staticmethod
    def zero(dim: int) -> Endomorphism:
        return Endomorphism(tuple((ZERO,) * dim for _ in range(dim)))

    @staticmethod
    def identity(dim: int) -> Endomorphism:
        return Endomorphism(tuple(tuple(ONE if k == i else ZERO for i in range(dim))
                                  for k in range(dim)))

    @staticmethod
    def from_columns(dim: int, columns: dict[int, dict[int, Scalar | int]]) -> Endomorphism:
        """Build from sparse columns: columns[i][k] = coefficient of e_k in A(e_i)."""
        rows = [[ZERO] * dim for _ in range(dim)]
        for i, col in columns.items():
            for k, value in col.items():
                rows[k][i] = Fraction(value)
        return Endomorphism(tuple(tuple(row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def entry(self, k: int, i: int) -> Scalar:
        return self.entries[k][i]

    def column(self, i: int) -> FrameVector:
        """The image A(e_i)."""
        return FrameVector(tuple(row[i] for row in self.entries))

    def apply(self, x: FrameVector) -> FrameVector:
        _require_same_dim(self.dim, x.dim)
        out = [ZERO] * self.dim
        for i, xi in enumerate(x.coefficients):
            if not xi:
                continue
            for k in range(self.dim):
                a = self.entries[k][i]
                if a:
                    out[k] += a * xi
        return FrameVector(tuple(out))

    def compose(self, other: Endomorphism) -> Endomorphism:
        """Matrix product self @ other, i.e. x -> self(other(x))."""
        _require_same_dim(self.dim, other.dim)
        d = self.dim
        rows = [[ZERO] * d for _ in range(d)]
        for k in range(d):
            for i in range(d):
                rows[k][i] = sum((self.entries[k][m] * other.entries[m][i]
                                  for m in range(d)), ZERO)
        return Endomorphism(tuple(tuple(row) for row in rows))

    def __add__(self, other: Endomorphism) -> Endomorphism:
        _require_same_dim(self.dim, other.dim)
        return Endomorphism(tuple(tuple(a + b for a, b in zip(ra, rb))
                                  for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: Endomorphism) -> Endomorphism:
        _require_same_dim(self.dim, other.dim)
        return Endomorphism(tuple(tuple(a - b for a, b in zip(ra, rb))
                                  for ra, rb in zip(self.entries, other.entries)))

    def __neg__(self) -> Endomorphism:
        return Endomorphism(tuple(tuple(-a for a in row) for row in self.entries))

    def scale(self, factor: Scalar | int) -> Endomorphism:
        f = Fraction(factor)
        return Endomorphism(tuple(tuple(f * a for a in row) for row in self.entries))

    def transpose(self) -> Endomorphism:
        d = self.dim
        return Endomorphism(tuple(tuple(self.entries[i][k] for i in range(d))
                                  for k in range(d)))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)


def outer(vec: FrameVector, form: OneForm) -> Endomorphism:
    """Rank-one map x -> form(x) * vec."""
    _require_same_dim(vec.dim, form.dim)
    return Endomorphism(tuple(tuple(vec[k] * form.coefficients[i] for i in range(vec.dim))
                              for k in range(vec.dim)))


@dataclass(frozen=True)
class OneForm:
    """Covector; coefficients[i] is the value on e_i."""

    coefficients: tuple[Scalar, ...]

    @staticmethod
    def zero(dim: int) -> OneForm:
        return OneForm((ZERO,) * dim)

    @staticmethod
    def dual(dim: int, index: int) -> OneForm:
        """Metric dual of a frame vector: the form x -> x[index]."""
        if not 0 <= index < dim:
            raise IndexError(f"frame index {index} out of range for dim {dim}")
        return OneForm(tuple(ONE if k == index else ZERO for k in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    def value(self, x: FrameVector) -> Scalar:
        _require_same_dim(self.dim, x.dim)
        return sum((w * a for w, a in zip(self.coefficients, x.coefficients)), ZERO)

    def is_zero(self) -> bool:
        return not any(self.coefficients)


@dataclass(frozen=True)
class TwoForm:
    """Antisymmetric bilinear form; entries[i][j] is the value on (e_i, e_j)."""

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        side = len(self.entries)
        if any(len(row) != side for row in self.entries):
            raise DimensionMismatch("2-form matrix must be square")
        for i in range(side):
            for j in range(i, side):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError(f"2-form not antisymmetric at entry ({i}, {j})")

    @staticmethod
    def zero(dim: int) -> TwoForm:
        return TwoForm(tuple((ZERO,) * dim for _ in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def value(self, x: FrameVector, y: FrameVector) -> Scalar:
        _require_same_dim(self.dim, x.dim)
        _require_same_dim(self.dim, y.dim)
        total = ZERO
        for i, xi in enumerate(x.coefficients):
            if not xi:
                continue
            row = self.entries[i]
            for j, yj in enumerate(y.coefficients):
                if yj and row[j]:
                    total += xi * yj * row[j]
        return total

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.entries)


@dataclass(frozen=True)
class Tensor4:
    """Dense 4-index coefficient array; no symmetry is imposed here."""

    entries: tuple[tuple[tuple[tuple[Scalar, ...], ...], ...], ...]

    def __post_init__(self) -> None:
        d = len(self.entries)
        for block in self.entries:
            if len(block) != d or any(
                    len(plane) != d or any(len(row) != d for row in plane)
                    for plane in block):
                raise DimensionMismatch("4-index tensor must have equal sides")

    @staticmethod
    def from_function(dim: int, fn) -> Tensor4:
        return Tensor4(tuple(tuple(tuple(tuple(Fraction(fn(i, j, k, el))
                                               for el in range(dim))
                                         for k in range(dim))
                                   for j in range(dim))
                             for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int, k: int, el: int) -> Scalar:
        return self.entries[i][j][k][el]

    def contract(self, x: FrameVector, y: FrameVector, z: FrameVector,
                 w: FrameVector) -> Scalar:
        """Quadrilinear evaluation on four frame vectors."""
        for v in (x, y, z, w):
            _require_same_dim(self.dim, v.dim)
        total = ZERO
        for i, xi in enumerate(x.coefficients):
            if not xi:
                continue
            for j, yj in enumerate(y.coefficients):
                if not yj:
                    continue
                for k, zk in enumerate(z.coefficients):
                    if not zk:
                        continue
                    row = self.entries[i][j][k]
                    for el, wl in enumerate(w.coefficients):
                        if wl and row[el]:
                            total += xi * yj * zk * wl * row[el]
        return total


def format_sparse_vector(x: FrameVector) -> str:
    """Render as comma-joined `coeff:index` pairs, or `0` when zero."""
    parts = [f"{format_scalar(a)}:{k}" for k, a in enumerate(x.coefficients) if a]
    return ",".join(parts) if parts else "0"


def parse_sparse_vector(text: str, dim: int) -> FrameVector:
    """Parse the `coeff:index[,coeff:index...]` / `0` sparse vector notation."""
    text = text.strip()
    if text == "0":
        return FrameVector.zero(dim)
    acc = [ZERO] * dim
    seen: set[int] = set()
    for part in text.split(","):
        coeff_text, _, idx_text = part.partition(":")
        if not idx_text:
            raise ValueError(f"bad sparse vector component: {part!r}")
        coeff = parse_scalar(coeff_text)
        try:
            idx = int(idx_text)
        except ValueError:
            raise ValueError(f"bad frame index: {idx_text!r}") from None
        if not 0 <= idx < dim:
            raise ValueError(f"frame index {idx} out of range for dim {dim}")
        if idx in seen:
            raise ValueError(f"duplicate frame index {idx} in sparse vector")
        seen.add(idx)
        acc[idx] = coeff
    return FrameVector(tuple(acc))
