"""Homogeneous frame models and their structural validation.

A model is a Lie algebra given by structure constants over an orthonormal
frame of dimension 4n+2, together with three endomorphisms G, H, J that
are required (by the validation suite, not the loader) to satisfy the
complex contact metric axioms.  The last two frame indices play the role
of the distinguished vertical fields U and V; the dual 1-forms u and v
therefore need no separate storage.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import (
    ZERO,
    Endomorphism,
    FrameVector,
    OneForm,
    Scalar,
    Status,
    format_scalar,
    outer,
    parse_scalar,
)


class ModelFormatError(ValueError):
    """Malformed model document; carries the 1-based source line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvalidModelError(ValueError):
    """Model rejected by a structural gate (e.g. brackets not a Lie algebra)."""


@dataclass(frozen=True)
class StructureConstants:
    """Bracket coefficients c[i][j][k]: the e_k component of [e_i, e_j]."""

    dim: int
    c: tuple[tuple[tuple[Scalar, ...], ...], ...]

    @staticmethod
    def from_entries(dim: int, entries: dict[tuple[int, int, int], Scalar]) -> StructureConstants:
        """Build from sparse (i, j, k) -> value with i < j; filled antisymmetrically."""
        table = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), value in entries.items():
            if i >= j:
                raise ValueError(f"bracket entry ({i},{j},{k}): i must be < j")
            table[i][j][k] = value
            table[j][i][k] = -value
        return StructureConstants(dim, tuple(tuple(tuple(row) for row in plane)
                                             for plane in table))

    def coeff(self, i: int, j: int, k: int) -> Scalar:
        return self.c[i][j][k]

    def bracket_basis(self, i: int, j: int) -> FrameVector:
        """[e_i, e_j] as a frame vector."""
        return FrameVector(self.c[i][j])

    def bracket(self, x: FrameVector, y: FrameVector) -> FrameVector:
        """Bilinear extension of the bracket to arbitrary frame vectors."""
        out = [ZERO] * self.dim
        for i, xi in enumerate(x.coefficients):
            if not xi:
                continue
            for j, yj in enumerate(y.coefficients):
                if not yj:
                    continue
                row = self.c[i][j]
                for k in range(self.dim):
                    if row[k]:
                        out[k] += xi * yj * row[k]
        return FrameVector(tuple(out))


@dataclass(frozen=True)
class ManifoldModel:
    """Frame model: structure constants plus the G, H, J structure tensors."""

    name: str
    n: int
    constants: StructureConstants
    G: Endomorphism
    H: Endomorphism
    J: Endomorphism

    @property
    def dim(self) -> int:
        return 4 * self.n + 2

    @property
    def U_index(self) -> int:
        return 4 * self.n

    @property
    def V_index(self) -> int:
        return 4 * self.n + 1

    @property
    def U(self) -> FrameVector:
        return FrameVector.basis(self.dim, self.U_index)

    @property
    def V(self) -> FrameVector:
        return FrameVector.basis(self.dim, self.V_index)

    @property
    def u(self) -> OneForm:
        return OneForm.dual(self.dim, self.U_index)

    @property
    def v(self) -> OneForm:
        return OneForm.dual(self.dim, self.V_index)

    @property
    def horizontal_indices(self) -> range:
        return range(4 * self.n)

    def basis(self, index: int) -> FrameVector:
        return FrameVector.basis(self.dim, index)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: Status
    witness: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    model_name: str
    checks: tuple[CheckResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.status is Status.PASS for c in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if c.status is Status.FAIL)


def _entry_witness(indices: tuple[int, ...], lhs: Scalar, rhs: Scalar,
                   clause: str = "") -> str:
    head = f"{clause} " if clause else ""
    idx = ",".join(str(i) for i in indices)
    return f"{head}entry=({idx}) lhs={format_scalar(lhs)} rhs={format_scalar(rhs)}"


def _first_matrix_diff(a: Endomorphism, b: Endomorphism,
                       clause: str = "") -> str | None:
    for k, i in product(range(a.dim), repeat=2):
        if a.entry(k, i) != b.entry(k, i):
            return _entry_witness((k, i), a.entry(k, i), b.entry(k, i), clause)
    return None


def _check_matrices(check_id: str,
                    pairs: list[tuple[str, Endomorphism, Endomorphism]]) -> CheckResult:
    for clause, lhs, rhs in pairs:
        witness = _first_matrix_diff(lhs, rhs, clause)
        if witness is not None:
            return CheckResult(check_id, Status.FAIL, witness)
    return CheckResult(check_id, Status.PASS)


def lie_checks(m: ManifoldModel) -> list[CheckResult]:
    """Bracket antisymmetry and the Jacobi identity, exhaustively."""
    d = m.dim
    c = m.constants.coeff
    results: list[CheckResult] = []

    witness = None
    for i, j, k in product(range(d), repeat=3):
        if c(i, j, k) != -c(j, i, k):
            witness = _entry_witness((i, j, k), c(i, j, k), -c(j, i, k))
            break
    results.append(CheckResult("LIE-ANTISYM", Status.FAIL if witness else Status.PASS,
                               witness))

    witness = None
    for i, j, el, k in product(range(d), repeat=4):
        total = sum((c(i, j, mm) * c(mm, el, k)
                     + c(j, el, mm) * c(mm, i, k)
                     + c(el, i, mm) * c(mm, j, k) for mm in range(d)), ZERO)
        if total:
            witness = _entry_witness((i, j, el, k), total, ZERO)
            break
    results.append(CheckResult("LIE-JACOBI", Status.FAIL if witness else Status.PASS,
                               witness))
    return results


def structure_tensor_checks(m: ManifoldModel) -> list[CheckResult]:
    """The algebraic axioms on G, H, J, evaluated as exact matrix identities."""
    d = m.dim
    G, H, J = m.G, m.H, m.J
    ident = Endomorphism.identity(d)
    vertical_square = -ident + outer(m.U, m.u) + outer(m.V, m.v)
    results = [
        _check_matrices("AX-G2", [("", G.compose(G), vertical_square)]),
        _check_matrices("AX-H2", [("", H.compose(H), vertical_square)]),
        _check_matrices("AX-J2", [("", J.compose(J), -ident)]),
        _check_matrices("AX-ANTICOMM", [("", G.compose(J), -(J.compose(G)))]),
    ]

    kernel_witness = None
    for clause, tensor, field in (("G@U", G, m.U), ("G@V", G, m.V),
                                  ("H@U", H, m.U), ("H@V", H, m.V)):
        image = tensor.apply(field)
        for k, value in enumerate(image.coefficients):
            if value:
                kernel_witness = _entry_witness((k,), value, ZERO, clause)
                break
        if kernel_witness:
            break
    results.append(CheckResult("AX-KERNEL",
                               Status.FAIL if kernel_witness else Status.PASS,
                               kernel_witness))

    results.append(_check_matrices("AX-SKEW", [
        ("G", G, -(G.transpose())),
        ("H", H, -(H.transpose())),
        ("J", J, -(J.transpose())),
    ]))

    hg_target = J + outer(m.V, m.u) - outer(m.U, m.v)
    results.append(_check_matrices("AX-HGJ", [
        ("HG", H.compose(G), hg_target),
        ("-GH", -(G.compose(H)), hg_target),
    ]))
    results.append(_check_matrices("AX-JH", [
        ("JH", J.compose(H), G),
        ("-HJ", -(H.compose(J)), G),
    ]))

    jv_witness = None
    jv = J.apply(m.V)
    for k in range(d):
        expected = m.U[k]
        if jv[k] != expected:
            jv_witness = _entry_witness((k,), jv[k], expected, "JV")
            break
    results.append(CheckResult("AX-JV", Status.FAIL if jv_witness else Status.PASS,
                               jv_witness))

    results.append(_check_matrices("AX-HERM",
                                   [("", J.transpose().compose(J), ident)]))
    return results


def validate_structure(m: ManifoldModel) -> ValidationReport:
    """Run every registered structural check; failures are entries, not errors."""
    return ValidationReport(m.name, tuple(lie_checks(m) + structure_tensor_checks(m)))


def require_lie_algebra(m: ManifoldModel) -> None:
    """Gate for curvature work: raise unless the brackets form a Lie algebra."""
    for check in lie_checks(m):
        if check.status is Status.FAIL:
            raise InvalidModelError(
                f"model {m.name!r} rejected: {check.check_id} fails ({check.witness})")


def load_model(source: str) -> ManifoldModel:
    """Parse a model document.

    Line-oriented, '#' starts a comment, tokens are whitespace-separated.
    The `version` line must come first and `n` must precede every indexed
    line.  Unlisted coefficients are zero.  Structural axioms are NOT
    checked here; run validate_structure on the result.
    """
    name = "model"
    name_seen = False
    version_seen = False
    n_value: int | None = None
    dim = 0
    bracket_entries: dict[tuple[int, int, int], Scalar] = {}
    tensor_entries: dict[str, dict[tuple[int, int], Scalar]] = {"G": {}, "H": {}, "J": {}}

    def parse_index(token: str, line_no: int) -> int:
        try:
            value = int(token)
        except ValueError:
            raise ModelFormatError(line_no, f"expected a frame index, got {token!r}")
        if not 0 <= value < dim:
            raise ModelFormatError(line_no, f"frame index {value} out of range "
                                            f"for dimension {dim}")
        return value

    def parse_value(token: str, line_no: int) -> Scalar:
        try:
            return parse_scalar(token)
        except ValueError as exc:
            raise ModelFormatError(line_no, str(exc))

    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        if not version_seen:
            if keyword != "version":
                raise ModelFormatError(line_no, "first line must be `version 1`")
            if tokens[1:] != ["1"]:
                raise ModelFormatError(line_no, f"unsupported version {tokens[1:]}")
            version_seen = True
            continue

        if keyword == "version":
            raise ModelFormatError(line_no, "duplicate version line")
        if keyword == "name":
            if name_seen:
                raise ModelFormatError(line_no, "duplicate name line")
            if len(tokens) != 2:
                raise ModelFormatError(line_no, "name takes exactly one token")
            name = tokens[1]
            name_seen = True
            continue
        if keyword == "n":
            if n_value is not None:
                raise ModelFormatError(line_no, "duplicate n line")
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise ModelFormatError(line_no, "n takes one positive integer")
            n_value = int(tokens[1])
            dim = 4 * n_value + 2
            continue

        if keyword in ("bracket", "G", "H", "J") and n_value is None:
            raise ModelFormatError(line_no, "n must be declared before indexed lines")

        if keyword == "bracket":
            if len(tokens) != 5:
                raise ModelFormatError(line_no, "bracket takes i j k value")
            i = parse_index(tokens[1], line_no)
            j = parse_index(tokens[2], line_no)
            k = parse_index(tokens[3], line_no)
            if i >= j:
                raise ModelFormatError(line_no, f"bracket {i} {j}: i must be < j")
            if (i, j, k) in bracket_entries:
                raise ModelFormatError(line_no, f"duplicate bracket entry {i} {j} {k}")
            bracket_entries[(i, j, k)] = parse_value(tokens[4], line_no)
            continue

        if keyword in ("G", "H", "J"):
            if len(tokens) != 4:
                raise ModelFormatError(line_no, f"{keyword} takes i k value")
            i = parse_index(tokens[1], line_no)
            k = parse_index(tokens[2], line_no)
            if (i, k) in tensor_entries[keyword]:
                raise ModelFormatError(line_no, f"duplicate {keyword} entry {i} {k}")
            tensor_entries[keyword][(i, k)] = parse_value(tokens[3], line_no)
            continue

        raise ModelFormatError(line_no, f"unknown directive {keyword!r}")

    if not version_seen:
        raise ModelFormatError(1, "empty document: missing `version 1` line")
    if n_value is None:
        raise ModelFormatError(1, "missing n line")

    def build_tensor(kind: str) -> Endomorphism:
        columns: dict[int, dict[int, Scalar]] = {}
        for (i, k), value in tensor_entries[kind].items():
            columns.setdefault(i, {})[k] = value
        return Endomorphism.from_columns(dim, columns)

    return ManifoldModel(
        name=name,
        n=n_value,
        constants=StructureConstants.from_entries(dim, bracket_entries),
        G=build_tensor("G"),
        H=build_tensor("H"),
        J=build_tensor("J"),
    )


HEISENBERG_CCM = """\
# Complex Heisenberg group with its left-invariant complex contact
# metric structure, over the orthonormal frame e_0..e_5 (U = e_4, V = e_5).
# Two structure-tensor signs (H 3 0, J 3 2) are the unique choice under
# which the squared-tensor axioms and H = GJ hold; the published table
# lists the opposite signs for these two images.
version 1
name heisenberg
n 1
bracket 0 2 4 -2
bracket 0 3 5 -2
bracket 1 2 5 -2
bracket 1 3 4 2
G 0 2 -1
G 1 3 1
G 2 0 1
G 3 1 -1
H 0 3 -1
H 1 2 -1
H 2 1 1
H 3 0 1
J 0 1 -1
J 1 0 1
J 2 3 -1
J 3 2 1
J 4 5 -1
J 5 4 1
"""


def build_heisenberg() -> ManifoldModel:
    """The built-in complex Heisenberg model (n=1, dimension 6)."""
    return load_model(HEISENBERG_CCM)


def build_abelian() -> ManifoldModel:
    """Same structure tensors over the abelian algebra (all brackets zero).

    Passes every algebraic tensor axiom but is not a contact metric
    structure: the exterior-derivative compatibility and all normality
    routes fail on it.  Useful as a negative control.
    """
    h = build_heisenberg()
    return ManifoldModel(
        name="abelian",
        n=h.n,
        constants=StructureConstants.from_entries(h.dim, {}),
        G=h.G,
        H=h.H,
        J=h.J,
    )
