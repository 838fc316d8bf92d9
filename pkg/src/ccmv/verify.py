"""Identity registry, suite runner, and expected-values diffing.

Every registered identity is an independent claim about a model,
evaluated exhaustively over frame tuples in its free slots (slots the
statement restricts to the horizontal distribution range over horizontal
frame indices only) and then over a deterministic batch of random
rational combinations.  Comparison is exact; the first inequality is
reported as the witness.

Registry ids are stable opaque labels (the EQ-*/AX-*/NORM-* vocabulary
used by the report formats); several identities are recorded here in a
published form that is internally inconsistent with the rest of the
structure, and those FAIL on the built-in model by design.  The shipped
errata reports pin their statuses.  The engine reports; it never
adjudicates which side of an inconsistency was intended.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .core import (
    ZERO,
    FrameVector,
    OneForm,
    Scalar,
    Status,
    format_scalar,
    format_sparse_vector,
    inner_product,
    parse_scalar,
    parse_sparse_vector,
)
from .connection import (
    ConnectionCoeffs,
    cov_deriv_endo,
    cov_deriv_oneform,
    cov_deriv_vector,
    exterior_d_oneform,
    levi_civita,
    sigma_form,
    wedge,
)
from .curvature import (
    holomorphic_sectional,
    ricci,
    ricci_operator,
    riemann,
    scalar_curvature,
    second_bianchi_cyclic_sum,
    second_bianchi_failures,
    sectional,
)
from .model import (
    ManifoldModel,
    lie_checks,
    require_lie_algebra,
    structure_tensor_checks,
)
from .structures import (
    check_normality,
    horizontal_projection,
    random_rational_vector,
)

SELECTORS = ("all", "axioms", "contact", "normality", "curvature", "ricci")

Clause = tuple[str, object, object]


@dataclass(frozen=True)
class IdentityResult:
    identity_id: str
    status: Status
    witness: str | None = None


@dataclass(frozen=True)
class SuiteReport:
    model_name: str
    selector: str
    results: tuple[IdentityResult, ...]

    @property
    def pass_count(self) -> int:
        return sum(1 for r in self.results if r.status is Status.PASS)

    @property
    def fail_count(self) -> int:
        return sum(1 for r in self.results if r.status is Status.FAIL)

    @property
    def all_pass(self) -> bool:
        return self.fail_count == 0

    def result(self, identity_id: str) -> IdentityResult:
        for r in self.results:
            if r.identity_id == identity_id:
                return r
        raise KeyError(identity_id)


class Workspace:
    """Shared derived quantities for one model, computed once per run."""

    def __init__(self, m: ManifoldModel):
        self.model = m
        self.conn = levi_civita(m)
        self.sigma = sigma_form(m, self.conn)
        self.dsigma = exterior_d_oneform(m, self.sigma)
        self.du = exterior_d_oneform(m, m.u)
        self.dv = exterior_d_oneform(m, m.v)
        self.wedge_sigma_v = wedge(self.sigma, m.v)
        self.wedge_sigma_u = wedge(self.sigma, m.u)
        self.curv = riemann(m, self.conn)
        self.rho = ricci(m, self.curv)
        self.Q = ricci_operator(self.rho)
        self.tau = scalar_curvature(self.rho)
        self.nUG = cov_deriv_endo(self.conn, m.U, m.G)
        self.nVG = cov_deriv_endo(self.conn, m.V, m.G)
        self.nUH = cov_deriv_endo(self.conn, m.U, m.H)
        self.nVH = cov_deriv_endo(self.conn, m.V, m.H)
        self.nUJ = cov_deriv_endo(self.conn, m.U, m.J)
        self.nVJ = cov_deriv_endo(self.conn, m.V, m.J)
        self.dUV = self.dsigma.value(m.U, m.V)
        self.basis = [m.basis(i) for i in range(m.dim)]
        self._normality = {}
        self._model_checks = None

    # short accessors used by the identity evaluators
    def G(self, x: FrameVector) -> FrameVector:
        return self.model.G.apply(x)

    def H(self, x: FrameVector) -> FrameVector:
        return self.model.H.apply(x)

    def J(self, x: FrameVector) -> FrameVector:
        return self.model.J.apply(x)

    def u(self, x: FrameVector) -> Scalar:
        return self.model.u.value(x)

    def v(self, x: FrameVector) -> Scalar:
        return self.model.v.value(x)

    def sig(self, x: FrameVector) -> Scalar:
        return self.sigma.value(x)

    def dsig(self, x: FrameVector, y: FrameVector) -> Scalar:
        return self.dsigma.value(x, y)

    def hproj(self, x: FrameVector) -> FrameVector:
        return horizontal_projection(self.model, x)

    def nabla(self, x: FrameVector, y: FrameVector) -> FrameVector:
        return cov_deriv_vector(self.conn, x, y)

    def cov_form(self, x: FrameVector, w: OneForm) -> OneForm:
        return cov_deriv_oneform(self.conn, x, w)

    def cov_G(self, x: FrameVector, y: FrameVector) -> FrameVector:
        return self.nabla(x, self.G(y)) - self.G(self.nabla(x, y))

    def cov_H(self, x: FrameVector, y: FrameVector) -> FrameVector:
        return self.nabla(x, self.H(y)) - self.H(self.nabla(x, y))

    def cov_J(self, x: FrameVector, y: FrameVector) -> FrameVector:
        return self.nabla(x, self.J(y)) - self.J(self.nabla(x, y))

    def R(self, x: FrameVector, y: FrameVector, z: FrameVector) -> FrameVector:
        """R(x, y) z by trilinear contraction of the stored tensor."""
        d = self.model.dim
        out = [ZERO] * d
        entries = self.curv.r.entries
        for i, xi in enumerate(x.coefficients):
            if not xi:
                continue
            for j, yj in enumerate(y.coefficients):
                if not yj:
                    continue
                for k, zk in enumerate(z.coefficients):
                    if not zk:
                        continue
                    factor = xi * yj * zk
                    row = entries[i][j][k]
                    for el in range(d):
                        if row[el]:
                            out[el] += factor * row[el]
        return FrameVector(tuple(out))

    def R4(self, x: FrameVector, y: FrameVector, z: FrameVector,
           w: FrameVector) -> Scalar:
        return self.curv.r.contract(x, y, z, w)

    def rho_val(self, x: FrameVector, y: FrameVector) -> Scalar:
        return self.rho.value(x, y)

    def uv_bilinear(self, x: FrameVector, y: FrameVector) -> Scalar:
        """u(X)v(Y) - v(X)u(Y): the unhalved pairing used by the vertical
        correction terms of the curvature identities."""
        return self.u(x) * self.v(y) - self.v(x) * self.u(y)

    def normality(self, samples: int, seed: int):
        key = (samples, seed)
        if key not in self._normality:
            self._normality[key] = check_normality(self.model, self.conn,
                                                   samples=samples, seed=seed)
        return self._normality[key]

    def model_checks(self):
        if self._model_checks is None:
            self._model_checks = {
                check.check_id: check
                for check in lie_checks(self.model)
                + structure_tensor_checks(self.model)}
        return self._model_checks


@dataclass(frozen=True)
class Identity:
    identity_id: str
    group: str
    slots: tuple[str, ...]
    evaluate: Callable[[Workspace, tuple[FrameVector, ...]], list[Clause]] | None = None
    direct: Callable[[Workspace, int, int], IdentityResult] | None = None


def _render_value(value) -> str:
    if isinstance(value, FrameVector):
        return format_sparse_vector(value)
    return format_scalar(value)


def render_witness(slots: str, clause: str, lhs, rhs) -> str:
    part = f" part={clause}" if clause else ""
    return f"slots={slots}{part} lhs={_render_value(lhs)} rhs={_render_value(rhs)}"


def _values_differ(lhs, rhs) -> bool:
    return lhs != rhs


def _run_slots(ws: Workspace, ident: Identity, samples: int,
               seed: int) -> IdentityResult:
    m = ws.model
    ranges = [m.horizontal_indices if kind == "hor" else range(m.dim)
              for kind in ident.slots]
    for idx in product(*ranges):
        vectors = tuple(ws.basis[i] for i in idx)
        for clause, lhs, rhs in ident.evaluate(ws, vectors):
            if _values_differ(lhs, rhs):
                slot_text = ",".join(str(i) for i in idx) if idx else "-"
                return IdentityResult(ident.identity_id, Status.FAIL,
                                      render_witness(slot_text, clause, lhs, rhs))
    if ident.slots:
        rng = random.Random(f"{seed}:{ident.identity_id}")
        for sample_index in range(samples):
            vectors = []
            for kind in ident.slots:
                vec = random_rational_vector(rng, m.dim)
                if kind == "hor":
                    vec = ws.hproj(vec)
                vectors.append(vec)
            for clause, lhs, rhs in ident.evaluate(ws, tuple(vectors)):
                if _values_differ(lhs, rhs):
                    return IdentityResult(
                        ident.identity_id, Status.FAIL,
                        render_witness(f"sample:{sample_index}", clause, lhs, rhs))
    return IdentityResult(ident.identity_id, Status.PASS)


def _wrap_model_check(check_id: str) -> Callable[[Workspace, int, int], IdentityResult]:
    def run(ws: Workspace, samples: int, seed: int) -> IdentityResult:
        check = ws.model_checks()[check_id]
        return IdentityResult(check.check_id, check.status, check.witness)
    return run


def _wrap_normality_route(route_name: str) -> Callable[[Workspace, int, int], IdentityResult]:
    identity_id = f"NORM-{route_name.upper()}"

    def run(ws: Workspace, samples: int, seed: int) -> IdentityResult:
        report = ws.normality(samples, seed)
        route = getattr(report, route_name)
        return IdentityResult(identity_id, route.status, route.witness)
    return run


def _registry() -> list[Identity]:
    ids: list[Identity] = []

    def add(identity_id: str, group: str, slots: str, fn) -> None:
        ids.append(Identity(identity_id, group, tuple(slots.split()) if slots else (),
                            evaluate=fn))

    def add_direct(identity_id: str, group: str, fn) -> None:
        ids.append(Identity(identity_id, group, (), direct=fn))

    # ----- axioms -----
    for check_id in ("LIE-ANTISYM", "LIE-JACOBI", "AX-G2", "AX-H2", "AX-J2",
                     "AX-ANTICOMM", "AX-KERNEL", "AX-SKEW", "AX-HGJ", "AX-JH",
                     "AX-JV", "AX-HERM"):
        add_direct(check_id, "axioms", _wrap_model_check(check_id))

    add("AX-du", "axioms", "any any", lambda ws, vs: [(
        "", ws.du.value(vs[0], vs[1]),
        inner_product(vs[0], ws.G(vs[1])) + ws.wedge_sigma_v.value(vs[0], vs[1]))])
    add("AX-dv", "axioms", "any any", lambda ws, vs: [(
        "", ws.dv.value(vs[0], vs[1]),
        inner_product(vs[0], ws.H(vs[1])) - ws.wedge_sigma_u.value(vs[0], vs[1]))])

    # ----- contact: structure-tensor derivative identities -----
    add("EQ-2.1", "contact", "any", lambda ws, vs: [
        ("U", ws.nUG.apply(vs[0]), ws.H(vs[0]).scale(ws.sig(ws.model.U))),
        ("V", ws.nVH.apply(vs[0]), ws.G(vs[0]).scale(-ws.sig(ws.model.V)))])

    add("EQ-2.6", "contact", "any any any", lambda ws, vs: [(
        "", inner_product(ws.cov_J(vs[0], vs[1]), vs[2]),
        ws.u(vs[0]) * (ws.dsig(vs[2], ws.G(vs[1]))
                       - 2 * inner_product(ws.H(vs[1]), vs[2]))
        + ws.v(vs[0]) * (ws.dsig(vs[2], ws.H(vs[1]))
                         + 2 * inner_product(ws.G(vs[1]), vs[2])))])

    add("EQ-2.7", "contact", "any", lambda ws, vs: [
        ("U", ws.nabla(vs[0], ws.model.U),
         -ws.G(vs[0]) + ws.model.V.scale(ws.sig(vs[0]))),
        ("V", ws.nabla(vs[0], ws.model.V),
         -ws.H(vs[0]) - ws.model.U.scale(ws.sig(vs[0])))])

    add("EQ-2.8", "contact", "", lambda ws, vs: [
        ("UU", ws.nabla(ws.model.U, ws.model.U),
         ws.model.V.scale(ws.sig(ws.model.U))),
        ("UV", ws.nabla(ws.model.U, ws.model.V),
         ws.model.U.scale(-ws.sig(ws.model.U))),
        ("VU", ws.nabla(ws.model.V, ws.model.U),
         ws.model.V.scale(ws.sig(ws.model.V))),
        ("VV", ws.nabla(ws.model.V, ws.model.V),
         ws.model.U.scale(-ws.sig(ws.model.V)))])

    add("EQ-2.9", "contact", "any any", lambda ws, vs: [
        ("GH", ws.dsig(ws.G(vs[0]), ws.G(vs[1])),
         ws.dsig(ws.H(vs[0]), ws.H(vs[1]))),
        ("flip", ws.dsig(ws.G(vs[0]), ws.G(vs[1])),
         ws.dsig(vs[1], vs[0]) - 2 * ws.uv_bilinear(vs[1], vs[0]) * ws.dUV)])

    add("EQ-2.10", "contact", "any", lambda ws, vs: [
        ("U", ws.dsig(ws.model.U, vs[0]), ws.v(vs[0]) * ws.dUV),
        ("V", ws.dsig(ws.model.V, vs[0]), -ws.u(vs[0]) * ws.dUV)])

    add("EQ-2.22", "contact", "hor hor", lambda ws, vs: [(
        "", ws.dsig(vs[0], vs[1]),
        2 * inner_product(ws.J(vs[0]), vs[1])
        + inner_product(ws.nUJ.apply(ws.G(vs[0])), vs[1]))])

    add("EQ-3.1", "contact", "any any", lambda ws, vs: [
        ("u", ws.cov_form(vs[0], ws.model.u).value(vs[1]),
         inner_product(vs[0], ws.G(vs[1])) + ws.sig(vs[0]) * ws.v(vs[1])),
        ("v", ws.cov_form(vs[0], ws.model.v).value(vs[1]),
         inner_product(vs[0], ws.H(vs[1])) - ws.sig(vs[0]) * ws.u(vs[1]))])

    def eq_3_2_block(ws: Workspace, vs) -> list[Clause]:
        x = vs[0]
        U, V = ws.model.U, ws.model.V
        return [
            ("GU.V", inner_product(ws.nUG.apply(x), V), ZERO),
            ("HU.V", inner_product(ws.nUH.apply(x), V), ZERO),
            ("GU.U", inner_product(ws.nUG.apply(x), U), ZERO),
            ("HU.U", inner_product(ws.nUH.apply(x), U), ZERO),
            ("GV.U", inner_product(ws.nVG.apply(x), U), ZERO),
            ("HV.U", inner_product(ws.nVH.apply(x), U), ZERO),
            ("GV.V", inner_product(ws.nVG.apply(x), V), ZERO),
            ("HV.V", inner_product(ws.nVH.apply(x), V), ZERO),
            ("JU.V", inner_product(ws.nUJ.apply(x), V), ZERO),
            ("JU.U", inner_product(ws.nUJ.apply(x), U), ZERO),
            ("JV.U", inner_product(ws.nVJ.apply(x), U), ZERO),
            ("JV.V", inner_product(ws.nVJ.apply(x), V), ZERO),
        ]
    add("EQ-3.2-BLOCK", "contact", "hor", eq_3_2_block)

    for eq_id, attr_u, attr_v in (("EQ-3.3", "nUG", "nVG"),
                                  ("EQ-3.4", "nUH", "nVH"),
                                  ("EQ-3.5", "nUJ", "nVJ")):
        def projector(ws: Workspace, vs, a=attr_u, b=attr_v) -> list[Clause]:
            x = vs[0]
            return [("U", getattr(ws, a).apply(x), getattr(ws, a).apply(ws.hproj(x))),
                    ("V", getattr(ws, b).apply(x), getattr(ws, b).apply(ws.hproj(x)))]
        add(eq_id, "contact", "any", projector)

    add("EQ-3.6", "contact", "any any", lambda ws, vs: [(
        "", inner_product(ws.nUG.apply(vs[0]), vs[1]),
        ws.sig(ws.model.U) * inner_product(ws.H(ws.hproj(vs[0])), ws.hproj(vs[1])))])
    add("EQ-3.7", "contact", "any any", lambda ws, vs: [(
        "", inner_product(ws.nVG.apply(vs[0]), vs[1]),
        ws.sig(ws.model.V) * inner_product(ws.H(ws.hproj(vs[0])), ws.hproj(vs[1]))
        + ws.dsig(ws.hproj(vs[1]), ws.hproj(vs[0]))
        - 2 * inner_product(ws.J(ws.hproj(vs[0])), ws.hproj(vs[1])))])
    add("EQ-3.8", "contact", "any any", lambda ws, vs: [(
        "", inner_product(ws.nVH.apply(vs[0]), vs[1]),
        -ws.sig(ws.model.V) * inner_product(ws.G(ws.hproj(vs[0])), ws.hproj(vs[1])))])
    add("EQ-3.9", "contact", "any any", lambda ws, vs: [(
        "", inner_product(ws.nUH.apply(vs[0]), vs[1]),
        -ws.sig(ws.model.U) * inner_product(ws.G(ws.hproj(vs[0])), ws.hproj(vs[1]))
        - ws.dsig(ws.hproj(vs[1]), ws.hproj(vs[0]))
        + 2 * inner_product(ws.J(ws.hproj(vs[0])), ws.hproj(vs[1])))])
    add("EQ-3.10", "contact", "any any", lambda ws, vs: [(
        "", inner_product(ws.nUJ.apply(ws.G(vs[0])), vs[1]),
        -ws.dsig(ws.hproj(vs[1]), ws.hproj(vs[0]))
        - 2 * inner_product(ws.J(ws.hproj(vs[0])), ws.hproj(vs[1])))])
    add("EQ-3.11", "contact", "any any", lambda ws, vs: [(
        "", inner_product(ws.nVJ.apply(ws.G(vs[0])), vs[1]),
        ws.dsig(ws.hproj(vs[1]), ws.G(ws.hproj(vs[0])))
        - 2 * inner_product(ws.H(ws.hproj(vs[0])), ws.hproj(vs[1])))])

    add("EQ-4.11", "contact", "any any", lambda ws, vs: [(
        "", ws.dsig(vs[0], vs[1]),
        2 * inner_product(ws.J(ws.hproj(vs[0])), ws.hproj(vs[1]))
        + inner_product(ws.nUJ.apply(ws.G(ws.hproj(vs[0]))), ws.hproj(vs[1]))
        + ws.dUV * ws.uv_bilinear(vs[0], vs[1]))])

    def vertical_mix(ws: Workspace, y: FrameVector) -> FrameVector:
        return ws.model.V.scale(ws.u(y)) - ws.model.U.scale(ws.v(y))

    def eq_4_12(ws: Workspace, vs) -> list[Clause]:
        x, y = vs
        y0 = ws.hproj(y)
        rhs = (ws.H(y).scale(ws.sig(x))
               - ws.J(y).scale(2 * ws.v(x))
               - x.scale(ws.u(y))
               - ws.J(x).scale(ws.v(y))
               + (ws.J(y0).scale(2) - ws.nUJ.apply(ws.G(y0))).scale(ws.v(x))
               + ws.model.U.scale(inner_product(x, y))
               + ws.model.V.scale(inner_product(ws.J(x), y))
               - vertical_mix(ws, y).scale(ws.dUV * ws.v(x)))
        return [("", ws.cov_G(x, y), rhs)]
    add("EQ-4.12", "contact", "any any", eq_4_12)

    def eq_4_13(ws: Workspace, vs) -> list[Clause]:
        x, y = vs
        y0 = ws.hproj(y)
        rhs = (ws.G(y).scale(-ws.sig(x))
               + ws.J(y).scale(2 * ws.u(x))
               + ws.J(x).scale(ws.u(y))
               - x.scale(ws.v(y))
               - (ws.J(y0).scale(2) + ws.nUJ.apply(ws.G(y0))).scale(ws.u(x))
               - ws.model.U.scale(inner_product(ws.J(x), y))
               + ws.model.V.scale(inner_product(x, y))
               + vertical_mix(ws, y).scale(ws.dUV * ws.u(x)))
        return [("", ws.cov_H(x, y), rhs)]
    add("EQ-4.13", "contact", "any any", eq_4_13)

    add("EQ-4.14", "contact", "any any", lambda ws, vs: [(
        "", ws.cov_J(vs[0], vs[1]),
        ws.H(vs[1]).scale(-2 * ws.u(vs[0]))
        + ws.G(vs[1]).scale(2 * ws.v(vs[0]))
        + (ws.H(ws.hproj(vs[1])).scale(2)
           + ws.nUJ.apply(ws.hproj(vs[1]))).scale(ws.u(vs[0]))
        + (ws.G(ws.hproj(vs[1])).scale(-2)
           + ws.nUJ.apply(ws.J(ws.hproj(vs[1])))).scale(ws.v(vs[0])))])

    # ----- normality -----
    add("EQ-2.4", "normality", "any any any", lambda ws, vs: [(
        "", inner_product(ws.cov_G(vs[0], vs[1]), vs[2]),
        ws.sig(vs[0]) * inner_product(ws.H(vs[1]), vs[2])
        + ws.v(vs[0]) * ws.dsig(ws.G(vs[2]), ws.G(vs[1]))
        - 2 * ws.v(vs[0]) * inner_product(ws.H(ws.G(vs[1])), vs[2])
        - ws.u(vs[1]) * inner_product(vs[0], vs[2])
        - ws.v(vs[1]) * inner_product(ws.J(vs[0]), vs[2])
        + ws.u(vs[2]) * inner_product(vs[0], vs[1])
        + ws.v(vs[2]) * inner_product(ws.J(vs[0]), vs[1]))])

    add("EQ-2.5", "normality", "any any any", lambda ws, vs: [(
        "", inner_product(ws.cov_H(vs[0], vs[1]), vs[2]),
        -ws.sig(vs[0]) * inner_product(ws.G(vs[1]), vs[2])
        - ws.u(vs[0]) * ws.dsig(ws.H(vs[2]), ws.H(vs[1]))
        - 2 * ws.u(vs[0]) * inner_product(ws.H(ws.G(vs[1])), vs[2])
        + ws.u(vs[1]) * inner_product(ws.J(vs[0]), vs[2])
        - ws.v(vs[1]) * inner_product(vs[0], vs[2])
        - ws.u(vs[2]) * inner_product(ws.J(vs[0]), vs[1])
        + ws.v(vs[2]) * inner_product(vs[0], vs[1]))])

    for route in ("korkmaz", "prop21", "thm45"):
        add_direct(f"NORM-{route.upper()}", "normality", _wrap_normality_route(route))

    # ----- curvature -----
    add("EQ-2.11", "curvature", "", lambda ws, vs: [
        ("UVVU", ws.R4(ws.model.U, ws.model.V, ws.model.V, ws.model.U),
         -2 * ws.dUV),
        ("VUUV", ws.R4(ws.model.V, ws.model.U, ws.model.U, ws.model.V),
         -2 * ws.dUV)])

    add("EQ-2.12", "curvature", "hor", lambda ws, vs: [
        ("U", ws.R(vs[0], ws.model.U, ws.model.U), vs[0]),
        ("V", ws.R(vs[0], ws.model.V, ws.model.V), vs[0])])

    add("EQ-2.13", "curvature", "hor hor", lambda ws, vs: [(
        "", ws.R(vs[0], vs[1], ws.model.U),
        ws.model.V.scale(2 * (inner_product(vs[0], ws.J(vs[1]))
                              + ws.dsig(vs[0], vs[1]))))])
    add("EQ-2.14", "curvature", "hor hor", lambda ws, vs: [(
        "", ws.R(vs[0], vs[1], ws.model.V),
        ws.model.U.scale(-2 * (inner_product(vs[0], ws.J(vs[1]))
                               + ws.dsig(vs[0], vs[1]))))])

    add("EQ-2.15", "curvature", "hor", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.U, ws.model.V),
        ws.G(vs[0]).scale(ws.sig(ws.model.U)) + ws.nUH.apply(vs[0]) - ws.J(vs[0]))])
    add("EQ-2.16", "curvature", "hor", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.V, ws.model.U),
        ws.H(vs[0]).scale(-ws.sig(ws.model.V)) + ws.nVG.apply(vs[0]) + ws.J(vs[0]))])

    add("EQ-2.17", "curvature", "hor hor", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.U, vs[1]),
        ws.model.U.scale(-inner_product(vs[0], vs[1]))
        + ws.model.V.scale(ws.dsig(vs[1], vs[0])
                           - inner_product(ws.J(vs[0]), vs[1])))])
    add("EQ-2.18", "curvature", "hor hor", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.V, vs[1]),
        ws.model.V.scale(-inner_product(vs[0], vs[1]))
        + ws.model.U.scale(inner_product(ws.J(vs[0]), vs[1])
                           - ws.dsig(vs[1], vs[0])))])

    add("EQ-2.19", "curvature", "hor", lambda ws, vs: [(
        "", ws.R(ws.model.U, ws.model.V, vs[0]), ws.J(vs[0]))])

    add("EQ-2.20", "curvature", "hor hor hor hor", lambda ws, vs: [(
        "", ws.R4(ws.G(vs[0]), ws.G(vs[1]), ws.G(vs[2]), ws.G(vs[3])),
        ws.R4(vs[0], vs[1], vs[2], vs[3])
        - 2 * inner_product(ws.J(vs[2]), vs[3]) * ws.dsig(vs[0], vs[1])
        + 2 * inner_product(ws.H(vs[0]), vs[1]) * ws.dsig(ws.G(vs[2]), vs[3])
        + 2 * inner_product(ws.J(vs[0]), vs[1]) * ws.dsig(vs[2], vs[3])
        - 2 * inner_product(ws.H(vs[2]), vs[3]) * ws.dsig(ws.G(vs[0]), vs[1]))])
    add("EQ-2.21", "curvature", "hor hor hor hor", lambda ws, vs: [(
        "", ws.R4(ws.H(vs[0]), ws.H(vs[1]), ws.H(vs[2]), ws.H(vs[3])),
        ws.R4(vs[0], vs[1], vs[2], vs[3])
        - 2 * inner_product(ws.J(vs[2]), vs[3]) * ws.dsig(vs[0], vs[1])
        + 2 * inner_product(ws.G(vs[0]), vs[1]) * ws.dsig(ws.H(vs[2]), vs[3])
        + 2 * inner_product(ws.J(vs[0]), vs[1]) * ws.dsig(vs[2], vs[3])
        - 2 * inner_product(ws.G(vs[2]), vs[3]) * ws.dsig(ws.H(vs[0]), vs[1]))])

    add("EQ-4.1", "curvature", "hor hor hor hor", lambda ws, vs: [
        ("G", ws.R4(ws.G(vs[0]), ws.G(vs[1]), ws.G(vs[2]), ws.G(vs[3])),
         ws.R4(vs[0], vs[1], vs[2], vs[3])),
        ("H", ws.R4(ws.H(vs[0]), ws.H(vs[1]), ws.H(vs[2]), ws.H(vs[3])),
         ws.R4(vs[0], vs[1], vs[2], vs[3]))])

    add("EQ-4.2", "curvature", "any", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.U, ws.model.U),
        ws.hproj(vs[0]) + ws.model.V.scale(-2 * ws.dUV * ws.v(vs[0])))])
    add("EQ-4.3", "curvature", "any", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.V, ws.model.V),
        ws.hproj(vs[0]) + ws.model.U.scale(-2 * ws.dUV * ws.u(vs[0])))])
    add("EQ-4.4", "curvature", "any", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.U, ws.model.V),
        ws.G(ws.hproj(vs[0])).scale(ws.sig(ws.model.U))
        + ws.nUH.apply(ws.hproj(vs[0])) - ws.J(ws.hproj(vs[0]))
        + ws.model.U.scale(2 * ws.dUV * ws.v(vs[0])))])
    add("EQ-4.5", "curvature", "any", lambda ws, vs: [(
        "", ws.R(vs[0], ws.model.V, ws.model.U),
        ws.H(ws.hproj(vs[0])).scale(-ws.sig(ws.model.V))
        + ws.nVG.apply(ws.hproj(vs[0])) + ws.J(ws.hproj(vs[0]))
        + ws.model.V.scale(2 * ws.dUV * ws.u(vs[0])))])
    add("EQ-4.6", "curvature", "any", lambda ws, vs: [(
        "", ws.R(ws.model.U, ws.model.V, vs[0]),
        ws.J(ws.hproj(vs[0]))
        + (ws.model.V.scale(ws.u(vs[0]))
           - ws.model.U.scale(ws.v(vs[0]))).scale(2 * ws.dUV))])

    def eq_4_7(ws: Workspace, vs) -> list[Clause]:
        x, y = vs
        x0, y0 = ws.hproj(x), ws.hproj(y)
        rhs = (y0.scale(-ws.u(x))
               + (ws.H(y0).scale(ws.sig(ws.model.V)) + ws.nVG.apply(y0)
                  + ws.J(y0)).scale(ws.v(x))
               + x0.scale(ws.u(y))
               + (ws.H(x0).scale(-ws.sig(ws.model.V)) + ws.nVG.apply(x0)
                  + ws.J(x0)).scale(ws.v(y))
               + ws.model.V.scale(2 * (inner_product(x0, ws.J(y0))
                                       + ws.dsig(x0, y0))
                                  + 2 * ws.dUV * ws.uv_bilinear(x, y)))
        return [("", ws.R(x, y, ws.model.U), rhs)]
    add("EQ-4.7", "curvature", "any any", eq_4_7)

    def eq_4_8(ws: Workspace, vs) -> list[Clause]:
        x, y = vs
        x0, y0 = ws.hproj(x), ws.hproj(y)
        rhs = ((ws.G(y0).scale(ws.sig(ws.model.U)) + ws.nUH.apply(y0)
                - ws.J(y0)).scale(-ws.u(x))
               + y0.scale(-ws.v(x))
               + (ws.G(x0).scale(-ws.sig(ws.model.U)) + ws.nUH.apply(x0)
                  - ws.J(x0)).scale(ws.u(y))
               + x0.scale(ws.v(y))
               + ws.model.U.scale(-2 * (inner_product(x0, ws.J(y0))
                                        + ws.dsig(x0, y0))
                                  - 2 * ws.dUV * ws.uv_bilinear(x, y)))
        return [("", ws.R(x, y, ws.model.V), rhs)]
    add("EQ-4.8", "curvature", "any any", eq_4_8)

    def eq_4_9(ws: Workspace, vs) -> list[Clause]:
        x, y = vs
        x0, y0 = ws.hproj(x), ws.hproj(y)
        rhs = (x0.scale(ws.u(y))
               - ws.J(y0).scale(ws.v(x))
               + (ws.G(x0).scale(ws.sig(ws.model.U)) + ws.nUH.apply(x0)
                  - ws.J(x0)).scale(ws.v(y))
               + ws.model.U.scale(-inner_product(x0, y0)
                                  - 2 * ws.dUV * ws.v(x) * ws.v(y))
               + ws.model.V.scale(ws.dsig(y0, x0)
                                  - inner_product(ws.J(x0), y0)
                                  - 2 * ws.dUV * ws.v(x) * ws.u(y)))
        return [("", ws.R(x, ws.model.U, y), rhs)]
    add("EQ-4.9", "curvature", "any any", eq_4_9)

    def eq_4_10(ws: Workspace, vs) -> list[Clause]:
        x, y = vs
        x0, y0 = ws.hproj(x), ws.hproj(y)
        rhs = (ws.J(y0).scale(ws.u(x))
               + x0.scale(ws.v(y))
               + (ws.H(x0).scale(-ws.sig(ws.model.U)) + ws.nVG.apply(x0)
                  + ws.J(x0)).scale(ws.u(y))
               + ws.model.V.scale(-inner_product(x0, y0)
                                  + 2 * ws.dUV * ws.u(x) * ws.u(y))
               + ws.model.U.scale(inner_product(ws.J(x0), y0)
                                  - ws.dsig(y0, x0)
                                  - 2 * ws.dUV * ws.u(x) * ws.v(y)))
        return [("", ws.R(x, ws.model.V, y), rhs)]
    add("EQ-4.10", "curvature", "any any", eq_4_10)

    add("RIEM-SYM", "curvature", "any any any any", lambda ws, vs: [
        ("swap-first-pair", ws.R4(vs[0], vs[1], vs[2], vs[3]),
         -ws.R4(vs[1], vs[0], vs[2], vs[3])),
        ("swap-second-pair", ws.R4(vs[0], vs[1], vs[2], vs[3]),
         -ws.R4(vs[0], vs[1], vs[3], vs[2])),
        ("pair-exchange", ws.R4(vs[0], vs[1], vs[2], vs[3]),
         ws.R4(vs[2], vs[3], vs[0], vs[1]))])

    add("BIANCHI-1", "curvature", "any any any any", lambda ws, vs: [(
        "", ws.R4(vs[0], vs[1], vs[2], vs[3])
        + ws.R4(vs[1], vs[2], vs[0], vs[3])
        + ws.R4(vs[2], vs[0], vs[1], vs[3]), ZERO)])

    def bianchi_2(ws: Workspace, samples: int, seed: int) -> IdentityResult:
        where = second_bianchi_failures(ws.model, ws.conn, ws.curv)
        if where is None:
            return IdentityResult("BIANCHI-2", Status.PASS)
        mm, i, j, k, el = where
        total = second_bianchi_cyclic_sum(ws.model, ws.conn, ws.curv,
                                          mm, i, j, k, el)
        return IdentityResult(
            "BIANCHI-2", Status.FAIL,
            render_witness(f"{mm},{i},{j},{k},{el}", "", total, ZERO))
    add_direct("BIANCHI-2", "curvature", bianchi_2)

    # ----- ricci -----
    add("EQ-5.1", "ricci", "hor hor", lambda ws, vs: [
        ("G", ws.rho_val(ws.G(vs[0]), ws.G(vs[1])), ws.rho_val(vs[0], vs[1])),
        ("H", ws.rho_val(ws.H(vs[0]), ws.H(vs[1])), ws.rho_val(vs[0], vs[1]))])
    add("EQ-5.2", "ricci", "hor hor", lambda ws, vs: [
        ("G", ws.rho_val(ws.G(vs[0]), vs[1]), -ws.rho_val(vs[0], ws.G(vs[1]))),
        ("H", ws.rho_val(ws.H(vs[0]), vs[1]), -ws.rho_val(vs[0], ws.H(vs[1])))])
    add("EQ-5.6", "ricci", "hor", lambda ws, vs: [
        ("U", ws.rho_val(vs[0], ws.model.U), ZERO),
        ("V", ws.rho_val(vs[0], ws.model.V), ZERO)])

    def vertical_ricci_target(ws: Workspace) -> Scalar:
        return 4 * ws.model.n - 2 * ws.dUV

    add("EQ-5.7", "ricci", "", lambda ws, vs: [
        ("UU", ws.rho_val(ws.model.U, ws.model.U), vertical_ricci_target(ws)),
        ("VV", ws.rho_val(ws.model.V, ws.model.V), vertical_ricci_target(ws)),
        ("UV", ws.rho_val(ws.model.U, ws.model.V), ZERO)])
    add("EQ-5.10", "ricci", "any", lambda ws, vs: [
        ("U", ws.rho_val(vs[0], ws.model.U),
         vertical_ricci_target(ws) * ws.u(vs[0])),
        ("V", ws.rho_val(vs[0], ws.model.V),
         vertical_ricci_target(ws) * ws.v(vs[0]))])
    add("EQ-5.11", "ricci", "any any", lambda ws, vs: [(
        "", ws.rho_val(vs[0], vs[1]),
        ws.rho_val(ws.hproj(vs[0]), ws.hproj(vs[1]))
        + vertical_ricci_target(ws) * (ws.u(vs[0]) * ws.u(vs[1])
                                       + ws.v(vs[0]) * ws.v(vs[1])))])
    add("EQ-5.12", "ricci", "any any", lambda ws, vs: [
        ("G", ws.rho_val(vs[0], vs[1]),
         ws.rho_val(ws.G(vs[0]), ws.G(vs[1]))
         + vertical_ricci_target(ws) * (ws.u(vs[0]) * ws.u(vs[1])
                                        + ws.v(vs[0]) * ws.v(vs[1]))),
        ("H", ws.rho_val(vs[0], vs[1]),
         ws.rho_val(ws.H(vs[0]), ws.H(vs[1]))
         + vertical_ricci_target(ws) * (ws.u(vs[0]) * ws.u(vs[1])
                                        + ws.v(vs[0]) * ws.v(vs[1])))])
    add("EQ-5.13", "ricci", "any", lambda ws, vs: [
        ("G", ws.Q.apply(ws.G(vs[0])), ws.G(ws.Q.apply(vs[0]))),
        ("H", ws.Q.apply(ws.H(vs[0])), ws.H(ws.Q.apply(vs[0])))])

    return ids


REGISTRY: tuple[Identity, ...] = tuple(_registry())


def _natural_key(identity_id: str) -> tuple:
    return tuple((0, piece) if index % 2 == 0 else (1, int(piece))
                 for index, piece in enumerate(re.split(r"(\d+)", identity_id)))


def registry_ids(selector: str = "all") -> list[str]:
    """Registered identity ids for a selector, in report order."""
    if selector not in SELECTORS:
        raise ValueError(f"unknown selector {selector!r}; choose from {SELECTORS}")
    chosen = [ident.identity_id for ident in REGISTRY
              if selector == "all" or ident.group == selector]
    return sorted(chosen, key=_natural_key)


def run_suite(m: ManifoldModel, selector: str = "all", samples: int = 32,
              seed: int = 0) -> SuiteReport:
    """Evaluate every selected identity on the model; exact, deterministic."""
    if selector not in SELECTORS:
        raise ValueError(f"unknown selector {selector!r}; choose from {SELECTORS}")
    require_lie_algebra(m)
    ws = Workspace(m)
    results = []
    for ident in REGISTRY:
        if selector != "all" and ident.group != selector:
            continue
        if ident.direct is not None:
            results.append(ident.direct(ws, samples, seed))
        else:
            results.append(_run_slots(ws, ident, samples, seed))
    results.sort(key=lambda r: _natural_key(r.identity_id))
    return SuiteReport(m.name, selector, tuple(results))


# ----- expected-values files -----

class ExpectedFormatError(ValueError):
    """Malformed expected-values document; carries the source line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ExpectedEntry:
    kind: str
    indices: tuple[int, ...]
    expected: object  # FrameVector for R/conn, Scalar otherwise
    line: int

    @property
    def key(self) -> str:
        return " ".join([self.kind, *map(str, self.indices)])


@dataclass(frozen=True)
class ExpectedValues:
    entries: tuple[ExpectedEntry, ...]


_EXPECTED_ARITY = {"R": 3, "conn": 2, "ric": 2, "scal": 0, "sec": 2, "hol": 1}
_EXPECTED_VECTOR_KINDS = {"R", "conn"}


def parse_expected(source: str, dim: int) -> ExpectedValues:
    """Parse an expected-values document against a model dimension."""
    entries: list[ExpectedEntry] = []
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind not in _EXPECTED_ARITY:
            raise ExpectedFormatError(line_no, f"unknown entry kind {kind!r}")
        arity = _EXPECTED_ARITY[kind]
        if len(tokens) != arity + 3 or tokens[arity + 1] != "=":
            raise ExpectedFormatError(
                line_no, f"{kind} entry must look like `{kind}"
                         f"{' <i>' * arity} = <value>`")
        try:
            indices = tuple(int(tok) for tok in tokens[1:arity + 1])
        except ValueError:
            raise ExpectedFormatError(line_no, "indices must be integers")
        if any(not 0 <= idx < dim for idx in indices):
            raise ExpectedFormatError(line_no, f"index out of range for dim {dim}")
        value_text = tokens[arity + 2]
        try:
            if kind in _EXPECTED_VECTOR_KINDS:
                expected = parse_sparse_vector(value_text, dim)
            else:
                expected = parse_scalar(value_text)
        except ValueError as exc:
            raise ExpectedFormatError(line_no, str(exc))
        entries.append(ExpectedEntry(kind, indices, expected, line_no))
    return ExpectedValues(tuple(entries))


@dataclass(frozen=True)
class DiffEntry:
    key: str
    matched: bool
    expected_text: str
    computed_text: str


@dataclass(frozen=True)
class DiffReport:
    model_name: str
    entries: tuple[DiffEntry, ...]

    @property
    def match_count(self) -> int:
        return sum(1 for e in self.entries if e.matched)

    @property
    def mismatch_count(self) -> int:
        return sum(1 for e in self.entries if not e.matched)

    @property
    def all_match(self) -> bool:
        return self.mismatch_count == 0

    def entry(self, key: str) -> DiffEntry:
        """First diff entry for a key (duplicate keys keep their own verdicts)."""
        for e in self.entries:
            if e.key == key:
                return e
        raise KeyError(key)


def diff_expected(m: ManifoldModel, exp: ExpectedValues) -> DiffReport:
    """Recompute every expected entry exactly and report MATCH/MISMATCH."""
    require_lie_algebra(m)
    conn = levi_civita(m)
    rt = riemann(m, conn)
    rho = ricci(m, rt)
    tau = scalar_curvature(rho)

    def compute(entry: ExpectedEntry):
        if entry.kind == "R":
            i, j, k = entry.indices
            return rt.vector(i, j, k)
        if entry.kind == "conn":
            i, j = entry.indices
            return conn.vector(i, j)
        if entry.kind == "ric":
            i, j = entry.indices
            return rho.entry(i, j)
        if entry.kind == "scal":
            return tau
        if entry.kind == "sec":
            i, j = entry.indices
            return sectional(rt, m.basis(i), m.basis(j))
        i, = entry.indices
        return holomorphic_sectional(m, rt, m.basis(i))

    diffs = []
    for entry in exp.entries:
        computed = compute(entry)
        diffs.append(DiffEntry(
            key=entry.key,
            matched=computed == entry.expected,
            expected_text=_render_value(entry.expected),
            computed_text=_render_value(computed),
        ))
    return DiffReport(m.name, tuple(diffs))


# ----- deterministic report rendering (shared by the CLI and tests) -----

def suite_text_rows(report: SuiteReport) -> list[str]:
    rows = []
    for r in report.results:
        row = f"{r.identity_id} {r.status}"
        if r.witness:
            row += f" {r.witness}"
        rows.append(row)
    return rows


def suite_tsv_rows(report: SuiteReport) -> list[str]:
    return [f"{r.identity_id}\t{r.status}\t{r.witness or ''}"
            for r in report.results]


def diff_text_rows(report: DiffReport) -> list[str]:
    rows = []
    for e in report.entries:
        if e.matched:
            rows.append(f"{e.key} MATCH")
        else:
            rows.append(f"{e.key} MISMATCH expected {e.expected_text} "
                        f"computed {e.computed_text}")
    return rows


def diff_tsv_rows(report: DiffReport) -> list[str]:
    return [f"{e.key}\t{'MATCH' if e.matched else 'MISMATCH'}\t{e.computed_text}"
            for e in report.entries]
