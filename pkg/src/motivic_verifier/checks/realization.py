"""Realization maps: commuting squares, the kernel of t2, relation images."""

import logging

import numpy as np

from ..algebra import Bidegree
from ..catalog import CHOW, CLASSICAL_Z, MOTIVIC_Z, MOTIVIC_Z2, Catalog
from ..linalg import f2_same_span
from ..maps import apply, map_matrix
from ..models import Box, CheckReport, Finding
from ..pieces import graded_piece, relation_instances
from ..render import element_text, monomial_text
from .context import CheckContext
from .uct import closed_piece, closure_relations

logger = logging.getLogger(__name__)


def _box_degrees(p_max: int, q_max: int):
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            yield Bidegree(p, q)


def check_squares(catalog: Catalog, p_max: int, q_max: int, box: Box | None = None) -> CheckReport:
    """t2∘μ = μ_C∘t on every basis element, and ker(t mod 2) = ker(t2∘μ)."""
    mz = catalog.ring(MOTIVIC_Z)
    cz2 = catalog.ring("classical-z2")
    mu, t, t2, mu_c = (catalog.map(n) for n in ("mu", "t", "t2", "mu_classical"))
    findings = []
    for deg in _box_degrees(p_max, q_max):
        piece = graded_piece(mz, deg)
        for i, b in enumerate(piece.basis):
            x = piece.basis_element(i)
            motivic_route = apply(t2, apply(mu, x))
            classical_route = apply(mu_c, apply(t, x))
            if motivic_route != classical_route:
                findings.append(
                    Finding.at(
                        deg,
                        f"μ_C(t(x)) = {element_text(cz2, classical_route)}",
                        f"t2(μ(x)) = {element_text(cz2, motivic_route)}",
                        [monomial_text(mz, b)],
                    )
                )
        if not piece.dim:
            continue
        t_mod2 = map_matrix(t, deg).f2()
        through_mod2 = (map_matrix(t2, deg).f2().astype(int) @ map_matrix(mu, deg).f2().astype(int)) % 2
        if not f2_same_span(t_mod2, through_mod2.astype(np.uint8)):
            findings.append(
                Finding.at(
                    deg,
                    "x ∈ ker t⊗Z/2 iff μ(x) ∈ ker t2",
                    "kernels differ",
                    [monomial_text(mz, b) for b in piece.basis],
                )
            )
    return CheckReport.build("squares", box or Box(p_max=p_max, q_max=q_max, m_max=0), findings)


def check_ker_t2(catalog: Catalog, p_max: int, q_max: int, box: Box | None = None) -> CheckReport:
    """ker t2 is spanned by the y02 part of the basis."""
    mz2 = catalog.ring(MOTIVIC_Z2)
    t2 = catalog.map("t2")
    findings = []
    for deg in _box_degrees(p_max, q_max):
        piece = graded_piece(mz2, deg)
        if not piece.dim:
            continue
        kernel = map_matrix(t2, deg).kernel_mod2()
        unit = np.eye(piece.dim, dtype=np.uint8)
        y_rows = [unit[i] for i, m in enumerate(piece.basis) if m.exponent("y02")]
        y_part = np.array(y_rows, dtype=np.uint8) if y_rows else np.zeros((0, piece.dim), dtype=np.uint8)
        if not f2_same_span(kernel, y_part):
            computed = sorted(
                " + ".join(monomial_text(mz2, piece.basis[j]) for j in np.flatnonzero(v)) for v in kernel
            )
            findings.append(
                Finding.at(
                    deg,
                    f"kernel of dimension {len(y_rows)} spanned by the y02 part",
                    f"kernel of dimension {len(kernel)}",
                    computed,
                )
            )
    return CheckReport.build("ker_t2", box or Box(p_max=p_max, q_max=q_max, m_max=0), findings)


def check_presentation_vs_uct(
    catalog: Catalog, p_max: int, q_max: int, box: Box | None = None
) -> CheckReport:
    """Report each identification of torsion classes the listed relations do not imply."""
    mz = catalog.ring(MOTIVIC_Z)
    findings = []
    for deg in _box_degrees(p_max, q_max):
        missing = closure_relations(catalog, deg)
        if not missing:
            continue
        presented, closed = graded_piece(mz, deg), closed_piece(catalog, deg)
        for relation in missing:
            findings.append(
                Finding.at(
                    deg,
                    str(closed.group),
                    str(presented.group),
                    sorted(monomial_text(mz, m) for m in relation.monomials),
                )
            )
    logger.info(f"{len(findings)} identifications not implied by the {mz.name} relations")
    return CheckReport.build(
        "presentation_vs_uct",
        box or Box(p_max=p_max, q_max=q_max, m_max=0),
        findings,
        report_only=True,
        notes=["expected = reduction-closed piece, computed = presented piece"],
    )


def check_relations(catalog: Catalog, p_max: int, q_max: int, box: Box | None = None) -> CheckReport:
    """Every relation instance in the box maps to zero under realization and reduction."""
    targets = {
        CLASSICAL_Z: ("mu_classical", "reduce_classical"),
        CHOW: ("cl",),
        MOTIVIC_Z: ("t", "mu"),
    }
    findings = []
    for ring_name, map_names in targets.items():
        ring = catalog.ring(ring_name)
        for deg, relation in relation_instances(ring, max(q_max, 1)):
            if deg.p > p_max or (deg.q is not None and deg.q > q_max):
                continue
            for name in map_names:
                hom = catalog.map(name)
                image = apply(hom, relation)
                if not image.is_zero():
                    findings.append(
                        Finding.at(
                            deg,
                            f"{name}(R) = 0",
                            element_text(hom.target, image),
                            [element_text(ring, relation)],
                        )
                    )
    return CheckReport.build("relations", box or Box(p_max=p_max, q_max=q_max, m_max=0), findings)


def run_squares(ctx: CheckContext) -> CheckReport:
    return check_squares(ctx.catalog, ctx.box.p_max, ctx.box.q_max, ctx.box)


def run_ker_t2(ctx: CheckContext) -> CheckReport:
    return check_ker_t2(ctx.catalog, ctx.box.p_max, ctx.box.q_max, ctx.box)


def run_presentation_vs_uct(ctx: CheckContext) -> CheckReport:
    return check_presentation_vs_uct(ctx.catalog, ctx.box.p_max, ctx.box.q_max, ctx.box)


def run_relations(ctx: CheckContext) -> CheckReport:
    return check_relations(ctx.catalog, ctx.box.p_max, ctx.box.q_max, ctx.box)
