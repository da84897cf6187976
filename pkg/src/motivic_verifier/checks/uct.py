"""Universal coefficient sequences for the classical and motivic rings."""

import logging

import numpy as np

from ..algebra import Bidegree, Element
from ..catalog import CLASSICAL_Z, CLASSICAL_Z2, CLASSICAL_Z_MOD2, MOTIVIC_Z, MOTIVIC_Z2, Catalog
from ..linalg import f2_rank, f2_row_reduce
from ..maps import apply, map_matrix
from ..models import Box, CheckReport, Finding
from ..pieces import GradedPiece, build_piece, graded_piece
from ..render import monomial_text
from .context import CheckContext

logger = logging.getLogger(__name__)


def _witness(ring, basis, vector) -> list[str]:
    return sorted(monomial_text(ring, basis[i]) for i in np.flatnonzero(vector))


def check_uct_classical(catalog: Catalog, m_max: int, box: Box | None = None) -> CheckReport:
    """0 -> H(Z)⊗Z/2 -> H(Z/2) -> 2-torsion of H(Z) one degree up -> 0, degree by degree."""
    cz, cz2 = catalog.ring(CLASSICAL_Z), catalog.ring(CLASSICAL_Z2)
    mu, beta_tilde = catalog.map("mu_classical"), catalog.map("beta_tilde_classical")
    findings = []
    for m in range(m_max + 1):
        deg = Bidegree(m)
        source, target = graded_piece(cz, deg), graded_piece(cz2, deg)
        upper = graded_piece(cz, Bidegree(m + 1))
        mu_matrix, bt_matrix = map_matrix(mu, deg), map_matrix(beta_tilde, deg)

        rank_mu = mu_matrix.rank_mod2()
        if rank_mu != source.dim:
            kernel = mu_matrix.kernel_mod2()
            findings.append(
                Finding.at(
                    deg,
                    f"mu_classical injective on ({source.group})⊗Z/2",
                    f"rank {rank_mu} of {source.dim}",
                    _witness(cz, source.basis, kernel[0]),
                )
            )

        escaped = [
            monomial_text(cz2, target.basis[j])
            for j, column in enumerate(bt_matrix.columns)
            if any(column[i] for i in upper.free_indices)
        ]
        if escaped:
            findings.append(
                Finding.at(deg, "beta_tilde_classical lands in 2-torsion", "free component", sorted(escaped))
            )

        torsion_rows = bt_matrix.f2()[list(upper.torsion_indices), :]
        rank_bt = f2_rank(torsion_rows, target.dim)
        composite = (torsion_rows.astype(int) @ mu_matrix.f2().astype(int)) % 2
        if composite.any() or rank_mu != target.dim - rank_bt:
            findings.append(
                Finding.at(
                    deg,
                    f"im mu_classical = ker beta_tilde_classical (dim {target.dim - rank_bt})",
                    f"dim im {rank_mu}, composite {'nonzero' if composite.any() else 'zero'}",
                    [monomial_text(cz2, b) for b in target.basis],
                )
            )

        two_torsion = upper.group.torsion_count
        if rank_bt != two_torsion:
            findings.append(
                Finding.at(
                    upper.bidegree,
                    f"beta_tilde_classical onto (Z/2)^{two_torsion}",
                    f"rank {rank_bt}",
                    sorted(monomial_text(cz, upper.basis[i]) for i in upper.torsion_indices),
                )
            )
    return CheckReport.build("uct_classical", box or Box(p_max=0, q_max=0, m_max=m_max), findings)


def check_reduce_classical(catalog: Catalog, m_max: int, box: Box | None = None) -> CheckReport:
    """reduce_classical identifies H(Z)⊗Z/2 with the ring Z/2[p1, √p2, β̃w2] degree-wise."""
    cz, czm = catalog.ring(CLASSICAL_Z), catalog.ring(CLASSICAL_Z_MOD2)
    reduce = catalog.map("reduce_classical")
    findings = []
    for m in range(m_max + 1):
        deg = Bidegree(m)
        source, target = graded_piece(cz, deg), graded_piece(czm, deg)
        rank = map_matrix(reduce, deg).rank_mod2()
        if not source.dim == target.dim == rank:
            findings.append(
                Finding.at(
                    deg,
                    f"isomorphism onto {target.group}",
                    f"({source.group})⊗Z/2 of rank {rank}",
                    [monomial_text(czm, b) for b in target.basis],
                )
            )
    return CheckReport.build("reduce_classical", box or Box(p_max=0, q_max=0, m_max=m_max), findings)


def closure_relations(catalog: Catalog, deg: Bidegree) -> list[Element]:
    """Torsion combinations of the integral piece that reduce to zero mod 2."""
    mz = catalog.ring(MOTIVIC_Z)
    piece = graded_piece(mz, deg)
    torsion = list(piece.torsion_indices)
    if not torsion:
        return []
    reduced = map_matrix(catalog.map("mu"), deg).f2()[:, torsion]
    kernel = f2_row_reduce(reduced, len(torsion)).kernel
    relations = []
    for vector in kernel:
        coords = [0] * piece.dim
        for t, bit in zip(torsion, vector):
            coords[t] = int(bit)
        relations.append(piece.element(coords))
    return relations


def closed_piece(catalog: Catalog, deg: Bidegree) -> GradedPiece:
    """The integral piece with torsion classes identified when their reductions agree."""
    mz = catalog.ring(MOTIVIC_Z)

    def build() -> GradedPiece:
        extra = closure_relations(catalog, deg)
        if not extra:
            return graded_piece(mz, deg)
        logger.debug(f"{mz.name} {deg}: closing under {len(extra)} identifications")
        return build_piece(mz, deg, extra)

    return catalog.map("mu").memo(("closed", deg), build)


def _reduction_rows(catalog: Catalog, piece: GradedPiece) -> np.ndarray:
    """Rows are mod 2 coordinates of μ of each basis monomial of the piece."""
    mz2 = catalog.ring(MOTIVIC_Z2)
    target = graded_piece(mz2, piece.bidegree)
    mu = catalog.map("mu")
    rows = [target.mod2_coordinates(apply(mu, piece.basis_element(i))) for i in range(piece.dim)]
    if not rows:
        return np.zeros((0, target.dim), dtype=np.uint8)
    return np.array(rows, dtype=np.uint8)


def unreached_dimension(catalog: Catalog, deg: Bidegree) -> int:
    """dim(W + im μ) - dim(im μ), W spanned by τ^e·w2^a·w4^c with a even."""
    mz2 = catalog.ring(MOTIVIC_Z2)
    target = graded_piece(mz2, deg)
    if not target.dim:
        return 0
    image = _reduction_rows(catalog, graded_piece(catalog.ring(MOTIVIC_Z), deg))
    unit = np.eye(target.dim, dtype=np.uint8)
    w_rows = [
        unit[i]
        for i, m in enumerate(target.basis)
        if m.exponent("y02") == 0 and m.exponent("w3") == 0 and m.exponent("w2") % 2 == 0
    ]
    if not w_rows:
        return 0
    combined = np.vstack([image, np.array(w_rows, dtype=np.uint8)])
    return f2_rank(combined, target.dim) - f2_rank(image, target.dim)


def _dimension_witness(catalog: Catalog, closed: GradedPiece, upper: GradedPiece, target: GradedPiece) -> list[str]:
    """Basis of the integral piece, else its torsion one degree up, else the Z/2 piece."""
    mz = catalog.ring(MOTIVIC_Z)
    if closed.dim:
        return sorted(monomial_text(mz, b) for b in closed.basis)
    if upper.torsion_indices:
        return sorted(monomial_text(mz, upper.basis[i]) for i in upper.torsion_indices)
    return sorted(monomial_text(catalog.ring(MOTIVIC_Z2), b) for b in target.basis)


def check_uct_motivic(catalog: Catalog, p_max: int, q_max: int, box: Box | None = None) -> CheckReport:
    mz, mz2 = catalog.ring(MOTIVIC_Z), catalog.ring(MOTIVIC_Z2)
    findings = []
    for p in range(p_max + 1):
        for q in range(q_max + 1):
            deg = Bidegree(p, q)
            target = graded_piece(mz2, deg)
            closed = closed_piece(catalog, deg)
            upper = closed_piece(catalog, Bidegree(p + 1, q))
            unreached = unreached_dimension(catalog, deg)
            upper_two_torsion = upper.group.mod2_dimension - upper.group.rank
            expected = closed.group.mod2_dimension + upper_two_torsion
            if target.dim - unreached != expected:
                findings.append(
                    Finding.at(
                        deg,
                        f"dim {expected} = ({closed.group}) + 2-torsion of ({upper.group})",
                        f"dim {target.dim} with {unreached} unreached",
                        _dimension_witness(catalog, closed, upper, target),
                    )
                )
            rows = _reduction_rows(catalog, closed)
            rank = f2_rank(rows, rows.shape[1])
            if rank != closed.dim:
                kernel = f2_row_reduce(rows.T, closed.dim).kernel
                findings.append(
                    Finding.at(
                        deg,
                        f"mu injective on ({closed.group})⊗Z/2",
                        f"rank {rank} of {closed.dim}",
                        _witness(mz, closed.basis, kernel[0]),
                    )
                )
    return CheckReport.build(
        "uct_motivic", box or Box(p_max=p_max, q_max=q_max, m_max=0), findings
    )


def run_uct_classical(ctx: CheckContext) -> CheckReport:
    return check_uct_classical(ctx.catalog, ctx.box.m_max, ctx.box)


def run_reduce_classical(ctx: CheckContext) -> CheckReport:
    return check_reduce_classical(ctx.catalog, ctx.box.m_max, ctx.box)


def run_uct_motivic(ctx: CheckContext) -> CheckReport:
    return check_uct_motivic(ctx.catalog, ctx.box.p_max, ctx.box.q_max, ctx.box)
