import logging

from ..algebra import Bidegree
from ..catalog import CHOW, CLASSICAL_Z, CLASSICAL_Z2, MOTIVIC_Z, MOTIVIC_Z2, Catalog
from ..laurent import NotInRingError
from ..maps import apply, bockstein
from ..models import Box, CheckReport, Finding
from ..pieces import STIEFEL_WHITNEY_DEGREES, graded_piece, hilbert_series
from ..render import element_text, monomial_text
from .context import CheckContext

logger = logging.getLogger(__name__)

TORSION_DEGREES = frozenset({3, 6, 7})


def has_two_torsion(n: int) -> bool:
    """2-torsion of H^n(BSO4; Z) is nonzero exactly for n in {3, 6, 7} or n >= 9."""
    return n in TORSION_DEGREES or n >= 9


def _ring_degrees(catalog: Catalog, name: str, box: Box) -> list[Bidegree]:
    if catalog.ring(name).bigraded:
        return [Bidegree(p, q) for p in range(box.p_max + 1) for q in range(box.q_max + 1)]
    return [Bidegree(m) for m in range(box.m_max + 1)]


def check_torsion_two(catalog: Catalog, rings: tuple[str, ...], box: Box) -> CheckReport:
    findings = []
    for name in rings:
        ring = catalog.ring(name)
        for deg in _ring_degrees(catalog, name, box):
            piece = graded_piece(ring, deg)
            odd = [order for order in piece.group.torsion if order != 2]
            if odd:
                findings.append(
                    Finding.at(
                        deg,
                        "all torsion of order 2",
                        f"{name}: {piece.group}",
                        [monomial_text(ring, piece.basis[i]) for i in piece.torsion_indices],
                    )
                )
    return CheckReport.build("torsion_two", box, findings)


def check_torsion_pattern(catalog: Catalog, n_max: int, box: Box | None = None) -> CheckReport:
    cz = catalog.ring(CLASSICAL_Z)
    findings = []
    for n in range(n_max + 1):
        piece = graded_piece(cz, Bidegree(n))
        nonzero = piece.group.torsion_count > 0
        if nonzero != has_two_torsion(n):
            findings.append(
                Finding.at(
                    Bidegree(n),
                    "nonzero 2-torsion" if has_two_torsion(n) else "no 2-torsion",
                    str(piece.group),
                    [monomial_text(cz, piece.basis[i]) for i in piece.torsion_indices],
                )
            )
    return CheckReport.build("torsion_pattern", box or Box(p_max=0, q_max=0, m_max=n_max), findings)


def check_hilbert_series(catalog: Catalog, n_max: int, box: Box | None = None) -> CheckReport:
    """Dimensions of Z/2[w2, w3, w4] against 1/((1-t^2)(1-t^3)(1-t^4))."""
    cz2 = catalog.ring(CLASSICAL_Z2)
    expected = hilbert_series(STIEFEL_WHITNEY_DEGREES, n_max)
    findings = []
    for n, coefficient in enumerate(expected):
        piece = graded_piece(cz2, Bidegree(n))
        if piece.dim != coefficient:
            findings.append(
                Finding.at(
                    Bidegree(n),
                    f"dim {coefficient}",
                    f"dim {piece.dim}",
                    [monomial_text(cz2, b) for b in piece.basis],
                )
            )
    return CheckReport.build("hilbert_series", box or Box(p_max=0, q_max=0, m_max=n_max), findings)


def check_chow_slice(catalog: Catalog, p_max: int, q_max: int, box: Box | None = None) -> CheckReport:
    """H^{2n,n}(BSO4; Z) agrees with CH^n(BSO4), group and basis."""
    chow, mz = catalog.ring(CHOW), catalog.ring(MOTIVIC_Z)
    findings = []
    for n in range(min(p_max // 2, q_max) + 1):
        deg = Bidegree(2 * n, n)
        motivic, cycles = graded_piece(mz, deg), graded_piece(chow, deg)
        motivic_basis = [monomial_text(mz, b) for b in motivic.basis]
        chow_basis = [monomial_text(chow, b) for b in cycles.basis]
        if motivic.group != cycles.group or motivic_basis != chow_basis:
            findings.append(
                Finding.at(
                    deg,
                    f"{motivic.group}: {{{', '.join(motivic_basis)}}}",
                    f"{cycles.group}: {{{', '.join(chow_basis)}}}",
                    sorted(set(motivic_basis).symmetric_difference(chow_basis)) or motivic_basis,
                )
            )
    return CheckReport.build("chow_slice", box or Box(p_max=p_max, q_max=q_max, m_max=0), findings)


def _bockstein_findings(ring_name: str, catalog: Catalog, degrees: list[Bidegree]) -> list[Finding]:
    ring = catalog.ring(ring_name)
    findings = []
    for deg in degrees:
        piece = graded_piece(ring, deg)
        for i, b in enumerate(piece.basis):
            witness = [monomial_text(ring, b)]
            try:
                once = bockstein(ring, piece.basis_element(i))
                twice = bockstein(ring, once)
            except NotInRingError as e:
                findings.append(Finding.at(deg, f"β preserves {ring.name}", str(e), witness))
                continue
            if not twice.is_zero():
                findings.append(Finding.at(deg, "β∘β = 0", element_text(ring, twice), witness))
    return findings


def check_bockstein(catalog: Catalog, box: Box) -> CheckReport:
    """β∘β = 0, β = μ_C∘β̃_C, and β of the defining classes of A(k), B(k) is μ of them."""
    cz2, mz, mz2 = catalog.ring(CLASSICAL_Z2), catalog.ring(MOTIVIC_Z), catalog.ring(MOTIVIC_Z2)
    mu_c, beta_tilde, mu = (catalog.map(n) for n in ("mu_classical", "beta_tilde_classical", "mu"))
    classical = [Bidegree(m) for m in range(box.m_max + 1)]
    motivic = [Bidegree(p, q) for p in range(box.p_max + 1) for q in range(box.q_max + 1)]
    findings = _bockstein_findings(CLASSICAL_Z2, catalog, classical)
    findings += _bockstein_findings(MOTIVIC_Z2, catalog, motivic)

    for deg in classical:
        piece = graded_piece(cz2, deg)
        for i, b in enumerate(piece.basis):
            x = piece.basis_element(i)
            direct, composite = bockstein(cz2, x), apply(mu_c, apply(beta_tilde, x))
            if direct != composite:
                findings.append(
                    Finding.at(
                        deg,
                        f"β(x) = {element_text(cz2, direct)}",
                        f"μ_C(β̃_C(x)) = {element_text(cz2, composite)}",
                        [monomial_text(cz2, b)],
                    )
                )

    w2, w4 = mz2.gen("w2"), mz2.gen("w4")
    for k in range(box.q_max + 1):
        defining = [("A", mz2.gen("tau", exp=k) * w2), ("B", mz2.gen("tau", exp=k - 1) * w2 * w4)]
        for family, x in defining:
            generator = mz.gen(family, k)
            expected = apply(mu, generator)
            computed = bockstein(mz2, x)
            if expected != computed:
                findings.append(
                    Finding.at(
                        mz.degree(generator.monomials[0]),
                        f"μ({family}({k})) = {element_text(mz2, expected)}",
                        f"β = {element_text(mz2, computed)}",
                        [element_text(mz2, x)],
                    )
                )
    return CheckReport.build("bockstein", box, findings)


def run_torsion_two(ctx: CheckContext) -> CheckReport:
    return check_torsion_two(ctx.catalog, ctx.rings, ctx.box)


def run_torsion_pattern(ctx: CheckContext) -> CheckReport:
    return check_torsion_pattern(ctx.catalog, max(ctx.box.m_max + 1, 40), ctx.box)


def run_hilbert_series(ctx: CheckContext) -> CheckReport:
    return check_hilbert_series(ctx.catalog, max(ctx.box.m_max, 40), ctx.box)


def run_chow_slice(ctx: CheckContext) -> CheckReport:
    return check_chow_slice(ctx.catalog, ctx.box.p_max, ctx.box.q_max, ctx.box)


def run_bockstein(ctx: CheckContext) -> CheckReport:
    return check_bockstein(ctx.catalog, ctx.box)
