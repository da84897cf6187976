"""Lifts of classical classes to integral motivic cohomology, and their obstructions."""

import itertools
import logging
from dataclasses import dataclass

from ..algebra import Bidegree, Element
from ..catalog import CLASSICAL_Z, MOTIVIC_Z, MOTIVIC_Z2, Catalog
from ..laurent import NotInRingError
from ..linalg import integer_row_echelon
from ..maps import apply
from ..models import Box, CheckReport, Finding
from ..pieces import graded_piece, normal_form
from ..render import element_text, monomial_text
from .context import CheckContext

logger = logging.getLogger(__name__)


class ExhaustionCapError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyClassification:
    """Which of the nine lift families λ·p1^k·√p2^j·(β̃w2)^l belongs to."""

    coefficient: int
    k: int
    j: int
    l: int
    family: int
    lift: Element | None
    weight_parameter: int | None = None

    @property
    def liftable(self) -> bool:
        return self.lift is not None


def classical_monomial(catalog: Catalog, coefficient: int, k: int, j: int, l: int) -> Element:
    cz = catalog.ring(CLASSICAL_Z)
    x = cz.gen("p1", exp=k) * cz.gen("sqrt_p2", exp=j) * cz.gen("bw2", exp=l)
    return normal_form(cz, x.scale(coefficient))


def classify_family(catalog: Catalog, coefficient: int, k: int, j: int, l: int) -> FamilyClassification:
    """Family and canonical lift, with every A and B taken at parameter 0."""
    if min(k, j, l) < 0:
        raise ValueError(f"Exponents must be non-negative, got k={k}, j={j}, l={l}")
    if coefficient == 0:
        raise ValueError("The zero class has no family")
    mz = catalog.ring(MOTIVIC_Z)
    d2, d3, d4, y2 = (mz.gen(g) for g in ("d2", "d3", "d4", "y2"))
    a, b = mz.gen("A", 0), mz.gen("B", 0)

    if l > 0:
        if coefficient % 2 == 0:
            raise ValueError(f"{coefficient}·(β̃w2)^{l} is zero: torsion classes have order 2")
        base = d2**k
        match (j % 2, l % 2, j == 0):
            case (0, 1, True):
                family, lift = 1, base * d3 ** ((l - 1) // 2) * a
            case (0, 0, True):
                family, lift = 2, base * d3 ** (l // 2)
            case (1, 1, _):
                family, lift = 3, base * d3 ** ((l - 1) // 2) * d4 ** ((j - 1) // 2) * b
            case (1, 0, _):
                family, lift = 4, base * d3 ** ((l - 2) // 2) * d4 ** ((j - 1) // 2) * a * b
            case (0, 1, False):
                family, lift = 5, base * d3 ** ((l - 1) // 2) * d4 ** (j // 2) * a
            case _:
                family, lift = 6, base * d3 ** (l // 2) * d4 ** (j // 2)
        return FamilyClassification(1, k, j, l, family, normal_form(mz, lift), weight_parameter=0)

    minus_d2 = (-d2) ** k
    if j % 2 == 0:
        lift = minus_d2 * d4 ** (j // 2) * coefficient
        return FamilyClassification(coefficient, k, j, l, 7, normal_form(mz, lift))
    if coefficient % 2 == 0:
        lift = y2 * minus_d2 * d4 ** ((j - 1) // 2) * (coefficient // 2)
        return FamilyClassification(coefficient, k, j, l, 8, normal_form(mz, lift))
    return FamilyClassification(coefficient, k, j, l, 9, None)


def _classical_exponents(p: int):
    """(k, j, l) with 4k + 4j + 3l = p."""
    for l in range(p // 3 + 1):
        rest = p - 3 * l
        if rest % 4:
            continue
        for k in range(rest // 4 + 1):
            yield k, rest // 4 - k, l


def check_lift_roundtrip(catalog: Catalog, deg_max: int, box: Box | None = None) -> CheckReport:
    """t(lift) recovers the class and μ(lift) is a mod 2 motivic class, families 1 to 8."""
    cz, mz, mz2 = catalog.ring(CLASSICAL_Z), catalog.ring(MOTIVIC_Z), catalog.ring(MOTIVIC_Z2)
    t, mu = catalog.map("t"), catalog.map("mu")
    findings = []
    for p in range(deg_max + 1):
        for k, j, l in _classical_exponents(p):
            coefficients = (1, 2) if j % 2 and not l else (1,)
            for coefficient in coefficients:
                target = classical_monomial(catalog, coefficient, k, j, l)
                found = classify_family(catalog, coefficient, k, j, l)
                if found.lift is None:
                    continue
                witness = [element_text(cz, target), element_text(mz, found.lift)]
                realized = apply(t, found.lift)
                if realized != target:
                    findings.append(
                        Finding.at(
                            Bidegree(p),
                            f"t(lift) = {element_text(cz, target)}",
                            f"{element_text(cz, realized)} (family {found.family})",
                            witness,
                        )
                    )
                try:
                    apply(mu, found.lift)
                except NotInRingError as e:
                    findings.append(Finding.at(Bidegree(p), f"μ(lift) in {mz2.name}", str(e), witness))
    return CheckReport.build("lift_roundtrip", box or Box(p_max=0, q_max=0, m_max=deg_max), findings)


def _odd_multiple_reached(target: tuple[int, ...], generators: list[tuple[int, ...]], torsion: tuple[int, ...]) -> bool:
    """Does d·target lie in the span of the generators (and 2·e_t, t torsion) for some odd d?"""
    n = len(target)
    rows = [dict(enumerate(g)) for g in generators]
    rows += [{t: 2} for t in torsion]
    # (Σ a_i g_i - d·target, d): vectors vanishing on the first n columns carry d in the last
    rows.append({**{i: -v for i, v in enumerate(target)}, n: 1})
    echelon = integer_row_echelon(rows, list(range(n + 1)))
    last = [r.entries[n] for r in echelon if r.pivot == n]
    return bool(last) and last[0] % 2 == 1


def check_no_lift_family9(
    catalog: Catalog, deg_max: int, q_max: int, box: Box | None = None
) -> CheckReport:
    """No odd multiple of λ·p1^k·√p2^j with j odd is t of a class of weight at most q_max."""
    cz, mz = catalog.ring(CLASSICAL_Z), catalog.ring(MOTIVIC_Z)
    t = catalog.map("t")
    findings = []
    for p in range(0, deg_max + 1, 4):
        piece = graded_piece(cz, Bidegree(p))
        for k, j, l in _classical_exponents(p):
            if l or j % 2 == 0:
                continue
            target = classical_monomial(catalog, 1, k, j, 0)
            coords = piece.coordinates(target)
            for q in range(q_max + 1):
                source = graded_piece(mz, Bidegree(p, q))
                images = [piece.coordinates(apply(t, source.basis_element(i))) for i in range(source.dim)]
                if _odd_multiple_reached(coords, images, piece.torsion_indices):
                    findings.append(
                        Finding.at(
                            Bidegree(p, q),
                            f"no odd multiple of {element_text(cz, target)} in t(H^{{{p},{q}}})",
                            "odd multiple reached",
                            [monomial_text(mz, b) for b in source.basis],
                        )
                    )
    return CheckReport.build(
        "no_lift_family9",
        box or Box(p_max=deg_max, q_max=q_max, m_max=0),
        findings,
        notes=[f"finite certificate: weights q ≤ {q_max}, degrees p ≤ {deg_max}"],
    )


def check_no_square_root(
    catalog: Catalog, target: Element, search_deg: Bidegree, cap: int = 20, box: Box | None = None
) -> CheckReport:
    """Square every element of the mod 2 motivic piece at search_deg and look for target."""
    mz2 = catalog.ring(MOTIVIC_Z2)
    piece = graded_piece(mz2, search_deg)
    if piece.dim > cap:
        raise ExhaustionCapError(
            f"{mz2.name} {search_deg} has dimension {piece.dim}, above the cap {cap}"
        )
    goal = normal_form(mz2, target)
    findings = []
    for coords in itertools.product((0, 1), repeat=piece.dim):
        x = piece.element(coords)
        if normal_form(mz2, x * x) == goal:
            findings.append(
                Finding.at(
                    search_deg,
                    f"no square root of {element_text(mz2, goal)}",
                    f"({element_text(mz2, x)})^2",
                    sorted(monomial_text(mz2, m) for m in x.monomials) or ["0"],
                )
            )
            break
    logger.info(f"squared {2 ** piece.dim} elements of {mz2.name} {search_deg}")
    return CheckReport.build(
        "no_square_root", box or Box(p_max=search_deg.p, q_max=search_deg.q or 0, m_max=0), findings
    )


def square_root_instances(catalog: Catalog) -> list[tuple[Element, Bidegree]]:
    mz, mz2 = catalog.ring(MOTIVIC_Z), catalog.ring(MOTIVIC_Z2)
    mu = catalog.map("mu")
    mu_d2, mu_d4 = apply(mu, mz.gen("d2")), apply(mu, mz.gen("d4"))
    return [
        (mu_d4, Bidegree(4, 2)),
        (normal_form(mz2, mu_d2 * mu_d2 * mu_d4), Bidegree(8, 4)),
    ]


def run_no_square_root(ctx: CheckContext) -> CheckReport:
    findings: list[Finding] = []
    notes = []
    for target, deg in square_root_instances(ctx.catalog):
        report = check_no_square_root(ctx.catalog, target, deg, ctx.square_root_cap, ctx.box)
        findings += report.findings
        notes.append(f"{element_text(ctx.catalog.ring(MOTIVIC_Z2), target)} searched in {deg}")
    return CheckReport.build("no_square_root", ctx.box, findings, notes=notes)


def run_lift_roundtrip(ctx: CheckContext) -> CheckReport:
    return check_lift_roundtrip(ctx.catalog, ctx.box.m_max, ctx.box)


def run_no_lift_family9(ctx: CheckContext) -> CheckReport:
    return check_no_lift_family9(ctx.catalog, min(ctx.box.m_max, 16), ctx.box.q_max, ctx.box)
