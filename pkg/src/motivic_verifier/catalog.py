"""The bundled rings of BSO(4) and the maps between them."""

import json
import logging
from collections.abc import Iterable, Mapping
from functools import cache
from pathlib import Path

from pydantic import BaseModel, ConfigDict

from .maps import FORMULAS, GeneratorImage, Homomorphism, MapKind, bockstein_map
from .presentations import (
    Coefficients,
    Factor,
    GeneratorSpec,
    Grading,
    RelationTemplate,
    RingModel,
    RingPresentation,
    Term,
)

logger = logging.getLogger(__name__)

CLASSICAL_Z2 = "classical-z2"
CLASSICAL_Z = "classical-z"
CLASSICAL_Z_MOD2 = "classical-z-mod2"
CHOW = "chow"
MOTIVIC_Z2 = "motivic-z2"
MOTIVIC_Z = "motivic-z"


def _f(generator: str, param: str | None = None, exp: int | str = 1) -> Factor:
    return Factor(generator=generator, param=param, exp=str(exp))


def _t(coeff: int, *factors: Factor) -> Term:
    return Term(coeff=coeff, factors=factors)


def _rel(name: str, *terms: Term, params: tuple[str, ...] = (), constraints=()) -> RelationTemplate:
    return RelationTemplate(name=name, terms=terms, params=params, constraints=constraints)


def _gen(name: str, p: int, q: int | None = None, label: str | None = None, **kwargs) -> GeneratorSpec:
    return GeneratorSpec(name=name, degree=(p, q), label=label, **kwargs)


def _identification(name: str, first: str, second: str) -> RelationTemplate:
    """first(k1)second(k2) = first(k3)second(k4) whenever k1 + k2 = k3 + k4."""
    return _rel(
        name,
        _t(1, _f(first, "k1"), _f(second, "k2")),
        _t(-1, _f(first, "k3"), _f(second, "k4")),
        params=("k1", "k2", "k3", "k4"),
        constraints=(("k1+k2", "k3+k4"),),
    )


def _classical_z2() -> RingPresentation:
    return RingPresentation(
        name=CLASSICAL_Z2,
        coefficients=Coefficients.Z2,
        grading=Grading.SINGLE,
        generators=(_gen("w2", 2), _gen("w3", 3), _gen("w4", 4)),
        description="H*(BSO4; Z/2) = Z/2[w2, w3, w4]",
    )


_CLASSICAL_Z_GENERATORS = (
    _gen("p1", 4),
    _gen("sqrt_p2", 4, label="√p2"),
    _gen("bw2", 3, label="β̃w2"),
)


def _classical_z() -> RingPresentation:
    return RingPresentation(
        name=CLASSICAL_Z,
        coefficients=Coefficients.Z,
        grading=Grading.SINGLE,
        generators=_CLASSICAL_Z_GENERATORS,
        relations=(_rel("2bw2", _t(2, _f("bw2"))),),
        description="H*(BSO4; Z) = Z[p1, √p2, β̃w2]/(2β̃w2)",
    )


def _classical_z_mod2() -> RingPresentation:
    return RingPresentation(
        name=CLASSICAL_Z_MOD2,
        coefficients=Coefficients.Z2,
        grading=Grading.SINGLE,
        generators=_CLASSICAL_Z_GENERATORS,
        description="H*(BSO4; Z) tensored with Z/2 = Z/2[p1, √p2, β̃w2]",
    )


_CHOW_GENERATORS = (
    _gen("d2", 4, 2),
    _gen("d3", 6, 3),
    _gen("d4", 8, 4),
    _gen("y2", 4, 2),
)

_CHOW_RELATIONS = (
    _rel("2d3", _t(2, _f("d3"))),
    _rel("y2d3", _t(1, _f("y2"), _f("d3"))),
    _rel("euler", _t(1, _f("y2", exp=2)), _t(-4, _f("d4"))),
)


def _chow() -> RingPresentation:
    return RingPresentation(
        name=CHOW,
        coefficients=Coefficients.Z,
        grading=Grading.BIGRADED,
        generators=_CHOW_GENERATORS,
        relations=_CHOW_RELATIONS,
        elimination_order=("y2",),
        description="CH*(BSO4) = Z[d2, d3, d4, y2]/(2d3, y2d3, y2^2 - 4d4), codim n in bidegree (2n, n)",
    )


_LAURENT_COMPOSITES = {
    "tau^-2w2^2": (("tau", -2), ("w2", 2)),
    "tau^-1w3^2": (("tau", -1), ("w3", 2)),
    "tau^-2w4^2": (("tau", -2), ("w4", 2)),
    "tau^-1w2w3": (("tau", -1), ("w2", 1), ("w3", 1)),
    "tau^-1w2w4": (("tau", -1), ("w2", 1), ("w4", 1)),
    "tau^-1w3w4": (("tau", -1), ("w3", 1), ("w4", 1)),
}


def _motivic_z2() -> RingPresentation:
    base = (
        _gen("tau", 0, 1, label="τ"),
        _gen("w2", 2, 2),
        _gen("w3", 3, 2),
        _gen("w4", 4, 3),
        _gen("y02", 4, 2),
    )
    degrees = {"tau": (0, 1), "w2": (2, 2), "w3": (3, 2), "w4": (4, 3)}
    composites = []
    for name, expansion in _LAURENT_COMPOSITES.items():
        p = sum(degrees[s][0] * e for s, e in expansion)
        q = sum(degrees[s][1] * e for s, e in expansion)
        label = "·".join(
            ("τ" if s == "tau" else s) + ("" if e == 1 else f"^{e}") for s, e in expansion
        )
        composites.append(_gen(name, p, q, label=label, expansion=expansion))
    annihilators = ["tau", "y02", "w2", "w3", "w4", "tau^-1w3^2", "tau^-1w2w3", "tau^-1w2w4", "tau^-1w3w4"]
    return RingPresentation(
        name=MOTIVIC_Z2,
        coefficients=Coefficients.Z2,
        grading=Grading.BIGRADED,
        model=RingModel.LAURENT,
        generators=base + tuple(composites),
        relations=tuple(_rel(f"y02*{g}", _t(1, _f("y02"), _f(g))) for g in annihilators),
        description="H**(BSO4; Z/2) as the Laurent subring plus y02·Z/2[τ^-2w2^2, τ^-2w4^2]",
    )


def _motivic_z() -> RingPresentation:
    families = (
        _gen("A", 3, 2, step=(0, 1)),
        _gen("B", 7, 4, step=(0, 1)),
    )
    relations = (
        *_CHOW_RELATIONS,
        _rel("2A", _t(2, _f("A", "k")), params=("k",)),
        _rel("2B", _t(2, _f("B", "k")), params=("k",)),
        _rel("y2A", _t(1, _f("y2"), _f("A", "k")), params=("k",)),
        _rel("y2B", _t(1, _f("y2"), _f("B", "k")), params=("k",)),
        _identification("AA", "A", "A"),
        _identification("AB", "A", "B"),
        _identification("BB", "B", "B"),
        _rel(
            "BB-d4AA",
            _t(1, _f("B", "k1"), _f("B", "k2")),
            _t(-1, _f("d4"), _f("A", "k1"), _f("A", "k2")),
            params=("k1", "k2"),
        ),
        _rel(
            "AAA-d3A",
            _t(1, _f("A", "k1"), _f("A", "k2"), _f("A", "k3")),
            _t(-1, _f("d3"), _f("A", "k1+k2+k3+1")),
            params=("k1", "k2", "k3"),
        ),
    )
    return RingPresentation(
        name=MOTIVIC_Z,
        coefficients=Coefficients.Z,
        grading=Grading.BIGRADED,
        generators=_CHOW_GENERATORS + families,
        relations=relations,
        elimination_order=("B", "A", "y2"),
        description="H**(BSO4; Z); A(k) = β̃τ^k w2 in (3, 2+k), B(k) = β̃τ^(k-1) w2w4 in (7, 4+k)",
    )


def _image(generator: str, *terms: Term) -> GeneratorImage:
    return GeneratorImage(generator=generator, terms=terms)


def build_maps(rings: Mapping[str, RingPresentation]) -> dict[str, Homomorphism]:
    cz2, cz, czm = rings[CLASSICAL_Z2], rings[CLASSICAL_Z], rings[CLASSICAL_Z_MOD2]
    chow, mz2, mz = rings[CHOW], rings[MOTIVIC_Z2], rings[MOTIVIC_Z]
    realization_images = (
        _image("d2", _t(-1, _f("p1"))),
        _image("d3", _t(1, _f("bw2", exp=2))),
        _image("d4", _t(1, _f("sqrt_p2", exp=2))),
        _image("y2", _t(2, _f("sqrt_p2"))),
    )
    maps = [
        Homomorphism(
            name="mu_classical",
            source=cz,
            target=cz2,
            kind=MapKind.RING_MAP,
            shift=(0, None),
            images=(
                _image("p1", _t(1, _f("w2", exp=2))),
                _image("sqrt_p2", _t(1, _f("w4"))),
                _image("bw2", _t(1, _f("w3"))),
            ),
            description="reduction mod 2 on H*(BSO4; Z)",
        ),
        Homomorphism(
            name="reduce_classical",
            source=cz,
            target=czm,
            kind=MapKind.RING_MAP,
            shift=(0, None),
            images=tuple(_image(g, _t(1, _f(g))) for g in ("p1", "sqrt_p2", "bw2")),
            description="H*(BSO4; Z) -> H*(BSO4; Z) tensored with Z/2",
        ),
        Homomorphism(
            name="beta_tilde_classical",
            source=cz2,
            target=cz,
            kind=MapKind.MONOMIAL_FORMULA,
            shift=(1, None),
            formula="beta_tilde_classical",
            description="integral Bockstein H*(BSO4; Z/2) -> 2-torsion of H*+1(BSO4; Z)",
        ),
        bockstein_map(cz2),
        bockstein_map(mz2),
        Homomorphism(
            name="mu",
            source=mz,
            target=mz2,
            kind=MapKind.RING_MAP,
            shift=(0, 0),
            images=(
                _image("d2", _t(1, _f("tau^-2w2^2"))),
                _image("d3", _t(1, _f("tau^-1w3^2"))),
                _image("d4", _t(1, _f("tau^-2w4^2"))),
                _image("y2", _t(1, _f("y02"))),
                _image("A", _t(1, _f("tau", exp="k"), _f("w3"))),
                _image("B", _t(1, _f("tau", exp="k-1"), _f("w3"), _f("w4"))),
            ),
            description="reduction mod 2 on motivic cohomology",
        ),
        Homomorphism(
            name="t",
            source=mz,
            target=cz,
            kind=MapKind.RING_MAP,
            shift=(0, None),
            images=(
                *realization_images,
                _image("A", _t(1, _f("bw2"))),
                _image("B", _t(1, _f("sqrt_p2"), _f("bw2"))),
            ),
            description="integral realization",
        ),
        Homomorphism(
            name="t2",
            source=mz2,
            target=cz2,
            kind=MapKind.RING_MAP,
            shift=(0, None),
            images=(
                _image("tau", _t(1)),
                _image("w2", _t(1, _f("w2"))),
                _image("w3", _t(1, _f("w3"))),
                _image("w4", _t(1, _f("w4"))),
                _image("y02"),
            ),
            description="mod 2 realization, τ -> 1",
        ),
        Homomorphism(
            name="cl",
            source=chow,
            target=cz,
            kind=MapKind.RING_MAP,
            shift=(0, None),
            images=realization_images,
            description="cycle class map",
        ),
    ]
    return {hom.name: hom for hom in maps}


class RingCatalogDocument(BaseModel):
    model_config = ConfigDict(extra="ignore")

    rings: list[RingPresentation]


class Catalog:
    def __init__(self, rings: Iterable[RingPresentation]):
        self.rings: dict[str, RingPresentation] = {r.name: r for r in rings}
        self.maps = build_maps(self.rings)
        logger.info(f"init {self.__class__.__name__} with rings {sorted(self.rings)}")

    def ring(self, name: str) -> RingPresentation:
        try:
            return self.rings[name]
        except KeyError:
            raise ValueError(f"Unknown ring {name!r}; known: {', '.join(sorted(self.rings))}") from None

    def map(self, name: str) -> Homomorphism:
        try:
            return self.maps[name]
        except KeyError:
            raise ValueError(f"Unknown map {name!r}; known: {', '.join(sorted(self.maps))}") from None

    def with_rings(self, rings: Iterable[RingPresentation]) -> "Catalog":
        merged = dict(self.rings)
        merged.update({r.name: r for r in rings})
        return Catalog(merged.values())

    def to_json(self) -> str:
        document = {
            "rings": [r.model_dump(mode="json") for r in self.rings.values()],
            "maps": [m.model_dump(mode="json") for m in self.maps.values()],
            "formulas": sorted(FORMULAS),
        }
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


@cache
def bundled_catalog() -> Catalog:
    return Catalog(
        [_classical_z2(), _classical_z(), _classical_z_mod2(), _chow(), _motivic_z2(), _motivic_z()]
    )


def load_catalog(path: Path | str) -> Catalog:
    """Rings read from a JSON catalog replace the bundled rings of the same name."""
    text = Path(path).read_text(encoding="utf-8")
    document = RingCatalogDocument.model_validate_json(text)
    logger.info(f"loaded {len(document.rings)} rings from {path}")
    return bundled_catalog().with_rings(document.rings)


RING_NAMES = (CLASSICAL_Z2, CLASSICAL_Z, CLASSICAL_Z_MOD2, CHOW, MOTIVIC_Z2, MOTIVIC_Z)
