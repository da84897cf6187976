"""Homomorphisms between the rings and their matrices on graded pieces."""

import logging
from collections.abc import Callable, Hashable
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_serializer

from .algebra import Bidegree, Element, Monomial, Symbol
from .linalg import f2_rank, f2_row_reduce
from .pieces import InternalConsistencyError, graded_piece, normal_form
from .presentations import Factor, PresentationError, RingPresentation, Term

logger = logging.getLogger(__name__)


class DefinitionError(ValueError):
    pass


class MapKind(str, Enum):
    RING_MAP = "ring-map"
    DERIVATION = "derivation"
    MONOMIAL_FORMULA = "monomial-formula"


class GeneratorImage(BaseModel):
    model_config = ConfigDict(frozen=True)

    generator: str
    terms: tuple[Term, ...] = ()


class Homomorphism(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    source: RingPresentation
    target: RingPresentation
    kind: MapKind
    shift: tuple[int, int | None] = (0, 0)
    images: tuple[GeneratorImage, ...] = ()
    formula: str | None = None
    description: str = ""

    _memo: dict[Hashable, Any] = PrivateAttr(default_factory=dict)

    @field_serializer("source", "target")
    def _ring_name(self, ring: RingPresentation) -> str:
        return ring.name

    def memo(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def target_degree(self, deg: Bidegree) -> Bidegree:
        return deg + Bidegree(*self.shift)

    def image_of(self, symbol: Symbol) -> Element:
        def compute() -> Element:
            for image in self.images:
                if image.generator == symbol.name:
                    env = {} if symbol.k is None else {"k": symbol.k}
                    built = self.target.build_element(image.terms, env)
                    if built is None:
                        raise DefinitionError(f"{self.name}({symbol}) uses a negative family parameter")
                    return built
            raise DefinitionError(f"{self.name} has no image for generator {symbol}")

        return self.memo(("image", symbol), compute)


MonomialFormula = Callable[[Homomorphism, Monomial], Element]
FORMULAS: dict[str, MonomialFormula] = {}


def monomial_formula(name: str):
    def register(fn: MonomialFormula) -> MonomialFormula:
        FORMULAS[name] = fn
        return fn

    return register


def beta_tilde_classical(m: Monomial) -> Element:
    """Integral Bockstein of a Stiefel-Whitney monomial, in H*(BSO4; Z)."""
    unknown = {s.name for s in m.symbols} - {"w2", "w3", "w4"}
    if unknown:
        raise DefinitionError(f"{m} is not a monomial in w2, w3, w4")
    a, b, c = m.exponent("w2"), m.exponent("w3"), m.exponent("w4")
    if a % 2 == 0:
        return Element.zero()
    image = Monomial.of(
        [(Symbol("p1"), (a - 1) // 2), (Symbol("sqrt_p2"), c), (Symbol("bw2"), b + 1)]
    )
    return Element.from_monomial(image)


@monomial_formula("beta_tilde_classical")
def _beta_tilde_formula(hom: Homomorphism, m: Monomial) -> Element:
    return beta_tilde_classical(m).reduced(hom.target.modulus)


def _ring_map_monomial(hom: Homomorphism, m: Monomial) -> Element:
    result = hom.target.one()
    for symbol, exp in m.powers:
        image = hom.image_of(symbol)
        if exp < 0:
            if len(image.terms) != 1 or abs(image.terms[0][1]) != 1:
                raise DefinitionError(f"{hom.name}({symbol}) is not invertible")
            mono, coeff = image.terms[0]
            image, exp = Element.from_monomial(mono.inverse(), coeff, image.modulus), -exp
        result = result * image**exp
    return result


def _derivation_monomial(hom: Homomorphism, m: Monomial) -> Element:
    result = hom.target.zero()
    for symbol, exp in m.powers:
        image = hom.image_of(symbol)
        if image.is_zero():
            continue
        rest = m * Monomial.of([(symbol, -1)])
        result = result + Element.from_monomial(rest, exp, hom.target.modulus) * image
    return result


def _apply_monomial(hom: Homomorphism, m: Monomial) -> Element:
    def compute() -> Element:
        match hom.kind:
            case MapKind.RING_MAP:
                return _ring_map_monomial(hom, m)
            case MapKind.DERIVATION:
                return _derivation_monomial(hom, m)
            case MapKind.MONOMIAL_FORMULA:
                if hom.formula not in FORMULAS:
                    raise DefinitionError(f"{hom.name} names unknown formula {hom.formula!r}")
                return FORMULAS[hom.formula](hom, m)

    return hom.memo(("monomial", m), compute)


def apply(hom: Homomorphism, x: Element) -> Element:
    """Image of a homogeneous element, in the target's normal form."""
    if x.is_zero():
        return hom.target.zero()
    try:
        hom.source.element_degree(x)
    except PresentationError as e:
        raise DefinitionError(f"{hom.name} applied to a non-homogeneous element") from e
    image = hom.target.zero()
    for m, coeff in x.terms:
        image = image + _apply_monomial(hom, m).scale(coeff)
    return normal_form(hom.target, image)


def bockstein_map(ring: RingPresentation) -> Homomorphism:
    """β = Sq1 as a derivation with β(w2) = w3 and every other letter sent to 0."""

    def build() -> Homomorphism:
        if ring.modulus != 2:
            raise DefinitionError(f"The Bockstein is defined on Z/2 rings, not {ring.name}")
        ring.generator("w2")
        ring.generator("w3")
        images = tuple(
            GeneratorImage(
                generator=g.name,
                terms=(Term(factors=(Factor(generator="w3"),)),) if g.name == "w2" else (),
            )
            for g in ring.generators
            if not g.expansion
        )
        return Homomorphism(
            name="beta_motivic" if ring.bigraded else "beta",
            source=ring,
            target=ring,
            kind=MapKind.DERIVATION,
            shift=(1, 0 if ring.bigraded else None),
            images=images,
            description="Bockstein: derivation with w2 -> w3",
        )

    return ring.memo("bockstein", build)


def bockstein(ring: RingPresentation, x: Element) -> Element:
    return apply(bockstein_map(ring), x)


@dataclass(frozen=True)
class MapMatrix:
    name: str
    source_degree: Bidegree
    target_degree: Bidegree
    modulus: int
    source_basis: tuple[Monomial, ...]
    target_basis: tuple[Monomial, ...]
    columns: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_basis), len(self.source_basis)

    def rows(self) -> list[list[int]]:
        return [[col[i] for col in self.columns] for i in range(len(self.target_basis))]

    def f2(self) -> np.ndarray:
        rows, cols = self.shape
        if rows == 0 or cols == 0:
            return np.zeros((rows, cols), dtype=np.uint8)
        return (np.array(self.rows(), dtype=object) % 2).astype(np.uint8)

    def rank_mod2(self) -> int:
        return f2_rank(self.f2(), len(self.source_basis))

    def kernel_mod2(self) -> np.ndarray:
        return f2_row_reduce(self.f2(), len(self.source_basis)).kernel


def map_matrix(hom: Homomorphism, src_deg: Bidegree) -> MapMatrix:
    """Columns are the images of the source basis in the target basis."""

    def compute() -> MapMatrix:
        source = graded_piece(hom.source, src_deg)
        tgt_deg = hom.target_degree(src_deg)
        target = graded_piece(hom.target, tgt_deg)
        columns = []
        for i, b in enumerate(source.basis):
            image = apply(hom, source.basis_element(i))
            if not image.is_zero() and hom.target.element_degree(image) != tgt_deg:
                logger.error(f"{hom.name}({b}) left bidegree {tgt_deg}")
                raise InternalConsistencyError(f"{hom.name}({b}) = {image} is not in bidegree {tgt_deg}")
            columns.append(target.coordinates(image))
        return MapMatrix(
            name=hom.name,
            source_degree=src_deg,
            target_degree=tgt_deg,
            modulus=target.modulus,
            source_basis=source.basis,
            target_basis=target.basis,
            columns=tuple(columns),
        )

    return hom.memo(("matrix", src_deg), compute)
