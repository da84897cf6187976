"""Ring presentations as data: generators, relation templates, parameters."""

import itertools
import logging
import re
from collections.abc import Callable, Hashable, Mapping
from enum import Enum
from functools import cache
from typing import Any

from pydantic import BaseModel, ConfigDict, PrivateAttr

from .algebra import TAU, Bidegree, Element, Monomial, Symbol

logger = logging.getLogger(__name__)


class PresentationError(ValueError):
    pass


class Coefficients(str, Enum):
    Z = "Z"
    Z2 = "Z/2"

    @property
    def modulus(self) -> int:
        return 0 if self is Coefficients.Z else 2


class Grading(str, Enum):
    SINGLE = "single"
    BIGRADED = "bigraded"


class RingModel(str, Enum):
    QUOTIENT = "quotient"
    LAURENT = "laurent"


_AFFINE_TERM = re.compile(r"(\d*)([A-Za-z_]\w*)?")


@cache
def parse_affine(text: str) -> tuple[int, tuple[tuple[str, int], ...]]:
    """Parse 'k1+k2+1', '3k-1' or '2' into (constant, ((name, coefficient), ...))."""
    compact = text.replace(" ", "")
    if not compact:
        raise PresentationError("Empty parameter expression")
    const = 0
    coeffs: dict[str, int] = {}
    for chunk in re.findall(r"[+-]?[^+-]+", compact):
        sign = -1 if chunk[0] == "-" else 1
        body = chunk.lstrip("+-")
        match = _AFFINE_TERM.fullmatch(body)
        if match is None or not body:
            raise PresentationError(f"Bad parameter expression {text!r}")
        digits, name = match.groups()
        value = sign * (int(digits) if digits else 1)
        if name:
            coeffs[name] = coeffs.get(name, 0) + value
        else:
            const += value
    if "".join(re.findall(r"[+-]?[^+-]+", compact)) != compact:
        raise PresentationError(f"Bad parameter expression {text!r}")
    return const, tuple(sorted(coeffs.items()))


def evaluate_affine(text: str, env: Mapping[str, int]) -> int:
    const, coeffs = parse_affine(text)
    try:
        return const + sum(c * env[name] for name, c in coeffs)
    except KeyError as e:
        raise PresentationError(f"Unbound parameter {e.args[0]!r} in {text!r}") from None


class GeneratorSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    degree: tuple[int, int | None]
    step: tuple[int, int] | None = None
    label: str | None = None
    expansion: tuple[tuple[str, int], ...] = ()

    @property
    def is_family(self) -> bool:
        return self.step is not None

    @property
    def display(self) -> str:
        return self.label or self.name

    def bidegree(self, k: int | None = None) -> Bidegree:
        base = Bidegree(*self.degree)
        if self.step is None:
            return base
        if k is None or k < 0:
            raise PresentationError(f"Family {self.name} needs a parameter k >= 0, got {k}")
        return base + Bidegree(*self.step).scaled(k)


class Factor(BaseModel):
    model_config = ConfigDict(frozen=True)

    generator: str
    param: str | None = None
    exp: str = "1"


class Term(BaseModel):
    model_config = ConfigDict(frozen=True)

    coeff: int = 1
    factors: tuple[Factor, ...] = ()


class RelationTemplate(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    terms: tuple[Term, ...]
    params: tuple[str, ...] = ()
    constraints: tuple[tuple[str, str], ...] = ()


class RingPresentation(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    coefficients: Coefficients
    grading: Grading
    generators: tuple[GeneratorSpec, ...]
    relations: tuple[RelationTemplate, ...] = ()
    model: RingModel = RingModel.QUOTIENT
    elimination_order: tuple[str, ...] = ()
    description: str = ""

    _index: dict[str, int] = PrivateAttr(default_factory=dict)
    _memo: dict[Hashable, Any] = PrivateAttr(default_factory=dict)

    def model_post_init(self, context: Any) -> None:
        self._index.update({g.name: i for i, g in enumerate(self.generators)})
        if len(self._index) != len(self.generators):
            raise PresentationError(f"Ring {self.name} declares a generator twice")
        for g in self.generators:
            if g.step is not None and g.step[1] <= 0 and self.bigraded:
                raise PresentationError(
                    f"Family {g.name} of {self.name} must gain weight with its parameter"
                )

    @property
    def modulus(self) -> int:
        return self.coefficients.modulus

    @property
    def bigraded(self) -> bool:
        return self.grading is Grading.BIGRADED

    @property
    def laurent(self) -> bool:
        return self.model is RingModel.LAURENT

    def memo(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def generator(self, name: str) -> GeneratorSpec:
        try:
            return self.generators[self._index[name]]
        except KeyError:
            raise PresentationError(f"Ring {self.name} has no generator {name!r}") from None

    def generator_index(self, name: str) -> int:
        self.generator(name)
        return self._index[name]

    def symbol_degree(self, symbol: Symbol) -> Bidegree:
        return self.memo(("symbol_degree", symbol), lambda: self.generator(symbol.name).bidegree(symbol.k))

    def degree(self, monomial: Monomial) -> Bidegree:
        total = Bidegree(0, 0 if self.bigraded else None)
        for symbol, exp in monomial.powers:
            total = total + self.symbol_degree(symbol).scaled(exp)
        return total

    def element_degree(self, x: Element) -> Bidegree | None:
        degrees = {self.degree(m) for m in x.monomials}
        if len(degrees) > 1:
            raise PresentationError(f"Element {x} of {self.name} is not homogeneous")
        return degrees.pop() if degrees else None

    def zero(self) -> Element:
        return Element.zero(self.modulus)

    def one(self) -> Element:
        return Element.one(self.modulus)

    def gen(self, name: str, k: int | None = None, exp: int = 1) -> Element:
        spec = self.generator(name)
        if spec.is_family != (k is not None):
            raise PresentationError(f"Generator {name} of {self.name} takes {'a' if spec.is_family else 'no'} parameter")
        return Element.from_monomial(self._expand(Symbol(name, k), exp), 1, self.modulus)

    def _expand(self, symbol: Symbol, exp: int) -> Monomial:
        spec = self.generator(symbol.name)
        if spec.expansion:
            return Monomial.of([(Symbol(name), e * exp) for name, e in spec.expansion])
        return Monomial.of([(symbol, exp)])

    def sort_key(self, monomial: Monomial) -> tuple:
        """Word order: generators in declaration order, then parameter, τ last."""
        word: list[tuple[int, int]] = []
        tau = 0
        for symbol, exp in monomial.powers:
            if symbol.name == TAU:
                tau = exp
                continue
            word.extend([(self.generator_index(symbol.name), -1 if symbol.k is None else symbol.k)] * exp)
        return (tuple(sorted(word)), tau)

    def build_term(self, term: Term, env: Mapping[str, int]) -> Element | None:
        """Instantiate one term; None when a family parameter falls below zero."""
        monomial = Monomial()
        for factor in term.factors:
            spec = self.generator(factor.generator)
            if spec.is_family != (factor.param is not None):
                raise PresentationError(
                    f"Factor {factor.generator} in {self.name} has a mismatched parameter"
                )
            k = None if factor.param is None else evaluate_affine(factor.param, env)
            if k is not None and k < 0:
                return None
            monomial = monomial * self._expand(Symbol(factor.generator, k), evaluate_affine(factor.exp, env))
        return Element.from_monomial(monomial, term.coeff, self.modulus)

    def build_element(self, terms: tuple[Term, ...], env: Mapping[str, int]) -> Element | None:
        total = self.zero()
        for term in terms:
            part = self.build_term(term, env)
            if part is None:
                return None
            total = total + part
        return total

    def instantiate(self, template: RelationTemplate, bound: int) -> list[Element]:
        """All distinct nonzero instances with every parameter in [0, bound]."""
        solved: dict[str, tuple[str, str]] = {}
        for lhs, rhs in template.constraints:
            diff = dict(parse_affine(lhs)[1])
            for name, c in parse_affine(rhs)[1]:
                diff[name] = diff.get(name, 0) - c
            candidates = [n for n in template.params if abs(diff.get(n, 0)) == 1 and n not in solved]
            if candidates:
                solved[candidates[-1]] = (lhs, rhs)
        free = [n for n in template.params if n not in solved]
        seen: set[Element] = set()
        instances: list[Element] = []
        for values in itertools.product(range(bound + 1), repeat=len(free)):
            env = dict(zip(free, values))
            if not self._solve(env, solved, bound):
                continue
            if any(evaluate_affine(l, env) != evaluate_affine(r, env) for l, r in template.constraints):
                continue
            rel = self.build_element(template.terms, env)
            if rel is None or rel.is_zero():
                continue
            if rel.terms[0][1] < 0:
                rel = -rel
            if rel not in seen:
                seen.add(rel)
                instances.append(rel)
        logger.debug(f"{self.name}: relation {template.name} has {len(instances)} instances up to k={bound}")
        return instances

    @staticmethod
    def _solve(env: dict[str, int], solved: Mapping[str, tuple[str, str]], bound: int) -> bool:
        for name, (lhs, rhs) in solved.items():
            const, coeffs = parse_affine(lhs)
            rconst, rcoeffs = parse_affine(rhs)
            diff: dict[str, int] = dict(coeffs)
            for n, c in rcoeffs:
                diff[n] = diff.get(n, 0) - c
            pivot = diff.pop(name)
            rest = const - rconst + sum(c * env[n] for n, c in diff.items() if c)
            value = -rest * pivot
            if not 0 <= value <= bound:
                return False
            env[name] = value
        return True
