"""Bidegrees, monomials and elements shared by every ring."""

from collections import Counter, defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import NamedTuple, Self

TAU = "tau"


@dataclass(frozen=True, order=True)
class Bidegree:
    p: int
    q: int | None = None

    @property
    def graded(self) -> bool:
        return self.q is not None

    def __add__(self, other: "Bidegree") -> "Bidegree":
        # an ungraded summand forgets the weight
        q = None if self.q is None or other.q is None else self.q + other.q
        return Bidegree(self.p + other.p, q)

    def __sub__(self, other: "Bidegree") -> "Bidegree":
        q = None if self.q is None or other.q is None else self.q - other.q
        return Bidegree(self.p - other.p, q)

    def scaled(self, n: int) -> "Bidegree":
        return Bidegree(self.p * n, None if self.q is None else self.q * n)

    def is_negative(self) -> bool:
        return self.p < 0 or (self.q is not None and self.q < 0)

    def as_list(self) -> list[int | None]:
        return [self.p, self.q]

    def __str__(self) -> str:
        return f"{self.p}" if self.q is None else f"{self.p},{self.q}"

    @classmethod
    def parse(cls, text: str) -> Self:
        parts = [part.strip() for part in text.split(",")]
        if len(parts) not in (1, 2) or not all(parts):
            raise ValueError(f"Bad bidegree {text!r}, expected 'p' or 'p,q'")
        try:
            values = [int(part) for part in parts]
        except ValueError as e:
            raise ValueError(f"Bad bidegree {text!r}, expected integers") from e
        return cls(values[0], values[1] if len(values) == 2 else None)


class Symbol(NamedTuple):
    """A generator instance: a name plus the family parameter, if any."""

    name: str
    k: int | None = None

    def __str__(self) -> str:
        return self.name if self.k is None else f"{self.name}({self.k})"


@dataclass(frozen=True, order=True)
class Monomial:
    powers: tuple[tuple[Symbol, int], ...] = ()

    @classmethod
    def of(cls, powers: Mapping[Symbol, int] | Iterable[tuple[Symbol, int]]) -> Self:
        acc: Counter[Symbol] = Counter()
        items = powers.items() if isinstance(powers, Mapping) else powers
        for symbol, exp in items:
            acc[symbol] += exp
        return cls(tuple(sorted((s, e) for s, e in acc.items() if e != 0)))

    @classmethod
    def generator(cls, name: str, k: int | None = None, exp: int = 1) -> Self:
        return cls.of([(Symbol(name, k), exp)])

    @property
    def is_one(self) -> bool:
        return not self.powers

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(s for s, _ in self.powers)

    def exponent(self, name: str, k: int | None = None) -> int:
        for symbol, exp in self.powers:
            if symbol == (name, k):
                return exp
        return 0

    def total_exponent(self, name: str) -> int:
        return sum(exp for symbol, exp in self.powers if symbol.name == name)

    def family_parameters(self) -> tuple[int, ...]:
        params: list[int] = []
        for symbol, exp in self.powers:
            if symbol.k is not None:
                params.extend([symbol.k] * exp)
        return tuple(params)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial.of([*self.powers, *other.powers])

    def __pow__(self, n: int) -> "Monomial":
        return Monomial.of([(s, e * n) for s, e in self.powers])

    def inverse(self) -> "Monomial":
        return self ** -1

    def __str__(self) -> str:
        if self.is_one:
            return "1"
        ordered = sorted(self.powers, key=lambda item: (item[0].name != TAU, item[0]))
        return "·".join(
            str(symbol) if exp == 1 else f"{symbol}^{exp}" for symbol, exp in ordered
        )


def _reduce(coeff: int, modulus: int) -> int:
    return coeff % modulus if modulus else coeff


@dataclass(frozen=True)
class Element:
    """Finite sum of monomials; modulus 0 means integer coefficients, 2 means Z/2."""

    terms: tuple[tuple[Monomial, int], ...] = ()
    modulus: int = 0

    @classmethod
    def of(
        cls,
        terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]],
        modulus: int = 0,
    ) -> Self:
        acc: defaultdict[Monomial, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for monomial, coeff in items:
            acc[monomial] += coeff
        kept = []
        for monomial in sorted(acc):
            coeff = _reduce(acc[monomial], modulus)
            if coeff:
                kept.append((monomial, coeff))
        return cls(tuple(kept), modulus)

    @classmethod
    def zero(cls, modulus: int = 0) -> Self:
        return cls((), modulus)

    @classmethod
    def one(cls, modulus: int = 0) -> Self:
        return cls.from_monomial(Monomial(), 1, modulus)

    @classmethod
    def from_monomial(cls, monomial: Monomial, coeff: int = 1, modulus: int = 0) -> Self:
        return cls.of([(monomial, coeff)], modulus)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def reduced(self, modulus: int) -> "Element":
        return Element.of(self.terms, modulus)

    def _check(self, other: "Element") -> None:
        if self.modulus != other.modulus:
            raise ValueError(
                f"Cannot combine elements over Z/{self.modulus} and Z/{other.modulus}"
            )

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element.of([*self.terms, *other.terms], self.modulus)

    def __neg__(self) -> "Element":
        return Element.of(((m, -c) for m, c in self.terms), self.modulus)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, factor: int) -> "Element":
        return Element.of(((m, c * factor) for m, c in self.terms), self.modulus)

    def __mul__(self, other: "Element | int") -> "Element":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return Element.of(
            ((a * b, ca * cb) for a, ca in self.terms for b, cb in other.terms),
            self.modulus,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("Negative powers of elements are not defined")
        result = Element.one(self.modulus)
        for _ in range(n):
            result = result * self
        return result

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for monomial, coeff in self.terms:
            if coeff == 1:
                parts.append(str(monomial))
            elif monomial.is_one:
                parts.append(str(coeff))
            else:
                parts.append(f"{coeff}·{monomial}")
        return " + ".join(parts)


@dataclass(frozen=True)
class AbelianGroupStructure:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    @property
    def torsion_count(self) -> int:
        return len(self.torsion)

    @property
    def mod2_dimension(self) -> int:
        """Dimension of the group tensored with Z/2."""
        return self.rank + sum(1 for d in self.torsion if d % 2 == 0)

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        for order, count in sorted(Counter(self.torsion).items()):
            parts.append(f"Z/{order}" if count == 1 else f"(Z/{order})^{count}")
        return " + ".join(parts) if parts else "0"
