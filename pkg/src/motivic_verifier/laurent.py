"""The mod 2 motivic ring as a subring of Z/2[τ, τ⁻¹, w2, w3, w4] plus the y-part."""

import logging
from dataclasses import dataclass
from functools import cache

from .algebra import TAU, Bidegree, Element, Monomial, Symbol

logger = logging.getLogger(__name__)

W2, W3, W4, Y02 = "w2", "w3", "w4", "y02"

LAURENT_DEGREES: dict[str, Bidegree] = {
    TAU: Bidegree(0, 1),
    W2: Bidegree(2, 2),
    W3: Bidegree(3, 2),
    W4: Bidegree(4, 3),
    Y02: Bidegree(4, 2),
}


class NotInRingError(ValueError):
    pass


@dataclass(frozen=True)
class LaurentExponents:
    e: int
    a: int
    b: int
    c: int
    y: int = 0

    def monomial(self) -> Monomial:
        return Monomial.of(
            [
                (Symbol(TAU), self.e),
                (Symbol(W2), self.a),
                (Symbol(W3), self.b),
                (Symbol(W4), self.c),
                (Symbol(Y02), self.y),
            ]
        )


@dataclass(frozen=True)
class LaurentModel:
    """τ-deficits: the weight each unordered pair of w-letters may borrow from τ."""

    pair_weights: tuple[tuple[tuple[str, str], int], ...] = (
        ((W2, W2), 2),
        ((W3, W3), 1),
        ((W4, W4), 2),
        ((W2, W3), 1),
        ((W2, W4), 1),
        ((W3, W4), 1),
    )

    def weight(self, x: str, y: str) -> int:
        for pair, w in self.pair_weights:
            if pair in ((x, y), (y, x)):
                return w
        return 0

    @cache
    def deficit(self, a: int, b: int, c: int) -> int:
        """Largest total pair weight over all pairings of {w2^a, w3^b, w4^c}."""
        if min(a, b, c) < 0:
            raise ValueError(f"Negative exponents ({a}, {b}, {c})")
        w23, w24, w34 = self.weight(W2, W3), self.weight(W2, W4), self.weight(W3, W4)
        w22, w33, w44 = self.weight(W2, W2), self.weight(W3, W3), self.weight(W4, W4)
        best = 0
        # x, y, z count the mixed pairs w2w3, w2w4, w3w4; the rest pair up with themselves
        for x in range(min(a, b) + 1):
            for y in range(min(a - x, c) + 1):
                for z in range(min(b - x, c - y) + 1):
                    total = (
                        x * w23
                        + y * w24
                        + z * w34
                        + (a - x - y) // 2 * w22
                        + (b - x - z) // 2 * w33
                        + (c - y - z) // 2 * w44
                    )
                    best = max(best, total)
        return best

    def split(self, m: Monomial) -> LaurentExponents:
        known = {TAU, W2, W3, W4, Y02}
        for symbol in m.symbols:
            if symbol.name not in known or symbol.k is not None:
                raise NotInRingError(f"{symbol} is not a mod 2 motivic letter")
        return LaurentExponents(
            e=m.exponent(TAU),
            a=m.exponent(W2),
            b=m.exponent(W3),
            c=m.exponent(W4),
            y=m.exponent(Y02),
        )

    def degree(self, m: Monomial) -> Bidegree:
        total = Bidegree(0, 0)
        for symbol, exp in m.powers:
            total = total + LAURENT_DEGREES[symbol.name].scaled(exp)
        return total

    def is_member(self, m: Monomial) -> bool:
        x = self.split(m)
        if min(x.a, x.b, x.c, x.y) < 0:
            return False
        if x.y == 0:
            return x.e >= -self.deficit(x.a, x.b, x.c)
        # y02 times a monomial in τ⁻²w2², τ⁻²w4²
        return x.y == 1 and x.b == 0 and x.a % 2 == 0 and x.c % 2 == 0 and x.e == -(x.a + x.c)

    def normalize(self, x: Element) -> Element:
        """Drop y-part products killed by the ideal; reject anything outside the ring."""
        kept = []
        for m, coeff in x.terms:
            if self.is_member(m):
                kept.append((m, coeff))
            elif self.split(m).y == 0:
                raise NotInRingError(f"{m} does not lie in the mod 2 motivic ring")
        return Element.of(kept, 2)

    def basis(self, deg: Bidegree) -> list[Monomial]:
        if deg.q is None:
            raise ValueError("The mod 2 motivic ring is bigraded")
        found: list[Monomial] = []
        p, q = deg.p, deg.q
        if p < 0:
            return found
        for b in range(p // 3 + 1):
            for c in range((p - 3 * b) // 4 + 1):
                rest = p - 3 * b - 4 * c
                if rest % 2:
                    continue
                a = rest // 2
                e = q - (2 * a + 2 * b + 3 * c)
                if e >= -self.deficit(a, b, c):
                    found.append(LaurentExponents(e, a, b, c).monomial())
        if p >= 4 and p == 2 * q:
            for j in range((p - 4) // 8 + 1):
                rest = p - 4 - 8 * j
                if rest % 4 == 0:
                    i = rest // 4
                    found.append(LaurentExponents(-2 * (i + j), 2 * i, 0, 2 * j, 1).monomial())
        return found


MOD2_MOTIVIC = LaurentModel()


def deficit(a: int, b: int, c: int) -> int:
    return MOD2_MOTIVIC.deficit(a, b, c)


def mod2_motivic_basis(deg: Bidegree) -> list[Monomial]:
    """F2-basis of the mod 2 motivic ring in bidegree deg, unsorted."""
    return MOD2_MOTIVIC.basis(deg)


