"""Graded pieces of a presented ring as explicit abelian groups."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .algebra import AbelianGroupStructure, Bidegree, Element, Monomial, Symbol
from .laurent import MOD2_MOTIVIC
from .linalg import (
    IntegerMatrix,
    back_substitute,
    cokernel_structure,
    f2_row_reduce,
    integer_row_echelon,
)
from .presentations import PresentationError, RingPresentation

logger = logging.getLogger(__name__)

STIEFEL_WHITNEY_DEGREES = (2, 3, 4)


class InternalConsistencyError(RuntimeError):
    pass


def _origin(ring: RingPresentation) -> Bidegree:
    return Bidegree(0, 0 if ring.bigraded else None)


def _check_degree(ring: RingPresentation, deg: Bidegree):
    if ring.bigraded != deg.graded:
        kind = "a bidegree p,q" if ring.bigraded else "a single degree p"
        raise ValueError(f"Ring {ring.name} needs {kind}, got {deg}")


def _slots(ring: RingPresentation, deg: Bidegree) -> list[tuple[Symbol, Bidegree]]:
    bound = deg.q if deg.q is not None else 0
    slots = []
    for spec in ring.generators:
        if spec.expansion:
            continue
        params = range(bound + 1) if spec.is_family else [None]
        for k in params:
            d = spec.bidegree(k)
            if d.p <= 0:
                raise PresentationError(
                    f"Generator {spec.name} of {ring.name} has p-degree {d.p}; the search is unbounded"
                )
            if d.p <= deg.p and (deg.q is None or d.q is None or d.q <= deg.q):
                slots.append((Symbol(spec.name, k), d))
    return slots


def _enumerate(ring: RingPresentation, deg: Bidegree) -> tuple[Monomial, ...]:
    if ring.laurent:
        return tuple(sorted(MOD2_MOTIVIC.basis(deg), key=ring.sort_key))
    if deg.is_negative():
        return ()
    slots = _slots(ring, deg)
    found: list[Monomial] = []

    def walk(i: int, rem: Bidegree, chosen: list[tuple[Symbol, int]]):
        if rem.p == 0:
            if rem.q in (None, 0):
                found.append(Monomial.of(chosen))
            return
        if i == len(slots):
            return
        symbol, d = slots[i]
        top = rem.p // d.p
        if rem.q is not None and d.q:
            top = min(top, rem.q // d.q)
        for e in range(top + 1):
            walk(i + 1, rem - d.scaled(e), [*chosen, (symbol, e)] if e else chosen)

    walk(0, deg, [])
    return tuple(sorted(found, key=ring.sort_key))


def enumerate_monomials(ring: RingPresentation, deg: Bidegree) -> list[Monomial]:
    """Every generator product of exactly bidegree deg, in display order."""
    _check_degree(ring, deg)
    return list(ring.memo(("monomials", deg), lambda: _enumerate(ring, deg)))


def _instance_bound(deg: Bidegree) -> int:
    if deg.q is None:
        return 0
    return 1 << max(deg.q, 1).bit_length()


def relation_instances(ring: RingPresentation, bound: int) -> tuple[tuple[Bidegree, Element], ...]:
    def compute():
        found = []
        for template in ring.relations:
            for rel in ring.instantiate(template, bound):
                deg = ring.element_degree(rel)
                if deg is not None:
                    found.append((deg, rel))
        return tuple(found)

    return ring.memo(("relations", bound), compute)


def relation_rows(ring: RingPresentation, deg: Bidegree) -> list[Element]:
    """Relation instances times every complementary monomial, deduplicated."""
    rows: list[Element] = []
    seen: set[Element] = set()
    for rel_deg, rel in relation_instances(ring, _instance_bound(deg)):
        comp = deg - rel_deg
        if comp.is_negative():
            continue
        for m in enumerate_monomials(ring, comp):
            row = rel * Element.from_monomial(m, 1, ring.modulus)
            if not row.is_zero() and row not in seen:
                seen.add(row)
                rows.append(row)
    return rows


@dataclass(frozen=True)
class GradedPiece:
    ring: str
    bidegree: Bidegree
    modulus: int
    basis: tuple[Monomial, ...]
    group: AbelianGroupStructure
    orders: tuple[int, ...]
    spanning: tuple[Monomial, ...] = ()
    substitutions: Mapping[Monomial, Mapping[Monomial, int]] = field(
        default_factory=lambda: MappingProxyType({})
    )
    laurent: bool = False

    def __post_init__(self):
        if len(self.basis) != self.group.rank + self.group.torsion_count:
            raise InternalConsistencyError(
                f"{self.ring} {self.bidegree}: basis of {len(self.basis)} for group {self.group}"
            )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def free_indices(self) -> tuple[int, ...]:
        return tuple(i for i, o in enumerate(self.orders) if o == 0)

    @property
    def torsion_indices(self) -> tuple[int, ...]:
        return tuple(i for i, o in enumerate(self.orders) if o != 0)

    def coordinates(self, x: Element) -> tuple[int, ...]:
        """Coordinates in the basis; torsion coordinates reduced into [0, order)."""
        if self.laurent:
            x = MOD2_MOTIVIC.normalize(x)
        position = {m: i for i, m in enumerate(self.basis)}
        vec = [0] * self.dim
        for m, c in x.terms:
            if m in position:
                vec[position[m]] += c
            elif m in self.substitutions:
                for b, coef in self.substitutions[m].items():
                    vec[position[b]] += c * coef
            else:
                logger.error(f"{m} is not spanned by {self.ring} in {self.bidegree}")
                raise InternalConsistencyError(
                    f"{m} does not lie in {self.ring} piece {self.bidegree}"
                )
        return tuple(v % o if o else v for v, o in zip(vec, self.orders))

    def mod2_coordinates(self, x: Element) -> tuple[int, ...]:
        return tuple(v % 2 for v in self.coordinates(x))

    def element(self, coords: Sequence[int]) -> Element:
        return Element.of(zip(self.basis, coords), self.modulus)

    def reduce(self, x: Element) -> Element:
        return self.element(self.coordinates(x))

    def basis_element(self, i: int) -> Element:
        return Element.from_monomial(self.basis[i], 1, self.modulus)


def _preference_key(ring: RingPresentation, m: Monomial) -> tuple:
    """Larger keys are eliminated first."""
    family = sum(e for s, e in m.powers if s.k is not None)
    ordered = tuple(m.total_exponent(name) for name in ring.elimination_order)
    return (family, ordered, m.family_parameters(), ring.sort_key(m))


def _laurent_piece(ring: RingPresentation, deg: Bidegree) -> GradedPiece:
    basis = tuple(enumerate_monomials(ring, deg))
    return GradedPiece(
        ring=ring.name,
        bidegree=deg,
        modulus=2,
        basis=basis,
        group=AbelianGroupStructure(torsion=(2,) * len(basis)),
        orders=(2,) * len(basis),
        spanning=basis,
        laurent=True,
    )


def _f2_piece(
    ring: RingPresentation, deg: Bidegree, spanning: tuple[Monomial, ...], rows: list[Element]
) -> GradedPiece:
    order = sorted(range(len(spanning)), key=lambda j: _preference_key(ring, spanning[j]), reverse=True)
    position = {spanning[j]: t for t, j in enumerate(order)}
    matrix = [[0] * len(spanning) for _ in rows]
    for r, row in enumerate(rows):
        for m, c in row.terms:
            matrix[r][position[m]] = c % 2
    reduced = f2_row_reduce(matrix, len(spanning))
    eliminated = {spanning[order[col]] for col in reduced.pivots}
    basis = tuple(m for m in spanning if m not in eliminated)
    substitutions = {}
    for r, col in enumerate(reduced.pivots):
        target = spanning[order[col]]
        substitutions[target] = MappingProxyType(
            {spanning[order[j]]: 1 for j in np.flatnonzero(reduced.matrix[r]) if j != col}
        )
    return GradedPiece(
        ring=ring.name,
        bidegree=deg,
        modulus=2,
        basis=basis,
        group=AbelianGroupStructure(torsion=(2,) * len(basis)),
        orders=(2,) * len(basis),
        spanning=spanning,
        substitutions=MappingProxyType(substitutions),
    )


def _integral_piece(
    ring: RingPresentation, deg: Bidegree, spanning: tuple[Monomial, ...], rows: list[Element]
) -> GradedPiece:
    position = {m: j for j, m in enumerate(spanning)}
    sparse = []
    for row in rows:
        try:
            sparse.append({position[m]: c for m, c in row.terms})
        except KeyError as e:
            raise InternalConsistencyError(f"Relation row {row} leaves {ring.name} {deg}") from e
    order = sorted(range(len(spanning)), key=lambda j: _preference_key(ring, spanning[j]), reverse=True)
    echelon = back_substitute(integer_row_echelon(sparse, order))

    torsion_rows = [r for r in echelon if r.entries[r.pivot] > 1]
    orders = {r.pivot: r.entries[r.pivot] for r in torsion_rows}
    for r in torsion_rows:
        for j, v in list(r.entries.items()):
            if j != r.pivot and j in orders:
                r.entries[j] = v % orders[j]
                if not r.entries[j]:
                    del r.entries[j]
        if len(r.entries) > 1:
            witness = ", ".join(str(spanning[j]) for j in sorted(r.entries))
            logger.error(f"{ring.name} {deg}: torsion relation mixes {witness}")
            raise InternalConsistencyError(
                f"{ring.name} {deg}: torsion relation on {spanning[r.pivot]} is not diagonal ({witness})"
            )

    units = {r.pivot: r for r in echelon if r.entries[r.pivot] == 1}
    basis_cols = [j for j in range(len(spanning)) if j not in units]
    substitutions = {}
    for pivot, r in units.items():
        # spanning[pivot] = -(rest of the row)
        expression = {}
        for j, v in r.entries.items():
            c = -v % orders[j] if j in orders else -v
            if j != pivot and c:
                expression[spanning[j]] = c
        substitutions[spanning[pivot]] = MappingProxyType(expression)
    group = AbelianGroupStructure(
        rank=len(basis_cols) - len(orders),
        torsion=tuple(sorted(orders.values())),
    )
    snf_group = cokernel_structure(IntegerMatrix.from_sparse(sparse, len(spanning)), len(spanning))
    if snf_group != group:
        logger.error(f"{ring.name} {deg}: echelon gives {group}, Smith form gives {snf_group}")
        raise InternalConsistencyError(
            f"{ring.name} {deg}: echelon group {group} disagrees with Smith form {snf_group}"
        )
    return GradedPiece(
        ring=ring.name,
        bidegree=deg,
        modulus=0,
        basis=tuple(spanning[j] for j in basis_cols),
        group=snf_group,
        orders=tuple(orders.get(j, 0) for j in basis_cols),
        spanning=spanning,
        substitutions=MappingProxyType(substitutions),
    )


def build_piece(
    ring: RingPresentation, deg: Bidegree, extra_relations: Sequence[Element] = ()
) -> GradedPiece:
    """Construct a piece, optionally modulo further homogeneous relations of bidegree deg."""
    _check_degree(ring, deg)
    if ring.laurent:
        if extra_relations:
            raise ValueError("The mod 2 motivic ring takes no extra relations")
        return _laurent_piece(ring, deg)
    spanning = tuple(enumerate_monomials(ring, deg))
    rows = relation_rows(ring, deg) + [r for r in extra_relations if not r.is_zero()]
    logger.debug(f"{ring.name} {deg}: {len(spanning)} monomials, {len(rows)} relation rows")
    if ring.modulus == 2:
        return _f2_piece(ring, deg, spanning, rows)
    return _integral_piece(ring, deg, spanning, rows)


def graded_piece(ring: RingPresentation, deg: Bidegree) -> GradedPiece:
    return ring.memo(("piece", deg), lambda: build_piece(ring, deg))


def normal_form(ring: RingPresentation, x: Element) -> Element:
    if x.is_zero():
        return ring.zero()
    if ring.laurent:
        return MOD2_MOTIVIC.normalize(x)
    deg = ring.element_degree(x)
    assert deg is not None
    return graded_piece(ring, deg).reduce(x)


@dataclass(frozen=True)
class PoincareTable:
    ring: str
    p_max: int
    q_max: int | None
    cells: Mapping[Bidegree, AbelianGroupStructure]

    def degrees(self) -> list[Bidegree]:
        return sorted(self.cells)


def poincare_table(ring: RingPresentation, p_max: int, q_max: int = 0) -> PoincareTable:
    if p_max < 0 or q_max < 0:
        raise ValueError(f"Bounds must be non-negative, got p_max={p_max}, q_max={q_max}")
    if ring.bigraded:
        degrees = [Bidegree(p, q) for p in range(p_max + 1) for q in range(q_max + 1)]
    else:
        degrees = [Bidegree(p) for p in range(p_max + 1)]
    cells = {d: graded_piece(ring, d).group for d in degrees}
    return PoincareTable(
        ring=ring.name,
        p_max=p_max,
        q_max=q_max if ring.bigraded else None,
        cells=MappingProxyType(cells),
    )


def hilbert_series(degrees: Sequence[int], n_max: int) -> list[int]:
    """Coefficients of 1/prod(1 - t^d) up to t^n_max, by long division."""
    denominator = [1] + [0] * n_max
    for d in degrees:
        shifted = [0] * d + denominator[: n_max + 1 - d] if d <= n_max else [0] * (n_max + 1)
        denominator = [a - b for a, b in zip(denominator, shifted)]
    series = [0] * (n_max + 1)
    for n in range(n_max + 1):
        series[n] = int(n == 0) - sum(denominator[i] * series[n - i] for i in range(1, n + 1))
    return series


def hilbert_series_check(
    ring: RingPresentation, n_max: int, degrees: Sequence[int] = STIEFEL_WHITNEY_DEGREES
) -> bool:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if ring.bigraded or ring.modulus != 2:
        raise ValueError(f"{ring.name} is not a singly graded Z/2 ring")
    expected = hilbert_series(degrees, n_max)
    computed = [graded_piece(ring, Bidegree(n)).dim for n in range(n_max + 1)]
    logger.info(f"{ring.name} dimensions up to {n_max}: {computed}")
    return expected == computed


__all__ = [
    "GradedPiece",
    "InternalConsistencyError",
    "PoincareTable",
    "STIEFEL_WHITNEY_DEGREES",
    "build_piece",
    "enumerate_monomials",
    "graded_piece",
    "hilbert_series",
    "hilbert_series_check",
    "normal_form",
    "poincare_table",
    "relation_rows",
]
