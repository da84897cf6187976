import pytest

from motivic_verifier.algebra import AbelianGroupStructure, Bidegree, Monomial, Symbol
from motivic_verifier.pieces import (
    InternalConsistencyError,
    build_piece,
    enumerate_monomials,
    graded_piece,
    hilbert_series,
    hilbert_series_check,
    normal_form,
    poincare_table,
)
from motivic_verifier.render import element_text, monomial_text, piece_text


def _basis(ring, piece) -> list[str]:
    return [monomial_text(ring, m) for m in piece.basis]


def test_classical_z2_dimensions(classical_z2):
    dims = [graded_piece(classical_z2, Bidegree(m)).dim for m in range(7)]
    assert dims == [1, 0, 1, 1, 2, 1, 3]


def test_classical_z_groups(classical_z):
    groups = [str(graded_piece(classical_z, Bidegree(m)).group) for m in range(10)]
    assert groups == ["Z", "0", "0", "Z/2", "Z^2", "0", "Z/2", "(Z/2)^2", "Z^3", "Z/2"]


def test_classical_z_torsion_basis(classical_z):
    piece = graded_piece(classical_z, Bidegree(7))
    assert _basis(classical_z, piece) == ["p1·β̃w2", "√p2·β̃w2"]
    assert piece.orders == (2, 2)


def test_enumerate_chow_monomials(chow):
    found = {monomial_text(chow, m) for m in enumerate_monomials(chow, Bidegree(8, 4))}
    assert found == {"d2^2", "d2·y2", "y2^2", "d4"}
    assert enumerate_monomials(chow, Bidegree(7, 4)) == []
    assert enumerate_monomials(chow, Bidegree(-1, 0)) == []


def test_enumerate_rejects_wrong_grading(chow, classical_z):
    with pytest.raises(ValueError):
        enumerate_monomials(chow, Bidegree(8))
    with pytest.raises(ValueError):
        enumerate_monomials(classical_z, Bidegree(8, 4))


def test_chow_codimension_four(chow):
    piece = graded_piece(chow, Bidegree(8, 4))
    assert piece.group == AbelianGroupStructure(rank=3)
    assert _basis(chow, piece) == ["d2^2", "d2·y2", "d4"]
    assert element_text(chow, normal_form(chow, chow.gen("y2", exp=2))) == "4·d4"


def test_chow_torsion(chow):
    piece = graded_piece(chow, Bidegree(6, 3))
    assert str(piece.group) == "Z/2"
    assert normal_form(chow, chow.gen("d3").scale(3)) == chow.gen("d3")
    assert normal_form(chow, chow.gen("y2") * chow.gen("d3")).is_zero()


def test_motivic_pieces(motivic_z):
    assert piece_text(motivic_z, graded_piece(motivic_z, Bidegree(6, 3))) == "Z/2: {d3}"
    assert piece_text(motivic_z, graded_piece(motivic_z, Bidegree(3, 2))) == "Z/2: {A(0)}"
    assert piece_text(motivic_z, graded_piece(motivic_z, Bidegree(7, 4))) == "(Z/2)^2: {d2·A(0), B(0)}"
    assert graded_piece(motivic_z, Bidegree(4, 2)).group == AbelianGroupStructure(rank=2)


def test_motivic_relations_rewrite(motivic_z):
    a0 = motivic_z.gen("A", 0)
    assert element_text(motivic_z, normal_form(motivic_z, a0**3)) == "d3·A(1)"
    assert normal_form(motivic_z, motivic_z.gen("y2") * a0).is_zero()
    b0, b1 = motivic_z.gen("B", 0), motivic_z.gen("B", 1)
    assert normal_form(motivic_z, b0 * b1) == normal_form(motivic_z, motivic_z.gen("d4") * a0 * motivic_z.gen("A", 1))


def test_motivic_z2_piece(motivic_z2):
    piece = graded_piece(motivic_z2, Bidegree(4, 2))
    assert piece_text(motivic_z2, piece) == "(Z/2)^2: {τ^-2·w2^2, y02}"


def test_all_torsion_is_two(motivic_z):
    for p in range(0, 14):
        for q in range(0, 9):
            assert set(graded_piece(motivic_z, Bidegree(p, q)).group.torsion) <= {2}


def test_extra_relations(chow):
    piece = build_piece(chow, Bidegree(6, 3), [chow.gen("d3")])
    assert piece.group.is_zero()
    assert graded_piece(chow, Bidegree(6, 3)).dim == 1


def test_coordinates_outside_the_piece(chow):
    piece = graded_piece(chow, Bidegree(8, 4))
    with pytest.raises(InternalConsistencyError):
        piece.coordinates(chow.gen("d3"))
    assert piece.coordinates(chow.gen("y2", exp=2)) == (0, 0, 4)


def test_poincare_table(chow, classical_z):
    table = poincare_table(chow, 8, 4)
    assert table.cells[Bidegree(8, 4)] == AbelianGroupStructure(rank=3)
    assert table.cells[Bidegree(7, 4)].is_zero()
    assert len(table.degrees()) == 9 * 5
    single = poincare_table(classical_z, 3)
    assert [str(single.cells[d]) for d in single.degrees()] == ["Z", "0", "0", "Z/2"]
    with pytest.raises(ValueError):
        poincare_table(chow, -1, 0)


def test_empty_box(chow):
    table = poincare_table(chow, 0, 0)
    assert list(table.cells) == [Bidegree(0, 0)]


def test_hilbert_series():
    assert hilbert_series([2, 3, 4], 8) == [1, 0, 1, 1, 2, 1, 3, 2, 4]
    assert hilbert_series([5], 3) == [1, 0, 0, 0]


def test_hilbert_series_check(classical_z2, classical_z):
    assert hilbert_series_check(classical_z2, 40)
    with pytest.raises(ValueError):
        hilbert_series_check(classical_z, 4)


def test_monomial_rendering_orders_tau_first(motivic_z2):
    m = Monomial.of([(Symbol("w4"), 1), (Symbol("tau"), -1), (Symbol("w3"), 1)])
    assert monomial_text(motivic_z2, m) == "τ^-1·w3·w4"
