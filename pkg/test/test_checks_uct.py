from mocks import write_corrupted_catalog
from motivic_verifier.algebra import Bidegree
from motivic_verifier.catalog import CHOW, MOTIVIC_Z, load_catalog
from motivic_verifier.checks.uct import (
    check_reduce_classical,
    check_uct_classical,
    check_uct_motivic,
    closed_piece,
    closure_relations,
    run_uct_motivic,
    unreached_dimension,
)
from motivic_verifier.models import CheckStatus
from motivic_verifier.pieces import graded_piece


def test_classical_uct_holds(catalog):
    report = check_uct_classical(catalog, 16)
    assert report.status is CheckStatus.PASS
    assert report.findings == []


def test_reduction_is_an_isomorphism(catalog):
    assert check_reduce_classical(catalog, 16).status is CheckStatus.PASS


def test_motivic_uct_holds(catalog):
    report = check_uct_motivic(catalog, 8, 5)
    assert report.status is CheckStatus.PASS, report.findings


def test_runner_uses_the_box(small_context):
    report = run_uct_motivic(small_context)
    assert report.check == "uct_motivic"
    assert report.box == small_context.box


def test_unreached_dimension(catalog):
    # τ itself is not the reduction of any integral class
    assert unreached_dimension(catalog, Bidegree(0, 1)) == 1
    assert unreached_dimension(catalog, Bidegree(4, 2)) == 0
    assert unreached_dimension(catalog, Bidegree(5, 1)) == 0


def test_no_closure_needed_in_low_degrees(catalog, motivic_z):
    for deg in (Bidegree(6, 3), Bidegree(7, 4), Bidegree(10, 6)):
        assert closure_relations(catalog, deg) == []
        assert closed_piece(catalog, deg) == graded_piece(motivic_z, deg)


def test_closure_identifies_torsion_classes(catalog, motivic_z):
    deg = Bidegree(13, 8)
    (relation,) = closure_relations(catalog, deg)
    presented, closed = graded_piece(motivic_z, deg), closed_piece(catalog, deg)
    assert closed.group.torsion_count == presented.group.torsion_count - 1
    assert closed.group.rank == presented.group.rank
    assert len(relation.monomials) == 2


def test_motivic_uct_holds_on_the_default_box(catalog):
    report = check_uct_motivic(catalog, 20, 12)
    assert report.status is CheckStatus.PASS, report.findings


def test_motivic_uct_catches_a_dropped_relation(tmp_path):
    corrupted = load_catalog(write_corrupted_catalog(tmp_path, rings=(CHOW, MOTIVIC_Z)))
    report = check_uct_motivic(corrupted, 6, 4)
    assert report.failed
    at_5_3 = [f for f in report.findings if f.bidegree == [5, 3]]
    assert at_5_3
    assert all(f.witness for f in report.findings)
    # nothing integral in (5,3) and no torsion left in (6,3)
    assert "d3" not in at_5_3[0].witness
