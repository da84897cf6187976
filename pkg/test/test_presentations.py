import pytest

from motivic_verifier.algebra import Bidegree
from motivic_verifier.pieces import enumerate_monomials
from motivic_verifier.presentations import (
    Coefficients,
    GeneratorSpec,
    Grading,
    PresentationError,
    RingPresentation,
    evaluate_affine,
    parse_affine,
)


@pytest.mark.parametrize(
    "text, parsed",
    [
        ("k1+k2+1", (1, (("k1", 1), ("k2", 1)))),
        ("3k-1", (-1, (("k", 3),))),
        ("2", (2, ())),
        ("-k", (0, (("k", -1),))),
    ],
)
def test_parse_affine(text, parsed):
    assert parse_affine(text) == parsed


@pytest.mark.parametrize("text", ["", "k+", "k*2"])
def test_parse_affine_rejects(text):
    with pytest.raises(PresentationError):
        parse_affine(text)


def test_evaluate_affine():
    assert evaluate_affine("k1+k2+1", {"k1": 2, "k2": 3}) == 6
    with pytest.raises(PresentationError):
        evaluate_affine("k+1", {})


def test_family_degrees(motivic_z):
    assert motivic_z.generator("A").bidegree(0) == Bidegree(3, 2)
    assert motivic_z.generator("A").bidegree(3) == Bidegree(3, 5)
    assert motivic_z.generator("B").bidegree(1) == Bidegree(7, 5)
    with pytest.raises(PresentationError):
        motivic_z.generator("B").bidegree(None)


def test_unknown_generator(chow):
    with pytest.raises(PresentationError):
        chow.gen("w2")
    with pytest.raises(PresentationError):
        chow.gen("d2", 1)


def test_duplicate_generators_are_rejected():
    with pytest.raises(PresentationError):
        RingPresentation(
            name="broken",
            coefficients=Coefficients.Z,
            grading=Grading.SINGLE,
            generators=(GeneratorSpec(name="x", degree=(2, None)), GeneratorSpec(name="x", degree=(4, None))),
        )


def test_generators_of_degree_zero_make_the_search_unbounded():
    ring = RingPresentation(
        name="unbounded",
        coefficients=Coefficients.Z,
        grading=Grading.BIGRADED,
        generators=(GeneratorSpec(name="t", degree=(0, 1)),),
    )
    with pytest.raises(PresentationError):
        enumerate_monomials(ring, Bidegree(0, 2))


def test_instantiate_drops_trivial_instances(motivic_z):
    template = next(r for r in motivic_z.relations if r.name == "AA")
    instances = motivic_z.instantiate(template, 2)
    assert instances
    for rel in instances:
        assert len(rel.terms) == 2
        assert motivic_z.element_degree(rel) is not None
    assert len(set(instances)) == len(instances)


def test_instantiate_fixed_relation(chow):
    euler = next(r for r in chow.relations if r.name == "euler")
    (instance,) = chow.instantiate(euler, 5)
    assert chow.element_degree(instance) == Bidegree(8, 4)


def test_build_element_skips_negative_parameters(motivic_z):
    template = next(r for r in motivic_z.relations if r.name == "AAA-d3A")
    assert motivic_z.build_element(template.terms, {"k1": 0, "k2": 0, "k3": -1}) is None


def test_inhomogeneous_element(motivic_z):
    with pytest.raises(PresentationError):
        motivic_z.element_degree(motivic_z.gen("d2") + motivic_z.gen("d3"))
