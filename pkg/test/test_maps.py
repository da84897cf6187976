import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from motivic_verifier.algebra import Bidegree, Element, Monomial, Symbol
from motivic_verifier.laurent import LaurentExponents
from motivic_verifier.maps import (
    DefinitionError,
    apply,
    beta_tilde_classical,
    bockstein,
    bockstein_map,
    map_matrix,
)
from motivic_verifier.pieces import normal_form
from motivic_verifier.render import element_text


def _laurent(motivic_z2, e, a, b, c, y=0) -> Element:
    return Element.from_monomial(LaurentExponents(e, a, b, c, y).monomial(), 1, motivic_z2.modulus)


def test_realization_of_y2(catalog, motivic_z, classical_z):
    assert element_text(classical_z, apply(catalog.map("t"), motivic_z.gen("y2"))) == "2·√p2"


def test_realization_signs(catalog, motivic_z, classical_z):
    x = motivic_z.gen("d2", exp=2) * motivic_z.gen("y2")
    assert element_text(classical_z, apply(catalog.map("t"), x)) == "2·p1^2·√p2"
    assert element_text(classical_z, apply(catalog.map("t"), motivic_z.gen("d2"))) == "-p1"


def test_t2_sends_tau_to_one(catalog, motivic_z2, classical_z2):
    assert apply(catalog.map("t2"), motivic_z2.gen("tau")) == classical_z2.one()
    assert apply(catalog.map("t2"), motivic_z2.gen("y02")).is_zero()
    image = apply(catalog.map("t2"), _laurent(motivic_z2, -2, 2, 0, 0))
    assert element_text(classical_z2, image) == "w2^2"


def test_reduction_of_families(catalog, motivic_z, motivic_z2):
    mu = catalog.map("mu")
    assert element_text(motivic_z2, apply(mu, motivic_z.gen("A", 2))) == "τ^2·w3"
    assert element_text(motivic_z2, apply(mu, motivic_z.gen("B", 0))) == "τ^-1·w3·w4"
    assert element_text(motivic_z2, apply(mu, motivic_z.gen("d2"))) == "τ^-2·w2^2"
    assert apply(mu, motivic_z.gen("y2", exp=2)).is_zero()


def test_bockstein_values(classical_z2, motivic_z2):
    w2, w3, w4 = (classical_z2.gen(g) for g in ("w2", "w3", "w4"))
    assert bockstein(classical_z2, w2**3 * w3 * w4**2) == w2**2 * w3**2 * w4**2
    assert bockstein(classical_z2, w2**2).is_zero()
    assert bockstein(classical_z2, w3).is_zero()
    assert bockstein(motivic_z2, _laurent(motivic_z2, -1, 1, 0, 1)) == _laurent(motivic_z2, -1, 0, 1, 1)
    assert bockstein(motivic_z2, _laurent(motivic_z2, -2, 2, 0, 0, y=1)).is_zero()


def test_bockstein_needs_z2_coefficients(classical_z):
    with pytest.raises(DefinitionError):
        bockstein_map(classical_z)


def test_beta_tilde_formula():
    def m(a, b, c):
        return Monomial.of([(Symbol("w2"), a), (Symbol("w3"), b), (Symbol("w4"), c)])

    assert str(beta_tilde_classical(m(1, 0, 0))) == "bw2"
    assert beta_tilde_classical(m(0, 0, 3)).is_zero()
    assert str(beta_tilde_classical(m(1, 1, 1))) == "bw2^2·sqrt_p2"
    assert str(beta_tilde_classical(m(5, 0, 0))) == "bw2·p1^2"
    with pytest.raises(DefinitionError):
        beta_tilde_classical(Monomial.generator("p1"))


def test_map_matrix_mu_classical(catalog):
    matrix = map_matrix(catalog.map("mu_classical"), Bidegree(3))
    assert matrix.shape == (1, 1)
    assert matrix.columns == ((1,),)


def test_map_matrix_t2(catalog):
    matrix = map_matrix(catalog.map("t2"), Bidegree(4, 2))
    assert matrix.shape == (2, 2)
    assert matrix.rank_mod2() == 1


def test_map_matrix_beta_tilde(catalog, classical_z2):
    matrix = map_matrix(catalog.map("beta_tilde_classical"), Bidegree(6))
    assert [element_text(classical_z2, Element.from_monomial(m, 1, 2)) for m in matrix.source_basis] == [
        "w2^3",
        "w2·w4",
        "w3^2",
    ]
    assert matrix.target_degree == Bidegree(7)
    assert matrix.columns == ((1, 0), (0, 1), (0, 0))


def test_apply_rejects_inhomogeneous_input(catalog, motivic_z):
    with pytest.raises(DefinitionError):
        apply(catalog.map("t"), motivic_z.gen("d2") + motivic_z.gen("d3"))


def test_missing_image(catalog):
    cl = catalog.map("cl")
    assert cl.target.name == "classical-z"
    with pytest.raises(DefinitionError):
        cl.image_of(Symbol("A", 0))


def test_ring_maps_send_one_to_one(catalog):
    for name in ("mu_classical", "reduce_classical", "mu", "t", "t2", "cl"):
        hom = catalog.map(name)
        assert apply(hom, hom.source.one()) == hom.target.one()


chow_words = st.lists(st.sampled_from(["d2", "d3", "d4", "y2"]), min_size=0, max_size=3)
classical_words = st.lists(st.sampled_from(["p1", "sqrt_p2", "bw2"]), min_size=0, max_size=3)
motivic_words = st.lists(
    st.one_of(
        st.sampled_from(["d2", "d3", "d4", "y2"]).map(lambda g: (g, None)),
        st.tuples(st.sampled_from(["A", "B"]), st.integers(0, 2)),
    ),
    min_size=0,
    max_size=2,
)
motivic_z2_words = st.lists(
    st.sampled_from(["tau", "w2", "w3", "w4", "y02", "tau^-2w2^2", "tau^-1w3w4", "tau^-1w2w3"]),
    min_size=0,
    max_size=3,
)


def _product(ring, word):
    x = ring.one()
    for g in word:
        x = x * (ring.gen(*g) if isinstance(g, tuple) else ring.gen(g))
    return x


def _assert_multiplicative(hom, x_word, y_word):
    x, y = _product(hom.source, x_word), _product(hom.source, y_word)
    assert apply(hom, x * y) == normal_form(hom.target, apply(hom, x) * apply(hom, y))


@settings(max_examples=40, deadline=None)
@given(chow_words, chow_words)
def test_ring_maps_are_multiplicative(catalog, x_word, y_word):
    _assert_multiplicative(catalog.map("cl"), x_word, y_word)
    motivic = [(g, None) for g in x_word], [(g, None) for g in y_word]
    _assert_multiplicative(catalog.map("t"), *motivic)


@settings(max_examples=30, deadline=None)
@given(motivic_words, motivic_words)
def test_maps_out_of_motivic_z_are_multiplicative(catalog, x_word, y_word):
    for name in ("mu", "t"):
        _assert_multiplicative(catalog.map(name), x_word, y_word)


@settings(max_examples=30, deadline=None)
@given(classical_words, classical_words)
def test_classical_maps_are_multiplicative(catalog, x_word, y_word):
    for name in ("mu_classical", "reduce_classical"):
        _assert_multiplicative(catalog.map(name), x_word, y_word)


@settings(max_examples=30, deadline=None)
@given(motivic_z2_words, motivic_z2_words)
def test_t2_is_multiplicative(catalog, x_word, y_word):
    _assert_multiplicative(catalog.map("t2"), x_word, y_word)
