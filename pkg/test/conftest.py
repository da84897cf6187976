import pytest

from motivic_verifier.catalog import (
    CHOW,
    CLASSICAL_Z,
    CLASSICAL_Z2,
    MOTIVIC_Z,
    MOTIVIC_Z2,
    Catalog,
    bundled_catalog,
)
from motivic_verifier.checks import CheckContext
from motivic_verifier.models import Box
from motivic_verifier.presentations import RingPresentation


@pytest.fixture(scope="session")
def catalog() -> Catalog:
    return bundled_catalog()


@pytest.fixture
def classical_z2(catalog: Catalog) -> RingPresentation:
    return catalog.ring(CLASSICAL_Z2)


@pytest.fixture
def classical_z(catalog: Catalog) -> RingPresentation:
    return catalog.ring(CLASSICAL_Z)


@pytest.fixture
def chow(catalog: Catalog) -> RingPresentation:
    return catalog.ring(CHOW)


@pytest.fixture
def motivic_z2(catalog: Catalog) -> RingPresentation:
    return catalog.ring(MOTIVIC_Z2)


@pytest.fixture
def motivic_z(catalog: Catalog) -> RingPresentation:
    return catalog.ring(MOTIVIC_Z)


@pytest.fixture
def small_box() -> Box:
    return Box(p_max=8, q_max=5, m_max=8)


@pytest.fixture
def small_context(catalog: Catalog, small_box: Box) -> CheckContext:
    return CheckContext(catalog=catalog, box=small_box)
