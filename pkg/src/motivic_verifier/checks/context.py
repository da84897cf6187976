from dataclasses import dataclass

from ..catalog import RING_NAMES, Catalog, bundled_catalog
from ..models import Box


@dataclass(frozen=True)
class CheckContext:
    catalog: Catalog
    box: Box
    rings: tuple[str, ...] = RING_NAMES
    square_root_cap: int = 20

    @classmethod
    def default(cls, p_max: int = 20, q_max: int = 12, m_max: int = 24) -> "CheckContext":
        return cls(catalog=bundled_catalog(), box=Box(p_max=p_max, q_max=q_max, m_max=m_max))
