from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from .algebra import Bidegree


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    REPORT = "report"


class Box(BaseModel):
    model_config = ConfigDict(frozen=True)

    p_max: int = Field(ge=0)
    q_max: int = Field(ge=0)
    m_max: int = Field(ge=0)


class Finding(BaseModel):
    model_config = ConfigDict(frozen=True)

    bidegree: list[int | None]
    expected: str
    computed: str
    witness: list[str] = []

    @classmethod
    def at(cls, deg: Bidegree, expected: object, computed: object, witness=()) -> "Finding":
        return cls(
            bidegree=deg.as_list(),
            expected=str(expected),
            computed=str(computed),
            witness=[str(w) for w in witness],
        )

    def sort_key(self) -> tuple:
        return tuple(-1 if v is None else v for v in self.bidegree), self.expected, self.computed, self.witness


class CheckReport(BaseModel):
    check: str
    box: Box
    status: CheckStatus
    findings: list[Finding] = []
    notes: list[str] = Field(default=[], exclude=True)

    @classmethod
    def build(
        cls,
        check: str,
        box: Box,
        findings: list[Finding],
        report_only: bool = False,
        notes: list[str] | None = None,
    ) -> "CheckReport":
        """Findings are sorted so the report is independent of evaluation order."""
        ordered = sorted(findings, key=Finding.sort_key)
        if report_only:
            status = CheckStatus.REPORT
        else:
            status = CheckStatus.FAIL if ordered else CheckStatus.PASS
        return cls(check=check, box=box, status=status, findings=ordered, notes=notes or [])

    @property
    def failed(self) -> bool:
        return self.status is CheckStatus.FAIL
