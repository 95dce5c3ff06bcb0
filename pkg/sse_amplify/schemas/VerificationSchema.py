from pydantic import BaseModel, ConfigDict


class SuiteReport(BaseModel):
    name: str
    cases: int
    checks: int
    skipped: int = 0
    violations: int = 0
    worst_slack: float = 0.0  # most negative margin seen; >= -tolerance when passing
    seconds: float = 0.0

    model_config = ConfigDict(frozen=True)

    @property
    def passed(self) -> bool:
        return self.violations == 0
