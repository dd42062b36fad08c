"""Report and request models shared by the CLI and the HTTP service."""

from typing import Any, Literal

from pydantic import BaseModel, Field, model_validator

VERSION = "1.0.0"

SUITES = ("nf", "minor", "qcomm", "relations", "twist", "groupoid", "dehom", "hspec", "tnn")

SuiteName = Literal["nf", "minor", "qcomm", "relations", "twist", "groupoid", "dehom", "hspec", "tnn", "all"]


class RunConfig(BaseModel):
    m: int = Field(2, ge=1)
    n: int = Field(4, ge=2)
    suite: SuiteName = "all"
    trials: int = Field(500, ge=1)
    grid_bound: int = Field(1, ge=1)
    seed_witnesses: bool = True
    level_bound: int = Field(0, ge=0)
    seed: int = 7
    format: Literal["json", "text"] = "json"
    threads: int = Field(1, ge=1)
    maps: list[str] = Field(default_factory=list)
    alphas: list[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_shape(self) -> "RunConfig":
        if not self.m < self.n:
            raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")
        return self

    @property
    def effective_level_bound(self) -> int:
        return self.level_bound or 2 * self.n

    def suites(self) -> list[str]:
        return list(SUITES) if self.suite == "all" else [self.suite]


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: dict[str, Any] = Field(default_factory=dict)
    residual: str | None = None


class SuiteResult(BaseModel):
    suite: str
    status: Literal["passed", "failed", "error"]
    checks: list[CheckResult] = Field(default_factory=list)
    notes: list[str] = Field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def first_failure(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)


class SuiteReport(BaseModel):
    version: str = VERSION
    m: int
    n: int
    seed: int
    suites: list[SuiteResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def first_failure(self) -> tuple[str, CheckResult | None, str | None] | None:
        for s in self.suites:
            if not s.passed:
                return s.suite, s.first_failure(), s.error
        return None


class HealthResponse(BaseModel):
    status: str
    version: str = VERSION
    error: str | None = None


class NormalFormRequest(BaseModel):
    m: int = Field(2, ge=1)
    n: int = Field(2, ge=1)
    expressions: list[str]


class NormalFormResponse(BaseModel):
    results: list[str]
