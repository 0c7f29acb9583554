"""Pydantic request/response models for the compute service.

The wire formats mirror the CLI conventions: B as 1, 2, 3 eigenvalues or 6
symmetric components, generators and laws as string descriptors, grids as
(start, stop, steps).
"""

from __future__ import annotations

from pydantic import BaseModel, Field, field_validator


class GridSpec(BaseModel):
    start: float
    stop: float
    steps: int = Field(ge=1, le=1_000_000)

    def values(self) -> list[float]:
        if self.steps == 1:
            return [self.start]
        h = (self.stop - self.start) / (self.steps - 1)
        return [self.start + k * h for k in range(self.steps)]


class ClassifyRequest(BaseModel):
    B: list[float] = Field(min_length=1, max_length=6)
    rate: str = "zj"
    cluster_tol: float = 1e-8

    @field_validator("B")
    @classmethod
    def _b_shape(cls, v: list[float]) -> list[float]:
        if len(v) not in (1, 2, 3, 6):
            raise ValueError("B takes 1, 2 or 3 eigenvalues, or 6 components")
        return v


class ClassifyResponse(BaseModel):
    generator: str
    positive: bool
    invertible: bool
    totally_positive: bool | None
    min_z: float | None
    min_eig_A: float
    witness_D: list[list[float]]
    degenerate: bool


class ZTableRequest(BaseModel):
    B: list[float] = Field(min_length=1, max_length=6)
    rate: str = "zj"
    cluster_tol: float = 1e-8


class ZTableRow(BaseModel):
    i: int
    j: int
    lam_i: float
    lam_j: float
    z: float


class ZTableResponse(BaseModel):
    generator: str
    rows: list[ZTableRow]


class GbarSweepRequest(BaseModel):
    rates: list[str] = ["zj", "gn", "log", "gs"]
    grid: GridSpec = GridSpec(start=0.05, stop=20.0, steps=1000)


class SweepResponse(BaseModel):
    columns: list[str]
    rows: list[list[float]]


class ScaleSweepRequest(BaseModel):
    m_values: list[float] = [0.25, 0.5, 1.0, 2.0]
    grid: GridSpec = GridSpec(start=0.05, stop=4.0, steps=400)


class PairingSweepRequest(BaseModel):
    generators: list[str] = ["zj", "gn", "log"]
    m_values: list[float] = [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0]
    samples: int = Field(default=1000, ge=1, le=200_000)
    seed: int = 42


class PairingSweepResponse(BaseModel):
    columns: list[str]
    rows: list[tuple[str, float, int, float, float]]
    counterexamples: list[tuple[str, float, int, float, float]]
    min_value: float


class VerifyRequest(BaseModel):
    suite: str = "all"
    seed: int = 42


class CheckRecord(BaseModel):
    check: str
    generator: str
    seed: int
    residual: float
    threshold: float
    passed: bool = Field(alias="pass")

    model_config = {"populate_by_name": True}


class VerifyResponse(BaseModel):
    results: list[CheckRecord]
    all_passed: bool


class A44ReportRequest(BaseModel):
    samples: int = Field(default=100, ge=1, le=100_000)
    seed: int = 0


class A44ReportResponse(BaseModel):
    samples: int
    seed: int
    max_rel_err_printed_formula: float
    max_rel_err_two_z_from_nu: float
    matches_direct_assembly: str
    note: str
    example_rows: list[dict]


class RateRequest(BaseModel):
    config: str
    t: float = 0.0
    rate: str = "zj"
    law: str = "linear"


class RateResponse(BaseModel):
    rate: str
    law: str
    t: float
    corotational: bool
    sigma: list[list[float]]
    value: list[list[float]]


class MotionStateRequest(BaseModel):
    config: str
    t: float = 0.0


class MotionStateResponse(BaseModel):
    t: float
    F: list[list[float]]
    B: list[list[float]]
    V: list[list[float]]
    R: list[list[float]]
    L: list[list[float]]
    D: list[list[float]]
    W: list[list[float]]
    Bdot: list[list[float]]
