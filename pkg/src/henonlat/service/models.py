"""Request and response schemas for the HTTP surface.

Exact rationals travel as "num/den" strings in both directions; floats are
plain JSON numbers. Each request model mirrors one library call, so the
endpoints stay thin.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field

Family = Literal["sine", "binomial", "compressing"]
Orientation = Literal["standard", "reflected"]
BoundCheck = Literal["cd_sup", "cd_sup_inner", "cd_deriv",
                     "cd_deriv_inner", "all"]


class PolyEvalRequest(BaseModel):
    family: Family = "sine"
    d: int
    x: str


class PolyValueResponse(BaseModel):
    family: Family
    d: int
    x: str
    value: str


class PolyCoeffsRequest(BaseModel):
    family: Family = "sine"
    d: int


class PolyCoeffsResponse(BaseModel):
    family: Family
    d: int
    degree: int
    text: str
    coeffs: list[str]  # ascending powers, exact


class PolyTableRequest(BaseModel):
    d: int
    bound: Optional[int] = None


class PolyTableResponse(BaseModel):
    d: int
    bound: int
    values: list[tuple[int, int]]  # (m, s(m)) pairs


class CompressCheckRequest(BaseModel):
    m: int
    d: Optional[int] = None  # shorthand for the degree-d compressing poly
    coeffs: Optional[list[str]] = None  # ascending powers, exact


class CompressCheckResponse(BaseModel):
    m: int
    poly: str
    passed: bool


class CompressSearchRequest(BaseModel):
    degree: int
    m: int


class CompressSearchResponse(BaseModel):
    degree: int
    m: int
    polynomials: list[str]
    raw_count: int


class SigmaVerifyRequest(BaseModel):
    d_max: int = 200


class SigmaVerifyResponse(BaseModel):
    d_max: int
    checked: int
    passed: bool
    first_failure: Optional[dict] = None


class GridInfo(BaseModel):
    count: int
    lo: Optional[str] = None
    hi: Optional[str] = None


class BoundReportModel(BaseModel):
    check: str
    d: int
    grid: GridInfo
    worst_margin: str
    worst_x: Optional[str] = None
    passed: bool


class BoundReportsResponse(BaseModel):
    reports: list[BoundReportModel]
    passed: bool


class CdBoundsRequest(BaseModel):
    d: int
    which: BoundCheck = "all"
    grid_step: str = "1/4"


class TailRequest(BaseModel):
    d: int
    cap: Optional[str] = None


class MonotoneRequest(BaseModel):
    d: int
    cap: Optional[str] = None
    grid_step: str = "1/4"


class ConvergenceRequest(BaseModel):
    k_max: int = 30
    lo: float = -6.0
    hi: float = 6.0
    step: float = 0.1
    tolerance: float = 1e-8


class ConvergenceResponse(BaseModel):
    k_values: list[int]
    errors: dict[str, list[str]]  # family -> sup errors, 17 digits
    interval: list[float]
    step: str
    tolerance: str
    passed: bool


class EscapeRealRequest(BaseModel):
    d: int


class EscapePadicRequest(BaseModel):
    d: int
    p: int


class PreperiodicRequest(BaseModel):
    d: int


class PreperiodicResponse(BaseModel):
    d: int
    size: int
    expected_size: int
    passed: bool


class PeriodicRequest(BaseModel):
    d: int
    c: int = 0
    orientation: Orientation = "standard"
    timings: bool = False
    include_cycles: bool = False


class CycleModel(BaseModel):
    representative: tuple[int, int]
    length: int
    points: list[tuple[int, int]]


class PeriodicReportModel(BaseModel):
    d: int
    c: int
    orientation: Orientation
    count: int
    full_count: int
    histogram: dict[str, int]
    longest_cycle: int
    n_cycles: int
    elapsed_ms: int
    cycles: Optional[list[CycleModel]] = None


class SweepRequest(BaseModel):
    d_values: list[int] = Field(min_length=1)
    c_values: list[int] = Field(min_length=1)
    orientation: Orientation = "standard"
    timings: bool = False
    threads: int = 1


class SweepRowModel(BaseModel):
    d: int
    d_mod_6: int
    c: int
    count: int
    longest_cycle: int
    n_cycles: int
    elapsed_ms: int
    expected_count: Optional[int] = None
    expected_longest: Optional[int] = None
    in_fit_range: bool
    count_matches: Optional[bool] = None
    longest_matches: Optional[bool] = None


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]


class EightStepRequest(BaseModel):
    d: int
    y: Optional[int] = None  # default: every admissible offset


class EightStepResponse(BaseModel):
    d: int
    offsets: list[int]
    passed: bool


class HinfPeriodsRequest(BaseModel):
    bound: int = 60


class ExceptionPoint(BaseModel):
    x: int
    y: int
    period: int


class HinfPeriodsResponse(BaseModel):
    bound: int
    table: list[list[int]]  # table[y % 6][x % 6]
    exceptions: list[ExceptionPoint]


class HinfOrbitRequest(BaseModel):
    x: float = 0.0
    y: float = 0.0
    epsilon: float = 0.0
    iterations: int = 1000
    seed: int = 0


class HinfAtlasRequest(BaseModel):
    box: int = 6
    epsilon: float = 1e-3
    iterations: int = 1000
    seed: int = 0


class RadiusRequest(BaseModel):
    d: int
    place: str = "inf"  # "inf" or a prime, e.g. "2"


class RadiusResponse(BaseModel):
    d: int
    place: str
    radius: str
    is_exception: bool


class RadiusExceptionsRequest(BaseModel):
    d_max: int = 299
    p_max: int = 100


class RadiusExceptionsResponse(BaseModel):
    d_max: int
    p_max: int
    exceptions: list[tuple[int, int]]  # (p, d) pairs


class HealthResponse(BaseModel):
    status: str
    version: str
