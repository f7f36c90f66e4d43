"""Pydantic schemas for configs, reports and manifests."""

from datetime import datetime, timezone
from enum import Enum
from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator


# ===== Analysis Schemas =====

class RipMethod(str, Enum):
    """How a restricted isometry constant was obtained."""
    EXACT = "exact"
    MONTE_CARLO = "monte-carlo"
    UPPER_BOUND = "upper-bound"


class RipEstimate(BaseModel):
    """Restricted isometry constant of order k."""
    k: int = Field(..., ge=1, description="Sparsity order")
    delta: float = Field(..., ge=0.0, description="delta_k (exact), a lower bound (monte-carlo) or an upper bound (upper-bound)")
    method: RipMethod
    witness: List[int] = Field(default_factory=list, description="Support attaining (or best found for) delta, 0-based")
    trials: Optional[int] = Field(None, description="Number of sampled supports for monte-carlo")


class PropCReport(BaseModel):
    """Measured C / v norms against delta/s, delta/sqrt(s), delta/sqrt(s)."""
    s: int = Field(..., ge=1)
    delta: float = Field(..., ge=0.0, description="RIP constant of order 2s used for the bounds")
    norm_C_spectral: float = Field(..., ge=0.0)
    norm_C_frobenius: float = Field(..., ge=0.0)
    norm_v: float = Field(..., ge=0.0)
    bounds: tuple[float, float, float]
    passed: tuple[bool, bool, bool]

    @property
    def all_passed(self) -> bool:
        return all(self.passed)


class ExpansionTerms(BaseModel):
    """Three-term split of ||Phi D_xi x||^2."""
    term1: float = Field(..., ge=0.0, description="Block-diagonal energy")
    term2: float = Field(..., description="First-block cross term")
    term3: float = Field(..., description="Chaos term <xi, C xi>")
    total: float = Field(..., ge=0.0, description="||Phi D_xi x||^2")

    @property
    def residual(self) -> float:
        return abs(self.term1 + self.term2 + self.term3 - self.total)


class TailCheckResult(BaseModel):
    """Empirical exceedance frequency against a tail bound."""
    kind: Literal["hoeffding", "chaos"]
    t: float = Field(..., gt=0.0)
    trials: int = Field(..., ge=1)
    empirical_freq: float = Field(..., ge=0.0, le=1.0)
    bound: float = Field(..., ge=0.0)
    slack: float = Field(..., ge=0.0)
    passed: bool


class ProofTermReport(BaseModel):
    """Frequency of the two bad events of the cross and chaos terms."""
    s: int = Field(..., ge=1)
    epsilon: float = Field(..., gt=0.0, lt=1.0)
    delta: float = Field(..., ge=0.0, description="Certified RIP constant of order 2s")
    eta: float = Field(..., gt=0.0, lt=1.0)
    reference: str = Field(..., description="Level the thresholds scale with: delta or epsilon")
    cross_threshold: float = Field(..., description="|term2| threshold per unit ||x||^2 (2 gamma times the level)")
    chaos_threshold: float = Field(..., description="|term3| threshold per unit ||x||^2 (tau times the level)")
    draws: int = Field(..., ge=1, description="Number of (x, xi) draws")
    cross_fraction: float = Field(..., ge=0.0, le=1.0)
    chaos_fraction: float = Field(..., ge=0.0, le=1.0)
    slack: float = Field(..., ge=0.0)
    passed: bool

    @property
    def total_fraction(self) -> float:
        return self.cross_fraction + self.chaos_fraction


class TheoremConditions(BaseModel):
    """Largest delta admitted by the two proof conditions."""
    epsilon: float
    s: int
    p: int
    eta: float
    cross_term_limit: float
    chaos_term_limit: float
    required_delta: float
    satisfied: bool


# ===== Harness Schemas =====

class PointSetKind(str, Enum):
    """Synthetic point-set generators."""
    GAUSSIAN_UNIT = "gaussian-unit"
    SPARSE = "sparse"
    PAIRWISE_CLOUD = "pairwise-cloud"


class TrialConfig(BaseModel):
    """Parameters of one embedding trial."""
    N: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    p: int = Field(..., ge=1)
    epsilon: float = Field(..., gt=0.0, lt=1.0)
    eta: float = Field(0.05, gt=0.0, lt=1.0)
    construction: str = Field("gaussian", description="gaussian|rademacher|hadamard|fourier|circulant|identity")
    variant: Literal["gaussian", "rademacher"] = "gaussian"
    replace: bool = True
    pointset: PointSetKind = PointSetKind.GAUSSIAN_UNIT
    support: Optional[int] = Field(None, ge=1, description="Support size for sparse point sets")
    mode: Literal["direct", "pairwise"] = "direct"
    matrix_seed: int = Field(0, ge=0)
    sign_seed: int = Field(1, ge=0)
    data_seed: int = Field(2, ge=0)

    model_config = {"frozen": True}


class TrialResult(BaseModel):
    """Outcome of one trial."""
    epsilon: float = Field(..., gt=0.0, lt=1.0)
    max_distortion: float = Field(..., ge=0.0)
    success: bool
    wall_time: float = Field(..., ge=0.0, description="Seconds")

    @model_validator(mode="after")
    def validate_success(self) -> "TrialResult":
        if self.success != (self.max_distortion <= self.epsilon):
            raise ValueError("success must equal max_distortion <= epsilon")
        return self


class SweepPoint(BaseModel):
    """Failure rate at one axis value."""
    axis_value: float
    failures: int = Field(..., ge=0)
    trials: int = Field(..., ge=1)
    rate: float = Field(..., ge=0.0, le=1.0)
    interval: tuple[float, float] = Field(..., description="Clopper-Pearson 95% interval")


class ScalingFit(BaseModel):
    """Least-squares fit of ln(m*) against ln(epsilon)."""
    slope: float
    intercept: float
    stderr: float
    points: int


class SweepReport(BaseModel):
    """Aggregated sweep over m or epsilon."""
    axis: Literal["m", "epsilon"]
    records: List[SweepPoint] = Field(default_factory=list)
    minimal_m: Optional[List[int]] = None
    fit: Optional[ScalingFit] = None


class ProbeRecord(BaseModel):
    """One probe of the minimal-m search."""
    m: int
    success_rate: float
    trials: int
    passed: bool


class MinimalMResult(BaseModel):
    """Smallest m meeting the target success rate, with probe history."""
    m: int
    target_success: float
    history: List[ProbeRecord] = Field(default_factory=list)


class ConcentrationReport(BaseModel):
    """Failure probability of a single point versus m, with fitted decay rate."""
    epsilon: float
    m_values: List[int]
    failure_probabilities: List[float]
    trials: int
    decay_rate: Optional[float] = Field(None, description="c in P ~ 2 exp(-c eps^2 m)")


class NullSpaceReport(BaseModel):
    """Kernel vector behaviour with and without sign randomization."""
    N: int
    m: int
    kernel_ratio: float = Field(..., description="||Phi x|| / ||x||")
    sign_trials: int
    mean_ratio: float = Field(..., description="Mean of ||Phi D_xi x||^2 / ||x||^2")


# ===== Verification / CLI Schemas =====

class CheckRecord(BaseModel):
    """A single measured-vs-bound check."""
    name: str
    measured: float
    bound: float
    passed: bool
    detail: Optional[str] = None


class RunManifest(BaseModel):
    """Everything needed to replay a CLI run."""
    command: str
    parameters: dict[str, Any]
    seeds: dict[str, int]
    version: str
    timestamp: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))

    @field_validator("command")
    @classmethod
    def validate_command(cls, v: str) -> str:
        if v not in ("embed", "rip", "verify", "sweep"):
            raise ValueError(f"Unknown command: {v}")
        return v


class VerificationReport(BaseModel):
    """Structured report of a verification suite."""
    suite: str
    checks: List[CheckRecord] = Field(default_factory=list)
    violations: int = 0
    passed: bool = True
    summary: dict[str, Any] = Field(default_factory=dict)
