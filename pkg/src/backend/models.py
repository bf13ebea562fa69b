"""Domain records shared across modules, as Pydantic models."""

from __future__ import annotations

import math
from enum import Enum
from typing import Annotated, Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

Probability = Annotated[float, Field(ge=0.0, le=1.0)]


class TailKind(str, Enum):
    """Catalog of parametric tail rules."""

    ZERO = "zero"
    CONST = "const"
    HARMONIC = "harmonic"
    POWERLAW = "powerlaw"
    ONES_AT = "ones_at"


_REQUIRED_PARAMS: dict[TailKind, tuple[str, ...]] = {
    TailKind.ZERO: (),
    TailKind.CONST: ("p",),
    TailKind.HARMONIC: ("eps",),
    TailKind.POWERLAW: ("c", "alpha"),
    TailKind.ONES_AT: ("period", "offset"),
}


class TailRule(BaseModel):
    """Value rule for every index beyond the explicit prefix.

    harmonic: 1 - p_l = (l/(l+1))^eps, so the survival product telescopes to
    (n+1)^-eps. powerlaw: p_l = min(1, c * l^-alpha). ones_at: p_l = 1 when
    l = offset (mod period), else 0.
    """

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    kind: TailKind = TailKind.ZERO
    p: Probability | None = None
    eps: float | None = Field(default=None, gt=0)
    c: float | None = Field(default=None, gt=0)
    alpha: float | None = Field(default=None, gt=0)
    period: int | None = Field(default=None, gt=0)
    offset: int | None = None

    @model_validator(mode="after")
    def _check_params(self) -> "TailRule":
        missing = [
            name for name in _REQUIRED_PARAMS[self.kind] if getattr(self, name) is None
        ]
        if missing:
            raise ValueError(f"tail '{self.kind.value}' requires {missing}")
        return self

    @classmethod
    def zero(cls) -> "TailRule":
        return cls()

    @classmethod
    def const(cls, p: float) -> "TailRule":
        return cls(kind=TailKind.CONST, p=p)

    @classmethod
    def harmonic(cls, eps: float) -> "TailRule":
        return cls(kind=TailKind.HARMONIC, eps=eps)

    @classmethod
    def power_law(cls, c: float, alpha: float) -> "TailRule":
        return cls(kind=TailKind.POWERLAW, c=c, alpha=alpha)

    @classmethod
    def ones_at(cls, period: int, offset: int) -> "TailRule":
        return cls(kind=TailKind.ONES_AT, period=period, offset=offset)

    def value(self, l: int) -> float:
        if self.kind is TailKind.ZERO:
            return 0.0
        if self.kind is TailKind.CONST:
            return float(self.p)
        if self.kind is TailKind.HARMONIC:
            return -math.expm1(-self.eps * math.log1p(1.0 / l))
        if self.kind is TailKind.POWERLAW:
            return min(1.0, self.c * l ** (-self.alpha))
        return 1.0 if (l - self.offset) % self.period == 0 else 0.0

    def values(self, ls: np.ndarray) -> np.ndarray:
        """Vectorized ``value`` over an integer array of indices."""
        ls = np.asarray(ls, dtype=np.int64)
        if self.kind is TailKind.ZERO:
            return np.zeros(ls.shape, dtype=np.float64)
        if self.kind is TailKind.CONST:
            return np.full(ls.shape, float(self.p), dtype=np.float64)
        if self.kind is TailKind.HARMONIC:
            return -np.expm1(-self.eps * np.log1p(1.0 / ls))
        if self.kind is TailKind.POWERLAW:
            return np.minimum(1.0, self.c * ls.astype(np.float64) ** (-self.alpha))
        return np.where((ls - self.offset) % self.period == 0, 1.0, 0.0)

    def log_complements(self, ls: np.ndarray) -> np.ndarray:
        """log(1 - p_l), exact for the harmonic rule, -inf where p_l = 1."""
        ls = np.asarray(ls, dtype=np.int64)
        if self.kind is TailKind.HARMONIC:
            return -self.eps * np.log1p(1.0 / ls)
        with np.errstate(divide="ignore"):
            return np.log1p(-self.values(ls))


class ProbSeq(BaseModel):
    """A probability sequence: explicit prefix (index 1..len) plus a tail rule.

    With a zero tail the sequence is finite and ``n_q = len(prefix) + 1``.
    """

    model_config = ConfigDict(frozen=True)

    prefix: tuple[Probability, ...] = ()
    tail: TailRule = Field(default_factory=TailRule)

    @classmethod
    def finite(cls, prefix) -> "ProbSeq":
        return cls(prefix=tuple(float(x) for x in prefix))

    @classmethod
    def from_json(cls, text: str) -> "ProbSeq":
        return cls.model_validate_json(text)

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)

    @property
    def is_finite(self) -> bool:
        return self.tail.kind is TailKind.ZERO

    @property
    def n_q(self) -> int:
        return len(self.prefix) + 1

    def nonzero_indices(self) -> list[int]:
        """1-based indices of nonzero prefix entries."""
        return [i + 1 for i, x in enumerate(self.prefix) if x > 0]

    def padded(self, length: int) -> "ProbSeq":
        """Finite copy extended with zeros to the given prefix length."""
        if length <= len(self.prefix):
            return self
        return ProbSeq(prefix=self.prefix + (0.0,) * (length - len(self.prefix)))


class Verdict(str, Enum):
    HOLDS = "holds-empirically"
    FAILS = "fails-empirically"
    INCONCLUSIVE = "inconclusive"


class ConditionReport(BaseModel):
    """Grid evaluation of the survival-exponent and partial-sum conditions."""

    f_values: list[tuple[int, float]]
    sum_values: list[tuple[int, float]]
    ustar_prefix: list[int]
    verdict_star: Verdict
    verdict_double_star: Verdict
    tau: float


class LawStatus(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    HOLDS_EMPIRICALLY = "holds-empirically"
    FAILS_EMPIRICALLY = "fails-empirically"
    INCONCLUSIVE = "inconclusive"
    OPEN = "open"


class HereditaryReport(BaseModel):
    """Predicted j-hereditary 0-1 law status for j = 1, 2, 3."""

    ustar_finite: bool
    ustar: list[int] = Field(default_factory=list)
    has_fractional: bool
    support_size_at_most_one: bool
    laws: dict[int, LawStatus]


class StretchMap(BaseModel):
    """Strictly increasing map f on [1..len], stored by its image points."""

    model_config = ConfigDict(frozen=True)

    image_points: tuple[int, ...]

    @model_validator(mode="after")
    def _check_points(self) -> "StretchMap":
        pts = self.image_points
        if not pts:
            raise ValueError("stretch map needs at least one image point")
        if pts[0] < 1 or any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError(f"image points must be positive and increasing: {pts}")
        return self

    def __call__(self, i: int) -> int:
        return self.image_points[i - 1]

    def __len__(self) -> int:
        return len(self.image_points)


class GenWitness(BaseModel):
    """Gen membership decision: witness map on acceptance, first bad index otherwise."""

    accepted: bool
    mode: Literal[1, 2, 3]
    witness: StretchMap | None = None
    r: int | None = None
    violation: int | None = None


class SampleSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    seq: ProbSeq
    n: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)


class BoundValue(BaseModel):
    """A closed-form bound; the value may exceed 1."""

    value: float = Field(ge=0.0)
    formula_id: str
    inputs: dict[str, Any] = Field(default_factory=dict)


class Expectation(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"


class Checkpoint(BaseModel):
    n: int = Field(ge=1)
    sentence_id: str
    expected: Expectation
    confidence: float = Field(ge=0.0, le=1.0)
    gate: str = "monte-carlo"


class ProperCert(BaseModel):
    accepted: bool
    l_star: int | None = None
    l_double_star: int | None = None
    violation: tuple[int, ...] | None = None
    reason: str = ""


class NiceCert(BaseModel):
    accepted: bool
    l_star: int | None = None
    l_double_star: int | None = None
    violation: tuple[int, ...] | None = None
    clause: str = ""


class BoundaryCert(BaseModel):
    accepted: bool
    l_star: int | None = None
    l_double_star: int | None = None
    violation: tuple[int, ...] | None = None
    reason: str = ""


class OscillationPlan(BaseModel):
    """A constructed sequence with its alternating checkpoint schedule."""

    variant: str
    base_p: ProbSeq
    built_q: ProbSeq = Field(default_factory=ProbSeq)
    checkpoints: list[Checkpoint] = Field(default_factory=list)
    gen_mode: Literal[1, 2, 3] = 1
    l_star: int | None = None
    r: int = 0
    params: dict[str, Any] = Field(default_factory=dict)
    assumptions: list[str] = Field(default_factory=list)
    witness: StretchMap | None = None

    def with_checkpoint(self, built_q: ProbSeq, checkpoint: Checkpoint, **update):
        return self.model_copy(
            update={
                "built_q": built_q,
                "checkpoints": [*self.checkpoints, checkpoint],
                **update,
            }
        )


class Estimate(BaseModel):
    successes: int = Field(ge=0)
    trials: int = Field(ge=1)
    point: float
    ci_low: float
    ci_high: float
    alpha: float
    method: str = "wilson"


class CheckpointResult(BaseModel):
    variant: str
    n: int
    sentence: str
    trials: int
    point: float
    ci_low: float
    ci_high: float
    expected: Expectation
    passed: bool = Field(serialization_alias="pass")

    def csv_row(self) -> dict[str, Any]:
        row = self.model_dump(by_alias=True)
        row["expected"] = self.expected.value
        return row


class VerificationReport(BaseModel):
    variant: str
    rows: list[CheckpointResult]
    alternates: bool
    oscillates: bool


class PendantWitness(BaseModel):
    """A Gen_3 sequence keeping one fractional entry l1 and one certain entry l2.

    For n >= n0 the pendant sentence holds with probability in [lower, upper].
    """

    q: ProbSeq
    l1: int
    l2: int
    n0: int
    lower: float
    upper: float
