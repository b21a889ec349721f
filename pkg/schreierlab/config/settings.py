from typing import Literal, Optional
from pydantic import BaseModel, Field, validator
from schreierlab.experiments.k_rule import KRule

# Validator needs cls to be the first argument, we supress pylint here
# pylint: disable=no-self-argument,missing-function-docstring,missing-class-docstring

DiameterMode = Literal["exact", "bounds", "auto"]

class DiameterSettings(BaseModel):
    budget: int = Field(default=2_000_000_000, gt=0)
    pivots: int = Field(default=4, ge=1)
    cutoff_factor: int = Field(default=4, ge=1)
    mode: DiameterMode = "auto"

class SamplingSettings(BaseModel):
    seed: int = Field(default=0, ge=0, lt=2**64)
    distinct_retry_cap: int = Field(default=10_000, gt=0)

class LemmaSettings(BaseModel):
    trials: int = Field(default=10_000, gt=0)
    sigma_margin: float = Field(default=3.0, ge=0.0)
    enumeration_budget: int = Field(default=1_000_000, gt=0)

class PipelineSettings(BaseModel):
    max_fill_per_side: int = Field(default=1024, gt=0)

class SweepSettings(BaseModel):
    trials: int = Field(default=100, gt=0)
    k_rule: str = "power:0.5"
    timing: bool = False
    covering: bool = True
    plot: Optional[str] = None

    @validator('k_rule')
    def validate_k_rule(cls, v):
        KRule.parse(v)
        return v

class AppConfig(BaseModel):
    diameter: DiameterSettings = DiameterSettings()
    sampling: SamplingSettings = SamplingSettings()
    lemmas: LemmaSettings = LemmaSettings()
    pipeline: PipelineSettings = PipelineSettings()
    sweep: SweepSettings = SweepSettings()

    class Config:
        extra = "forbid"  # prevents additional fields
