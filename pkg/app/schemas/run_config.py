from pydantic import BaseModel, ConfigDict, Field


class RunConfig(BaseModel):
    """All tunables of a ranking / generation run.

    alpha is the PageRank damping factor, beta weighs the authority (buying)
    part of the trade operator against the hub (selling) part, zeta is the
    positivity smoothing used by HITS and the trade operators, blend_c mixes
    a ranking with a reserved-resource vector.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float = Field(default=0.85, gt=0, lt=1)
    beta: float = Field(default=0.5, gt=0, lt=1)
    zeta: float = Field(default=0.99, gt=0, lt=1)
    blend_c: float = Field(default=0.5, gt=0, lt=1)
    tolerance: float = Field(default=1e-8, gt=0)
    max_iterations: int = Field(default=10000, gt=0)
    rng_seed: int = 0
    # volumes (sums of weights) vs link counts in the trade constants
    weighted_degrees: bool = True
    workers: int = Field(default=1, ge=1)
