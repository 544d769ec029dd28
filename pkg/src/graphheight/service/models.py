"""Pydantic request models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class GraphSpec(BaseModel):
    """A graph, given either as a named family or as explicit data."""

    model_config = ConfigDict(extra="forbid")

    family: str | None = None
    vertices: list[str] | None = None
    edges: list[list[str]] | None = None

    def to_spec(self) -> dict:
        return self.model_dump(exclude_none=True)


class SchemeSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    variant: str
    edge_orbit: str | None = Field(default=None, alias="edgeOrbit")
    m: int | None = None
    n: int | None = None
    angle: dict | None = None

    def to_spec(self) -> dict:
        return self.model_dump(by_alias=True, exclude_none=True)


class HeightRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    graph: GraphSpec
    no_timing: bool = Field(default=False, alias="noTiming")


class ConstructRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    graph: GraphSpec
    # target height: an int, or "inf"
    target: int | str | None = None
    scheme: SchemeSpec | None = None
    with_oracle: bool = Field(default=False, alias="withOracle")
    no_timing: bool = Field(default=False, alias="noTiming")


class OrbitsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    graph: GraphSpec
    dot: bool = False
    no_timing: bool = Field(default=False, alias="noTiming")


class OracleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    graph: GraphSpec
    scheme: SchemeSpec
    no_timing: bool = Field(default=False, alias="noTiming")


class SearchRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    p: int = Field(ge=0)
    vmax: int = Field(default=6, ge=1)
    emax: int = Field(default=8, ge=1)
    no_timing: bool = Field(default=False, alias="noTiming")


class DynamicsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    points: list[list[str]]
    n: int = Field(default=50, ge=1)
    depth: int = Field(default=50, ge=1)
    no_timing: bool = Field(default=False, alias="noTiming")


class VerifyPaperRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    no_timing: bool = Field(default=False, alias="noTiming")
