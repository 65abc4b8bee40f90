"""Request and response bodies for the verification service.

Every endpoint answers with a RunReport; domain failures (parse errors,
axiom violations, exceeded bounds, non-normalizer gates) come back as a
normal report with exit_status 2 so the structured payload is always
emitted.  Exit status 1 means a verification check ran and failed.
"""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field


class RunReport(BaseModel):
    """Stable report envelope shared by every command."""

    model_config = ConfigDict(protected_namespaces=())

    command: str
    model_summary: dict | None = None
    results: dict
    timing_seconds: float
    qft_count: int | None = None
    exit_status: int


class ValidateRequest(BaseModel):
    """`model` is a builtin name or the text of a model file."""

    model_config = ConfigDict(protected_namespaces=())

    model: str


class EmitRequest(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str
    genus: int = 1
    which: Union[int, str] = "all"
    include_anchor: bool = False
    tol: float = 1e-9
    dense_bound: int = Field(default=4096, ge=1)


class CliffordCheckRequest(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str | None = None
    genus: int = 1
    fib_torus: bool = False
    tol: float = 1e-9
    dense_bound: int = Field(default=4096, ge=1)


class SimRequest(BaseModel):
    """Run one circuit, given as grammar text or as a seeded random word."""

    model_config = ConfigDict(protected_namespaces=())

    model: str
    circuit: str | None = None
    random_gates: int | None = Field(default=None, ge=0)
    genus: int | None = Field(default=None, ge=1)
    seed: int = 0
    backend: Literal["stabilizer", "dense", "both"] = "both"
    tol: float = 1e-9
    dense_bound: int = Field(default=4096, ge=1)


class RelationsRequest(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str
    genus: int = 2
    tol: float = 1e-9
    dense_bound: int = Field(default=4096, ge=1)


class ImageOrderRequest(BaseModel):
    model_config = ConfigDict(protected_namespaces=())

    model: str
    genus: int = 1
    bound: int = Field(default=200000, ge=1)
    dense_bound: int = Field(default=4096, ge=1)


class FibRequest(BaseModel):
    tol: float = 1e-9
