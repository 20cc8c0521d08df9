"""Pydantic request/response models shared by the HTTP service and the CLI."""

from typing import Optional

from pydantic import BaseModel, Field


class ValidateRequest(BaseModel):
    document: str


class ViolationOut(BaseModel):
    l: int
    p: int
    q: int


class ValidateResponse(BaseModel):
    ok: bool
    kind: str
    checked: int
    violations: list[ViolationOut] = Field(default_factory=list)


class PageRequest(BaseModel):
    document: str
    r: int = 1
    method: str = "witness"
    at: Optional[tuple[int, int]] = None


class PageEntry(BaseModel):
    p: int
    q: int
    dim: int


class PageResponse(BaseModel):
    r: int
    method: str
    entries: list[PageEntry]


class PageMapRequest(BaseModel):
    document: str               # a morphism document
    r: int = 1
    at: tuple[int, int]
    method: str = "witness"


class PageMapResponse(BaseModel):
    r: int
    at: tuple[int, int]
    source_dim: int
    target_dim: int
    matrix: list[list[str]]
    iso: bool
    surjective: bool


class WeqRequest(BaseModel):
    document: str
    r: int = 0


class PredicateResponse(BaseModel):
    result: bool
    failing: Optional[tuple[int, int]] = None


class FibRequest(BaseModel):
    document: str
    r: int = 0
    style: str = "page"
    trivial: bool = False


class LiftRequest(BaseModel):
    i: str
    p: str
    top: str
    bottom: str


class LiftResponse(BaseModel):
    exists: bool
    lift: Optional[str] = None
    certificate: Optional[dict] = None


class BuildRequest(BaseModel):
    kind: str                   # disk | zw | bw | zwinf | cone | coneinf | path
    field: str = "gf2"
    n: str = "2"                # integer text or "inf"
    r: int = 0
    p: int = 0
    q: int = 0
    window: Optional[tuple[int, int, int, int]] = None
    s_max: Optional[int] = None
    document: Optional[str] = None   # input object for path


class BuildResponse(BaseModel):
    document: str
    meta: dict = Field(default_factory=dict)


class BinaryOpRequest(BaseModel):
    left: str
    right: str


class DocumentResponse(BaseModel):
    document: str


class PushoutRequest(BaseModel):
    f: str
    g: str


class PushoutResponse(BaseModel):
    document: str
    leg_left: str
    leg_right: str


class ExtendRequest(BaseModel):
    document: str
    to: str                     # integer text or "inf"


class TruncateRequest(BaseModel):
    document: str
    mode: str                   # left | upper


class CnCheckRequest(BaseModel):
    field: str = "qq"
    max_weight: int = 8


class CnCheckResponse(BaseModel):
    ok: bool
    words_checked: int
    max_weight: int
    failures: list[tuple[str, list[int]]] = Field(default_factory=list)
