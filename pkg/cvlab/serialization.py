"""
JSON wire format.

Every wire object has a pydantic model; scalars travel as "p/q" strings so
rational values survive the round trip, and +inf travels as "+inf". Reports
carry ``"schema": "cvlab/1"`` and the arithmetic mode.
"""

import math
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Sequence, Union

from pydantic import BaseModel, Field

from .config import get_config
from .convex import AffineForm, ConeSpec, DCPair, PolyConvexFunction
from .duality import DualConeSpec
from .errors import MalformedInputError
from .geometry import Halfspace, HalfspaceSystem, Polyhedron
from .geometry.vectors import to_point, to_scalar
from .hessian import DensityCell, DensityTerm, PiecewisePolyDensity, Theta0Atoms

SCHEMA = "cvlab/1"


def scalar_to_json(value) -> str:
    if isinstance(value, float):
        return "+inf" if value == math.inf else repr(value)
    return str(value)


def vector_to_json(values: Sequence) -> List[str]:
    return [scalar_to_json(x) for x in values]


class PolyhedronModel(BaseModel):
    dim: int
    vertices: List[List[str]] = Field(default_factory=list)
    rays: List[List[str]] = Field(default_factory=list)

    def build(self) -> Polyhedron:
        if not self.vertices:
            return Polyhedron.empty(self.dim)
        return Polyhedron.from_generators(self.dim, self.vertices, self.rays)


class HalfspaceModel(BaseModel):
    a: List[str]
    b: str


class HalfspaceSystemModel(BaseModel):
    dim: Optional[int] = None
    rows: List[HalfspaceModel]

    def build(self) -> HalfspaceSystem:
        dim = self.dim if self.dim is not None else (len(self.rows[0].a) if self.rows else None)
        if dim is None:
            raise MalformedInputError("An empty halfspace system needs its dimension")
        return HalfspaceSystem(dim, tuple(Halfspace(to_point(r.a), to_scalar(r.b)) for r in self.rows))


class AffineFormModel(BaseModel):
    y: List[str]
    c: str


class FunctionModel(BaseModel):
    n: int
    pieces: List[AffineFormModel]
    domain: Union[Literal["all"], PolyhedronModel] = "all"

    def build(self) -> PolyConvexFunction:
        domain = None if self.domain == "all" else self.domain.build()
        return PolyConvexFunction.create(self.n, [AffineForm.of(p.y, p.c) for p in self.pieces], domain)


class ConeModel(BaseModel):
    n: Optional[int] = None
    A: Union[Literal["all"], PolyhedronModel] = "all"
    O: Union[Literal["all"], PolyhedronModel] = "all"

    def build(self, n: Optional[int] = None) -> ConeSpec:
        n = self.n or n
        for side in (self.A, self.O):
            if side != "all":
                n = side.dim
        if n is None:
            raise MalformedInputError("A cone of two 'all' sets needs its dimension")
        A = Polyhedron.universe(n) if self.A == "all" else self.A.build()
        O = Polyhedron.universe(n) if self.O == "all" else self.O.build()
        return ConeSpec(n, A, O)


class DCPairModel(BaseModel):
    g: FunctionModel
    h: FunctionModel

    def build(self) -> DCPair:
        return DCPair(self.g.build(), self.h.build())


class DensityTermModel(BaseModel):
    x_exp: List[int]
    y_exp: List[int]
    s_exp: int = 0
    coeff: List[str]


class DensityCellModel(BaseModel):
    cell: PolyhedronModel
    terms: List[DensityTermModel]


class DensityModel(BaseModel):
    n: int
    m: int = 1
    cells: List[DensityCellModel]

    def build(self) -> PiecewisePolyDensity:
        cells = tuple(
            DensityCell(
                c.cell.build(),
                tuple(DensityTerm(tuple(t.x_exp), tuple(t.y_exp), t.s_exp, to_point(t.coeff)) for t in c.terms),
            )
            for c in self.cells
        )
        return PiecewisePolyDensity(self.n, self.m, cells).validate()


class ValuationModel(BaseModel):
    kind: Literal["top_degree", "dirichlet", "max_probe", "component", "dualized", "extended"]
    params: Dict[str, Any] = Field(default_factory=dict)
    n: Optional[int] = None
    d: Optional[int] = None
    m: Optional[int] = None
    cone: Optional[ConeModel] = None


# -- domain objects -> JSON ----------------------------------------------------------


def polyhedron_to_json(polyhedron: Polyhedron) -> Dict[str, Any]:
    return {
        "dim": polyhedron.dim,
        "vertices": [vector_to_json(v) for v in polyhedron.vertices],
        "rays": [vector_to_json(r) for r in polyhedron.rays],
    }


def halfspaces_to_json(system: HalfspaceSystem) -> Dict[str, Any]:
    return {"dim": system.dim, "rows": [{"a": vector_to_json(r.a), "b": scalar_to_json(r.b)} for r in system.rows]}


def function_to_json(f: PolyConvexFunction) -> Dict[str, Any]:
    return {
        "n": f.n,
        "pieces": [{"y": vector_to_json(p.y), "c": scalar_to_json(p.c)} for p in f.pieces],
        "domain": "all" if f.domain is None else polyhedron_to_json(f.domain),
    }


def _set_to_json(polyhedron: Polyhedron) -> Union[str, Dict[str, Any]]:
    return "all" if polyhedron.is_universe else polyhedron_to_json(polyhedron)


def cone_to_json(cone: Union[ConeSpec, DualConeSpec]) -> Dict[str, Any]:
    if isinstance(cone, DualConeSpec):
        return {"dual": cone_to_json(cone.primal)}
    return {"n": cone.n, "A": _set_to_json(cone.A_domain), "O": _set_to_json(cone.O_domain)}


def dc_pair_to_json(pair: DCPair) -> Dict[str, Any]:
    return {"g": function_to_json(pair.g), "h": function_to_json(pair.h)}


def theta0_to_json(atoms: Theta0Atoms) -> Dict[str, Any]:
    return {
        "n": atoms.n,
        "atoms": [
            {"x": vector_to_json(a.x), "S": polyhedron_to_json(a.S), "fx": scalar_to_json(a.fx)} for a in atoms
        ],
        "mass": scalar_to_json(atoms.total_mass),
    }


def density_to_json(phi: PiecewisePolyDensity) -> Dict[str, Any]:
    return {
        "n": phi.n,
        "m": phi.m,
        "cells": [
            {
                "cell": polyhedron_to_json(c.cell),
                "terms": [
                    {
                        "x_exp": list(t.x_exp),
                        "y_exp": list(t.y_exp),
                        "s_exp": t.s_exp,
                        "coeff": vector_to_json(t.coeff),
                    }
                    for t in c.terms
                ],
            }
            for c in phi.cells
        ],
    }


def _param_to_json(value: Any) -> Any:
    from .valuations import Valuation

    if isinstance(value, Valuation):
        return valuation_to_json(value)
    if isinstance(value, Polyhedron):
        return polyhedron_to_json(value)
    if isinstance(value, PiecewisePolyDensity):
        return density_to_json(value)
    if isinstance(value, Fraction):
        return scalar_to_json(value)
    if isinstance(value, (list, tuple)):
        return [_param_to_json(v) for v in value]
    return value


def valuation_to_json(Z) -> Dict[str, Any]:
    return {
        "kind": Z.kind,
        "params": {key: _param_to_json(value) for key, value in Z.params().items()},
        "n": Z.n,
        "d": Z.d,
        "m": Z.m,
        "cone": cone_to_json(Z.cone),
    }


# -- JSON -> domain objects ----------------------------------------------------------


def polyhedron_from_json(data: Dict[str, Any]) -> Polyhedron:
    return PolyhedronModel.model_validate(data).build()


def halfspaces_from_json(data: Dict[str, Any]) -> HalfspaceSystem:
    return HalfspaceSystemModel.model_validate(data).build()


def function_from_json(data: Dict[str, Any]) -> PolyConvexFunction:
    return FunctionModel.model_validate(data).build()


def cone_from_json(data: Dict[str, Any], n: Optional[int] = None) -> ConeSpec:
    return ConeModel.model_validate(data).build(n)


def dc_pair_from_json(data: Dict[str, Any]) -> DCPair:
    return DCPairModel.model_validate(data).build()


def density_from_json(data: Dict[str, Any]) -> PiecewisePolyDensity:
    return DensityModel.model_validate(data).build()


def valuation_from_json(data: Dict[str, Any]):
    """Rebuild a valuation from its kind, parameters and cone."""
    from . import valuations

    model = ValuationModel.model_validate(data)
    kind = model.kind

    def param(key: str) -> Any:
        if key not in model.params:
            raise MalformedInputError(f"A {kind} valuation needs the parameter {key!r}", details={"kind": kind})
        return model.params[key]

    if kind == "dualized":
        return valuations.dualize_valuation(valuation_from_json(param("base")))
    if kind == "component":
        return valuations.HomogeneousComponent(valuation_from_json(param("base")), int(param("k")))
    if kind == "extended":
        if model.cone is None:
            raise MalformedInputError("An extended valuation needs its target cone")
        base = valuation_from_json(param("base"))
        region = polyhedron_from_json(param("region"))
        return valuations.extend_valuation(base, region, model.cone.build(base.n), param("eps"))
    if kind == "top_degree":
        phi = density_from_json(param("phi"))
        cone = model.cone.build(phi.n) if model.cone else ConeSpec.full(phi.n)
        return valuations.make_top_degree(phi, cone)
    if kind == "dirichlet":
        B = polyhedron_from_json(param("B"))
        cone = model.cone.build(B.dim) if model.cone else ConeSpec.full(B.dim)
        return valuations.make_dirichlet(B, cone)
    probes = [to_point(p) for p in param("probes")]
    if not probes:
        raise MalformedInputError("A max_probe valuation needs at least one probe", details={"kind": kind})
    cone = model.cone.build(len(probes[0])) if model.cone else ConeSpec.full(len(probes[0]))
    return valuations.MaxProbeValuation(probes, cone)


def report(payload: Dict[str, Any]) -> Dict[str, Any]:
    """Wrap a result payload with the schema tag and the arithmetic mode."""
    return {"schema": SCHEMA, "mode": get_config().mode, **payload}
