"""Request -> response functions shared by the FastAPI routes and the CLI
thin client."""

from __future__ import annotations

import numpy as np

from .. import stiffness, strains, verify
from ..kinematics import state_at
from ..tensors import Array, sym3
from . import schemas


def parse_B(values: list[float]) -> Array:
    """B from 1, 2 or 3 eigenvalues (diagonal; 2 values mean diag(a, b, b)) or
    6 symmetric components (a11, a22, a33, a12, a13, a23)."""
    v = [float(x) for x in values]
    if len(v) == 1:
        return np.diag([v[0]] * 3)
    if len(v) == 2:
        return np.diag([v[0], v[1], v[1]])
    if len(v) == 3:
        return np.diag(v)
    if len(v) == 6:
        return sym3(*v)
    raise ValueError("B takes 1, 2 or 3 eigenvalues, or 6 components")


def _listify(M: Array) -> list[list[float]]:
    return [[float(x) for x in row] for row in M]


def classify_handler(req: schemas.ClassifyRequest) -> schemas.ClassifyResponse:
    B = parse_B(req.B)
    result = stiffness.classify(B, req.rate, req.cluster_tol)
    return schemas.ClassifyResponse(
        generator=result.generator, positive=result.positive,
        invertible=result.invertible, totally_positive=result.totally_positive,
        min_z=result.min_z, min_eig_A=result.min_eig_A,
        witness_D=_listify(result.witness_D), degenerate=result.degenerate)


def ztable_handler(req: schemas.ZTableRequest) -> schemas.ZTableResponse:
    B = parse_B(req.B)
    table = stiffness.z_table(B, req.rate, req.cluster_tol)
    rows = [schemas.ZTableRow(i=e.i, j=e.j, lam_i=e.lam_i, lam_j=e.lam_j, z=e.z)
            for e in table.entries]
    return schemas.ZTableResponse(generator=req.rate, rows=rows)


def gbar_sweep_handler(req: schemas.GbarSweepRequest) -> schemas.SweepResponse:
    columns = ["Z"] + [f"gbar_{r}" for r in req.rates]
    rows = []
    for z in req.grid.values():
        rows.append([z] + [stiffness.gbar(r, z) for r in req.rates])
    return schemas.SweepResponse(columns=columns, rows=rows)


def scale_sweep_handler(req: schemas.ScaleSweepRequest) -> schemas.SweepResponse:
    ms = req.m_values
    columns = (["chi"] + [f"e_{m:g}" for m in ms]
               + [f"e_mirror_{m:g}" for m in ms])
    rows = []
    for chi in req.grid.values():
        rows.append([chi]
                    + [strains.scale_function(m, chi) for m in ms]
                    + [strains.scale_function_mirror(m, chi) for m in ms])
    return schemas.SweepResponse(columns=columns, rows=rows)


def pairing_sweep_handler(
        req: schemas.PairingSweepRequest) -> schemas.PairingSweepResponse:
    result = strains.positivity_sweep(req.generators, req.m_values,
                                      req.samples, req.seed)
    return schemas.PairingSweepResponse(
        columns=["generator", "m", "seed", "pairing_value", "min_over_batch"],
        rows=result.rows(),
        counterexamples=[(s.generator, s.m, s.seed, s.value, s.min_over_batch)
                         for s in result.counterexamples],
        min_value=result.min_value)


def verify_handler(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    results = verify.run_suite(req.suite, req.seed)
    records = [schemas.CheckRecord(**r.to_record()) for r in results]
    return schemas.VerifyResponse(results=records,
                                  all_passed=all(r.passed for r in results))


def a44_report_handler(req: schemas.A44ReportRequest) -> schemas.A44ReportResponse:
    return schemas.A44ReportResponse(**stiffness.a44_report(req.samples, req.seed))


def motion_state_handler(
        req: schemas.MotionStateRequest) -> schemas.MotionStateResponse:
    from ..cli import motion_from_config
    state = state_at(motion_from_config(req.config), req.t)
    return schemas.MotionStateResponse(
        t=state.t, F=_listify(state.F), B=_listify(state.B),
        V=_listify(state.V), R=_listify(state.R), L=_listify(state.L),
        D=_listify(state.D), W=_listify(state.W), Bdot=_listify(state.Bdot))


def rate_handler(req: schemas.RateRequest) -> schemas.RateResponse:
    from .. import rates
    from ..cli import motion_from_config
    state = state_at(motion_from_config(req.config), req.t)
    law = rates.parse_law(req.law)
    kind = req.rate.strip().lower()
    if kind in rates.NONCOROTATIONAL_KINDS:
        value = rates.noncorotational_rate(kind, state, law)
        corotational = False
    else:
        value = rates.corotational_rate(kind, state, law)
        corotational = True
    return schemas.RateResponse(
        rate=kind, law=law.name, t=req.t, corotational=corotational,
        sigma=_listify(law.sigma(state.B)), value=_listify(value))
