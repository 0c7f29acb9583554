"""Command-line front end.

Thin client over the service layer: every subcommand builds the same pydantic
request the HTTP API takes, runs it in process (or against a remote server
with --url), and renders CSV or JSON. CSV output is locale-independent with
'.' decimals, LF line endings and a header row; identical inputs and seed
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .kinematics import (Composite, Motion, RigidRotation, SimpleShear,
                         TabulatedPolynomial, TriaxialDiagonal, Uniaxial)
from .service import handlers, schemas

_AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}


# ---------------------------------------------------------------------------
# motion descriptor config format (key = value lines)
# ---------------------------------------------------------------------------

def motion_from_config(text: str) -> Motion:
    """Build a motion from key = value lines, e.g.

        type = simple_shear
        rate = 1.0

    Types: simple_shear(rate), uniaxial(profile=exponential|linear, rate),
    triaxial(rate_a, rate_b, rate_c), rigid_rotation(axis=x|y|z|ax,ay,az, rate),
    composite(rotation.*, stretch.*), polynomial(c0..ck, 9 floats row-major).
    """
    items: dict[str, str] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad motion config line: {line!r}")
        key, val = line.split("=", 1)
        items[key.strip()] = val.strip()
    return _motion_from_items(items)


def _motion_from_items(items: dict[str, str]) -> Motion:
    kind = items.get("type")
    if kind == "simple_shear":
        return SimpleShear.linear(float(items.get("rate", "1.0")))
    if kind == "uniaxial":
        profile = items.get("profile", "exponential")
        rate = float(items.get("rate", "0.3"))
        if profile == "exponential":
            return Uniaxial.exponential(rate)
        if profile == "linear":
            return Uniaxial.linear(rate)
        raise ValueError(f"unknown uniaxial profile {profile!r}")
    if kind == "triaxial":
        return TriaxialDiagonal.exponential(float(items.get("rate_a", "0.0")),
                                            float(items.get("rate_b", "0.0")),
                                            float(items.get("rate_c", "0.0")))
    if kind == "rigid_rotation":
        axis_text = items.get("axis", "z")
        if axis_text in _AXES:
            axis = _AXES[axis_text]
        else:
            parts = [float(p) for p in axis_text.split(",")]
            if len(parts) != 3:
                raise ValueError("rotation axis needs 3 components")
            axis = (parts[0], parts[1], parts[2])
        return RigidRotation(axis, float(items.get("rate", "1.0")))
    if kind == "composite":
        rot = _motion_from_items({k[len("rotation."):]: v for k, v in items.items()
                                  if k.startswith("rotation.")})
        stretch = _motion_from_items({k[len("stretch."):]: v for k, v in items.items()
                                      if k.startswith("stretch.")})
        return Composite(rot, stretch)
    if kind == "polynomial":
        coeffs = []
        k = 0
        while f"c{k}" in items:
            vals = [float(p) for p in items[f"c{k}"].split(",")]
            if len(vals) != 9:
                raise ValueError(f"c{k} needs 9 row-major components")
            coeffs.append(np.array(vals).reshape(3, 3))
            k += 1
        if not coeffs:
            raise ValueError("polynomial motion needs at least c0")
        return TabulatedPolynomial(tuple(coeffs))
    raise ValueError(f"unknown motion type {kind!r}")


def motion_to_config(motion: Motion) -> str:
    """Serialize a parametric motion back to the key = value format."""
    if motion.config is None:
        raise ValueError("motion was built from bare callables; "
                         "only parametric motions serialize")
    return "\n".join(f"{k} = {v}" for k, v in motion.config) + "\n"


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def _render_csv(columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# remote mode
# ---------------------------------------------------------------------------

_ENDPOINTS = {
    "classify": "/classify",
    "ztable": "/ztable",
    "sweep-gbar": "/sweeps/gbar",
    "sweep-scale": "/sweeps/scale",
    "sweep-pairing": "/sweeps/pairing",
    "verify": "/verify",
    "a44-report": "/reports/a44",
    "state": "/motion/state",
    "rate": "/rates/evaluate",
}

_RESPONSE_MODELS = {
    "classify": schemas.ClassifyResponse,
    "ztable": schemas.ZTableResponse,
    "sweep-gbar": schemas.SweepResponse,
    "sweep-scale": schemas.SweepResponse,
    "sweep-pairing": schemas.PairingSweepResponse,
    "verify": schemas.VerifyResponse,
    "a44-report": schemas.A44ReportResponse,
    "state": schemas.MotionStateResponse,
    "rate": schemas.RateResponse,
}

_HANDLERS = {
    "classify": handlers.classify_handler,
    "ztable": handlers.ztable_handler,
    "sweep-gbar": handlers.gbar_sweep_handler,
    "sweep-scale": handlers.scale_sweep_handler,
    "sweep-pairing": handlers.pairing_sweep_handler,
    "verify": handlers.verify_handler,
    "a44-report": handlers.a44_report_handler,
    "state": handlers.motion_state_handler,
    "rate": handlers.rate_handler,
}


def _run(command: str, request, url: str | None):
    if url is None:
        return _HANDLERS[command](request)
    import httpx  # remote mode only

    resp = httpx.post(url.rstrip("/") + _ENDPOINTS[command],
                      json=request.model_dump(mode="json"), timeout=300.0)
    resp.raise_for_status()
    return _RESPONSE_MODELS[command].model_validate(resp.json())


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _parse_floats(text: str) -> list[float]:
    return [float(p) for p in text.split(",") if p.strip() != ""]


def _parse_grid(text: str) -> schemas.GridSpec:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:steps")
    return schemas.GridSpec(start=float(parts[0]), stop=float(parts[1]),
                            steps=int(parts[2]))


def _rate_spec(args) -> str:
    rate = args.rate
    if getattr(args, "zeta", None) is not None and rate in ("aif1", "aif2"):
        rate = f"{rate}:zeta={args.zeta}"
    return rate


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corotate",
        description="Corotational rate diagnostics: classification, "
                    "characteristic sweeps and the identity-check harness.")
    parser.add_argument("--url", help="run against a remote corotate service")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, fmt_default):
        p.add_argument("--out", help="write output to FILE instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)

    p = sub.add_parser("classify", help="positivity/invertibility verdict")
    p.add_argument("--B", required=True, type=_parse_floats,
                   help="eigenvalues (1, 2 or 3 values) or 6 components "
                        "a11,a22,a33,a12,a13,a23")
    p.add_argument("--rate", default="zj")
    p.add_argument("--zeta", type=float)
    p.add_argument("--cluster-tol", type=float, default=1e-8)
    add_common(p, "json")

    p = sub.add_parser("ztable", help="z_ij characteristic table")
    p.add_argument("--B", required=True, type=_parse_floats)
    p.add_argument("--rate", default="zj")
    p.add_argument("--zeta", type=float)
    p.add_argument("--cluster-tol", type=float, default=1e-8)
    add_common(p, "csv")

    p = sub.add_parser("sweep-gbar", help="gbar(Z) characteristic functions")
    p.add_argument("--rates", default="zj,gn,log,gs")
    p.add_argument("--grid", type=_parse_grid, default=None,
                   help="start:stop:steps (default 0.05:20:1000)")
    add_common(p, "csv")

    p = sub.add_parser("sweep-scale", help="Seth-Hill scale functions")
    p.add_argument("--m", default="0.25,0.5,1,2", type=_parse_floats)
    p.add_argument("--grid", type=_parse_grid, default=None,
                   help="start:stop:steps (default 0.05:4:400)")
    add_common(p, "csv")

    p = sub.add_parser("sweep-pairing",
                       help="strain-rate positivity counterexample search")
    p.add_argument("--generators", default="zj,gn,log")
    p.add_argument("--m", default="-2,-1,0,0.5,1,2", type=_parse_floats)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    add_common(p, "csv")

    p = sub.add_parser("verify", help="run an identity-check suite")
    p.add_argument("suite", nargs="?", default="all")
    p.add_argument("--seed", type=int, default=42)
    add_common(p, "json")

    p = sub.add_parser("a44-report",
                       help="resolve the shear-diagonal closed-form question")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    add_common(p, "json")

    p = sub.add_parser("state", help="kinematic state of a motion config")
    p.add_argument("--motion", required=True,
                   help="path to a key = value motion config file")
    p.add_argument("--t", type=float, default=0.0)
    add_common(p, "json")

    p = sub.add_parser("rate",
                       help="objective rate of a stress law along a motion")
    p.add_argument("--motion", required=True,
                   help="path to a key = value motion config file")
    p.add_argument("--t", type=float, default=0.0)
    p.add_argument("--rate", default="zj",
                   help="generator descriptor or one of "
                        "cotter-rivlin|oldroyd|biezeno-hencky|truesdell")
    p.add_argument("--zeta", type=float)
    p.add_argument("--law", default="linear")
    add_common(p, "json")

    p = sub.add_parser("serve", help="run the HTTP service (needs uvicorn)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        if args.command == "classify":
            req = schemas.ClassifyRequest(B=args.B, rate=_rate_spec(args),
                                          cluster_tol=args.cluster_tol)
            resp = _run("classify", req, args.url)
            _emit(_json(resp.model_dump()), args.out)
            return 0 if resp.positive else 1

        if args.command == "ztable":
            req = schemas.ZTableRequest(B=args.B, rate=_rate_spec(args),
                                        cluster_tol=args.cluster_tol)
            resp = _run("ztable", req, args.url)
            if args.format == "json":
                _emit(_json(resp.model_dump()), args.out)
            else:
                rows = [(r.i, r.j, r.lam_i, r.lam_j, r.z) for r in resp.rows]
                _emit(_render_csv(("i", "j", "lam_i", "lam_j", "z"), rows),
                      args.out)
            return 0

        if args.command == "sweep-gbar":
            grid = args.grid or schemas.GridSpec(start=0.05, stop=20.0, steps=1000)
            req = schemas.GbarSweepRequest(rates=args.rates.split(","), grid=grid)
            resp = _run("sweep-gbar", req, args.url)
            _emit(_json(resp.model_dump()) if args.format == "json"
                  else _render_csv(resp.columns, resp.rows), args.out)
            return 0

        if args.command == "sweep-scale":
            grid = args.grid or schemas.GridSpec(start=0.05, stop=4.0, steps=400)
            req = schemas.ScaleSweepRequest(m_values=args.m, grid=grid)
            resp = _run("sweep-scale", req, args.url)
            _emit(_json(resp.model_dump()) if args.format == "json"
                  else _render_csv(resp.columns, resp.rows), args.out)
            return 0

        if args.command == "sweep-pairing":
            req = schemas.PairingSweepRequest(
                generators=args.generators.split(","), m_values=args.m,
                samples=args.samples, seed=args.seed)
            resp = _run("sweep-pairing", req, args.url)
            _emit(_json(resp.model_dump()) if args.format == "json"
                  else _render_csv(resp.columns, resp.rows), args.out)
            return 0

        if args.command == "verify":
            req = schemas.VerifyRequest(suite=args.suite, seed=args.seed)
            resp = _run("verify", req, args.url)
            if args.format == "csv":
                rows = [(r.check, r.generator, r.seed, r.residual, r.threshold,
                         r.passed) for r in resp.results]
                _emit(_render_csv(("check", "generator", "seed", "residual",
                                   "threshold", "pass"), rows), args.out)
            else:
                _emit(_json(resp.model_dump(by_alias=True)), args.out)
            return 0 if resp.all_passed else 1

        if args.command == "a44-report":
            req = schemas.A44ReportRequest(samples=args.samples, seed=args.seed)
            resp = _run("a44-report", req, args.url)
            _emit(_json(resp.model_dump()), args.out)
            return 0

        if args.command == "state":
            with open(args.motion) as fh:
                config = fh.read()
            req = schemas.MotionStateRequest(config=config, t=args.t)
            resp = _run("state", req, args.url)
            _emit(_json(resp.model_dump()), args.out)
            return 0

        if args.command == "rate":
            with open(args.motion) as fh:
                config = fh.read()
            req = schemas.RateRequest(config=config, t=args.t,
                                      rate=_rate_spec(args), law=args.law)
            resp = _run("rate", req, args.url)
            _emit(_json(resp.model_dump()), args.out)
            return 0
    except ValueError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
