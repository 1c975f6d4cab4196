"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (not a frame, failed property,
reconstruction outside tolerance), 2 input error (unreadable or malformed
documents, shape mismatches).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .composition import compose_frame, composed_index, tight_local_defects
from .dual import canonical_dual, reconstruct
from .errors import (
    ContractViolation,
    FrameSpecError,
    ParameterMismatchError,
    ShapeMismatchError,
    VerificationError,
)
from .gframe import DEFAULT_TOL, frame_bounds, induced_from_vectors, is_exact
from .soft_core import soft_norm
from .verify import suite_for_frame

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
RECONSTRUCTION_TOL = 1e-8


def _g6(x: float) -> str:
    return "inf" if not np.isfinite(x) else format(float(x), ".6g")


def _per_label_text(title, soft):
    return f"  {title}: " + ", ".join(f"{k}={_g6(v)}" for k, v in soft.items())


def _load_frame(path):
    return io.frame_from_json(io.load_json(path))


def _emit(args, text: str):
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _bounds_payload(F, tol):
    cert = frame_bounds(F, tol)
    payload = {"certificate": io.certificate_to_json(cert)}
    if cert.is_frame:
        payload["exact"] = is_exact(F, tol)
    else:
        payload["not_frame_at"] = cert.failing_labels(tol)
    return cert, payload


def _bounds_text(cert, payload):
    lines = [
        f"is_frame: {str(cert.is_frame).lower()}",
        f"is_tight: {str(cert.is_tight).lower()}",
        _per_label_text("lower", cert.lower),
        _per_label_text("upper", cert.upper),
        _per_label_text("condition", cert.condition),
    ]
    if "exact" in payload:
        lines.append("exact: " + ", ".join(str(e).lower() for e in payload["exact"]))
    else:
        lines.append("not a frame at: " + ", ".join(payload["not_frame_at"]))
    return lines


def cmd_bounds(args) -> int:
    F = _load_frame(args.spec)
    cert, payload = _bounds_payload(F, args.tol)
    if args.format == "json":
        _emit(args, io.dumps(payload))
    else:
        _emit(args, "\n".join(_bounds_text(cert, payload)) + "\n")
    return EXIT_OK if cert.is_frame else EXIT_FAIL


def _report_lines(reports):
    lines = []
    for r in reports:
        status = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
        detail = r.reason if r.skipped else f"worst={_g6(r.worst_violation)} tol={_g6(r.tolerance)}"
        lines.append(f"  [{status}] {r.property_id}: {detail}")
    return lines


def cmd_check(args) -> int:
    F = _load_frame(args.spec)
    cert, payload = _bounds_payload(F, args.tol)
    reports = suite_for_frame(F, trials=args.trials, seed=args.seed, tol=args.tol)
    ok = cert.is_frame and all(r.passed for r in reports)
    if args.format == "json":
        payload["seed"] = args.seed
        payload["trials"] = args.trials
        payload["properties"] = [r.to_json() for r in reports]
        payload["passed"] = ok
        _emit(args, io.dumps(payload))
    else:
        lines = _bounds_text(cert, payload) + ["properties:"] + _report_lines(reports)
        lines.append("result: " + ("PASS" if ok else "FAIL"))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_report(args) -> int:
    F = _load_frame(args.spec)
    reports = suite_for_frame(F, trials=args.trials, seed=args.seed, tol=args.tol)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        _emit(args, io.dumps({"seed": args.seed, "trials": args.trials,
                              "properties": [r.to_json() for r in reports], "passed": ok}))
    else:
        _emit(args, "\n".join(["properties:"] + _report_lines(reports)) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dual(args) -> int:
    F = _load_frame(args.spec)
    pair = canonical_dual(F, args.tol)
    doc = io.frame_to_json(pair.dual, name="canonical dual")
    doc["certificate"] = io.certificate_to_json(frame_bounds(pair.dual, args.tol))
    doc["frame_certificate"] = io.certificate_to_json(frame_bounds(F, args.tol))
    _emit(args, io.dumps(doc))
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    F = _load_frame(args.spec)
    f = io.soft_vector_from_json(io.load_json(args.vector), F.params, dim=F.ambient_dim)
    cert = frame_bounds(F, args.tol)
    pair = canonical_dual(F, args.tol)
    nf = soft_norm(f).values
    scale = np.where(nf > 0, nf, 1.0)
    errors, outputs = {}, {}
    ok = True
    for order in ("dual_inside", "dual_outside"):
        g = reconstruct(pair, f, order)
        err = soft_norm(g - f).values / scale
        errors[order] = dict(zip(F.params.labels, err.tolist()))
        outputs[order] = io.soft_vector_to_json(g)
        ok = ok and bool(np.all(err <= RECONSTRUCTION_TOL * cert.condition.values))
    if args.format == "json":
        _emit(args, io.dumps({"max_relative_error": errors, "reconstructed": outputs, "passed": ok}))
    else:
        lines = ["max relative error per parameter:"]
        for order, errs in errors.items():
            lines.append(f"  {order}: " + ", ".join(f"{k}={_g6(v)}" for k, v in errs.items()))
        lines.append("result: " + ("PASS" if ok else "FAIL"))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_compose(args) -> int:
    F = _load_frame(args.spec)
    L = io.local_frames_from_json(io.load_json(args.locals), F, args.tol)
    vectors = compose_frame(F, L)
    composed = induced_from_vectors(vectors)
    cert = frame_bounds(composed, args.tol)
    g_cert = frame_bounds(F, args.tol)
    doc = io.frame_to_json(composed, name="composed frame")
    doc["vectors"] = [io.soft_vector_to_json(v) for v in vectors]
    doc["index"] = [list(jk) for jk in composed_index(L)]
    doc["certificate"] = io.certificate_to_json(cert)
    doc["predicted_bounds"] = {
        "lower": io.soft_real_to_json(L.envelope_lower * g_cert.lower),
        "upper": io.soft_real_to_json(L.envelope_upper * g_cert.upper),
    }
    if all(L.tight) and g_cert.is_frame:
        d = tight_local_defects(F, L, args.tol)
        doc["tight_local"] = {
            "common_bound": io.soft_real_to_json(d.common_bound),
            "operator_defect": d.operator_defect,
            "dual_defect": d.dual_defect,
        }
    _emit(args, io.dumps(doc))
    return EXIT_OK if cert.is_frame else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softgframe",
        description="Soft g-frames over finite parameter sets: bounds, duals, reconstruction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials=False, fmt=True):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="relative frame-predicate tolerance (default %(default)g)")
        if trials:
            p.add_argument("--trials", type=int, default=200)
            p.add_argument("--seed", type=int, default=42)
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-o", "--out", help="write output to this file instead of stdout")

    p = sub.add_parser("check", help="bounds, exactness and the full property suite")
    p.add_argument("spec")
    common(p, trials=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", help="optimal soft frame bounds")
    p.add_argument("spec")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("dual", help="canonical dual frame as a frame spec")
    p.add_argument("spec")
    common(p, fmt=False)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("reconstruct", help="reconstruct a soft vector through the canonical dual")
    p.add_argument("spec")
    p.add_argument("vector")
    common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("compose", help="compose a g-frame with local frames")
    p.add_argument("spec")
    p.add_argument("locals")
    common(p, fmt=False)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("report", help="property suite report")
    p.add_argument("spec")
    common(p, trials=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (FrameSpecError, ShapeMismatchError, ParameterMismatchError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ContractViolation, VerificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
