"""Command-line surface: products, degree lifts, label conversion, sweeps.

Spaces are either a Borel quotient ``TYPE:rank`` (e.g. ``C:3`` for the full
flag variety of C_3) or a Grassmannian ``FAMILY:k:N`` with family one of
``Gr``, ``IG``, ``OGodd``, ``OGeven`` (e.g. ``IG:2:8``).  Exit codes: 0 on
success, 1 when a verification sweep found a mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import notation, pieri, shapes
from .qhp import (
    gw_invariant_parabolic,
    parse_space,
    pw_lift,
    quantum_multiply_parabolic,
)
from .qhb import flag_ring
from .rootsystem import build_root_system
from .verify import run_suite, suite_names
from .weyl import length, reduced_word

__all__ = ["main"]


def _is_flag_space(text: str) -> bool:
    return text.count(":") == 1


def _parse_flag_space(text: str):
    t, rank = text.split(":")
    return t.strip(), int(rank)


def _emit(payload: dict, fmt: str, lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _qclass_lines(qc) -> list[str]:
    out = []
    for (w, lam), c in qc.items_sorted():
        q = "".join(f" q{i+1}^{a}" if a > 1 else (f" q{i+1}" if a else "")
                    for i, a in enumerate(lam.coords))
        out.append(f"  {c} *{q} s[{notation.format_element(w)}]  window {w.window}")
    return out or ["  0"]


def _pclass_lines(pc) -> list[str]:
    out = []
    for (w, d), c in pc.items_sorted():
        t = f" t^{d}" if d > 1 else (" t" if d == 1 else "")
        out.append(f"  {c} *{t} s[{notation.format_element(w)}]  window {w.window}")
    return out or ["  0"]


def cmd_multiply(args) -> int:
    fmt = args.format
    if _is_flag_space(args.space):
        t, rank = _parse_flag_space(args.space)
        ring = flag_ring(t, rank)
        u = notation.element_from_text(t, rank, args.u or "")
        v = notation.element_from_text(t, rank, args.v or "")
        qc = ring.quantum_multiply(u, v)
        payload = {"space": args.space, "u": list(u.window), "v": list(v.window),
                   "terms": qc.to_json_list()}
        _emit(payload, fmt, [f"sigma[{args.u or 'e'}] * sigma[{args.v or 'e'}] in QH*({t}{rank}/B):"]
              + _qclass_lines(qc))
        return 0
    gd = parse_space(args.space)
    t, rank = gd.lie_type, gd.rank
    if args.p is not None:
        u = pieri.special_class(gd, args.p).element
    elif args.u is not None:
        u = notation.element_from_text(t, rank, args.u)
    else:
        raise ValueError("give --u or --p for the left factor")
    if args.shape is not None:
        if gd.lie_type == "A":
            v = shapes.element_of_partition_A(gd.n, gd.k, notation.parse_partition(args.shape))
        else:
            v = shapes.shape_to_element(t, notation.parse_shape(gd.n, gd.k, args.shape))
    elif args.v is not None:
        v = notation.element_from_text(t, rank, args.v)
    else:
        raise ValueError("give --v or --shape for the right factor")
    if args.w is not None:
        w = notation.element_from_text(t, rank, args.w)
        d = args.d if args.d is not None else 0
        val = gw_invariant_parabolic(gd, u, v, w, d)
        payload = {"space": gd.name, "u": list(u.window), "v": list(v.window),
                   "w": list(w.window), "d": d, "invariant": val}
        _emit(payload, fmt, [f"N_{{u,v}}^{{w,{d}}} in QH*({gd.name}) = {val}"])
        return 0
    pc = quantum_multiply_parabolic(gd, u, v)
    payload = {"space": gd.name, "u": list(u.window), "v": list(v.window),
               "terms": pc.to_json_list()}
    _emit(payload, fmt, [f"product in QH*({gd.name}):"] + _pclass_lines(pc))
    return 0


def cmd_lift(args) -> int:
    gd = parse_space(args.space)
    if args.d < 1:
        raise ValueError("--d must be >= 1")
    lift = pw_lift(gd, args.d)
    payload = {
        "space": gd.name,
        "d": args.d,
        "lambda_B": list(lift.lambda_b.coords),
        "delta_P_prime": list(lift.delta_p_prime),
        "omega_product": list(reduced_word(lift.omega_product)),
    }
    _emit(payload, args.format, [
        f"degree {args.d} lift for {gd.name}:",
        f"  lambda_B  = {lift.lambda_b.coords}",
        f"  Delta_P'  = {sorted(lift.delta_p_prime)}",
        f"  omega_P omega_P' = {notation.format_element(lift.omega_product)}",
    ])
    return 0


def cmd_verify(args) -> int:
    ok, records = run_suite(args.suite, args.space, workers=args.workers)
    mismatches = [r for r in records if not r["matched"]]
    payload = {"space": args.space, "suite": args.suite, "checked": len(records),
               "mismatches": len(mismatches), "records": records if args.full_report
               else mismatches}
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(f"suite {args.suite} on {args.space}: {len(records)} records, "
              f"{len(mismatches)} mismatches")
        for r in mismatches[:20]:
            print(f"  MISMATCH p={r['p']} v={r['v']} case={r['theorem_case']}: "
                  f"lhs={r['lhs']} rhs={r['rhs']}")
    return 0 if ok else 1


def cmd_convert(args) -> int:
    gd = parse_space(args.space)
    t, rank = gd.lie_type, gd.rank
    label = args.label.strip()
    if label.startswith("[") and gd.lie_type == "A":
        w = shapes.element_of_partition_A(gd.n, gd.k, notation.parse_partition(label))
    elif "//" in label:
        w = shapes.shape_to_element(t, notation.parse_shape(gd.n, gd.k, label))
    else:
        w = notation.element_from_text(t, rank, label)
    payload = {
        "space": gd.name,
        "word": list(reduced_word(w)),
        "window": list(w.window),
        "barred": notation.barred_text(w),
        "length": length(w),
        "in_quotient": gd.contains(w),
    }
    lines = [
        f"element of W({t}{rank}) for {gd.name}:",
        f"  reduced word : {notation.format_element(w)}",
        f"  window       : {notation.format_window(w.window)}",
        f"  barred form  : {notation.barred_text(w)}",
        f"  length       : {length(w)}",
        f"  in W^P       : {gd.contains(w)}",
    ]
    if gd.contains(w):
        if gd.lie_type == "A":
            part = shapes.partition_of_element_A(w, gd.k)
            payload["partition"] = list(part)
            lines.append(f"  partition    : {notation.format_partition(part)}")
        elif gd.lie_type in ("B", "C"):
            sh = shapes.element_to_shape(w, gd.k)
            payload["shape"] = sh.to_json_dict()
            lines.append(f"  shape        : {sh.text()}")
    _emit(payload, args.format, lines)
    return 0


def cmd_cartan(args) -> int:
    t, rank = _parse_flag_space(args.space)
    rs = build_root_system(t, rank)
    payload = rs.to_json_dict()
    lines = [f"Cartan datum {t}{rank}: |R+| = {len(rs.positive_roots)}"]
    lines += [f"  cartan row {i+1}: {list(row)}" for i, row in enumerate(rs.cartan)]
    lines += [f"  {notation.format_root(rs, g)}" for g in rs.positive_roots]
    _emit(payload, args.format, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qschub",
        description="exact quantum Schubert calculus for classical Grassmannians",
    )
    ap.add_argument("--max-rank", type=int, default=None,
                    help="override the rank ceiling (env QSCHUB_MAX_RANK)")
    ap.add_argument("--cache-mb", type=float, default=None,
                    help="product cache budget in MB (env QSCHUB_CACHE_MB)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiply", help="quantum product of two Schubert classes")
    p.add_argument("--space", required=True)
    p.add_argument("--u", help="left factor (reduced word or window)")
    p.add_argument("--v", help="right factor (reduced word or window)")
    p.add_argument("--p", type=int, help="use the degree-p special class as left factor")
    p.add_argument("--shape", help="right factor as a shape '(t // b)' or partition '[..]'")
    p.add_argument("--w", help="extract the single invariant against this class")
    p.add_argument("--d", type=int, help="t-degree for the --w extraction (default 0)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_multiply)

    p = sub.add_parser("lift", help="lift a quantum degree from G/P to G/B")
    p.add_argument("--space", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("--space", required=True)
    p.add_argument("--suite", required=True, choices=suite_names())
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--full-report", action="store_true",
                   help="include matched records in the JSON report")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("convert", help="print every label form of one element")
    p.add_argument("--space", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("cartan", help="print or export the Cartan datum")
    p.add_argument("--space", required=True, help="TYPE:rank, e.g. C:4")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_cartan)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.max_rank is not None:
        os.environ["QSCHUB_MAX_RANK"] = str(args.max_rank)
    if args.cache_mb is not None:
        os.environ["QSCHUB_CACHE_MB"] = str(args.cache_mb)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
