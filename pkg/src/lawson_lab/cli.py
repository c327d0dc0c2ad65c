"""Command-line entry point: ``lawson-lab <command> ...``.

Exit codes: 0 success / true, 1 a check failed / false, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import ElementError, format_element, norm, parse_element
from .topology import (
    BasicOpen,
    InvalidRankError,
    Universe,
    descriptor_contains,
    descriptor_to_json,
    enumerate_members,
    parse_basic,
    parse_descriptor,
)
from .verify import (
    BoundsError,
    ClaimId,
    brute_force_order_closure_probe,
    dumps_report,
    render_text,
    reports_to_json,
    run_all,
    worker_count,
)
from .witnesses import (
    PreconditionError,
    hausdorff_guards_hold,
    hausdorff_witness,
    interior_rank,
    joint_continuity_failure_search,
    nonclosed_certificate,
    separation_guards_hold,
    separation_rank,
)


class UsageError(Exception):
    pass


def _claims(values: list[str] | None) -> list[ClaimId] | None:
    if not values:
        return None
    out = []
    for v in values:
        for name in v.split(","):
            name = name.strip()
            if not name:
                continue
            try:
                out.append(ClaimId(name))
            except ValueError:
                raise UsageError(f"unknown claim {name!r}; choose from {', '.join(c.value for c in ClaimId)}")
    return out


def cmd_verify(args) -> tuple[int, str]:
    n = args.N
    m = args.M if args.M is not None else n + 2
    max_rank = args.max_rank if args.max_rank is not None else n + 2
    claims = _claims(args.claims)
    try:
        workers = worker_count()
        reports = run_all(n, m, max_rank, claims, workers=workers)
    except BoundsError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        text = dumps_report(reports_to_json(reports, n, m, max_rank))
    else:
        text = render_text(reports)
    return (0 if all(r.passed for r in reports) else 1), text


def cmd_member(args) -> tuple[int, str]:
    d = parse_descriptor(args.set)
    y = parse_element(args.element)
    ok = descriptor_contains(d, y)
    return (0 if ok else 1), "true" if ok else "false"


def cmd_enumerate(args) -> tuple[int, str]:
    d = parse_descriptor(args.set)
    if args.N < 0:
        raise UsageError("N must be >= 0")
    members = enumerate_members(d, args.N)
    if args.format == "json":
        return 0, json.dumps({"set": str(d), "N": args.N, "members": [format_element(y) for y in members]}, indent=2)
    return 0, "\n".join(format_element(y) for y in members)


def _witness_doc(kind: str, params: dict, case_id, assertions: list[tuple[str, bool]], extra: dict) -> dict:
    doc = {"witness": kind, "params": params}
    if case_id is not None:
        doc["case_id"] = case_id
    doc.update(extra)
    doc["assertions"] = [{"stmt": s, "holds": h} for s, h in assertions]
    return doc


def cmd_witness(args) -> tuple[int, str]:
    kind = args.kind
    if kind == "hausdorff":
        x, y = parse_element(args.first), parse_element(args.second)
        m = args.M if args.M is not None else max(norm(x), norm(y)) + 2
        w = hausdorff_witness(x, y)
        u = Universe(m)
        lm, rm = u.descriptor_mask(w.left), u.descriptor_mask(w.right)
        assertions = [
            (f"{format_element(x)} in {w.left}", descriptor_contains(w.left, x)),
            (f"{format_element(y)} in {w.right}", descriptor_contains(w.right, y)),
            (f"{w.left} and {w.right} disjoint in X_{m}", lm & rm == 0),
            (f"case {w.case_id} guards hold", hausdorff_guards_hold(w)),
        ]
        doc = _witness_doc(
            kind,
            {"x": format_element(x), "y": format_element(y), "M": m},
            w.case_id,
            assertions,
            {"left": descriptor_to_json(w.left), "right": descriptor_to_json(w.right),
             "left_text": str(w.left), "right_text": str(w.right)},
        )
    elif kind in ("interior", "separation"):
        v = parse_basic(args.first)
        y = parse_element(args.second)
        m = args.M if args.M is not None else max(v.rank, norm(y)) + 2
        u = Universe(m)
        mv = u.mask(v)
        if kind == "interior":
            beta = interior_rank(v, y)
            case_id = None
            stray = u.mask(BasicOpen(y, beta)) & ~mv
            assertions = [
                (f"{format_element(y)} in {v}", True),
                (f"V[{beta}]({format_element(y)}) inside {v} on X_{m}", stray == 0),
            ]
        else:
            beta, case_id = separation_rank(v, y)
            common = u.mask(BasicOpen(y, beta)) & mv
            assertions = [
                (f"{format_element(y)} not in {v}", True),
                (f"V[{beta}]({format_element(y)}) misses {v} on X_{m}", common == 0),
                (f"case {case_id} guards hold", separation_guards_hold(v, y, beta, case_id)),
            ]
        doc = _witness_doc(kind, {"set": str(v), "y": format_element(y), "M": m}, case_id, assertions, {"beta": beta})
    else:
        raise UsageError(f"unknown witness kind {kind!r}")
    ok = all(h for _, h in assertions)
    if args.format == "json":
        text = json.dumps(doc, indent=2)
    else:
        lines = [f"{kind} witness" + (f" (case {doc['case_id']})" if "case_id" in doc else "")]
        for key in ("beta", "left_text", "right_text"):
            if key in doc:
                lines.append(f"  {key.replace('_text', '')}: {doc[key]}")
        lines += [f"  [{'ok' if h else 'FAIL'}] {s}" for s, h in assertions]
        text = "\n".join(lines)
    return (0 if ok else 1), text


def cmd_certificate(args) -> tuple[int, str]:
    if args.alpha < 1:
        raise UsageError("--alpha must be >= 1")
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    cert = nonclosed_certificate(args.alpha, args.count)
    doc = cert.to_json()
    if args.format == "json":
        text = json.dumps(doc, indent=2)
    else:
        lines = [f"non-closedness certificate, alpha={args.alpha}, {args.count} net pairs"]
        lines += [f"  [{'ok' if a['holds'] else 'FAIL'}] {a['stmt']}" for a in doc["assertions"]]
        text = "\n".join(lines)
    return (0 if cert.holds else 1), text


def cmd_probe(args) -> tuple[int, str]:
    try:
        entries = brute_force_order_closure_probe(args.N, args.max_rank)
    except BoundsError as exc:
        raise UsageError(str(exc))
    doc = {
        "N": args.N,
        "max_rank": args.max_rank,
        "limit_pair": entries[0].to_json(),
        "other_closure_pairs": [e.to_json()["pair"] for e in entries[1:]],
    }
    ok = entries[0].in_bounded_closure and not entries[0].is_in_order
    if args.joint:
        m = args.M if args.M is not None else args.N + 2
        cap = min(args.max_rank, m - 1)
        report = joint_continuity_failure_search(m, cap, candidates=args.N)
        doc["joint_failure"] = None if report is None else report.to_json()
        if report is not None:
            ok = ok and report.reverify()
    if args.format == "json":
        return (0 if ok else 1), json.dumps(doc, indent=2)
    first = entries[0]
    lines = [
        f"pair ({format_element(first.pair[0])}, {format_element(first.pair[1])}): "
        f"in order={str(first.is_in_order).lower()}, "
        f"limit of order pairs for all {len(first.evidence)} rank pairs <= {args.max_rank}="
        f"{str(first.in_bounded_closure).lower()}",
        f"other pairs of X_{args.N} outside the order but in its bounded closure: {len(entries) - 1}",
    ]
    if args.joint:
        jf = doc["joint_failure"]
        lines.append("joint continuity failure: " + ("none found" if jf is None else f"a={jf['a']} x={jf['x']} gamma={jf['gamma']}"))
    return (0 if ok else 1), "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lawson-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the bounded claim checks")
    v.add_argument("--claims", nargs="+", help="claim ids (space or comma separated); default all")
    v.add_argument("--N", type=int, default=4, help="inputs range over X_N (default 4)")
    v.add_argument("--M", type=int, help="sets are inspected inside X_M (default N+2)")
    v.add_argument("--max-rank", type=int, dest="max_rank", help="largest rank tested (default N+2)")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("member", help="decide membership of an element in an open set")
    m.add_argument("set", help="V[a]({..}), ~V[a]({..}) or X")
    m.add_argument("element", help="element literal, e.g. {0:1,3:0}")
    m.set_defaults(func=cmd_member)

    e = sub.add_parser("enumerate", help="list the members of an open set inside X_N")
    e.add_argument("set")
    e.add_argument("--N", type=int, required=True)
    e.add_argument("--format", choices=["text", "json"], default="text")
    e.set_defaults(func=cmd_enumerate)

    w = sub.add_parser("witness", help="produce and check a separation witness")
    w.add_argument("kind", choices=["hausdorff", "interior", "separation"])
    w.add_argument("first", help="first point (hausdorff) or basic set V[a]({..})")
    w.add_argument("second", help="second point")
    w.add_argument("--M", type=int, help="universe used for the bounded checks")
    w.add_argument("--format", choices=["text", "json"], default="json")
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("certificate", help="emit the non-closed-order certificate")
    c.add_argument("--alpha", type=int, required=True)
    c.add_argument("--count", type=int, default=3)
    c.add_argument("--format", choices=["text", "json"], default="json")
    c.set_defaults(func=cmd_certificate)

    pr = sub.add_parser("probe", help="look for limits of the order that are not in it")
    pr.add_argument("--N", type=int, default=3)
    pr.add_argument("--max-rank", type=int, dest="max_rank", default=3)
    pr.add_argument("--joint", action="store_true", help="also search for a joint-continuity failure")
    pr.add_argument("--M", type=int, help="universe for the joint search (default N+2)")
    pr.add_argument("--format", choices=["text", "json"], default="text")
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, text = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ElementError, InvalidRankError) as exc:
        print(f"lawson-lab: error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"lawson-lab: precondition failed: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
