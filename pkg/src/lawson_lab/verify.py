"""Bounded, exhaustive verification of the claims about the semilattice.

Every claim is checked over a truncation: inputs are drawn from ``X_N``,
inclusions and disjointness are decided inside the larger ``X_M``, and ranks
run up to ``max_rank``.  Membership itself is exact, so a reported failure is
always a genuine violation; a pass is evidence, not proof.
"""

from __future__ import annotations

import enum
import itertools
import json
import os
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    Element,
    class_of,
    format_element,
    leq,
    meet,
    norm,
    parse_element,
    support,
    universe_elements,
    upper_set,
    upper_set_size,
)
from .topology import (
    BasicOpen,
    OpenSetDescriptor,
    Predicate,
    Universe,
    descriptor_contains,
    finite_intersection_rank,
    v_contains,
)
from .witnesses import (
    hausdorff_guards_hold,
    hausdorff_witness,
    interior_rank,
    joint_continuity_failure_search,
    nonclosed_certificate,
    separation_guards_hold,
    separation_rank,
    special_one,
    special_zero,
    translation_image_check,
)

THREADS_ENV = "LAWSON_LAB_THREADS"


class BoundsError(ValueError):
    pass


class ClaimId(str, enum.Enum):
    C1_UpperFinite = "C1_UpperFinite"
    C2_BasicOpen = "C2_BasicOpen"
    C3_Base = "C3_Base"
    C4_X2Discrete = "C4_X2Discrete"
    C5_BasicClosed = "C5_BasicClosed"
    C6_Hausdorff = "C6_Hausdorff"
    C7_FiniteIntersection = "C7_FiniteIntersection"
    C8_Lawson = "C8_Lawson"
    C10_NonClosedOrder = "C10_NonClosedOrder"
    P1_JointContinuityProbe = "P1_JointContinuityProbe"
    SUB_Subsemilattice = "SUB_Subsemilattice"
    MONO_RankMonotone = "MONO_RankMonotone"

    def __str__(self) -> str:
        return self.value


CLAIM_ORDER = list(ClaimId)


@dataclass
class ClaimReport:
    claim: ClaimId
    params: dict
    passed: bool
    checked_count: int
    counterexample: dict | None = None
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "claim": self.claim.value,
            "params": dict(self.params),
            "passed": self.passed,
            "checked_count": self.checked_count,
            "counterexample": self.counterexample,
            "elapsed": round(self.elapsed, 6),
            "notes": list(self.notes),
        }


class _Sweep:
    """Counts checks and keeps the first failure seen in sweep order."""

    def __init__(self) -> None:
        self.checked = 0
        self.failures = 0
        self.first: dict | None = None

    def check(self, ok: bool, make_trace: Callable[[], dict]) -> bool:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.first is None:
                self.first = make_trace()
        return ok


def _lit(x: Element) -> str:
    return format_element(x)


def _first_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class _Context:
    n: int
    m: int
    max_rank: int
    contains: Predicate
    uni: Universe

    def __post_init__(self) -> None:
        self.inputs = list(universe_elements(self.n))
        self.in_n = 0
        for x in self.inputs:
            self.in_n |= 1 << self.uni.index(x)

    def ranks(self, lo: int):
        return range(lo, self.max_rank + 1)

    def mask(self, x: Element, rank: int) -> int:
        return self.uni.mask(BasicOpen(x, rank))

    def el(self, i: int) -> Element:
        return self.uni.elements[i]


# -- runners ----------------------------------------------------------------


def _c1(ctx: _Context, sw: _Sweep) -> list[str]:
    for x in ctx.inputs:
        up = upper_set(x)
        brute = {y for y in ctx.uni.elements if leq(x, y)}
        size = upper_set_size(x)
        bound = 3 ** len(support(x))
        ok = up == brute and len(up) == size and size <= bound and all(norm(y) <= norm(x) for y in up)

        def trace(x=x, up=up, brute=brute):
            diff = sorted(up ^ brute, key=lambda e: ctx.uni.index(e) if e in ctx.uni else -1)
            return {
                "assertion": "upper_set(x) equals the brute-force filter and has product size",
                "inputs": {"x": _lit(x)},
                "witness": {
                    "size": len(up),
                    "product": upper_set_size(x),
                    "bound": 3 ** len(support(x)),
                    "y": _lit(diff[0]) if diff else None,
                },
            }

        sw.check(ok, trace)
    return []


def _c2(ctx: _Context, sw: _Sweep) -> list[str]:
    for x in ctx.inputs:
        for alpha in ctx.ranks(norm(x)):
            v = BasicOpen(x, alpha)
            mv = ctx.uni.mask(v)
            for i in _bits(mv & ctx.in_n):
                y = ctx.el(i)
                beta = interior_rank(v, y, ctx.contains)
                stray = ctx.mask(y, beta) & ~mv
                sw.check(
                    stray == 0,
                    lambda x=x, alpha=alpha, y=y, beta=beta, stray=stray: {
                        "assertion": "V[beta](y) inside V[alpha](x)",
                        "inputs": {"x": _lit(x), "alpha": alpha, "y": _lit(y)},
                        "witness": {"beta": beta, "z": _lit(ctx.el(_first_bit(stray)))},
                    },
                )
    return []


def _c3(ctx: _Context, sw: _Sweep) -> list[str]:
    uni = ctx.uni
    # open sets of the form basic, complement of basic, whole
    for x in ctx.inputs:
        for alpha in ctx.ranks(norm(x)):
            mv = ctx.mask(x, alpha)
            for i in _bits(ctx.in_n):
                y = ctx.el(i)
                if mv >> i & 1:
                    kind, beta = "basic", max(alpha, norm(y))
                    stray = ctx.mask(y, beta) & ~mv
                elif alpha >= 1:
                    kind, beta = "complement", max(alpha, norm(y))
                    stray = ctx.mask(y, beta) & mv
                else:
                    continue
                sw.check(
                    stray == 0,
                    lambda x=x, alpha=alpha, y=y, beta=beta, stray=stray, kind=kind: {
                        "assertion": f"a basic neighbourhood of y fits inside the {kind} set",
                        "inputs": {"x": _lit(x), "alpha": alpha, "y": _lit(y), "kind": kind},
                        "witness": {"beta": beta, "z": _lit(ctx.el(_first_bit(stray)))},
                    },
                )
    for i in _bits(ctx.in_n):
        y = ctx.el(i)
        sw.check(
            ctx.mask(y, norm(y)) & ~uni.full == 0,
            lambda y=y: {
                "assertion": "a basic neighbourhood of y fits inside the whole space",
                "inputs": {"y": _lit(y), "kind": "whole"},
                "witness": {},
            },
        )
    # pairwise intersections of basic sets
    basics = [(x, a, ctx.mask(x, a)) for x in ctx.inputs for a in ctx.ranks(norm(x))]
    for p, (x1, a1, m1) in enumerate(basics):
        for x2, a2, m2 in basics[p:]:
            inter = m1 & m2
            for i in _bits(inter & ctx.in_n):
                y = ctx.el(i)
                beta = max(a1, a2, norm(y))
                stray = ctx.mask(y, beta) & ~inter
                sw.check(
                    stray == 0,
                    lambda x1=x1, a1=a1, x2=x2, a2=a2, y=y, beta=beta, stray=stray: {
                        "assertion": "a basic neighbourhood of y fits inside the intersection",
                        "inputs": {
                            "x": _lit(x1), "alpha": a1, "x2": _lit(x2), "alpha2": a2,
                            "y": _lit(y), "kind": "intersection",
                        },
                        "witness": {"beta": beta, "z": _lit(ctx.el(_first_bit(stray)))},
                    },
                )
    return []


def _c4(ctx: _Context, sw: _Sweep) -> list[str]:
    for x in ctx.inputs:
        if class_of(x).value != 2:
            continue
        me = 1 << ctx.uni.index(x)
        for alpha in ctx.ranks(norm(x)):
            mv = ctx.mask(x, alpha)
            sw.check(
                mv == me,
                lambda x=x, alpha=alpha, mv=mv: {
                    "assertion": "V[alpha](x) is the singleton {x}",
                    "inputs": {"x": _lit(x), "alpha": alpha},
                    "witness": {"z": _lit(ctx.el(_first_bit(mv ^ me)))},
                },
            )
    return []


def _c5(ctx: _Context, sw: _Sweep) -> list[str]:
    cases = Counter()
    for x in ctx.inputs:
        for alpha in ctx.ranks(max(1, norm(x))):
            v = BasicOpen(x, alpha)
            mv = ctx.uni.mask(v)
            for i in _bits(ctx.in_n & ~mv):
                y = ctx.el(i)
                beta, case = separation_rank(v, y, ctx.contains)
                cases[case] += 1
                common = ctx.mask(y, beta) & mv
                guards = separation_guards_hold(v, y, beta, case)
                sw.check(
                    common == 0 and guards,
                    lambda x=x, alpha=alpha, y=y, beta=beta, case=case, common=common, guards=guards: {
                        "assertion": "V[beta](y) misses V[alpha](x) and the case guards hold",
                        "inputs": {"x": _lit(x), "alpha": alpha, "y": _lit(y)},
                        "witness": {
                            "beta": beta,
                            "case_id": case,
                            "guards": guards,
                            "z": _lit(ctx.el(_first_bit(common))) if common else None,
                        },
                    },
                )
    return ["cases: " + ", ".join(f"{k}={cases[k]}" for k in sorted(cases))]


def _c6(ctx: _Context, sw: _Sweep) -> list[str]:
    cases = Counter()
    for x in ctx.inputs:
        for y in ctx.inputs:
            if x == y:
                continue
            w = hausdorff_witness(x, y)
            cases[w.case_id] += 1
            lm = ctx.uni.descriptor_mask(w.left)
            rm = ctx.uni.descriptor_mask(w.right)
            ok_x = descriptor_contains(w.left, x, ctx.contains)
            ok_y = descriptor_contains(w.right, y, ctx.contains)
            guards = hausdorff_guards_hold(w)
            sw.check(
                ok_x and ok_y and lm & rm == 0 and guards,
                lambda x=x, y=y, w=w, lm=lm, rm=rm, ok_x=ok_x, ok_y=ok_y, guards=guards: {
                    "assertion": "left contains x, right contains y, left and right are disjoint",
                    "inputs": {"x": _lit(x), "y": _lit(y)},
                    "witness": {
                        "case_id": w.case_id,
                        "left": str(w.left),
                        "right": str(w.right),
                        "x_in_left": ok_x,
                        "y_in_right": ok_y,
                        "guards": guards,
                        "z": _lit(ctx.el(_first_bit(lm & rm))) if lm & rm else None,
                    },
                },
            )
    return ["cases: " + ", ".join(f"{k}={cases[k]}" for k in sorted(cases))]


def _c7(ctx: _Context, sw: _Sweep) -> list[str]:
    for x in ctx.inputs:
        pool = list(ctx.ranks(norm(x)))
        for size in (1, 2, 3):
            for ranks in itertools.combinations_with_replacement(pool, size):
                r = finite_intersection_rank(x, ranks)
                inter = ctx.uni.full
                for s in ranks:
                    inter &= ctx.mask(x, s)
                stray = ctx.mask(x, r) & ~inter
                sw.check(
                    stray == 0,
                    lambda x=x, ranks=ranks, r=r, stray=stray: {
                        "assertion": "V[max ranks](x) inside the intersection of the V[r](x)",
                        "inputs": {"x": _lit(x), "ranks": list(ranks)},
                        "witness": {"rank": r, "z": _lit(ctx.el(_first_bit(stray)))},
                    },
                )
    return []


def _c8(ctx: _Context, sw: _Sweep) -> list[str]:
    families = Counter()
    for a in ctx.inputs:
        for x in ctx.inputs:
            for alpha in ctx.ranks(max(norm(a), norm(x))):
                z = translation_image_check(a, x, alpha, ctx.uni, first_failure=True)
                if z is not None:
                    families[(str(class_of(a)), str(class_of(x)), str(class_of(z)))] += 1
                sw.check(
                    z is None,
                    lambda a=a, x=x, alpha=alpha, z=z: {
                        "assertion": "a*z in V[alpha](a*x) for every z in V[alpha](x)",
                        "inputs": {"a": _lit(a), "x": _lit(x), "alpha": alpha},
                        "witness": {"z": _lit(z), "az": _lit(meet(a, z)), "ax": _lit(meet(a, x))},
                    },
                )
    notes = ["translations are checked on one side only; the meet is commutative"]
    if families:
        notes.append(
            "failing (class a, class x, class z): "
            + ", ".join(f"{'/'.join(k)}={v}" for k, v in sorted(families.items()))
        )
    return notes


def _c10(ctx: _Context, sw: _Sweep) -> list[str]:
    count = ctx.m
    for alpha in range(1, ctx.max_rank + 1):
        cert = nonclosed_certificate(alpha, count, ctx.contains)
        limit_ok = cert.assertions()[0][1]
        for k, (u, w) in enumerate(cert.net):
            beta = alpha + k
            stmts = cert.assertions()[1 + 3 * k: 4 + 3 * k]
            ok = limit_ok and all(h for _, h in stmts)
            sw.check(
                ok,
                lambda alpha=alpha, beta=beta, stmts=stmts, limit_ok=limit_ok: {
                    "assertion": "net pair lies in the order and in the product neighbourhood",
                    "inputs": {"alpha": alpha, "beta": beta},
                    "witness": {
                        "limit_outside_order": limit_ok,
                        "failed": [s for s, h in stmts if not h],
                    },
                },
            )
    return [f"beta ranges over [alpha, alpha + {count})"]


def _p1(ctx: _Context, sw: _Sweep) -> list[str]:
    cap = min(ctx.max_rank, ctx.m - 1)
    report = joint_continuity_failure_search(ctx.uni, cap, candidates=ctx.n)
    if report is None:
        sw.checked += 1
        return [f"no joint-continuity failure visible in X_{ctx.m} with ranks <= {cap}"]
    ok = report.reverify()
    sw.check(
        ok,
        lambda: {
            "assertion": "reported joint-continuity failure re-verifies",
            "inputs": {"a": _lit(report.a), "x": _lit(report.x), "gamma": report.gamma},
            "witness": report.to_json(),
        },
    )
    sw.checked += len(report.escapes) - 1
    return [
        f"meet is not jointly continuous at ({_lit(report.a)}, {_lit(report.x)}): "
        f"V[{report.gamma}]({_lit(meet(report.a, report.x))}) is escaped from every product "
        f"neighbourhood with ranks <= {cap} inside X_{ctx.m}"
    ]


def _sub(ctx: _Context, sw: _Sweep) -> list[str]:
    uni = ctx.uni
    table = uni.meet_table
    for x in ctx.inputs:
        for alpha in ctx.ranks(norm(x)):
            mv = ctx.mask(x, alpha)
            idx = np.asarray(uni.members(mv), dtype=np.int64)
            inside = uni.mask_array(mv)
            closed = inside[table[np.ix_(idx, idx)]]
            ok = bool(closed.all())

            def trace(x=x, alpha=alpha, idx=idx, closed=closed):
                i, j = np.argwhere(~closed)[0]
                y, z = uni.elements[int(idx[i])], uni.elements[int(idx[j])]
                return {
                    "assertion": "meet of two members of V[alpha](x) is a member",
                    "inputs": {"x": _lit(x), "alpha": alpha},
                    "witness": {"y": _lit(y), "z": _lit(z), "yz": _lit(meet(y, z))},
                }

            sw.check(ok, trace)
    return []


def _mono(ctx: _Context, sw: _Sweep) -> list[str]:
    for x in ctx.inputs:
        for alpha in ctx.ranks(norm(x)):
            for beta in ctx.ranks(alpha):
                stray = ctx.mask(x, beta) & ~ctx.mask(x, alpha)
                sw.check(
                    stray == 0,
                    lambda x=x, alpha=alpha, beta=beta, stray=stray: {
                        "assertion": "V[beta](x) inside V[alpha](x)",
                        "inputs": {"x": _lit(x), "alpha": alpha, "beta": beta},
                        "witness": {"z": _lit(ctx.el(_first_bit(stray)))},
                    },
                )
    return []


RUNNERS = {
    ClaimId.C1_UpperFinite: _c1,
    ClaimId.C2_BasicOpen: _c2,
    ClaimId.C3_Base: _c3,
    ClaimId.C4_X2Discrete: _c4,
    ClaimId.C5_BasicClosed: _c5,
    ClaimId.C6_Hausdorff: _c6,
    ClaimId.C7_FiniteIntersection: _c7,
    ClaimId.C8_Lawson: _c8,
    ClaimId.C10_NonClosedOrder: _c10,
    ClaimId.P1_JointContinuityProbe: _p1,
    ClaimId.SUB_Subsemilattice: _sub,
    ClaimId.MONO_RankMonotone: _mono,
}


def check_bounds(n: int, m: int, max_rank: int) -> None:
    if n < 1:
        raise BoundsError(f"N must be >= 1, got {n}")
    if m < n:
        raise BoundsError(f"M must be >= N, got M={m}, N={n}")
    if max_rank < n:
        raise BoundsError(f"max_rank must be >= N, got max_rank={max_rank}, N={n}")


def run_claim(
    claim: ClaimId | str,
    n: int,
    m: int,
    max_rank: int,
    *,
    contains: Predicate = v_contains,
    universe: Universe | None = None,
) -> ClaimReport:
    claim = ClaimId(claim)
    check_bounds(n, m, max_rank)
    uni = universe if universe is not None else Universe(m, contains)
    if uni.n != m or uni.contains is not contains:
        raise BoundsError("universe does not match M / predicate")
    start = time.perf_counter()
    ctx = _Context(n, m, max_rank, contains, uni)
    sw = _Sweep()
    notes = RUNNERS[claim](ctx, sw)
    elapsed = time.perf_counter() - start
    notes = [f"bounded check: inputs from X_{n}, sets inspected inside X_{m}, ranks <= {max_rank}"] + notes
    if sw.failures:
        notes.append(f"{sw.failures} of {sw.checked} checks failed")
    return ClaimReport(
        claim=claim,
        params={"N": n, "M": m, "max_rank": max_rank},
        passed=sw.first is None,
        checked_count=sw.checked,
        counterexample=sw.first,
        elapsed=elapsed,
        notes=notes,
    )


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        k = int(raw)
    except ValueError as exc:
        raise BoundsError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from exc
    if k < 1:
        raise BoundsError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return k


def run_all(
    n: int,
    m: int,
    max_rank: int,
    claims: list[ClaimId | str] | None = None,
    *,
    contains: Predicate = v_contains,
    workers: int | None = None,
) -> list[ClaimReport]:
    """Run the selected claims (all by default) in the canonical claim order."""
    check_bounds(n, m, max_rank)
    selected = set(ClaimId(c) for c in claims) if claims else set(CLAIM_ORDER)
    order = [c for c in CLAIM_ORDER if c in selected]
    uni = Universe(m, contains)
    workers = worker_count() if workers is None else workers

    def one(c: ClaimId) -> ClaimReport:
        return run_claim(c, n, m, max_rank, contains=contains, universe=uni)

    if workers <= 1 or len(order) <= 1:
        return [one(c) for c in order]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, order))


# -- re-verification of counterexamples -------------------------------------


def recheck_counterexample(claim: ClaimId | str, trace: dict, contains: Predicate = v_contains) -> bool:
    """Re-evaluate a recorded failure from its literals alone.

    Returns True when the trace describes a genuine violation.
    """
    claim = ClaimId(claim)
    inp, wit = trace["inputs"], trace.get("witness", {})
    el = parse_element

    def inside(x, r, y):
        return contains(BasicOpen(x, r), y)

    if claim is ClaimId.C1_UpperFinite:
        x = el(inp["x"])
        up = upper_set(x)
        if wit.get("y") is not None:
            y = el(wit["y"])
            return (y in up) != leq(x, y)
        return len(up) != upper_set_size(x) or upper_set_size(x) > 3 ** len(support(x))
    if claim in (ClaimId.C2_BasicOpen, ClaimId.C3_Base) and inp.get("kind", "basic") == "basic":
        x, a, y, z = el(inp["x"]), inp["alpha"], el(inp["y"]), el(wit["z"])
        b = wit["beta"]
        return inside(x, a, y) and inside(y, b, z) and not inside(x, a, z)
    if claim is ClaimId.C3_Base and inp["kind"] == "complement":
        x, a, y, z = el(inp["x"]), inp["alpha"], el(inp["y"]), el(wit["z"])
        return not inside(x, a, y) and inside(y, wit["beta"], z) and inside(x, a, z)
    if claim is ClaimId.C3_Base and inp["kind"] == "whole":
        return False
    if claim is ClaimId.C3_Base and inp["kind"] == "intersection":
        x1, a1, x2, a2 = el(inp["x"]), inp["alpha"], el(inp["x2"]), inp["alpha2"]
        y, z = el(inp["y"]), el(wit["z"])
        in_both = lambda e: inside(x1, a1, e) and inside(x2, a2, e)  # noqa: E731
        return in_both(y) and inside(y, wit["beta"], z) and not in_both(z)
    if claim is ClaimId.C4_X2Discrete:
        x, z = el(inp["x"]), el(wit["z"])
        return (z != x) == inside(x, inp["alpha"], z)
    if claim is ClaimId.C5_BasicClosed:
        x, a, y = el(inp["x"]), inp["alpha"], el(inp["y"])
        if inside(x, a, y):
            return False
        if wit.get("z") is not None:
            z = el(wit["z"])
            return inside(y, wit["beta"], z) and inside(x, a, z)
        return not separation_guards_hold(BasicOpen(x, a), y, wit["beta"], wit["case_id"])
    if claim is ClaimId.C6_Hausdorff:
        from .topology import parse_descriptor

        x, y = el(inp["x"]), el(inp["y"])
        left, right = parse_descriptor(wit["left"]), parse_descriptor(wit["right"])
        if not descriptor_contains(left, x, contains) or not descriptor_contains(right, y, contains):
            return True
        if wit.get("z") is not None:
            z = el(wit["z"])
            return descriptor_contains(left, z, contains) and descriptor_contains(right, z, contains)
        return not hausdorff_guards_hold(hausdorff_witness(x, y))
    if claim is ClaimId.C7_FiniteIntersection:
        x, z = el(inp["x"]), el(wit["z"])
        return inside(x, wit["rank"], z) and not all(inside(x, r, z) for r in inp["ranks"])
    if claim is ClaimId.C8_Lawson:
        a, x, z = el(inp["a"]), el(inp["x"]), el(wit["z"])
        al = inp["alpha"]
        return inside(x, al, z) and not inside(meet(a, x), al, meet(a, z))
    if claim is ClaimId.C10_NonClosedOrder:
        alpha, beta = inp["alpha"], inp["beta"]
        u, w = special_zero(beta), special_one(beta)
        return not (
            leq(u, w)
            and inside(special_one(0), alpha, u)
            and inside(special_zero(0), alpha, w)
            and not leq(special_one(0), special_zero(0))
        )
    if claim is ClaimId.SUB_Subsemilattice:
        x, a = el(inp["x"]), inp["alpha"]
        y, z = el(wit["y"]), el(wit["z"])
        return inside(x, a, y) and inside(x, a, z) and not inside(x, a, meet(y, z))
    if claim is ClaimId.MONO_RankMonotone:
        x, z = el(inp["x"]), el(wit["z"])
        return inside(x, inp["beta"], z) and not inside(x, inp["alpha"], z)
    if claim is ClaimId.P1_JointContinuityProbe:
        # the probe only fails when its own report does not re-verify
        return True
    raise ValueError(f"no recheck for {claim}")


# -- order-closure probe ----------------------------------------------------


@dataclass
class ProbeEntry:
    pair: tuple[Element, Element]
    is_in_order: bool
    in_bounded_closure: bool
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "pair": [_lit(self.pair[0]), _lit(self.pair[1])],
            "is_in_order": self.is_in_order,
            "in_bounded_closure": self.in_bounded_closure,
            "evidence": [
                {"rho": r, "sigma": s, "u": _lit(u), "w": _lit(w)}
                for (r, s), (u, w) in sorted(self.evidence.items())
            ],
        }


def brute_force_order_closure_probe(n: int, max_rank: int) -> list[ProbeEntry]:
    """Which pairs outside the order look like limits of order pairs?

    The first entry is always the pair ``(one_0, zero_0)`` with, for every
    rank pair ``(rho, sigma)`` in ``[1, max_rank]``, an order pair
    ``(zero_b, one_b)`` inside ``V[rho](one_0) x V[sigma](zero_0)``.  The
    remaining entries list every pair of ``X_N`` outside the order for which
    an order pair exists in the product of its rank-``max_rank``
    neighbourhoods inside ``X_{max_rank + 1}``; neighbourhoods shrink with
    rank, so that one product decides all smaller ones.
    """
    if n < 2:
        raise BoundsError(f"N must be >= 2, got {n}")
    if max_rank < n:
        raise BoundsError(f"max_rank must be >= N, got {max_rank}")
    p, q = special_one(0), special_zero(0)
    evidence = {}
    for r in range(1, max_rank + 1):
        for s in range(1, max_rank + 1):
            b = max(r, s)
            u, w = special_zero(b), special_one(b)
            if leq(u, w) and v_contains(BasicOpen(p, r), u) and v_contains(BasicOpen(q, s), w):
                evidence[(r, s)] = (u, w)
    full = len(evidence) == max_rank * max_rank
    out = [ProbeEntry((p, q), leq(p, q), full, evidence)]

    uni = Universe(max_rank + 1)
    ups = [0] * uni.size
    for i, u in enumerate(uni.elements):
        for j, w in enumerate(uni.elements):
            if leq(u, w):
                ups[i] |= 1 << j
    for x in universe_elements(n):
        mx = uni.mask(BasicOpen(x, max_rank))
        for y in universe_elements(n):
            if leq(x, y) or (x, y) == (p, q):
                continue
            my = uni.mask(BasicOpen(y, max_rank))
            hit = next(((i, _first_bit(ups[i] & my)) for i in _bits(mx) if ups[i] & my), None)
            if hit is not None:
                ev = {(max_rank, max_rank): (uni.elements[hit[0]], uni.elements[hit[1]])}
                out.append(ProbeEntry((x, y), False, True, ev))
    return out


# -- rendering --------------------------------------------------------------


def reports_to_json(reports: list[ClaimReport], n: int, m: int, max_rank: int) -> dict:
    return {
        "config": {
            "N": n,
            "M": m,
            "max_rank": max_rank,
            "claims": [r.claim.value for r in reports],
        },
        "reports": [r.to_json() for r in reports],
        "all_passed": all(r.passed for r in reports),
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def strip_elapsed(doc: dict) -> dict:
    doc = json.loads(json.dumps(doc))
    for r in doc.get("reports", []):
        r.pop("elapsed", None)
    return doc


def render_text(reports: list[ClaimReport]) -> str:
    width = max(len(r.claim.value) for r in reports) if reports else 0
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.claim.value:<{width}}  {status}  checked={r.checked_count:<9d} {r.elapsed:8.3f}s")
        if r.counterexample:
            cx = r.counterexample
            lines.append(f"    counterexample: {cx.get('assertion', '')}")
            for k, v in cx.get("inputs", {}).items():
                lines.append(f"      {k} = {v}")
            for k, v in cx.get("witness", {}).items():
                if isinstance(v, (dict, list)):
                    v = json.dumps(v)
                lines.append(f"      {k} = {v}")
    total = sum(r.passed for r in reports)
    lines.append(f"{total}/{len(reports)} claims passed")
    return "\n".join(lines)
