"""Concrete witnesses for the topological claims about the semilattice.

Each function returns the specific object a hand proof would pick (a rank, a
pair of separating open sets, a convergent family of order pairs) so that it
can be checked mechanically on a bounded universe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    ClassTag,
    Element,
    class_of,
    element_to_json,
    format_element,
    leq,
    meet,
    norm,
)
from .topology import (
    BasicOpen,
    OpenSetDescriptor,
    Predicate,
    Universe,
    UniverseBound,
    _restriction,
    descriptor_to_json,
    v_contains,
)


class PreconditionError(ValueError):
    """A witness was requested for inputs outside its hypotheses."""


def special_zero(alpha: int) -> Element:
    """The element equal to 0 at ``alpha`` and 2 elsewhere."""
    return Element(((alpha, 0),))


def special_one(alpha: int) -> Element:
    """The element equal to 1 at ``alpha`` and 2 elsewhere."""
    return Element(((alpha, 1),))


def _has_one_from(y: Element, lo: int, hi: int | None = None) -> bool:
    return any(v == 1 and c >= lo and (hi is None or c < hi) for c, v in y.entries)


# -- openness and closedness of basic sets ----------------------------------


def interior_rank(v: BasicOpen, y: Element, contains: Predicate = v_contains) -> int:
    """Rank ``b`` with ``V[b](y)`` inside ``v``, for ``y`` in ``v``."""
    if not contains(v, y):
        raise PreconditionError(f"{format_element(y)} is not in {v}")
    return max(v.rank, norm(y))


SEPARATION_CASES = {
    1: "y in X2",
    2: "y in X0 or X1, base in X2",
    3: "base and y in X0",
    4: "base and y in X1",
    5: "base in X0, y in X1",
    6: "base in X1, y in X0",
}


def separation_rank(v: BasicOpen, y: Element, contains: Predicate = v_contains) -> tuple[int, int]:
    """Rank ``b`` and case number such that ``V[b](y)`` misses ``v``.

    Requires ``v.rank >= 1`` and ``y`` outside ``v``.
    """
    if v.rank < 1:
        raise PreconditionError("separation needs a basic set of rank >= 1")
    if contains(v, y):
        raise PreconditionError(f"{format_element(y)} is in {v}")
    beta = max(v.rank, norm(y))
    cx, cy = class_of(v.base), class_of(y)
    if cy is ClassTag.X2:
        case = 1
    elif cx is ClassTag.X2:
        case = 2
    elif cx is cy:
        case = 3 if cx is ClassTag.X0 else 4
    else:
        case = 5 if cx is ClassTag.X0 else 6
    return beta, case


def separation_guards_hold(v: BasicOpen, y: Element, beta: int, case: int) -> bool:
    """Re-derive the hypotheses of the selected separation case from scratch."""
    x, a = v.base, v.rank
    cx, cy = class_of(x), class_of(y)
    if beta != max(a, norm(y)) or a < 1:
        return False
    if case == 1:
        return cy is ClassTag.X2
    if case == 2:
        return cy is not ClassTag.X2 and cx is ClassTag.X2
    if case == 3:
        return cx is cy is ClassTag.X0 and _restriction(x, 1, a) != _restriction(y, 1, a)
    if case == 4:
        if not cx is cy is ClassTag.X1:
            return False
        # either the restrictions differ, or y has a 1 somewhere in [a, beta)
        return _restriction(x, 1, a) != _restriction(y, 1, a) or _has_one_from(y, a, beta)
    if case == 5:
        return cx is ClassTag.X0 and cy is ClassTag.X1
    if case == 6:
        return cx is ClassTag.X1 and cy is ClassTag.X0
    return False


# -- Hausdorff separation ---------------------------------------------------


@dataclass(frozen=True)
class HausdorffWitness:
    x: Element
    y: Element
    left: OpenSetDescriptor
    right: OpenSetDescriptor
    case_id: int

    def to_json(self) -> dict:
        return {
            "x": element_to_json(self.x),
            "y": element_to_json(self.y),
            "case_id": self.case_id,
            "left": descriptor_to_json(self.left),
            "right": descriptor_to_json(self.right),
        }


def _singleton(x: Element) -> BasicOpen:
    # every rank gives {x} for x in X2; rank >= 1 keeps the complement legal
    return BasicOpen(x, max(1, norm(x)))


def hausdorff_witness(x: Element, y: Element) -> HausdorffWitness:
    """Disjoint open sets around two distinct points."""
    if x == y:
        raise PreconditionError("points must be distinct")
    alpha = max(norm(x), norm(y))
    cx, cy = class_of(x), class_of(y)
    if cx is ClassTag.X2:
        s = _singleton(x)
        return HausdorffWitness(x, y, OpenSetDescriptor.of(s), OpenSetDescriptor.complement_of(s), 1)
    if cy is ClassTag.X2:
        s = _singleton(y)
        return HausdorffWitness(x, y, OpenSetDescriptor.complement_of(s), OpenSetDescriptor.of(s), 2)
    vx = BasicOpen(x, alpha)
    if cx is cy:
        return HausdorffWitness(x, y, OpenSetDescriptor.of(vx), OpenSetDescriptor.of(BasicOpen(y, alpha)), 3)
    return HausdorffWitness(x, y, OpenSetDescriptor.of(vx), OpenSetDescriptor.complement_of(vx), 4)


def hausdorff_guards_hold(w: HausdorffWitness) -> bool:
    x, y = w.x, w.y
    cx, cy = class_of(x), class_of(y)
    alpha = max(norm(x), norm(y))
    if x == y:
        return False
    if w.case_id == 1:
        return cx is ClassTag.X2
    if w.case_id == 2:
        return cx is not ClassTag.X2 and cy is ClassTag.X2
    if w.case_id == 3:
        return (
            cx is cy
            and cx is not ClassTag.X2
            and _restriction(x, 1, alpha) != _restriction(y, 1, alpha)
        )
    if w.case_id == 4:
        return {cx, cy} == {ClassTag.X0, ClassTag.X1}
    return False


# -- translations -----------------------------------------------------------


def translation_image_check(
    a: Element,
    x: Element,
    alpha: int,
    bound: UniverseBound | int | Universe,
    *,
    first_failure: bool = False,
):
    """Whether ``a * (V[alpha](x) & X_N)`` lies inside ``V[alpha](a*x)``.

    With ``first_failure=True`` the offending ``z`` (or ``None``) is returned
    instead of a bool.
    """
    if alpha < max(norm(a), norm(x)):
        raise PreconditionError(f"alpha={alpha} below max(norm(a), norm(x))")
    u = bound if isinstance(bound, Universe) else Universe(bound.n if isinstance(bound, UniverseBound) else bound)
    if a not in u:
        raise PreconditionError(f"{format_element(a)} lies outside X_{u.n}")
    src = np.asarray(u.members(u.mask(BasicOpen(x, alpha))), dtype=np.int64)
    target = u.mask_array(u.mask(BasicOpen(meet(a, x), alpha)))
    images = u.meet_table[u.index(a), src]
    ok = target[images]
    if first_failure:
        bad = np.flatnonzero(~ok)
        return None if bad.size == 0 else u.elements[int(src[bad[0]])]
    return bool(ok.all())


# -- non-closedness of the order --------------------------------------------


@dataclass(frozen=True)
class NonClosednessCertificate:
    """Order pairs ``(zero_b, one_b)`` inside ``V[alpha](one_0) x V[alpha](zero_0)``."""

    alpha: int
    net: tuple[tuple[Element, Element], ...]
    limit_pair: tuple[Element, Element] = (special_one(0), special_zero(0))
    contains: Predicate = field(default=v_contains, compare=False, repr=False)

    def assertions(self) -> list[tuple[str, bool]]:
        p, q = self.limit_pair
        vp, vq = BasicOpen(p, self.alpha), BasicOpen(q, self.alpha)
        out = [(f"not {p} <= {q}", not leq(p, q))]
        for u, w in self.net:
            out.append((f"{u} <= {w}", leq(u, w)))
            out.append((f"{u} in {vp}", self.contains(vp, u)))
            out.append((f"{w} in {vq}", self.contains(vq, w)))
        return out

    @property
    def holds(self) -> bool:
        return all(ok for _, ok in self.assertions())

    def to_json(self) -> dict:
        return {
            "claim": "C10_NonClosedOrder",
            "params": {
                "alpha": self.alpha,
                "count": len(self.net),
                "limit_pair": [format_element(e) for e in self.limit_pair],
                "net": [[format_element(u), format_element(w)] for u, w in self.net],
            },
            "assertions": [{"stmt": s, "holds": ok} for s, ok in self.assertions()],
            "notes": [
                "every net pair lies in the order and in the product neighbourhood "
                "of rank alpha around the limit pair, which is outside the order"
            ],
        }


def nonclosed_certificate(alpha: int, count: int, contains: Predicate = v_contains) -> NonClosednessCertificate:
    if alpha < 1:
        raise PreconditionError("alpha must be >= 1 (rank below norm of the limit pair)")
    if count < 1:
        raise PreconditionError("count must be >= 1")
    net = tuple((special_zero(b), special_one(b)) for b in range(alpha, alpha + count))
    return NonClosednessCertificate(alpha, net, contains=contains)


def check_certificate_document(doc: dict) -> bool:
    """Re-evaluate a serialized certificate from its element literals."""
    from .core import parse_element

    params = doc["params"]
    alpha = int(params["alpha"])
    net = tuple((parse_element(u), parse_element(w)) for u, w in params["net"])
    limit = tuple(parse_element(e) for e in params["limit_pair"])
    if limit != (special_one(0), special_zero(0)) or len(net) != int(params["count"]):
        return False
    expected = nonclosed_certificate(alpha, len(net))
    if expected.net != net:
        return False
    recorded = [(a["stmt"], a["holds"]) for a in doc["assertions"]]
    return recorded == expected.assertions() and expected.holds


# -- joint continuity probe -------------------------------------------------


@dataclass(frozen=True)
class JointFailureReport:
    """``(a, x)`` with a neighbourhood of ``a*x`` no product neighbourhood maps into.

    ``escapes`` maps each tested rank pair to the pair ``(a', x')`` whose
    meet leaves ``V[gamma](a*x)``.
    """

    a: Element
    x: Element
    gamma: int
    bound: int
    max_rank: int
    escapes: dict

    def reverify(self) -> bool:
        target = BasicOpen(meet(self.a, self.x), self.gamma)
        expected = {
            (r, s)
            for r in range(norm(self.a), self.max_rank + 1)
            for s in range(norm(self.x), self.max_rank + 1)
        }
        if set(self.escapes) != expected or not expected:
            return False
        for (r, s), (a2, x2) in self.escapes.items():
            if norm(a2) > self.bound or norm(x2) > self.bound:
                return False
            if not (v_contains(BasicOpen(self.a, r), a2) and v_contains(BasicOpen(self.x, s), x2)):
                return False
            if v_contains(target, meet(a2, x2)):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "a": format_element(self.a),
            "x": format_element(self.x),
            "gamma": self.gamma,
            "bound": self.bound,
            "max_rank": self.max_rank,
            "escapes": [
                {"rho": r, "sigma": s, "a_prime": format_element(a2), "x_prime": format_element(x2)}
                for (r, s), (a2, x2) in sorted(self.escapes.items())
            ],
        }


def _escape_pair(u: Universe, a: Element, x: Element, target: np.ndarray, rho: int, sigma: int):
    ia = np.asarray(u.members(u.mask(BasicOpen(a, rho))), dtype=np.int64)
    ix = np.asarray(u.members(u.mask(BasicOpen(x, sigma))), dtype=np.int64)
    if ia.size == 0 or ix.size == 0:
        return None
    out = ~target[u.meet_table[np.ix_(ia, ix)]]
    hits = np.argwhere(out)
    if hits.size == 0:
        return None
    i, j = hits[0]
    return u.elements[int(ia[i])], u.elements[int(ix[j])]


def joint_escape_pair(a: Element, x: Element, gamma: int, rho: int, sigma: int, bound: int | Universe):
    """First ``(a', x')`` in code order from ``V[rho](a) x V[sigma](x)`` whose meet leaves ``V[gamma](a*x)``."""
    u = bound if isinstance(bound, Universe) else Universe(bound)
    target = u.mask_array(u.mask(BasicOpen(meet(a, x), gamma)))
    return _escape_pair(u, a, x, target, rho, sigma)


def joint_continuity_failure_search(
    bound: UniverseBound | int | Universe,
    max_rank: int,
    candidates: int | None = None,
) -> JointFailureReport | None:
    """Search for a point where the meet is not jointly continuous.

    Candidates ``a, x`` range over ``X_candidates`` (default: the bound) in
    code order, then ``gamma`` ascending.  Neighbourhoods are taken inside the
    bound with ranks up to ``max_rank``.  Best-effort: ``None`` only means no
    failure is visible at this truncation.
    """
    u = bound if isinstance(bound, Universe) else Universe(bound.n if isinstance(bound, UniverseBound) else bound)
    cand = u.n if candidates is None else candidates
    pool = u.elements if cand == u.n else Universe(cand).elements
    for a in pool:
        for x in pool:
            if norm(a) > max_rank or norm(x) > max_rank:
                continue
            ax = meet(a, x)
            for gamma in range(norm(ax), max_rank + 1):
                target = u.mask_array(u.mask(BasicOpen(ax, gamma)))
                # neighbourhoods shrink with rank, so the top pair decides
                if _escape_pair(u, a, x, target, max_rank, max_rank) is None:
                    continue
                escapes = {}
                for r in range(norm(a), max_rank + 1):
                    for s in range(norm(x), max_rank + 1):
                        escapes[(r, s)] = _escape_pair(u, a, x, target, r, s)
                return JointFailureReport(a, x, gamma, u.n, max_rank, escapes)
    return None
