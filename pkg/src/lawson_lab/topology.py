"""Basic open sets ``V[a](x)`` as exact membership predicates.

For a base point ``x`` and rank ``a >= norm(x)``:

* ``x`` in X2: the set is ``{x}``.
* ``x`` in X1: X1 points agreeing with ``x`` on ``[1, a)`` and taking no
  value 1 from ``a`` on, plus X2 points with the same two properties and
  norm above ``a``.
* ``x`` in X0: X0 points agreeing with ``x`` on ``[1, a)``, plus X2 points
  agreeing on ``[1, a)`` whose norm exceeds ``a`` and whose last support
  value is 1.

Membership is decided on stored coordinates only, so it is exact for every
element.  Bounded checks run over a :class:`Universe`, which caches
membership bitsets (Python ints, bit ``i`` = element with code ``i``).
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

import numpy as np

from .core import (
    ClassTag,
    Element,
    ElementError,
    class_of,
    code,
    element_from_json,
    element_to_json,
    format_element,
    norm,
    parse_element,
    universe_elements,
    value_at,
)


class InvalidRankError(ValueError):
    """A basic open set was requested with ``rank < norm(base)``."""


@dataclass(frozen=True)
class BasicOpen:
    base: Element
    rank: int

    def __post_init__(self) -> None:
        if not isinstance(self.rank, int) or self.rank < norm(self.base):
            raise InvalidRankError(
                f"rank {self.rank} < norm {norm(self.base)} of base {format_element(self.base)}"
            )

    def __str__(self) -> str:
        return f"V[{self.rank}]({format_element(self.base)})"


@dataclass(frozen=True)
class UniverseBound:
    """The truncation ``X_N``: elements whose support lies in ``[0, N)``."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("universe bound must be a natural number")

    def size(self) -> int:
        return 3**self.n

    def __contains__(self, x: Element) -> bool:
        return norm(x) <= self.n

    def __iter__(self):
        return universe_elements(self.n)


def _restriction(x: Element, lo: int, hi: int) -> tuple[tuple[int, int], ...]:
    return tuple(e for e in x.entries if lo <= e[0] < hi)


def v_contains(v: BasicOpen, y: Element) -> bool:
    x, a = v.base, v.rank
    cx = class_of(x)
    if cx is ClassTag.X2:
        return y == x
    cy = class_of(y)
    if cy is ClassTag.X2:
        if norm(y) <= a:
            return False
    elif cy is not cx:
        return False
    if _restriction(y, 1, a) != _restriction(x, 1, a):
        return False
    if cx is ClassTag.X1:
        return all(val != 1 for c, val in y.entries if c >= a)
    return cy is ClassTag.X0 or value_at(y, norm(y) - 1) == 1


Predicate = Callable[[BasicOpen, Element], bool]


# -- descriptors ------------------------------------------------------------


@dataclass(frozen=True)
class OpenSetDescriptor:
    """One of ``basic`` (``V``), ``complement`` (``X minus V``) or ``whole`` (``X``)."""

    kind: str
    basic: BasicOpen | None = None

    def __post_init__(self) -> None:
        if self.kind == "whole":
            if self.basic is not None:
                raise ValueError("whole descriptor takes no basic set")
        elif self.kind in ("basic", "complement"):
            if self.basic is None:
                raise ValueError(f"{self.kind} descriptor needs a basic set")
            if self.kind == "complement" and self.basic.rank < 1:
                raise InvalidRankError("complement of a basic set needs rank >= 1")
        else:
            raise ValueError(f"unknown descriptor kind {self.kind!r}")

    @classmethod
    def of(cls, v: BasicOpen) -> OpenSetDescriptor:
        return cls("basic", v)

    @classmethod
    def complement_of(cls, v: BasicOpen) -> OpenSetDescriptor:
        return cls("complement", v)

    @classmethod
    def whole(cls) -> OpenSetDescriptor:
        return cls("whole")

    def __str__(self) -> str:
        return format_descriptor(self)


def descriptor_contains(d: OpenSetDescriptor, y: Element, contains: Predicate = v_contains) -> bool:
    if d.kind == "whole":
        return True
    inside = contains(d.basic, y)
    return inside if d.kind == "basic" else not inside


_BASIC = re.compile(r"\s*V\s*\[\s*(\d+)\s*\]\s*\(\s*(\{[^}]*\})\s*\)\s*")


def format_descriptor(d: OpenSetDescriptor) -> str:
    if d.kind == "whole":
        return "X"
    s = str(d.basic)
    return "~" + s if d.kind == "complement" else s


def parse_basic(text: str) -> BasicOpen:
    m = _BASIC.fullmatch(text)
    if not m:
        raise ElementError(f"bad basic open literal {text!r}")
    return BasicOpen(parse_element(m.group(2)), int(m.group(1)))


def parse_descriptor(text: str) -> OpenSetDescriptor:
    """``V[a]({...})``, ``~V[a]({...})`` for the complement, or ``X``."""
    s = text.strip()
    if s == "X":
        return OpenSetDescriptor.whole()
    if s.startswith("~"):
        return OpenSetDescriptor.complement_of(parse_basic(s[1:]))
    return OpenSetDescriptor.of(parse_basic(s))


def descriptor_to_json(d: OpenSetDescriptor) -> dict:
    if d.kind == "whole":
        return {"kind": "whole"}
    return {"kind": d.kind, "base": element_to_json(d.basic.base), "rank": d.basic.rank}


def descriptor_from_json(doc: dict) -> OpenSetDescriptor:
    kind = doc.get("kind")
    if kind == "whole":
        return OpenSetDescriptor.whole()
    if kind not in ("basic", "complement"):
        raise ElementError(f"bad descriptor kind {kind!r}")
    return OpenSetDescriptor(kind, BasicOpen(element_from_json(doc["base"]), int(doc["rank"])))


# -- bounded universes ------------------------------------------------------


class Universe:
    """``X_n`` with cached membership bitsets for basic open sets.

    ``contains`` is the membership predicate used to fill the cache; tests
    swap in deliberately broken predicates to check the harness notices.
    """

    def __init__(self, n: int, contains: Predicate = v_contains):
        self.n = n
        self.contains = contains
        self.elements = list(universe_elements(n))
        self.size = len(self.elements)
        self.full = (1 << self.size) - 1
        self._masks: dict[BasicOpen, int] = {}
        self._members: dict[int, list[int]] = {}
        self._lock = threading.Lock()

    def index(self, x: Element) -> int:
        return code(x, self.n)

    def __contains__(self, x: Element) -> bool:
        return norm(x) <= self.n

    def mask(self, v: BasicOpen) -> int:
        m = self._masks.get(v)
        if m is None:
            m = 0
            contains = self.contains
            for i, y in enumerate(self.elements):
                if contains(v, y):
                    m |= 1 << i
            with self._lock:
                self._masks[v] = m
        return m

    def descriptor_mask(self, d: OpenSetDescriptor) -> int:
        if d.kind == "whole":
            return self.full
        m = self.mask(d.basic)
        return m if d.kind == "basic" else self.full ^ m

    def members(self, mask: int) -> list[int]:
        """Indices of the set bits of ``mask``, ascending."""
        got = self._members.get(mask)
        if got is None:
            got = []
            m = mask
            while m:
                low = m & -m
                got.append(low.bit_length() - 1)
                m ^= low
            with self._lock:
                if len(self._members) < 100_000:
                    self._members[mask] = got
        return got

    def elements_of(self, mask: int) -> list[Element]:
        return [self.elements[i] for i in self.members(mask)]

    @cached_property
    def digits(self) -> np.ndarray:
        ks = np.arange(self.size)
        return np.stack([(ks // 3**c) % 3 for c in range(self.n)], axis=1).astype(np.int8)

    @cached_property
    def meet_table(self) -> np.ndarray:
        """``meet_table[i, j]`` is the index of ``meet(elements[i], elements[j])``."""
        d = self.digits
        weights = 3 ** np.arange(self.n, dtype=np.int64)
        table = np.zeros((self.size, self.size), dtype=np.int64)
        for c in range(self.n):
            table += np.minimum(d[:, None, c], d[None, :, c]).astype(np.int64) * weights[c]
        return table

    def mask_array(self, mask: int) -> np.ndarray:
        out = np.zeros(self.size, dtype=bool)
        out[self.members(mask)] = True
        return out


def enumerate_members(
    d: OpenSetDescriptor, bound: UniverseBound | int, contains: Predicate = v_contains
) -> list[Element]:
    """All members of ``d`` in ``X_N``, ascending by base-3 code."""
    n = bound.n if isinstance(bound, UniverseBound) else bound
    return [y for y in universe_elements(n) if descriptor_contains(d, y, contains)]


def rank_monotone_check(x: Element, alpha: int, beta: int, bound: UniverseBound | int) -> bool:
    """``V[beta](x)`` inside ``V[alpha](x)`` on ``X_N``; needs ``norm(x) <= alpha <= beta``."""
    if not norm(x) <= alpha <= beta:
        raise InvalidRankError(f"need norm(x)={norm(x)} <= alpha={alpha} <= beta={beta}")
    n = bound.n if isinstance(bound, UniverseBound) else bound
    big, small = BasicOpen(x, alpha), BasicOpen(x, beta)
    return all(v_contains(big, y) for y in universe_elements(n) if v_contains(small, y))


def is_subsemilattice_bounded(v: BasicOpen, bound: UniverseBound | int | Universe) -> bool:
    """Whether ``V`` intersected with ``X_N`` is closed under ``meet``."""
    u = bound if isinstance(bound, Universe) else _universe_for(bound)
    idx = np.asarray(u.members(u.mask(v)), dtype=np.int64)
    if idx.size == 0:
        return True
    inside = u.mask_array(u.mask(v))
    return bool(inside[u.meet_table[np.ix_(idx, idx)]].all())


def finite_intersection_rank(x: Element, ranks: Iterable[int]) -> int:
    """A single rank whose basic set around ``x`` lies in every ``V[r](x)``."""
    ranks = list(ranks)
    if not ranks:
        raise ValueError("need at least one rank")
    for r in ranks:
        if r < norm(x):
            raise InvalidRankError(f"rank {r} < norm {norm(x)}")
    return max(ranks)


def _universe_for(bound: UniverseBound | int) -> Universe:
    n = bound.n if isinstance(bound, UniverseBound) else bound
    return Universe(n)
