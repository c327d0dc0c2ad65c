"""The semilattice of finitely supported functions from the naturals to {0, 1, 2}.

Elements are stored sparsely: only coordinates carrying the value 0 or 1 are
kept, every other coordinate implicitly holds 2.  The operation is the
coordinatewise minimum and ``x <= y`` iff ``meet(x, y) == x``.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

TRITS = (0, 1, 2)
DEFAULT = 2


class ElementError(ValueError):
    """Raised for malformed elements or element literals."""


class ClassTag(enum.Enum):
    X0 = 0
    X1 = 1
    X2 = 2

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Element:
    """A finitely supported function ``coordinate -> {0, 1, 2}``.

    ``entries`` holds the support as ``(coordinate, value)`` pairs with
    strictly ascending coordinates and values in ``{0, 1}``.  Equality is
    structural, which is sound because the form is canonical.
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        prev = -1
        for item in self.entries:
            if len(item) != 2:
                raise ElementError(f"bad entry {item!r}")
            c, v = item
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise ElementError(f"coordinate must be a natural number, got {c!r}")
            if c <= prev:
                raise ElementError("coordinates must be strictly ascending")
            if v not in (0, 1):
                raise ElementError(f"stored values must be 0 or 1, got {v!r} at {c}")
            prev = c

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> Element:
        """Build an element from any ``coordinate -> value`` map; value 2 is dropped."""
        items = []
        for c, v in mapping.items():
            if v not in TRITS:
                raise ElementError(f"value must be in {{0,1,2}}, got {v!r}")
            if v != DEFAULT:
                items.append((c, v))
        if any(not isinstance(c, int) or isinstance(c, bool) for c, _ in items):
            raise ElementError("coordinates must be natural numbers")
        return cls(tuple(sorted(items)))

    @classmethod
    def top(cls) -> Element:
        return cls(())

    def __getitem__(self, c: int) -> int:
        return value_at(self, c)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({format_element(self)})"


def value_at(x: Element, c: int) -> int:
    for k, v in x.entries:
        if k == c:
            return v
        if k > c:
            break
    return DEFAULT


def meet(x: Element, y: Element) -> Element:
    """Coordinatewise minimum."""
    if x == y:
        return x
    merged = dict(x.entries)
    for c, v in y.entries:
        if v < merged.get(c, DEFAULT):
            merged[c] = v
    return Element(tuple(sorted(merged.items())))


def leq(x: Element, y: Element) -> bool:
    # only coordinates stored in y can be smaller than 2
    for c, v in y.entries:
        if value_at(x, c) > v:
            return False
    return True


def support(x: Element) -> frozenset[int]:
    return frozenset(c for c, _ in x.entries)


def norm(x: Element) -> int:
    """Least ``a`` with ``supp(x) & [a, inf) == {}``."""
    return x.entries[-1][0] + 1 if x.entries else 0


def class_of(x: Element) -> ClassTag:
    return ClassTag(value_at(x, 0))


def upper_set(x: Element) -> frozenset[Element]:
    """All ``y >= x``, built coordinate by coordinate over ``supp(x)``."""
    coords = [c for c, _ in x.entries]
    choices = [range(v, 3) for _, v in x.entries]
    out = set()
    for values in itertools.product(*choices):
        out.add(Element.from_mapping(dict(zip(coords, values))))
    return frozenset(out)


def upper_set_size(x: Element) -> int:
    return math.prod(3 - v for _, v in x.entries)


# -- enumeration ------------------------------------------------------------


def code(x: Element, n: int) -> int:
    """Base-3 code of ``x`` in ``X_n``: digit ``c`` is ``x(c)``."""
    if norm(x) > n:
        raise ElementError(f"{x} is not in X_{n}")
    total = 0
    for c in range(n - 1, -1, -1):
        total = total * 3 + value_at(x, c)
    return total


def from_code(k: int, n: int) -> Element:
    if not 0 <= k < 3**n:
        raise ElementError(f"code {k} out of range for X_{n}")
    items = []
    for c in range(n):
        k, d = divmod(k, 3)
        if d != DEFAULT:
            items.append((c, d))
    return Element(tuple(items))


def universe_elements(n: int) -> Iterator[Element]:
    """All elements with support inside ``[0, n)``, in ascending code order."""
    for k in range(3**n):
        yield from_code(k, n)


def canonical_order(xs: Iterable[Element]) -> list[Element]:
    """Sort by base-3 code; the order does not depend on the truncation used."""
    xs = list(xs)
    n = max((norm(x) for x in xs), default=0)
    return sorted(xs, key=lambda x: code(x, n))


# -- text and JSON forms ----------------------------------------------------

_ENTRY = re.compile(r"\s*(\d+)\s*:\s*(\d+)\s*")


def format_element(x: Element) -> str:
    return "{" + ",".join(f"{c}:{v}" for c, v in x.entries) + "}"


def parse_element(text: str) -> Element:
    """Parse ``{}`` or ``{c1:v1,c2:v2,...}`` (ascending coordinates, values 0/1)."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ElementError(f"element literal must be braced: {text!r}")
    body = s[1:-1]
    if not body.strip():
        return Element.top()
    items = []
    for part in body.split(","):
        m = _ENTRY.fullmatch(part)
        if not m:
            raise ElementError(f"bad entry {part!r} in {text!r}")
        items.append((int(m.group(1)), int(m.group(2))))
    return Element(tuple(items))


def element_to_json(x: Element) -> dict:
    return {"entries": {str(c): v for c, v in x.entries}}


def element_from_json(doc: Mapping) -> Element:
    try:
        entries = doc["entries"]
        items = sorted((int(c), v) for c, v in entries.items())
    except (KeyError, AttributeError, TypeError, ValueError) as exc:
        raise ElementError(f"bad element document {doc!r}") from exc
    return Element(tuple(items))

