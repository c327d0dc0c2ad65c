"""Executable model of a Lawson-style semitopological semilattice of
finitely supported {0,1,2}-valued functions, with a bounded verification
harness for its topological and order-theoretic properties."""

from .core import (
    ClassTag,
    Element,
    ElementError,
    class_of,
    format_element,
    leq,
    meet,
    norm,
    parse_element,
    support,
    upper_set,
    value_at,
)
from .topology import (
    BasicOpen,
    InvalidRankError,
    OpenSetDescriptor,
    Universe,
    UniverseBound,
    descriptor_contains,
    enumerate_members,
    v_contains,
)
from .verify import ClaimId, ClaimReport, run_all, run_claim
from .witnesses import (
    hausdorff_witness,
    interior_rank,
    nonclosed_certificate,
    separation_rank,
    special_one,
    special_zero,
    translation_image_check,
)

__version__ = "0.1.0"
