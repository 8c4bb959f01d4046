"""Homological obstructions and the bordered-linking-matrix two-handle step.

Attaching a two-handle along a knot class of infinite order in the first
homology borders the linking matrix with the class's linking vector and
drops the free rank of the cokernel by exactly one.  The square-order test
is the necessary condition for bounding; the Rohlin bit comes from the
signature of an even unimodular presentation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .intmat import (
    AbelianGroupDesc,
    IntMatrix,
    abelian_group_of,
    det,
    is_perfect_square,
    rank,
    signature,
)

__all__ = [
    "SurgeryPresentation",
    "KnotClass",
    "ATTACHMENT_PROVENANCE",
    "has_infinite_order",
    "attach_two_handle",
    "square_order_obstruction",
    "rohlin_mu",
]

# What the two-handle step actually certifies.  The computation is purely
# homological: it shows the surgered manifold is a rational homology sphere
# and that it bounds a rational homology ball *provided* the starting
# manifold bounds a rational homology circle; no 4-manifold is constructed.
ATTACHMENT_PROVENANCE = (
    "two-handle-on-infinite-order-class;result-qs3;"
    "bounds-qb4-given-base-bounds-qs1xb3;homology-level"
)


@dataclass(frozen=True)
class SurgeryPresentation:
    """Integer surgery presentation of a 3-manifold by its linking matrix."""

    linking: IntMatrix

    def __post_init__(self) -> None:
        if not self.linking.is_symmetric:
            raise DomainError("non-symmetric", "a linking matrix must be symmetric")

    @property
    def homology(self) -> AbelianGroupDesc:
        return abelian_group_of(self.linking)


@dataclass(frozen=True)
class KnotClass:
    """A knot's homology class: its linking numbers with the surgery
    components, plus the framing of the handle to attach along it."""

    kappa: tuple[int, ...]
    framing: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa", tuple(int(x) for x in self.kappa))


def _check_dimensions(p: SurgeryPresentation, k: KnotClass) -> None:
    if len(k.kappa) != p.linking.rows:
        raise DomainError(
            "dimension-mismatch",
            f"class has {len(k.kappa)} linking numbers for a "
            f"{p.linking.rows}-component presentation",
        )


def has_infinite_order(p: SurgeryPresentation, k: KnotClass) -> bool:
    """True iff the class is nonzero in H_1 tensor Q, i.e. kappa lies outside
    the rational column span of the linking matrix."""
    _check_dimensions(p, k)
    l = p.linking
    augmented = IntMatrix.from_rows(
        [list(row) + [k.kappa[i]] for i, row in enumerate(l.to_rows())]
    ) if l.rows else IntMatrix(0, 1, ())
    return rank(augmented) > rank(l)


def attach_two_handle(
    p: SurgeryPresentation, k: KnotClass
) -> tuple[SurgeryPresentation, AbelianGroupDesc]:
    """Border the linking matrix by the class (row/column kappa, corner the
    framing).  Requires infinite order; the free rank then drops by exactly
    one, which is asserted."""
    if not has_infinite_order(p, k):
        raise DomainError(
            "finite-order-class",
            "two-handle attachment needs a class of infinite order",
        )
    rows = p.linking.to_rows()
    bordered = [row + [k.kappa[i]] for i, row in enumerate(rows)]
    bordered.append(list(k.kappa) + [k.framing])
    new_linking = IntMatrix.from_rows(bordered)
    new_p = SurgeryPresentation(new_linking)
    before = p.homology
    after = new_p.homology
    assert after.free_rank == before.free_rank - 1, "free rank must drop by exactly 1"
    return new_p, after


def square_order_obstruction(torsion_order: int) -> bool:
    """Necessary condition for bounding: the torsion order must be a perfect
    square.  True means the test passes; it is never a certificate."""
    if torsion_order < 1:
        raise DomainError("bad-torsion-order", "torsion order must be positive")
    return is_perfect_square(torsion_order)


def rohlin_mu(m: IntMatrix) -> int:
    """Rohlin invariant bit from an even unimodular symmetric presentation:
    (signature mod 16) / 8.  Requires every diagonal entry even and
    |det| = 1 (the signature of such a form is divisible by 8)."""
    if not m.is_symmetric:
        raise DomainError("non-symmetric", "Rohlin invariant needs a symmetric matrix")
    if any(m.at(i, i) % 2 for i in range(m.rows)):
        raise DomainError("odd-diagonal", "the form must be even (all diagonal entries even)")
    if abs(det(m)) != 1:
        raise DomainError("determinant-not-unit", "the presentation must be unimodular")
    sigma = signature(m)
    residue = sigma % 16
    assert residue in (0, 8), "even unimodular signature must be 0 or 8 mod 16"
    return residue // 8
