"""Top-level homeomorphism decision for two framed-link diagrams.

Two closed, simply connected, topological 4-manifolds are
orientation-preserving homeomorphic exactly when their Kirby-Siebenmann
invariants agree and their intersection forms are congruent over the
integers.  The unoriented question reduces to running the oriented test
against the second diagram and against its mirror.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .diagram import FramedLink, mirror
from .forms import INDEFINITE, classify as classify_form, congruent_with_witness
from .invariants import ManifoldInvariants, intersection_form, kirby_siebenmann
from .matrices import IntRows

FORMS_NOT_CONGRUENT = "FormsNotCongruent"
KS_DIFFER = "KsDiffer"
MATCH = "Match"
MATCH_AFTER_REVERSAL = "MatchAfterReversal"


@dataclass(frozen=True)
class Verdict:
    """Decision record with the witnessing invariants."""

    homeomorphic: bool
    oriented: bool
    left: Optional[ManifoldInvariants]
    right: Optional[ManifoldInvariants]
    congruence_witness: Optional[IntRows]
    reason: str

    def as_dict(self) -> dict:
        return {
            "homeomorphic": self.homeomorphic,
            "oriented": self.oriented,
            "reason": self.reason,
            "left": self.left.as_dict() if self.left else None,
            "right": self.right.as_dict() if self.right else None,
            "congruence_witness": (
                [list(r) for r in self.congruence_witness]
                if self.congruence_witness is not None
                else None
            ),
        }


def _smooth_forms_match(left, right) -> bool:
    """Form comparison assuming both manifolds are smooth.

    Definite forms of smooth manifolds are diagonalizable over the integers,
    so rank, signature, and parity decide congruence without enumeration.
    """
    cl, cr = classify_form(left), classify_form(right)
    if cl.definiteness != cr.definiteness:
        return False
    return (cl.rank, cl.signature, cl.parity) == (cr.rank, cr.signature, cr.parity)


def homeomorphic_oriented(
    left: FramedLink, right: FramedLink, *, smooth: bool = False
) -> Verdict:
    """Decide orientation-preserving homeomorphism of the presented manifolds.

    The Kirby-Siebenmann comparison runs first and short-circuits the
    potentially expensive definite-form enumeration.  With smooth=True both
    manifolds are asserted smooth: ks vanishes and definite forms are
    compared by their classification alone.
    """
    if smooth:
        lv, rv = intersection_form(left), intersection_form(right)
        ok = _smooth_forms_match(lv, rv)
        return Verdict(ok, True, None, None, None, MATCH if ok else FORMS_NOT_CONGRUENT)
    li, ri = kirby_siebenmann(left), kirby_siebenmann(right)
    if li.ks != ri.ks:
        return Verdict(False, True, li, ri, None, KS_DIFFER)
    ok, witness = congruent_with_witness(li.form, ri.form)
    reason = MATCH if ok else FORMS_NOT_CONGRUENT
    return Verdict(ok, True, li, ri, witness, reason)


def homeomorphic_unoriented(
    left: FramedLink, right: FramedLink, *, smooth: bool = False
) -> Verdict:
    """Decide homeomorphism disregarding orientations.

    Runs the oriented test as given, then against the mirror of the second
    diagram; a match either way means homeomorphic, and the reason records
    which pass succeeded.
    """
    first = homeomorphic_oriented(left, right, smooth=smooth)
    if first.homeomorphic:
        return Verdict(True, False, first.left, first.right,
                       first.congruence_witness, MATCH)
    second = homeomorphic_oriented(left, mirror(right), smooth=smooth)
    if second.homeomorphic:
        return Verdict(True, False, second.left, second.right,
                       second.congruence_witness, MATCH_AFTER_REVERSAL)
    return Verdict(False, False, first.left, first.right, None, first.reason)
