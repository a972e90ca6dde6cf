"""The 3x3 gluing of two special precovers along a short exact sequence.

Given a row ``0 -> C1 -> C -> C2 -> 0``, a precover column over ``C1`` and
a precover column over ``C2``, build a middle column ``0 -> B -> T2 -> C -> 0``
so that the whole grid commutes and has exact rows and columns::

    0 -> B1 -> B  -> B2 -> 0
    0 -> T1 -> T2 -> A2 -> 0
    0 -> C1 -> C  -> C2 -> 0

The middle row is found by lifting the pulled-back row's class along
``Ext^1(A2, T1) -> Ext^1(A2, C1)``, which is onto for hereditary pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import linalg as la
from ..errors import ConstructionError, NoPreimage, OracleViolation
from ..ext import class_from_ses, ext1_pushout_map, ses_from_class, ses_pullback
from ..modules import (
    ModuleMorphism,
    ShortExactSequence,
    factor_through_mono,
    kernel_mod,
    solve_module_map,
)
from .oracle import CotorsionPairOracle


@dataclass(frozen=True, eq=False)
class Grid3x3:
    rows: tuple[ShortExactSequence, ShortExactSequence, ShortExactSequence]
    cols: tuple[ShortExactSequence, ShortExactSequence, ShortExactSequence]

    @property
    def middle_column(self) -> ShortExactSequence:
        return self.cols[1]

    @property
    def middle_row(self) -> ShortExactSequence:
        return self.rows[1]

    def failures(self) -> list[str]:
        out = []
        for name, seqs in (("row", self.rows), ("column", self.cols)):
            for k, e in enumerate(seqs):
                out.extend(f"{name} {k}: {msg}" for msg in e.failures())
        # each small square: row map then column map equals column map then row map
        r, c = self.rows, self.cols
        squares = [
            (c[1].inj @ r[0].inj, r[1].inj @ c[0].inj, "top-left"),
            (c[2].inj @ r[0].surj, r[1].surj @ c[1].inj, "top-right"),
            (c[1].surj @ r[1].inj, r[2].inj @ c[0].surj, "bottom-left"),
            (c[2].surj @ r[1].surj, r[2].surj @ c[1].surj, "bottom-right"),
        ]
        for lhs, rhs, name in squares:
            if lhs != rhs:
                out.append(f"{name} square does not commute")
        return out

    def is_valid(self) -> bool:
        return not self.failures()

    def dims(self):
        return tuple(e.dims() for e in self.rows)


def glue_3x3(oracle: CotorsionPairOracle, row: ShortExactSequence,
             left: ShortExactSequence, right: ShortExactSequence) -> Grid3x3:
    """Glue *left* (ending at ``row.left``) and *right* (ending at ``row.right``)."""
    if not oracle.hereditary:
        raise ConstructionError("gluing needs a hereditary pair")
    row.verify()
    left.verify()
    right.verify()
    if left.right != row.left or right.right != row.right:
        raise ConstructionError("columns do not end at the row's outer terms")
    if not oracle.in_B(left.left):
        raise OracleViolation("left column kernel is outside B")
    pi1, pi2 = left.surj, right.surj

    # 0 -> C1 -> E' -> A2 -> 0, the row pulled back along A2 -> C2
    pulled = ses_pullback(row, pi2)
    induced = ext1_pushout_map(pi1, right.middle)
    target = class_from_ses(induced.target, pulled)
    try:
        lifted = induced.preimage(target)
    except NoPreimage:
        raise NoPreimage("row class does not lift along T1 -> C1; is the pair hereditary?") from None
    mid_row = ses_from_class(induced.source, lifted)          # 0 -> T1 -> T2 -> A2 -> 0
    t2 = mid_row.middle

    # h: T2 -> E' over the identity of A2 and over pi1 on the left
    sol = solve_module_map(t2, pulled.middle, [
        (None, mid_row.inj.matrix, (pulled.inj @ pi1).matrix),
        (pulled.surj.matrix, None, mid_row.surj.matrix),
    ])
    if sol is None:
        raise ConstructionError("lifted class does not map onto the pulled-back row")
    h = ModuleMorphism(t2, pulled.middle, sol)
    # E' -> C: the first leg of the pullback, recovered from its defining square
    to_c = _pullback_leg(row, pulled, pi2)
    down = to_c @ h
    if not down.is_epi():
        raise ConstructionError("middle column map is not onto")
    b, b_inc = kernel_mod(down)
    mid_col = ShortExactSequence(b_inc, down)

    b1_to_b = factor_through_mono(b_inc, mid_row.inj @ left.inj)
    b_to_b2 = factor_through_mono(right.inj, mid_row.surj @ b_inc)
    top = ShortExactSequence(b1_to_b, b_to_b2)
    grid = Grid3x3((top, mid_row, row), (left, mid_col, right))
    bad = grid.failures()
    if bad:
        raise ConstructionError("glued grid fails re-verification: " + "; ".join(bad))
    if not oracle.in_B(b):
        raise OracleViolation("middle column kernel is outside B")
    if oracle.in_A(left.middle) and oracle.in_A(right.middle) and not oracle.in_A(t2):
        raise OracleViolation("extension of A-objects left A")
    return grid


def _pullback_leg(row: ShortExactSequence, pulled: ShortExactSequence, g: ModuleMorphism) -> ModuleMorphism:
    """The map ``E' -> C`` of the pullback square over ``C -> C2 <- A2``."""
    p = row.inj.p
    # E' -> C is determined by: restricted to C1 it is row.inj, and surj o leg = g o pulled.surj
    sol = solve_module_map(pulled.middle, row.middle, [
        (None, pulled.inj.matrix, row.inj.matrix),
        (row.surj.matrix, None, la.mul(p, g.matrix, pulled.surj.matrix)),
    ])
    if sol is None:
        raise ConstructionError("pullback square could not be recovered")
    return ModuleMorphism(pulled.middle, row.middle, sol)
