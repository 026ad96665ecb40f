"""Finite-jet tangent spaces and normal space bases for matrix germs.

The group acting on a matrix germ combines coordinate changes on the
source with matrix equivalences: congruence ``A F A^T`` for symmetric
germs, independent multiplication ``A F B`` on both sides otherwise.
Its tangent space at ``F`` is the module spanned, over all function
coefficients, by the partials of ``F`` and by the elementary matrix
actions on ``F``.  Everything here happens in a finite jet: polynomials
are truncated at a chosen total degree, turning the quotient by the
tangent space into exact linear algebra over the rationals.

The normal space basis is read off a row reduction whose *column order*
is the deliberate part of the design.  Columns are grouped so that
off-diagonal matrix positions are consumed by pivots first and diagonal
corners last, with higher-degree monomials ahead of lower ones inside
each group.  Pivots eat early columns, so the representatives that
survive are the low-degree monomials in the late positions, which is
the shape normal-form tables are written in.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .doubling import MatrixGerm
from .rings import Monomial, Polynomial, RingContext, RingError

__all__ = [
    "TangentSpaceResult",
    "entries_cut_reduced_origin",
    "jet_monomials",
    "normal_space_basis",
    "quotient_image_rank",
    "tangent_generators",
]


def tangent_generators(F: MatrixGerm, action: str | None = None) -> list[MatrixGerm]:
    """Module generators of the tangent space at ``F``.

    ``action`` is ``"congruence"`` (symmetric germs) or ``"two-sided"``
    (anything else); by default it is inferred from the germ.  The list
    holds the partial derivative of ``F`` along every source variable,
    then the image of every elementary matrix under the linearised
    matrix action.
    """
    if action is None:
        action = "congruence" if F.symmetric else "two-sided"
    ring = F.ring
    gens = [F.derivative(name) for name in ring.variables]
    n, m = F.nrows, F.ncols
    zero = ring.zero()
    if action == "congruence":
        if not F.symmetric:
            raise RingError("congruence action needs a symmetric germ")
        for a in range(n):
            for b in range(n):
                rows = []
                for i in range(n):
                    row = []
                    for j in range(n):
                        e = zero
                        if i == a:
                            e = e + F.entries[b][j]
                        if j == a:
                            e = e + F.entries[i][b]
                        row.append(e)
                    rows.append(tuple(row))
                gens.append(MatrixGerm(tuple(rows), symmetric=True))
    elif action == "two-sided":
        if F.symmetric:
            raise RingError("two-sided action does not preserve symmetry")
        for a in range(n):
            for b in range(n):
                rows = tuple(
                    tuple(F.entries[b][j] if i == a else zero for j in range(m))
                    for i in range(n)
                )
                gens.append(MatrixGerm(rows))
        for a in range(m):
            for b in range(m):
                rows = tuple(
                    tuple(F.entries[i][a] if j == b else zero for j in range(m))
                    for i in range(n)
                )
                gens.append(MatrixGerm(rows))
    else:
        raise RingError(f"unknown action {action!r}")
    return gens


def jet_monomials(ring: RingContext, degree: int) -> list[Monomial]:
    """Exponent vectors of total degree at most ``degree``, ascending."""
    monos = [
        exps
        for exps in itertools.product(range(degree + 1), repeat=ring.arity)
        if sum(exps) <= degree
    ]
    monos.sort(key=ring.sort_key)
    return monos


@dataclass(frozen=True)
class TangentSpaceResult:
    """Normal space of a germ inside one jet level."""

    germ: MatrixGerm
    action: str
    jet_degree: int
    column_count: int
    rank: int
    codimension: int
    basis: tuple[MatrixGerm, ...]
    basis_labels: tuple[str, ...]
    stable: bool | None  # None when the next jet level was not checked


def _class_group(pos: tuple[int, int], nrows: int) -> int:
    i, j = pos
    if i != j:
        return 0
    return 1 + (nrows - 1 - i)


def _insert_row(pivots: dict, row: dict, col_key) -> bool:
    """Echelon insertion; returns whether the row added a pivot.

    The pivot column set depends only on the row space and the column
    order, never on the order rows arrive in, so streaming is safe.
    """
    while row:
        lead = min(row, key=col_key)
        if lead not in pivots:
            inv = 1 / row[lead]
            pivots[lead] = {c: v * inv for c, v in row.items()}
            return True
        coeff = row[lead]
        for c, v in pivots[lead].items():
            nv = row.get(c, Fraction(0)) - coeff * v
            if nv:
                row[c] = nv
            else:
                row.pop(c, None)
    return False


def _eliminate(F: MatrixGerm, action: str, degree: int):
    """Echelonize the tangent module inside the jet.

    Returns the pivot table plus the column bookkeeping every caller
    needs: the monomial list, rank maps for monomials and matrix
    positions, the column order, and the achieved rank.
    """
    ring = F.ring
    gens = tangent_generators(F, action)
    monos = jet_monomials(ring, degree)
    mono_rank = {mono: i for i, mono in enumerate(monos)}
    positions = F.component_positions()
    pos_rank = {pos: i for i, pos in enumerate(positions)}
    n = F.nrows

    def col_key(col):
        pos, mi = col
        return (_class_group(pos, n), -mi, pos_rank[pos])

    pivots: dict = {}
    rank = 0
    for g in gens:
        entries = [e for row in g.entries for e in row if not e.is_zero]
        if not entries:
            continue
        g_order = min(e.min_degree() for e in entries)
        for mono in monos:
            if sum(mono) + g_order > degree:
                continue
            shifted = ring.monomial(mono)
            row: dict = {}
            for pos in positions:
                entry = g.entries[pos[0]][pos[1]]
                if entry.is_zero:
                    continue
                for exps, coeff in (shifted * entry).terms:
                    if sum(exps) <= degree:
                        key = (pos, mono_rank[exps])
                        row[key] = row.get(key, Fraction(0)) + coeff
            row = {k: v for k, v in row.items() if v}
            if row and _insert_row(pivots, row, col_key):
                rank += 1
    return pivots, monos, mono_rank, positions, pos_rank, col_key, rank


def _germ_jet_row(g: MatrixGerm, mono_rank: dict, degree: int) -> dict:
    row: dict = {}
    for pos in g.component_positions():
        entry = g.entries[pos[0]][pos[1]]
        if entry.is_zero:
            continue
        for exps, coeff in entry.terms:
            if sum(exps) <= degree:
                key = (pos, mono_rank[exps])
                row[key] = row.get(key, Fraction(0)) + coeff
    return {k: v for k, v in row.items() if v}


def quotient_image_rank(
    F: MatrixGerm,
    germs: Sequence[MatrixGerm],
    action: str | None = None,
    jet_degree: int | None = None,
) -> int:
    """Rank of the span of ``germs`` in the normal space of ``F``.

    Measures how many of the given matrix directions stay independent
    modulo the tangent space, inside the same jet used by
    :func:`normal_space_basis`.  The value equals the codimension
    exactly when the germs span the normal space, so this doubles as a
    basis check for a proposed list of representatives; a single germ
    gives 0 or 1 according to whether its class vanishes.
    """
    if action is None:
        action = "congruence" if F.symmetric else "two-sided"
    if jet_degree is None:
        jet_degree = 2 * max(F.entry_max_degree(), 1) + 2
    pivots, _, mono_rank, _, _, col_key, _ = _eliminate(F, action, jet_degree)
    added = 0
    for g in germs:
        if (
            g.ring != F.ring
            or g.nrows != F.nrows
            or g.ncols != F.ncols
            or g.symmetric != F.symmetric
        ):
            raise RingError("direction does not match the germ")
        row = _germ_jet_row(g, mono_rank, jet_degree)
        if row and _insert_row(pivots, row, col_key):
            added += 1
    return added


def _normal_space_at(F: MatrixGerm, action: str, degree: int):
    ring = F.ring
    pivots, monos, _, positions, pos_rank, _, rank = _eliminate(
        F, action, degree
    )
    column_count = len(positions) * len(monos)
    reps = [
        (pos, mi)
        for pos in positions
        for mi in range(len(monos))
        if (pos, mi) not in pivots
    ]
    reps.sort(key=lambda col: (sum(monos[col[1]]), pos_rank[col[0]], col[1]))

    basis = []
    labels = []
    for pos, mi in reps:
        mono = monos[mi]
        mono_poly = ring.monomial(mono)
        i, j = pos
        rows = [[ring.zero()] * F.ncols for _ in range(F.nrows)]
        rows[i][j] = mono_poly
        if F.symmetric and i != j:
            rows[j][i] = mono_poly
        basis.append(
            MatrixGerm(tuple(tuple(r) for r in rows), symmetric=F.symmetric)
        )
        if any(mono):
            labels.append(f"{mono_poly}*E({i + 1},{j + 1})")
        else:
            labels.append(f"E({i + 1},{j + 1})")
    return rank, column_count, tuple(labels), tuple(basis)


def normal_space_basis(
    F: MatrixGerm,
    action: str | None = None,
    jet_degree: int | None = None,
    check_stability: bool = True,
) -> TangentSpaceResult:
    """Basis of the normal space of ``F`` in a truncating jet.

    The default jet degree is twice the largest entry degree plus two,
    which is past saturation for every finite-codimension germ in the
    bundled catalog.  With ``check_stability`` the computation is
    repeated one level higher and ``stable`` records whether the basis
    labels agreed; an unstable answer means the jet was too small (or
    the codimension is not finite).
    """
    if action is None:
        action = "congruence" if F.symmetric else "two-sided"
    if jet_degree is None:
        jet_degree = 2 * max(F.entry_max_degree(), 1) + 2
    if jet_degree < 1:
        raise RingError("jet degree must be positive")
    rank, ncols, labels, basis = _normal_space_at(F, action, jet_degree)
    if rank + len(basis) != ncols:
        raise RingError("rank bookkeeping violated")  # defensive; never expected
    stable = None
    if check_stability:
        _, _, labels_next, _ = _normal_space_at(F, action, jet_degree + 1)
        stable = labels == labels_next
    return TangentSpaceResult(
        germ=F,
        action=action,
        jet_degree=jet_degree,
        column_count=ncols,
        rank=rank,
        codimension=ncols - rank,
        basis=basis,
        basis_labels=labels,
        stable=stable,
    )


def _rational_rank(rows: list[list[Fraction]]) -> int:
    rank = 0
    work = [list(r) for r in rows]
    cols = len(work[0]) if work else 0
    pivot_row = 0
    for col in range(cols):
        hit = None
        for r in range(pivot_row, len(work)):
            if work[r][col]:
                hit = r
                break
        if hit is None:
            continue
        work[pivot_row], work[hit] = work[hit], work[pivot_row]
        inv = 1 / work[pivot_row][col]
        work[pivot_row] = [v * inv for v in work[pivot_row]]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[pivot_row])]
        pivot_row += 1
        rank += 1
        if pivot_row == len(work):
            break
    return rank


def entries_cut_reduced_origin(F: MatrixGerm) -> bool:
    """Whether the scalar entries of ``F`` generate the maximal ideal.

    Equivalently: every entry vanishes at the origin and the linear
    parts of the entries span all linear forms.  This is the geometric
    precondition for treating the family's separation behaviour through
    the diagonal alone.
    """
    ring = F.ring
    arity = ring.arity
    rows = []
    units = []
    for i in range(arity):
        e = [0] * arity
        e[i] = 1
        units.append(tuple(e))
    for matrix_row in F.entries:
        for entry in matrix_row:
            if entry.constant_term():
                return False
            rows.append([entry.coefficient(u) for u in units])
    return _rational_rank(rows) == arity
