"""Catalog of the simple symmetric 2x2 matrix germs in two variables.

The rank-zero simple symmetric germs fall into six families.  Each
catalog entry bundles, for one family at concrete parameters:

* the normal form matrix itself;
* the named coefficients parameterizing a first-order deformation
  direction, written exactly the way the classification lemmas write
  them (one named scalar per monomial slot of the matrix);
* the machine-checkable rule mapping those coefficients to the known
  triviality verdict of the deformation in that direction;
* a hand-picked monomial curve on the doubled unfolding space that
  separates the failing directions, with its expected contact order
  when every coefficient is set to 1.

The verdict rule returns ``None`` for directions the classification
leaves open: family 1 with unequal exponents states only a necessity
condition, so coefficients past the threshold index carry no expected
verdict.
"""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .curves import TestCurve, parse_curve
from .doubling import MatrixGerm, parse_matrix_germ
from .rings import RingContext

__all__ = [
    "CATALOG_INDICES",
    "CoefficientSlot",
    "LIPSCHITZ",
    "NOT_LIPSCHITZ",
    "NormalForm",
    "PARAMETER",
    "SOURCE_RING",
    "CatalogError",
    "family_parameters",
    "normal_form",
    "random_direction",
    "theta_from_coefficients",
]

LIPSCHITZ = "Lipschitz"
NOT_LIPSCHITZ = "NotLipschitz"

SOURCE_RING = RingContext(("x", "y"))
PARAMETER = "t"

CATALOG_INDICES = (1, 2, 3, 4, 5, 6)

_FAMILY_PARAMETERS = {
    1: ("k", "l"),
    2: ("k",),
    3: ("k",),
    4: ("k",),
    5: (),
    6: (),
}


class CatalogError(ValueError):
    """Bad catalog index, parameters, or coefficient names."""


@dataclass(frozen=True)
class CoefficientSlot:
    """One named deformation coefficient.

    The direction contributed by the slot is ``x^a * y^b`` placed at
    ``position`` (mirrored below the diagonal for symmetric germs).
    """

    name: str
    position: tuple[int, int]
    exponents: tuple[int, int]


@dataclass(frozen=True)
class NormalForm:
    """One catalog family specialized at concrete parameters.

    ``discriminant`` carries the label the classification table prints.
    For family 1 the two customary conventions disagree: the table
    subscript is k+l+1 while the normal space dimension computed here
    is k+l-1, the Milnor number of the smaller label.  Both are kept,
    the second as ``alternate_discriminant``, so reports can flag the
    mismatch instead of silently picking a side.
    """

    index: int
    k: int | None
    l: int | None
    discriminant: str
    matrix: MatrixGerm
    slots: tuple[CoefficientSlot, ...]
    curve_text: str
    curve_order: int
    max_exponent: int
    verdict_rule: Callable[[dict[str, Fraction]], str | None] = field(
        repr=False, compare=False
    )
    alternate_discriminant: str | None = None

    def coefficient_names(self) -> tuple[str, ...]:
        return tuple(slot.name for slot in self.slots)

    def _normalize(self, coeffs: Mapping[str, object]) -> dict[str, Fraction]:
        known = {slot.name for slot in self.slots}
        values: dict[str, Fraction] = {}
        for name, raw in coeffs.items():
            if name not in known:
                raise CatalogError(
                    f"unknown coefficient {name!r} for catalog entry "
                    f"{self.index}; expected one of {sorted(known)}"
                )
            if isinstance(raw, float):
                raise CatalogError(
                    "coefficients must be exact (int, Fraction, or a "
                    "rational string), not float"
                )
            values[name] = Fraction(raw)
        return values

    def theta(self, coeffs: Mapping[str, object]) -> MatrixGerm:
        """Deformation direction for named coefficients; others are 0."""
        values = self._normalize(coeffs)
        ring = self.matrix.ring
        n, m = self.matrix.nrows, self.matrix.ncols
        entries = [[ring.zero() for _ in range(m)] for _ in range(n)]
        for slot in self.slots:
            value = values.get(slot.name)
            if not value:
                continue
            term = ring.monomial(slot.exponents, value)
            i, j = slot.position
            entries[i][j] = entries[i][j] + term
            if self.matrix.symmetric and i != j:
                entries[j][i] = entries[j][i] + term
        return MatrixGerm(
            tuple(tuple(row) for row in entries),
            symmetric=self.matrix.symmetric,
        )

    def expected_verdict(self, coeffs: Mapping[str, object]) -> str | None:
        """Classification verdict for the direction, ``None`` if open."""
        return self.verdict_rule(self._normalize(coeffs))

    def probe_curve(self) -> TestCurve:
        """The family's separating curve, on the doubled unfolding space."""
        ring = RingContext((PARAMETER,) + SOURCE_RING.variables)
        return parse_curve(self.curve_text, ring.doubled_extension())


def family_parameters(index: int) -> tuple[str, ...]:
    """Names of the integer parameters the family takes ("k", "l")."""
    if index not in _FAMILY_PARAMETERS:
        raise CatalogError(f"catalog index must be 1..6, got {index}")
    return _FAMILY_PARAMETERS[index]


def _germ(text: str) -> MatrixGerm:
    return parse_matrix_germ(text, SOURCE_RING)


def _diag(name: str, i: int, power_of: str, exp: int) -> CoefficientSlot:
    exps = (exp, 0) if power_of == "x" else (0, exp)
    return CoefficientSlot(name, (i, i), exps)


def _row1(k: int, l: int) -> NormalForm:
    if k < 1 or l < 2:
        raise CatalogError("family 1 needs k >= 1 and l >= 2")
    slots = [_diag(f"a{i}", 0, "y", i) for i in range(k)]
    slots += [_diag(f"b{j}", 1, "y", j) for j in range(l - 1)]
    r = min(k, l)

    def rule(c: dict[str, Fraction]) -> str | None:
        nonconstant = [f"a{i}" for i in range(1, k) if c.get(f"a{i}")]
        nonconstant += [f"b{j}" for j in range(1, l - 1) if c.get(f"b{j}")]
        if not nonconstant:
            return LIPSCHITZ
        if l == k:
            return NOT_LIPSCHITZ
        if any(c.get(f"a{i}") for i in range(1, min(r, k))) or any(
            c.get(f"b{j}") for j in range(1, min(r, l - 1))
        ):
            return NOT_LIPSCHITZ
        return None

    e = k + l
    return NormalForm(
        index=1,
        k=k,
        l=l,
        discriminant=f"A{k + l + 1}",
        matrix=_germ(f"sym: y^{k}, x ; x, y^{l}"),
        slots=tuple(slots),
        curve_text=f"s^{e}, 2s^{e}, 2s, s^{e}, s^{e}, s",
        curve_order=r,
        max_exponent=k + l + 2,
        verdict_rule=rule,
        alternate_discriminant=f"A{k + l - 1}",
    )


def _row2(k: int) -> NormalForm:
    if k < 2:
        raise CatalogError("family 2 needs k >= 2")
    slots = [
        CoefficientSlot("a", (0, 0), (0, 0)),
        CoefficientSlot("b", (0, 1), (0, 0)),
        CoefficientSlot("c", (0, 1), (0, 1)),
    ]
    slots += [_diag(f"d{i}", 1, "x", i) for i in range(k - 1)]

    def rule(c: dict[str, Fraction]) -> str | None:
        return NOT_LIPSCHITZ if c.get("c") else LIPSCHITZ

    return NormalForm(
        index=2,
        k=k,
        l=None,
        discriminant=f"D{k + 2}",
        matrix=_germ(f"sym: x, 0 ; 0, y^2 + x^{k}"),
        slots=tuple(slots),
        curve_text="s, 2s^2, 2s, s, s^2, s",
        curve_order=2,
        max_exponent=2 * k + 2,
        verdict_rule=rule,
    )


def _row3(k: int) -> NormalForm:
    if k < 2:
        raise CatalogError("family 3 needs k >= 2")
    slots = [CoefficientSlot("a", (0, 1), (0, 0))]
    slots += [_diag(f"a{i}", 0, "y", i) for i in range(k - 1)]
    slots += [_diag(f"b{j}", 1, "y", j) for j in range(k)]

    def rule(c: dict[str, Fraction]) -> str | None:
        moving = any(c.get(f"a{i}") for i in range(1, k - 1)) or any(
            c.get(f"b{j}") for j in range(1, k)
        )
        return NOT_LIPSCHITZ if moving else LIPSCHITZ

    return NormalForm(
        index=3,
        k=k,
        l=None,
        discriminant=f"D{2 * k}",
        matrix=_germ(f"sym: x, 0 ; 0, x*y + y^{k}"),
        slots=tuple(slots),
        curve_text=f"s^{k}, 2s^{k}, 2s, s^{k}, s^{k}, s",
        curve_order=k,
        max_exponent=2 * k + 2,
        verdict_rule=rule,
    )


def _row4(k: int) -> NormalForm:
    if k < 2:
        raise CatalogError("family 4 needs k >= 2")
    slots = [CoefficientSlot("a", (0, 0), (0, 0))]
    slots += [_diag(f"a{i}", 0, "y", i) for i in range(1, k)]
    slots += [CoefficientSlot("b", (0, 1), (0, 0))]
    slots += [_diag(f"b{j}", 1, "x", j) for j in range(k)]

    def rule(c: dict[str, Fraction]) -> str | None:
        moving = any(c.get(f"a{i}") for i in range(1, k))
        return NOT_LIPSCHITZ if moving else LIPSCHITZ

    return NormalForm(
        index=4,
        k=k,
        l=None,
        discriminant=f"D{2 * k + 1}",
        matrix=_germ(f"sym: x, y^{k} ; y^{k}, x*y"),
        slots=tuple(slots),
        curve_text=f"s^{k}, 2s^{k}, 2s, s^{k}, s^{k}, s",
        curve_order=k,
        max_exponent=2 * k + 2,
        verdict_rule=rule,
    )


def _row5() -> NormalForm:
    slots = (
        CoefficientSlot("a1", (0, 0), (0, 0)),
        CoefficientSlot("a2", (1, 1), (0, 0)),
        CoefficientSlot("a3", (0, 0), (0, 1)),
        CoefficientSlot("a4", (0, 0), (0, 2)),
        CoefficientSlot("a5", (1, 1), (0, 1)),
        CoefficientSlot("a6", (1, 1), (0, 2)),
    )

    def rule(c: dict[str, Fraction]) -> str | None:
        return NOT_LIPSCHITZ if c.get("a3") or c.get("a5") else LIPSCHITZ

    return NormalForm(
        index=5,
        k=None,
        l=None,
        discriminant="E6",
        matrix=_germ("sym: x, y^2 ; y^2, x^2"),
        slots=slots,
        curve_text="s, 2s^3, 2s^2, s, s^3, s^2",
        curve_order=3,
        max_exponent=6,
        verdict_rule=rule,
    )


def _row6() -> NormalForm:
    slots = (
        CoefficientSlot("a1", (0, 0), (0, 0)),
        CoefficientSlot("a2", (1, 1), (0, 0)),
        CoefficientSlot("a3", (0, 1), (0, 0)),
        CoefficientSlot("a4", (1, 1), (0, 1)),
        CoefficientSlot("a5", (0, 0), (0, 1)),
        CoefficientSlot("a6", (0, 1), (0, 1)),
        CoefficientSlot("a7", (0, 1), (0, 2)),
    )

    def rule(c: dict[str, Fraction]) -> str | None:
        moving = any(c.get(name) for name in ("a4", "a5", "a6", "a7"))
        return NOT_LIPSCHITZ if moving else LIPSCHITZ

    return NormalForm(
        index=6,
        k=None,
        l=None,
        discriminant="E7",
        matrix=_germ("sym: x, 0 ; 0, x^2 + y^3"),
        slots=slots,
        curve_text="s^2, 2s^3, 2s, s^2, s^3, s",
        curve_order=3,
        max_exponent=6,
        verdict_rule=rule,
    )


def normal_form(index: int, k: int | None = None, l: int | None = None) -> NormalForm:
    """Catalog entry ``index`` (1..6) at parameters ``k`` and ``l``.

    Families 5 and 6 take no parameters, families 2 to 4 take ``k``
    only, family 1 takes both.  Supplying a parameter the family does
    not use, or omitting one it needs, is an error.
    """
    wanted = family_parameters(index)
    given = {"k": k, "l": l}
    for name in ("k", "l"):
        if name in wanted and given[name] is None:
            raise CatalogError(f"catalog entry {index} needs parameter {name}")
        if name not in wanted and given[name] is not None:
            raise CatalogError(
                f"catalog entry {index} takes no parameter {name}"
            )
    if index == 1:
        return _row1(k, l)
    if index == 2:
        return _row2(k)
    if index == 3:
        return _row3(k)
    if index == 4:
        return _row4(k)
    if index == 5:
        return _row5()
    return _row6()


def theta_from_coefficients(
    nf: NormalForm, coeffs: Mapping[str, object]
) -> MatrixGerm:
    """Direction matrix for named coefficients (unnamed ones are 0)."""
    return nf.theta(coeffs)


def random_direction(nf: NormalForm, seed: int = 0) -> dict[str, Fraction]:
    """Deterministic pseudo-random coefficients for a catalog entry.

    Seeded from the entry's identity, so reruns and platforms agree.
    Values are small integers in [-2, 2]; a draw that comes out all
    zero gets its last coefficient bumped to 1 so the combination is
    never the empty direction.
    """
    rng = random.Random(f"liptriv:{nf.index}:{nf.k}:{nf.l}:{seed}")
    values = {name: Fraction(rng.randint(-2, 2)) for name in nf.coefficient_names()}
    if not any(values.values()):
        values[nf.slots[-1].name] = Fraction(1)
    return values
