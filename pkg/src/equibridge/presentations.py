"""Twist-box presentations of directed strongly invertible 2-bridge knots.

A presentation I1(a1,...,an; c1,...,cn) encodes a 2-bridge knot with a chosen
strong inversion and direction: the knot is the 4-plat of the continued
fraction [a1, -2*c1, ..., an, -2*cn].  The a_i are even and non-zero, the
c_i non-zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .laurent import DomainError, InvariantViolation
from .rationals import Frac, EvenCF, eval_cf, even_cf, two_bridge_equiv


class ParseError(DomainError):
    """Input text failed validation; carries a human-readable position."""


@dataclass(frozen=True)
class I1Presentation:
    """Twist parameters plus the derived quantities used by every invariant.

    sigma[i] is half the partial sum of the alphas (an integer), b is the
    full sum, delta[i] is c_i mod 2, and eps[i] is the suffix product of
    (-1)**delta[j] for j >= i.
    """

    alphas: tuple[int, ...]
    cs: tuple[int, ...]
    sigma: tuple[int, ...] = field(init=False)
    b: int = field(init=False)
    delta: tuple[int, ...] = field(init=False)
    eps: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if len(self.alphas) == 0:
            raise ParseError("presentation needs at least one twist pair")
        if len(self.alphas) != len(self.cs):
            raise ParseError(
                f"length mismatch: {len(self.alphas)} alphas vs {len(self.cs)} cs"
            )
        for i, a in enumerate(self.alphas):
            if a == 0 or a % 2 != 0:
                raise ParseError(f"alpha[{i + 1}] = {a} must be even and non-zero")
        for i, c in enumerate(self.cs):
            if c == 0:
                raise ParseError(f"c[{i + 1}] must be non-zero")
        run = 0
        sig = []
        for a in self.alphas:
            run += a
            sig.append(run // 2)
        object.__setattr__(self, "sigma", tuple(sig))
        object.__setattr__(self, "b", run)
        object.__setattr__(self, "delta", tuple(c % 2 for c in self.cs))
        eps = [1] * len(self.cs)
        acc = 1
        for i in range(len(self.cs) - 1, -1, -1):
            acc *= -1 if self.delta[i] == 1 else 1
            eps[i] = acc
        object.__setattr__(self, "eps", tuple(eps))

    @property
    def n(self) -> int:
        return len(self.alphas)

    def knot_cf(self) -> list[int]:
        """The continued fraction [a1, -2c1, ..., an, -2cn] of the knot."""
        out: list[int] = []
        for a, c in zip(self.alphas, self.cs):
            out.append(a)
            out.append(-2 * c)
        return out

    def butterfly_cf(self) -> list[int]:
        """The knot continued fraction with the balancing -b entry appended."""
        return self.knot_cf() + [-self.b]

    def __str__(self) -> str:
        return (
            "I1("
            + ",".join(str(a) for a in self.alphas)
            + ";"
            + ",".join(str(c) for c in self.cs)
            + ")"
        )


def parse_i1(text: str) -> I1Presentation:
    """Parse 'a1,a2,...;c1,c2,...' (an optional I1(...) wrapper is allowed)."""
    body = text.strip()
    if body.startswith("I1(") and body.endswith(")"):
        body = body[3:-1]
    if ";" not in body:
        raise ParseError("expected ';' separating alphas from cs")
    a_part, c_part = body.split(";", 1)
    try:
        alphas = tuple(int(tok) for tok in a_part.split(",") if tok.strip() != "")
        cs = tuple(int(tok) for tok in c_part.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise ParseError(f"non-integer entry in {text!r}") from exc
    return I1Presentation(alphas, cs)


def knot_fraction(pres: I1Presentation) -> Frac:
    """Fraction of the underlying 2-bridge knot."""
    return eval_cf(pres.knot_cf())


def butterfly_fraction(pres: I1Presentation) -> Frac:
    """Fraction of the 2-bridge link obtained by the balancing band move.

    Evaluated projectively so a trailing zero entry (b = 0) is absorbed.
    """
    return eval_cf(pres.butterfly_cf())


@dataclass(frozen=True)
class InversionPair:
    """The one or two strong-inversion presentations of a 2-bridge knot."""

    inv1: I1Presentation
    inv2: Optional[I1Presentation]
    source: Frac
    expansion: EvenCF


def _presentation_from_even_entries(entries: Sequence[int]) -> I1Presentation:
    alphas = tuple(entries[0::2])
    cs = tuple(-e // 2 for e in entries[1::2])
    return I1Presentation(alphas, cs)


def inversions_from_fraction(p: int, q: int) -> InversionPair:
    """Build the strong-inversion presentations of K(p, q).

    inv1 comes from the even continued fraction of p/q; inv2 from the
    reversed-and-negated expansion.  When the two coincide entry-wise the
    knot admits a single strong inversion and inv2 is omitted.
    """
    src = Frac.make(p, q)
    ecf = even_cf(src)
    inv1 = _presentation_from_even_entries(ecf.entries)
    rev = [-e for e in reversed(ecf.entries)]
    inv2: Optional[I1Presentation] = _presentation_from_even_entries(rev)
    if inv2.alphas == inv1.alphas and inv2.cs == inv1.cs:
        inv2 = None
    for inv in (inv1,) + ((inv2,) if inv2 else ()):
        kf = knot_fraction(inv)
        pp, qq = kf.positive_numerator()
        if not two_bridge_equiv(pp, qq, p, q):
            raise InvariantViolation(f"builder produced a wrong knot: {inv} -> {kf}")
    return InversionPair(inv1, inv2, src, ecf)
