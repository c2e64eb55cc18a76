"""Exact Laurent-polynomial and rational-function arithmetic in one variable.

Coefficients are arbitrary-precision integers (rationals only transiently,
during gcd reduction and evaluation).  No floating point anywhere.
"""
from __future__ import annotations

import re
from fractions import Fraction as Q
from math import gcd
from typing import Iterable, Mapping


class DomainError(ValueError):
    """Raised when an operation is applied outside its mathematical domain."""


class InvariantViolation(RuntimeError):
    """An internal cross-check failed; signals a bug, not bad input."""


def _clean(coeffs: Mapping[int, int]) -> dict[int, int]:
    return {e: c for e, c in coeffs.items() if c != 0}


class LaurentPoly:
    """An element of Z[t, 1/t], stored as {exponent: coefficient}, zeros absent."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = _clean(coeffs) if coeffs else {}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def const(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    @classmethod
    def t_power(cls, e: int, coeff: int = 1) -> "LaurentPoly":
        return cls({e: coeff})

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def support(self) -> list[int]:
        return sorted(self._c)

    def degree(self) -> int:
        if not self._c:
            raise DomainError("zero polynomial has no degree")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise DomainError("zero polynomial has no valuation")
        return min(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return LaurentPoly.const(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t**k."""
        return LaurentPoly({e + k: c for e, c in self._c.items()})

    def subs_inv(self) -> "LaurentPoly":
        """Substitute t -> 1/t, i.e. reverse all exponents."""
        return LaurentPoly({-e: c for e, c in self._c.items()})

    def eval_at(self, x: "Q | int") -> Q:
        """Exact evaluation at a rational point."""
        x = Q(x)
        if x == 0 and self._c and min(self._c) < 0:
            raise DomainError("evaluation at 0 with negative exponents present")
        return sum((Q(c) * x**e for e, c in self._c.items()), Q(0))

    def __repr__(self) -> str:
        return f"LaurentPoly({lp_to_str(self)!r})"

    def __str__(self) -> str:
        return lp_to_str(self)


def lp_is_eta_admissible(f: LaurentPoly) -> bool:
    """True iff f(t) = f(1/t) and f(1) = 0."""
    return f == f.subs_inv() and f.eval_at(1) == 0


def lp_to_str(f: LaurentPoly) -> str:
    """Render as sorted terms, e.g. 't^-1 - 2 + t'."""
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for e in f.support():
        c = f.coeff(e)
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            tpow = "t" if e == 1 else f"t^{e}"
            body = tpow if mag == 1 else f"{mag}*{tpow}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-]?)\s*(?:"
    r"(?P<coeff>\d+)\s*\*?\s*t(?:\^(?P<exp1>-?\d+))?"
    r"|t(?:\^(?P<exp2>-?\d+))?"
    r"|(?P<const>\d+)"
    r")"
)


def lp_parse(text: str) -> LaurentPoly:
    """Parse the rendering produced by lp_to_str."""
    out: dict[int, int] = {}
    pos = 0
    s = text.strip()
    if not s:
        raise DomainError("empty polynomial text")
    if s == "0":
        return LaurentPoly.zero()
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None:
            raise DomainError(f"cannot parse polynomial at {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("const") is not None:
            e, mag = 0, int(m.group("const"))
        else:
            mag = int(m.group("coeff")) if m.group("coeff") else 1
            exp = m.group("exp1") or m.group("exp2")
            e = int(exp) if exp is not None else 1
        out[e] = out.get(e, 0) + sign * mag
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
    return LaurentPoly(out)


class ZPoly:
    """Polynomial in the skein variable z with integer coefficients, exponents >= 0."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = _clean(coeffs) if coeffs else {}
        if any(e < 0 for e in c):
            raise DomainError("ZPoly exponents must be non-negative")
        self._c = c

    @classmethod
    def zero(cls) -> "ZPoly":
        return cls()

    @classmethod
    def one(cls) -> "ZPoly":
        return cls({0: 1})

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def support(self) -> list[int]:
        return sorted(self._c)

    def even_only(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    def odd_only(self) -> bool:
        return all(e % 2 == 1 for e in self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ZPoly({0: other})
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def __add__(self, other: "ZPoly") -> "ZPoly":
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return ZPoly(out)

    def __neg__(self) -> "ZPoly":
        return ZPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __mul__(self, other: "ZPoly | int") -> "ZPoly":
        if isinstance(other, int):
            other = ZPoly({0: other})
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return ZPoly(out)

    __rmul__ = __mul__

    def divide_by_z(self) -> "ZPoly":
        if 0 in self._c:
            raise DomainError("not divisible by z: constant term present")
        return ZPoly({e - 1: c for e, c in self._c.items()})

    def eval_at(self, x: "Q | int") -> Q:
        return sum((Q(c) * Q(x) ** e for e, c in self._c.items()), Q(0))

    def __repr__(self) -> str:
        return f"ZPoly({zp_to_str(self)!r})"

    def __str__(self) -> str:
        return zp_to_str(self)


def zp_to_str(p: ZPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e in p.support():
        c = p.coeff(e)
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            zpow = "z" if e == 1 else f"z^{e}"
            body = zpow if mag == 1 else f"{mag}*{zpow}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def zp_parse(text: str) -> ZPoly:
    s = text.replace("z", "t")
    f = lp_parse(s)
    return ZPoly(f.coeffs())


def z_to_t(p: ZPoly) -> LaurentPoly:
    """Rewrite an even polynomial in z as a Laurent polynomial in t.

    The square of the skein variable satisfies z**2 = 2 - t - 1/t, so only
    even powers of z have an image.  Odd exponents are rejected rather than
    introducing half-integer powers of t.
    """
    if not p.even_only():
        raise DomainError("z_to_t requires even exponents only")
    zsq = LaurentPoly({0: 2, 1: -1, -1: -1})
    out = LaurentPoly.zero()
    power = LaurentPoly.const(1)
    by_half: dict[int, int] = {e // 2: c for e, c in p.coeffs().items()}
    k = 0
    while by_half:
        if k in by_half:
            out = out + power * by_half.pop(k)
        power = power * zsq
        k += 1
    return out


def _poly_divmod_q(num: list[Q], den: list[Q]) -> tuple[list[Q], list[Q]]:
    """Division with remainder for dense rational coefficient lists (low to high)."""
    num = list(num)
    dd = len(den) - 1
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise DomainError("division by zero polynomial")
    dd = len(den) - 1
    quot = [Q(0)] * max(0, len(num) - dd)
    while len(num) - 1 >= dd and any(num):
        while num and num[-1] == 0:
            num.pop()
        if len(num) - 1 < dd:
            break
        shift = len(num) - 1 - dd
        q = num[-1] / den[-1]
        quot[shift] = q
        for i, dc in enumerate(den):
            num[shift + i] -= q * dc
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_gcd_q(a: list[Q], b: list[Q]) -> list[Q]:
    """Monic gcd over Q of dense coefficient lists (low to high)."""
    a = [Q(x) for x in a]
    b = [Q(x) for x in b]
    while any(b):
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _lp_to_dense(f: LaurentPoly) -> tuple[int, list[int]]:
    """Return (valuation, dense coefficient list low-to-high), val 0 for zero."""
    if f.is_zero():
        return 0, []
    v = f.valuation()
    d = f.degree()
    return v, [f.coeff(e) for e in range(v, d + 1)]


def _dense_to_lp(val: int, dense: Iterable[int]) -> LaurentPoly:
    return LaurentPoly({val + i: c for i, c in enumerate(dense)})


def lp_divexact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division in Z[t, 1/t]; raises if the remainder is non-zero."""
    if den.is_zero():
        raise DomainError("division by zero")
    if num.is_zero():
        return LaurentPoly.zero()
    nv, nd = _lp_to_dense(num)
    dv, dd = _lp_to_dense(den)
    quot, rem = _poly_divmod_q([Q(c) for c in nd], [Q(c) for c in dd])
    if any(rem):
        raise DomainError("inexact division")
    if any(q.denominator != 1 for q in quot):
        raise DomainError("inexact division (non-integer quotient)")
    return _dense_to_lp(nv - dv, [int(q) for q in quot])


class RationalFn:
    """A quotient of Laurent polynomials in canonical form.

    Canonical form: the denominator is an ordinary polynomial with non-zero
    constant term, positive leading coefficient, and the pair (num, den) is
    coprime over Q[t] with joint integer content 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        # Use rf_make; this constructor trusts its arguments.
        self.num = num
        self.den = den

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = rf_make(LaurentPoly.const(other), LaurentPoly.const(1))
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def subs_inv_equal(self) -> bool:
        """True iff the function is invariant under t -> 1/t."""
        lhs = self.num.subs_inv() * self.den
        rhs = self.num * self.den.subs_inv()
        return lhs == rhs

    def eval_at(self, x: "Q | int") -> Q:
        d = self.den.eval_at(x)
        if d == 0:
            raise DomainError(f"denominator vanishes at {x}")
        return self.num.eval_at(x) / d

    def __repr__(self) -> str:
        return f"RationalFn({lp_to_str(self.num)!r}, {lp_to_str(self.den)!r})"

    def __str__(self) -> str:
        if self.den == LaurentPoly.const(1):
            return lp_to_str(self.num)
        return f"({lp_to_str(self.num)}) / ({lp_to_str(self.den)})"


def _content(dense: list[int]) -> int:
    g = 0
    for c in dense:
        g = gcd(g, abs(c))
    return g


def rf_make(num: LaurentPoly, den: LaurentPoly) -> RationalFn:
    """Build a RationalFn in canonical form; exact gcd reduction over Q[t]."""
    if den.is_zero():
        raise DomainError("rational function with zero denominator")
    if num.is_zero():
        return RationalFn(LaurentPoly.zero(), LaurentPoly.const(1))
    nv, nd = _lp_to_dense(num)
    dv, dd = _lp_to_dense(den)
    g = _poly_gcd_q([Q(c) for c in nd], [Q(c) for c in dd])
    if len(g) > 1:
        nq, nr = _poly_divmod_q([Q(c) for c in nd], g)
        dq, dr = _poly_divmod_q([Q(c) for c in dd], g)
        if any(nr) or any(dr):
            raise InvariantViolation("gcd does not divide its arguments")
    else:
        nq = [Q(c) for c in nd]
        dq = [Q(c) for c in dd]
    # Clear rational denominators jointly.
    mult = 1
    for q in nq + dq:
        mult = mult * q.denominator // gcd(mult, q.denominator)
    ni = [int(q * mult) for q in nq]
    di = [int(q * mult) for q in dq]
    joint = gcd(_content(ni), _content(di))
    if joint > 1:
        ni = [c // joint for c in ni]
        di = [c // joint for c in di]
    # Move all powers of t into the numerator: den gets constant term != 0.
    na = next(i for i, c in enumerate(ni) if c != 0)
    db = next(i for i, c in enumerate(di) if c != 0)
    ni, di = ni[na:], di[db:]
    num_val = (nv - dv) + na - db
    if di[-1] < 0:
        ni = [-c for c in ni]
        di = [-c for c in di]
    return RationalFn(_dense_to_lp(num_val, ni), _dense_to_lp(0, di))
