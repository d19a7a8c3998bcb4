"""Exact scalars: Laurent polynomials over Q and their fractions.

Monomials are packed into a single Python int: every registered variable owns
a 16-bit field holding ``exponent + BIAS``.  Multiplying monomials is then one
integer addition, which keeps the rewriting engine's inner loop cheap.

Multivariate GCD is delegated to sympy's sparse polynomial rings; it is only
used when a fraction is explicitly reduced (equality of hashes, printing,
substitution) or when two unrelated denominators are added.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import Iterable, Iterator, Mapping, Union

_FIELD = 16
_MASK = (1 << _FIELD) - 1
_BIAS = 1 << (_FIELD - 1)
_MAX_VARS = 64
_ONE = sum(_BIAS << (_FIELD * i) for i in range(_MAX_VARS))

_names: list[str] = []
_index: dict[str, int] = {}

Rational = Union[int, Fraction]


class PoleError(ArithmeticError):
    """Raised when a substitution hits a non-removable pole."""


class ScalarParseError(ValueError):
    pass


def var_index(name: str) -> int:
    """Return the slot of ``name``, registering it on first use."""
    i = _index.get(name)
    if i is None:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
            raise ValueError(f"bad variable name {name!r}")
        if len(_names) >= _MAX_VARS:
            raise OverflowError("too many distinct scalar variables")
        i = len(_names)
        _names.append(name)
        _index[name] = i
    return i


_KEY_RE = re.compile(r"(v|mu|gamma|u)(n?)(\d+)$")
_KEY_RANK = {"v": 1, "mu": 3, "gamma": 4, "u": 5}


@cache
def _name_key(name: str) -> tuple:
    # print order: q, v_j, D, mu_a, gamma_a, u_i, rho, then alphabetical
    if name == "q":
        return (0, 0, "")
    if name == "D":
        return (2, 0, "")
    if name == "rho":
        return (6, 0, "")
    mt = _KEY_RE.match(name)
    if mt:
        k = int(mt.group(3))
        return (_KEY_RANK[mt.group(1)], -k if mt.group(2) else k, "")
    return (9, 0, name)


def _exp(mono: int, i: int) -> int:
    return ((mono >> (_FIELD * i)) & _MASK) - _BIAS


def mono_exponents(mono: int) -> dict[str, int]:
    out = {}
    for i, name in enumerate(_names):
        e = _exp(mono, i)
        if e:
            out[name] = e
    return out


def _mono_from(exps: Mapping[str, int]) -> int:
    mono = _ONE
    for name, e in exps.items():
        if e:
            if abs(e) >= _BIAS:
                raise OverflowError("exponent out of range")
            mono += e << (_FIELD * var_index(name))
    return mono


def _mono_sort_key(mono: int) -> tuple:
    ex = mono_exponents(mono)
    return tuple(sorted(((_name_key(n), e) for n, e in ex.items())))


def _fmt_rat(c: Rational) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: dict[int, Rational] | None = None):
        self._t: dict[int, Rational] = terms if terms is not None else {}
        self._h = None

    # constructors -------------------------------------------------------
    @staticmethod
    def const(c: Rational) -> "LaurentPoly":
        return LaurentPoly({_ONE: c} if c else {})

    @staticmethod
    def var(name: str, exp: int = 1) -> "LaurentPoly":
        return LaurentPoly({_mono_from({name: exp}): 1})

    @staticmethod
    def monomial(exps: Mapping[str, int], coeff: Rational = 1) -> "LaurentPoly":
        return LaurentPoly({_mono_from(exps): coeff} if coeff else {})

    @staticmethod
    def from_terms(items: Iterable[tuple[Mapping[str, int], Rational]]) -> "LaurentPoly":
        d: dict[int, Rational] = {}
        for exps, c in items:
            k = _mono_from(exps)
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return LaurentPoly(d)

    # inspection ---------------------------------------------------------
    def terms(self) -> Iterator[tuple[dict[str, int], Rational]]:
        for k in sorted(self._t, key=_mono_sort_key):
            yield mono_exponents(k), self._t[k]

    def is_zero(self) -> bool:
        return not self._t

    def is_one(self) -> bool:
        return len(self._t) == 1 and self._t.get(_ONE) == 1

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and _ONE in self._t)

    def constant_value(self) -> Rational:
        return self._t.get(_ONE, 0) if self.is_constant() else None

    def variables(self) -> set[str]:
        out: set[str] = set()
        for k in self._t:
            out.update(mono_exponents(k))
        return out

    def __len__(self) -> int:
        return len(self._t)

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        d = dict(a)
        for k, c in b.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                del d[k]
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        d = dict(self._t)
        for k, c in other._t.items():
            s = d.get(k, 0) - c
            if s:
                d[k] = s
            else:
                del d[k]
        return LaurentPoly(d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            return LaurentPoly({k: c * other for k, c in self._t.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return LaurentPoly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            off = kb - _ONE
            if cb == 1:
                return LaurentPoly({k + off: c for k, c in a.items()})
            return LaurentPoly({k + off: c * cb for k, c in a.items()})
        d: dict[int, Rational] = {}
        get = d.get
        for kb, cb in b.items():
            off = kb - _ONE
            for ka, ca in a.items():
                k = ka + off
                d[k] = get(k, 0) + ca * cb
        return LaurentPoly({k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._t) != 1:
                raise ValueError("negative power of a non-monomial")
            (k, c), = self._t.items()
            return LaurentPoly({2 * _ONE - k: Fraction(1, 1) / c if c != 1 else 1}) ** (-e)
        out = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def inverse_monomial(self) -> "LaurentPoly":
        return self ** -1

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        if isinstance(other, LaurentPoly) and other.is_monomial():
            return self * other.inverse_monomial()
        return ScalarValue(self) / other

    def __rtruediv__(self, other):
        return ScalarValue.coerce(other) / ScalarValue(self)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({_ONE: other} if other else {})
        if isinstance(other, ScalarValue):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # maps ---------------------------------------------------------------
    def invert_vars(self, names: Iterable[str]) -> "LaurentPoly":
        """Substitute x -> 1/x for each named variable."""
        idx = [_index[n] for n in names if n in _index]
        if not idx:
            return self
        d = {}
        for k, c in self._t.items():
            kk = k
            for i in idx:
                e = _exp(k, i)
                if e:
                    kk -= (2 * e) << (_FIELD * i)
            d[kk] = c
        return LaurentPoly(d)

    def degree_range(self, name: str) -> tuple[int, int]:
        i = _index.get(name)
        if i is None or not self._t:
            return (0, 0)
        es = [_exp(k, i) for k in self._t]
        return (min(es), max(es))

    def split_by(self, name: str) -> dict[int, "LaurentPoly"]:
        """Coefficients by exponent of ``name`` (remaining variables kept)."""
        i = _index.get(name)
        if i is None:
            return {0: self} if self._t else {}
        out: dict[int, dict[int, Rational]] = {}
        for k, c in self._t.items():
            e = _exp(k, i)
            out.setdefault(e, {})[k - (e << (_FIELD * i))] = c
        return {e: LaurentPoly(d) for e, d in out.items()}

    def map_coefficients(self, f) -> "LaurentPoly":
        d = {}
        for k, c in self._t.items():
            c2 = f(c)
            if c2:
                d[k] = c2
        return LaurentPoly(d)

    def raw_items(self):
        return self._t.items()

    # text ---------------------------------------------------------------
    def to_text(self) -> str:
        if not self._t:
            return "0"
        parts: list[str] = []
        for exps, c in self.terms():
            mon = "*".join(
                n if e == 1 else f"{n}^{e}"
                for n, e in sorted(exps.items(), key=lambda t: _name_key(t[0]))
            )
            neg = c < 0
            a = -c if neg else c
            if not mon:
                body = _fmt_rat(a)
            elif a == 1:
                body = mon
            else:
                body = f"{_fmt_rat(a)}*{mon}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    __str__ = to_text


# ---------------------------------------------------------------------------
# sympy bridge (GCD and parsing)


def _sympy():
    import sympy  # noqa: local import keeps module import cheap

    return sympy


@cache
def _ring(names: tuple[str, ...]):
    from sympy import QQ
    from sympy.polys.rings import ring

    R, *_ = ring(",".join(names), QQ)
    return R


def _shift_to_poly(polys: list[LaurentPoly], names: list[str]):
    """Exponent tuples (per ``names``) of each poly after removing its monomial content."""
    out = []
    idx = [_index[n] for n in names]
    for p in polys:
        rows = []
        for k, c in p._t.items():
            rows.append(([_exp(k, i) for i in idx], c))
        mins = [min(r[0][j] for r in rows) for j in range(len(idx))] if rows else []
        out.append(({tuple(e - m for e, m in zip(ex, mins)): c for ex, c in rows}, mins))
    return out


def _from_ring_elem(elem, names: list[str], shift: list[int] | None = None) -> LaurentPoly:
    d: dict[int, Rational] = {}
    for ex, c in elem.items():
        exps = {n: e + (shift[j] if shift else 0) for j, (n, e) in enumerate(zip(names, ex))}
        num, den = int(c.numerator), int(c.denominator)
        d[_mono_from(exps)] = num if den == 1 else Fraction(num, den)
    return LaurentPoly(d)


def _to_ring(R, d):
    from sympy import QQ

    return R.from_dict({k: QQ(c.numerator, c.denominator) if isinstance(c, Fraction) else QQ(c) for k, c in d.items()})


def poly_cofactors(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """(g, a/g, b/g) with g a polynomial gcd; monomial units are left in the cofactors."""
    names = sorted(a.variables() | b.variables(), key=_name_key)
    if not names:
        return LaurentPoly.const(1), a, b
    R = _ring(tuple(names))
    (da, sa), (db, sb) = _shift_to_poly([a, b], names)
    g, ca, cb = _to_ring(R, da).cofactors(_to_ring(R, db))
    return (
        _from_ring_elem(g, names),
        _from_ring_elem(ca, names, sa),
        _from_ring_elem(cb, names, sb),
    )


# ---------------------------------------------------------------------------
# fractions


Scalar = Union[LaurentPoly, "ScalarValue", int, Fraction]


class ScalarValue:
    """Immutable fraction num/den of Laurent polynomials, reduced lazily."""

    __slots__ = ("num", "den", "_reduced")

    def __init__(self, num: Scalar = 0, den: Scalar = 1, *, _trusted: bool = False):
        if _trusted:
            self.num, self.den, self._reduced = num, den, False
            return
        if isinstance(num, ScalarValue) or isinstance(den, ScalarValue):
            r = ScalarValue.coerce(num) / ScalarValue.coerce(den)
            self.num, self.den, self._reduced = r.num, r.den, r._reduced
            return
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_monomial():
            num = num * den.inverse_monomial()
            den = _POLY_ONE
        self.num, self.den, self._reduced = num, den, den.is_one()

    @staticmethod
    def coerce(x) -> "ScalarValue":
        if isinstance(x, ScalarValue):
            return x
        return ScalarValue(LaurentPoly.coerce(x))

    @staticmethod
    def _make(num: LaurentPoly, den: LaurentPoly) -> "ScalarValue":
        if den.is_monomial():
            return ScalarValue(num, den)
        return ScalarValue(num, den, _trusted=True)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_laurent(self) -> LaurentPoly:
        r = self if self.den.is_one() else self.reduce()
        if not r.den.is_one():
            raise ValueError(f"{r} is not a Laurent polynomial")
        return r.num

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ScalarValue):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
            if self.den.is_one():
                return ScalarValue(self.num + other, _POLY_ONE, _trusted=True)
            return ScalarValue._make(self.num + other * self.den, self.den)
        a, b, c, d = self.num, self.den, other.num, other.den
        if b.is_one():
            if d.is_one():
                return ScalarValue(a + c, _POLY_ONE, _trusted=True)
            return ScalarValue._make(a * d + c, d)
        if d.is_one():
            return ScalarValue._make(a + c * b, b)
        if b == d:
            return ScalarValue._make(a + c, b)
        # unrelated denominators: combine over the lcm
        g, bb, dd = poly_cofactors(b, d)
        return ScalarValue._make(a * dd + c * bb, b * dd)

    __radd__ = __add__

    def __neg__(self):
        return ScalarValue(-self.num, self.den, _trusted=True)

    def __sub__(self, other):
        if not isinstance(other, ScalarValue):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ScalarValue):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
            if self.den.is_one():
                return ScalarValue(self.num * other, _POLY_ONE, _trusted=True)
            return ScalarValue._make(self.num * other, self.den)
        if self.den.is_one() and other.den.is_one():
            return ScalarValue(self.num * other.num, _POLY_ONE, _trusted=True)
        # cheap cancellation of identical factors
        a, b, c, d = self.num, self.den, other.num, other.den
        if a == d:
            return ScalarValue._make(c, b)
        if c == b:
            return ScalarValue._make(a, d)
        return ScalarValue._make(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarValue":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return ScalarValue(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, ScalarValue):
            try:
                other = ScalarValue(LaurentPoly.coerce(other))
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return ScalarValue.coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ScalarValue._make(self.num**e, self.den**e)

    def __eq__(self, other):
        if not isinstance(other, ScalarValue):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
            return self.num == other * self.den
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduce()
        return hash((r.num, r.den))

    # canonical form -----------------------------------------------------
    def reduce(self) -> "ScalarValue":
        """Cancel the polynomial gcd and normalise the denominator.

        The reduced denominator is a genuine polynomial without monomial
        factors whose leading coefficient (in the canonical term order) is 1.
        """
        if self._reduced:
            return self
        num, den = self.num, self.den
        if num.is_zero():
            return ZERO
        if not den.is_one():
            _, num, den = poly_cofactors(num, den)
            # strip monomial content of den into num
            names = sorted(den.variables(), key=_name_key)
            if names:
                mins = {n: den.degree_range(n)[0] for n in names}
                shift = LaurentPoly.monomial({n: -e for n, e in mins.items()})
                den = den * shift
                num = num * shift
            lead = max(den._t, key=_mono_sort_key)
            lc = den._t[lead]
            if lc != 1:
                inv = Fraction(1) / lc
                den = den * inv
                num = num * inv
        r = ScalarValue(num, den)
        r._reduced = True
        return r

    # maps ---------------------------------------------------------------
    def invert_vars(self, names: Iterable[str]) -> "ScalarValue":
        names = list(names)
        return ScalarValue(self.num.invert_vars(names), self.den.invert_vars(names))

    # serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        r = self.reduce()
        return {"num": r.num.to_text(), "den": r.den.to_text()}

    @staticmethod
    def from_json(obj) -> "ScalarValue":
        if isinstance(obj, str):
            return parse_scalar(obj)
        return parse_scalar(obj["num"]) / parse_scalar(obj["den"])

    def to_text(self) -> str:
        r = self.reduce()
        if r.den.is_one():
            return r.num.to_text()
        return f"({r.num.to_text()})/({r.den.to_text()})"

    __str__ = to_text

    def __repr__(self):
        return f"ScalarValue({self.to_text()!r})"


_POLY_ONE = LaurentPoly.const(1)
ZERO = ScalarValue(LaurentPoly(), _POLY_ONE, _trusted=True)
ZERO._reduced = True
ONE = ScalarValue(_POLY_ONE, _POLY_ONE, _trusted=True)
ONE._reduced = True


def as_scalar(x) -> ScalarValue:
    return ScalarValue.coerce(x)


def scalar_is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


# ---------------------------------------------------------------------------
# named constants


def q_var() -> LaurentPoly:
    return LaurentPoly.var("q")


@cache
def qdiff() -> LaurentPoly:
    """q - q^-1."""
    return LaurentPoly.var("q") - LaurentPoly.var("q", -1)


def v_var(j: int) -> LaurentPoly:
    return LaurentPoly.var(f"v{j}")


def indexed_name(stem: str, a: int) -> str:
    """Slot name for an integer-indexed symbol; negative indices use an ``n`` prefix."""
    return f"{stem}{a}" if a >= 0 else f"{stem}n{-a}"


@cache
def char_coeffs(m: int) -> tuple[LaurentPoly, ...]:
    """Coefficients a_0..a_m of (x - v_1)...(x - v_m); a_m = 1."""
    coeffs = [LaurentPoly.const(1)]
    for j in range(1, m + 1):
        vj = v_var(j)
        nxt = [LaurentPoly() for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - vj * c
        coeffs = nxt
    return tuple(coeffs)


def iota0_names(m: int | None) -> list[str]:
    """Variables inverted by the bar involution on the ground ring."""
    names = ["q"]
    if m is not None:
        names += [f"v{j}" for j in range(1, m + 1)]
    return names


# ---------------------------------------------------------------------------
# substitution with removable-pole cancellation


def _horner(coeffs: list[ScalarValue], x: ScalarValue) -> ScalarValue:
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _synth_div(coeffs: list[ScalarValue], x: ScalarValue) -> list[ScalarValue]:
    # divide sum c_i t^i by (t - x); the remainder is known to vanish
    n = len(coeffs) - 1
    out = [ZERO] * n
    carry = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = carry
        carry = coeffs[i] + carry * x
    return out


def substitute(f: Scalar, slot: str, value: Scalar) -> ScalarValue:
    """Evaluate ``f`` at ``slot = value``, cancelling removable poles first."""
    f = ScalarValue.coerce(f)
    value = ScalarValue.coerce(value)
    if slot in value.variables():
        raise ValueError("substituted value depends on the slot itself")
    num_parts = f.num.split_by(slot)
    den_parts = f.den.split_by(slot)
    lo = min(min(num_parts, default=0), min(den_parts))
    nhi = max(num_parts, default=lo) - lo
    dhi = max(den_parts) - lo
    num = [ScalarValue.coerce(num_parts.get(e + lo, LaurentPoly())) for e in range(nhi + 1)]
    den = [ScalarValue.coerce(den_parts.get(e + lo, LaurentPoly())) for e in range(dhi + 1)]
    while True:
        dv = _horner(den, value)
        if not dv.is_zero():
            break
        nv = _horner(num, value)
        if not nv.is_zero() or len(num) <= 1:
            raise PoleError(f"non-removable pole at {slot} = {value}")
        num = _synth_div(num, value)
        den = _synth_div(den, value)
    return _horner(num, value) / dv


# ---------------------------------------------------------------------------
# cyclotomic specialisation


@dataclass(frozen=True)
class CyclotomicNumber:
    """Element of Q[zeta]/Phi_m(zeta) in the power basis 1, zeta, ..."""

    m: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def zero(m: int) -> "CyclotomicNumber":
        return CyclotomicNumber(m, (Fraction(0),) * _phi_deg(m))

    @staticmethod
    def zeta_power(m: int, k: int) -> "CyclotomicNumber":
        return CyclotomicNumber(m, _zeta_powers(m)[k % m])

    def __add__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        return CyclotomicNumber(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return CyclotomicNumber(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: Rational) -> "CyclotomicNumber":
        return CyclotomicNumber(self.m, tuple(a * c for a in self.coeffs))

    def __mul__(self, other: "CyclotomicNumber") -> "CyclotomicNumber":
        d = len(self.coeffs)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber(self.m, _reduce_mod_phi(self.m, prod))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list[str]:
        return [_fmt_rat(c) for c in self.coeffs]


@cache
def _phi_poly(m: int) -> tuple[int, ...]:
    sympy = _sympy()
    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return tuple(int(c) for c in reversed(p.all_coeffs()))  # low -> high, monic


def _phi_deg(m: int) -> int:
    return len(_phi_poly(m)) - 1


def _reduce_mod_phi(m: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    phi = _phi_poly(m)
    d = len(phi) - 1
    c = list(coeffs)
    for top in range(len(c) - 1, d - 1, -1):
        lead = c[top]
        if lead:
            for i in range(d + 1):
                c[top - d + i] -= lead * phi[i]
    c = c[:d] + [Fraction(0)] * max(0, d - len(c))
    return tuple(Fraction(x) for x in c)


@cache
def _zeta_powers(m: int) -> tuple[tuple[Fraction, ...], ...]:
    out = []
    for k in range(m):
        c = [Fraction(0)] * (k + 1)
        c[k] = Fraction(1)
        out.append(_reduce_mod_phi(m, c))
    return tuple(out)


def specialize_group(f: Scalar, m: int, sign: int) -> CyclotomicNumber:
    """Image under q -> sign, v_j -> zeta^(j-1) in Q[zeta]/Phi_m."""
    if m is None:
        raise ValueError("specialization to the group algebra needs finite m")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if isinstance(f, ScalarValue):
        f = f.as_laurent()
    f = LaurentPoly.coerce(f)
    acc = [Fraction(0)] * m
    for exps, c in f.terms():
        k = 0
        s = 1
        for name, e in exps.items():
            if name == "q":
                s *= sign ** (e % 2)
            elif name.startswith("v") and name[1:].isdigit() and 1 <= int(name[1:]) <= m:
                k += (int(name[1:]) - 1) * e
            else:
                raise ValueError(f"cannot specialize slot {name!r}")
        acc[k % m] += c * s
    out = CyclotomicNumber.zero(m)
    for k, c in enumerate(acc):
        if c:
            out = out + CyclotomicNumber.zeta_power(m, k).scale(c)
    return out


# ---------------------------------------------------------------------------
# parsing


def parse_scalar(text: str) -> ScalarValue:
    """Parse an expression such as ``3/2*q^-1*v1^2 - (q-q^-1)/(v1-v2)``."""
    sympy = _sympy()
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    src = text.strip()
    if not src:
        raise ScalarParseError("empty scalar expression")
    if not re.fullmatch(r"[A-Za-z0-9_+\-*/^(). ]+", src):
        bad = next(i for i, ch in enumerate(src) if not re.match(r"[A-Za-z0-9_+\-*/^(). ]", ch))
        raise ScalarParseError(f"unexpected character {src[bad]!r} at position {bad}")
    names = set(re.findall(r"[A-Za-z][A-Za-z0-9_]*", src))
    local = {n: sympy.Symbol(n) for n in names}
    try:
        expr = parse_expr(src, local_dict=local, transformations=standard_transformations + (convert_xor,))
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ScalarParseError(f"cannot parse {text!r}: {exc}") from None
    return from_sympy(expr)


def from_sympy(expr) -> ScalarValue:
    sympy = _sympy()
    expr = sympy.together(sympy.sympify(expr))
    n, d = sympy.fraction(expr)
    return ScalarValue(_poly_from_sympy(n), _poly_from_sympy(d))


def _poly_from_sympy(expr) -> LaurentPoly:
    sympy = _sympy()
    expr = sympy.expand(expr)
    syms = sorted(expr.free_symbols, key=lambda s: s.name)
    if not syms:
        r = sympy.Rational(expr)
        return LaurentPoly.const(Fraction(int(r.p), int(r.q)))
    p = sympy.Poly(expr, *syms)
    items = []
    for ex, c in p.terms():
        r = sympy.Rational(c)
        items.append(({s.name: e for s, e in zip(syms, ex)}, Fraction(int(r.p), int(r.q))))
    return LaurentPoly.from_terms(items)


def to_sympy(x: Scalar):
    sympy = _sympy()
    x = ScalarValue.coerce(x)

    def conv(p: LaurentPoly):
        acc = sympy.Integer(0)
        for exps, c in p.terms():
            t = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
            for n, e in exps.items():
                t *= sympy.Symbol(n) ** e
            acc += t
        return acc

    return conv(x.num) / conv(x.den)


# ---------------------------------------------------------------------------
# variable table


@dataclass(frozen=True)
class VariableTable:
    """Slots in use for one signature: q, v_1..v_m, adjoined, spectral, rho."""

    m: int | None
    adjoined: tuple[str, ...] = ()
    spectral: int = 0
    rho: bool = False
    names: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        names = ["q"]
        if self.m is not None:
            names += [f"v{j}" for j in range(1, self.m + 1)]
        names += list(self.adjoined)
        names += [f"u{i}" for i in range(1, self.spectral + 1)]
        if self.rho:
            names.append("rho")
        if len(set(names)) != len(names):
            raise ValueError("duplicate slot names")
        object.__setattr__(self, "names", tuple(names))
        for n in names:
            var_index(n)

    def admits(self, x: Scalar) -> bool:
        return ScalarValue.coerce(x).variables() <= set(self.names)
