"""Elements of H(m,1,n) in the inductive basis B = B_n ... B_1.

A basis word is a tuple of layers stored top-first: ``word[0] = (j_n, a_n)``
and ``word[-1] = (j_1, a_1)``.  It stands for u_n u_{n-1} ... u_1 with
u_k = s_{j_k}^-1 ... s_1^-1 t^{a_k} s_1 ... s_{k-1}.

Letters are pairs ``(i, e)``: ``i = 0`` is tau, ``i >= 1`` is sigma_i, and
``e = +-1`` selects the generator or its inverse.  ``m is None`` is the affine
case.  Multiplication is computed by letting generators act on the left of a
normal-form accumulator; every step lands back in B, so no completion is needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .group import GroupElement, GroupSignature
from .scalars import (
    CyclotomicNumber,
    LaurentPoly,
    Scalar,
    ScalarValue,
    char_coeffs,
    iota0_names,
    qdiff,
    specialize_group,
)

Letter = tuple[int, int]
Layer = tuple[int, int]
BasisWord = tuple[Layer, ...]

_P1 = LaurentPoly.const(1)


class SignatureMismatch(ValueError):
    pass


class HeckeParseError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraSignature:
    m: int | None
    n: int

    def __post_init__(self):
        if self.m is not None and self.m < 1:
            raise ValueError("m must be a positive integer or None (affine)")
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def finite(self) -> bool:
        return self.m is not None

    def exponents(self) -> range:
        if self.m is None:
            raise ValueError("the exponent set of the affine algebra is infinite")
        return range(self.m)

    def dimension(self) -> int:
        return GroupSignature(self.m, self.n).order()

    def check_letter(self, letter: Letter) -> None:
        i, e = letter
        if e not in (1, -1):
            raise ValueError("letters carry exponent +-1")
        if i == 0:
            if self.n < 1:
                raise ValueError("tau needs n >= 1")
        elif not 1 <= i <= self.n - 1:
            raise ValueError(f"sigma_{i} out of range for n={self.n}")

    def check_word(self, word: BasisWord) -> None:
        if len(word) != self.n:
            raise ValueError(f"basis word has {len(word)} layers, expected {self.n}")
        for pos, (j, a) in enumerate(word):
            k = self.n - pos
            if not 0 <= j < k:
                raise ValueError(f"layer {k}: j={j} outside 0..{k - 1}")
            if self.m is not None and not 0 <= a < self.m:
                raise ValueError(f"layer {k}: exponent {a} outside 0..{self.m - 1}")

    def label(self) -> str:
        return f"H({'inf' if self.m is None else self.m},1,{self.n})"


def identity_word(n: int) -> BasisWord:
    return tuple((k - 1, 0) for k in range(n, 0, -1))


def basis_enumerate(sig: AlgebraSignature) -> list[BasisWord]:
    """All m^n n! basis words in lexicographic order of the layer tuples."""
    if sig.m is None:
        raise ValueError("the affine algebra has an infinite basis")
    ranges = [[(j, a) for j in range(k) for a in range(sig.m)] for k in range(sig.n, 0, -1)]
    return [tuple(w) for w in product(*ranges)]


def basis_enumerate_bounded(sig: AlgebraSignature, bound: int) -> list[BasisWord]:
    """Affine analogue of :func:`basis_enumerate` with |a_k| <= bound."""
    exps = range(-bound, bound + 1) if sig.m is None else range(sig.m)
    ranges = [[(j, a) for j in range(k) for a in exps] for k in range(sig.n, 0, -1)]
    return [tuple(w) for w in product(*ranges)]


def layer_letters(k: int, j: int, a: int) -> list[Letter]:
    """s_j^-1 ... s_1^-1 t^a s_1 ... s_{k-1} as letters in product order."""
    out = [(i, -1) for i in range(j, 0, -1)]
    out += [(0, 1 if a > 0 else -1)] * abs(a)
    out += [(i, 1) for i in range(1, k)]
    return out


def word_letters(word: BasisWord) -> list[Letter]:
    n = len(word)
    out: list[Letter] = []
    for pos, (j, a) in enumerate(word):
        out += layer_letters(n - pos, j, a)
    return out


def tau_power_letters(a: int) -> list[Letter]:
    return [(0, 1 if a > 0 else -1)] * abs(a)


# ---------------------------------------------------------------------------
# fault injection (used by the CLI negative control)

_FAULT = {"active": False}


def set_fault_injection(active: bool) -> None:
    """Perturb the sigma action so that relation checks must fail."""
    _FAULT["active"] = bool(active)
    _act.cache_clear()
    _word_product.cache_clear()
    _right_word.cache_clear()


# ---------------------------------------------------------------------------
# arithmetic in E_m = A_m[z]/(chi)


@cache
def tau_power(m: int | None, p: int) -> tuple[tuple[int, LaurentPoly], ...]:
    """z^p reduced into the exponent set, as pairs (exponent, coefficient)."""
    if m is None or 0 <= p < m:
        return ((p, _P1),)
    a = char_coeffs(m)
    acc: dict[int, LaurentPoly] = {}
    if p >= m:
        for b, c in tau_power(m, p - 1):
            if b + 1 < m:
                acc[b + 1] = acc.get(b + 1, LaurentPoly()) + c
            else:
                # z^m = -(a_0 + a_1 z + ... + a_{m-1} z^{m-1})
                for b2 in range(m):
                    acc[b2] = acc.get(b2, LaurentPoly()) - a[b2] * c
    else:
        a0inv = a[0].inverse_monomial()
        for b, c in tau_power(m, p + 1):
            if b > 0:
                acc[b - 1] = acc.get(b - 1, LaurentPoly()) + c
            else:
                # z^-1 = -(1/a_0)(a_1 + a_2 z + ... + z^{m-1})
                for b2 in range(m):
                    acc[b2] = acc.get(b2, LaurentPoly()) - a[b2 + 1] * a0inv * c
    return tuple((b, c) for b, c in sorted(acc.items()) if not c.is_zero())


# ---------------------------------------------------------------------------
# the left action engine


Terms = dict  # BasisWord -> coefficient


def _add(acc: dict, key, c) -> None:
    old = acc.get(key)
    acc[key] = c if old is None else old + c


def _pack(acc: dict) -> tuple:
    return tuple((w, c) for w, c in acc.items() if not c.is_zero())


def _prefixed(layer: Layer, pairs: Iterable) -> tuple:
    return tuple(((layer,) + w, c) for w, c in pairs)


def _apply(m: int | None, letter: Letter, terms: Mapping) -> dict:
    out: dict = {}
    for w, c in terms.items():
        for w2, c2 in _act(m, letter, w):
            _add(out, w2, c if c2 is _P1 else c * c2)
    return {w: c for w, c in out.items() if not c.is_zero()}


def _apply_letters(m: int | None, letters: Sequence[Letter], terms: Mapping) -> dict:
    """Left-multiply by the product of ``letters`` (rightmost acts first)."""
    for letter in reversed(letters):
        terms = _apply(m, letter, terms)
    return dict(terms)


def _beta_letters(j: int) -> list[Letter]:
    # beta_j = s_{j-1}^-1 ... s_1^-1
    return [(i, -1) for i in range(j - 1, 0, -1)]


def _layer_with(m: int | None, j: int, p: int, terms: Mapping, acc: dict, scale) -> None:
    """acc += scale * sum_u c_u T_{j, z^p, u} with z^p reduced into the exponent set."""
    for b, zc in tau_power(m, p):
        f = zc if scale is None else zc * scale
        for u, c in terms.items():
            _add(acc, ((j, b),) + u, c * f)


@cache
def _act(m: int | None, letter: Letter, word: BasisWord) -> tuple:
    i, e = letter
    (j, a), rest = word[0], word[1:]
    qd = qdiff()
    if i >= 1:
        if e == -1:
            acc = dict(_act(m, (i, 1), word))
            _add(acc, word, -qd)
            return _pack(acc)
        if j < i - 1:
            return _prefixed((j, a), _act(m, (i - 1, 1), rest))
        if j == i - 1:
            if _FAULT["active"]:
                return (((i - 1, a),) + rest, qd + _P1), (((i, a),) + rest, _P1)
            return (((i - 1, a),) + rest, qd), (((i, a),) + rest, _P1)
        if j == i:
            return ((((i - 1, a),) + rest, _P1),)
        return _prefixed((j, a), _act(m, (i, 1), rest))
    if e == 1:
        if j == 0:
            return tuple((((0, b),) + rest, c) for b, c in tau_power(m, a + 1))
        acc: dict = {}
        beta = _beta_letters(j)
        x1 = _apply_letters(m, beta + tau_power_letters(a), {rest: _P1})
        _layer_with(m, 0, 1, x1, acc, qd)
        x2 = _apply_letters(m, beta, {rest: _P1})
        _layer_with(m, 0, a + 1, x2, acc, -qd)
        for u, c in _act(m, (0, 1), rest):
            _add(acc, ((j, a),) + u, c)
        return _pack(acc)
    # tau^-1
    if m is not None:
        # tau^-1 = -(1/a_0)(tau^{m-1} + a_{m-1} tau^{m-2} + ... + a_1)
        coeffs = char_coeffs(m)
        a0inv = coeffs[0].inverse_monomial()
        acc = {}
        cur = {word: _P1}
        for k in range(1, m + 1):
            f = -coeffs[k] * a0inv
            for w, c in cur.items():
                _add(acc, w, c * f)
            if k < m:
                cur = _apply(m, (0, 1), cur)
        return _pack(acc)
    if j == 0:
        return ((((0, a - 1),) + rest, _P1),)
    acc = {}
    beta = _beta_letters(j)
    x1 = _apply_letters(m, beta + [(0, -1)], {rest: _P1})
    _layer_with(m, 0, a, x1, acc, qd)
    x2 = _apply_letters(m, beta + tau_power_letters(a - 1), {rest: _P1})
    _layer_with(m, 0, 0, x2, acc, -qd)
    for u, c in _act(m, (0, -1), rest):
        _add(acc, ((j, a),) + u, c)
    return _pack(acc)


@cache
def _word_product(m: int | None, w1: BasisWord, w2: BasisWord) -> tuple:
    return tuple(_apply_letters(m, word_letters(w1), {w2: _P1}).items())


# ---------------------------------------------------------------------------
# elements


def _clean(terms: Mapping) -> dict:
    return {w: c for w, c in terms.items() if not c.is_zero()}


def _coerce_coeff(c) -> Scalar:
    if isinstance(c, (LaurentPoly, ScalarValue)):
        return c
    return LaurentPoly.coerce(c)


class HElement:
    """Immutable linear combination of basis words of one signature."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: AlgebraSignature, terms: Mapping[BasisWord, Scalar] | None = None):
        self.sig = sig
        self.terms: dict[BasisWord, Scalar] = _clean(
            {tuple(map(tuple, w)): _coerce_coeff(c) for w, c in (terms or {}).items()}
        )

    # constructors -------------------------------------------------------
    @staticmethod
    def zero(sig: AlgebraSignature) -> "HElement":
        return HElement(sig)

    @staticmethod
    def one(sig: AlgebraSignature) -> "HElement":
        return HElement(sig, {identity_word(sig.n): _P1})

    @staticmethod
    def basis(sig: AlgebraSignature, word: BasisWord) -> "HElement":
        sig.check_word(word)
        return HElement(sig, {tuple(word): _P1})

    @staticmethod
    def scalar(sig: AlgebraSignature, c: Scalar) -> "HElement":
        return HElement(sig, {identity_word(sig.n): c})

    # inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, word: BasisWord) -> Scalar:
        return self.terms.get(tuple(word), LaurentPoly())

    def support(self) -> list[BasisWord]:
        return sorted(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[BasisWord, Scalar]]:
        for w in sorted(self.terms):
            yield w, self.terms[w]

    def _check(self, other: "HElement") -> None:
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig.label()} vs {other.sig.label()}")

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "HElement") -> "HElement":
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add(acc, w, c)
        return HElement(self.sig, acc)

    def __neg__(self) -> "HElement":
        return HElement(self.sig, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "HElement") -> "HElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "HElement":
        c = _coerce_coeff(c)
        return HElement(self.sig, {w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HElement):
            return NotImplemented
        if self.sig != other.sig or self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[w] for w, c in self.terms.items())

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms)))

    def map_coefficients(self, f) -> "HElement":
        return HElement(self.sig, {w: f(c) for w, c in self.terms.items()})

    def has_unit_denominators(self) -> bool:
        """True when every coefficient is a Laurent polynomial."""
        for c in self.terms.values():
            if isinstance(c, ScalarValue) and not c.reduce().den.is_one():
                return False
        return True

    # serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "signature": {"m": "inf" if self.sig.m is None else self.sig.m, "n": self.sig.n},
            "terms": [
                {"layers": [list(p) for p in w], "coeff": ScalarValue.coerce(c).to_json()}
                for w, c in self
            ],
        }

    @staticmethod
    def from_json(obj: Mapping) -> "HElement":
        s = obj["signature"]
        m = s["m"]
        sig = AlgebraSignature(None if m in (None, "inf") else int(m), int(s["n"]))
        terms: dict = {}
        for t in obj["terms"]:
            w = tuple(tuple(p) for p in t["layers"])
            sig.check_word(w)
            c = ScalarValue.from_json(t["coeff"])
            _add(terms, w, c.as_laurent() if c.reduce().den.is_one() else c)
        return HElement(sig, terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self:
            cs = ScalarValue.coerce(c).to_text()
            label = "[" + " ".join(f"({j},{a})" for j, a in w) + "]"
            parts.append(f"({cs})*{label}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HElement({self.sig.label()}, {self.to_text()})"


# ---------------------------------------------------------------------------
# operations


def left_mul_generator(letter: Letter, x: HElement) -> HElement:
    x.sig.check_letter(letter)
    return HElement(x.sig, _apply(x.sig.m, letter, x.terms))


def from_word(word: Sequence[Letter], sig: AlgebraSignature) -> HElement:
    for letter in word:
        sig.check_letter(letter)
    return HElement(sig, _apply_letters(sig.m, list(word), {identity_word(sig.n): _P1}))


def generator(sig: AlgebraSignature, letter: Letter) -> HElement:
    return from_word([letter], sig)


def multiply(x: HElement, y: HElement) -> HElement:
    x._check(y)
    m = x.sig.m
    acc: dict = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            c = c1 * c2
            for w, d in _word_product(m, w1, w2):
                _add(acc, w, c if d is _P1 else c * d)
    return HElement(x.sig, acc)


def power(x: HElement, e: int) -> HElement:
    out = HElement.one(x.sig)
    for _ in range(e):
        out = multiply(out, x)
    return out


# -- right action -----------------------------------------------------------


@cache
def _right_word(m: int | None, word: BasisWord, letter: Letter) -> tuple:
    n = len(word)
    i, e = letter
    (j, a), u = word[0], word[1:]
    if n == 1:
        return tuple((((0, b),), c) for b, c in tau_power(m, a + e))
    if i == 0 or i <= n - 2:
        return _prefixed((j, a), _right_word(m, u, letter))
    if e == -1:
        acc = dict(_right_word(m, word, (i, 1)))
        _add(acc, word, -qdiff())
        return _pack(acc)
    return _pack(_right_top(m, j, a, u))


def _right_top(m: int | None, j: int, a: int, u: BasisWord) -> dict:
    """T_{j,a,u} * sigma_{n-1}, where u = T_{k,b,w} lives one level down."""
    n = len(u) + 1
    qd = qdiff()
    (k, b), w = u[0], u[1:]
    w_emb = {((n - 2, 0),) + w: _P1}
    binv_w = _apply_letters(m, [(i, 1) for i in range(1, n - 1)], w_emb)

    def y(l: int, ex: int) -> dict:
        return _apply_letters(m, _beta_letters(l) + tau_power_letters(ex), binv_w)

    acc: dict = {}
    shifted = _apply_letters(m, [(i, 1) for i in range(k + 1, n - 1)], w_emb)
    _layer_with(m, j, a + b, shifted, acc, qd)
    if a > 0:
        for c in range(1, a + 1):
            _layer_with(m, j, c, y(k + 1, a + b - c), acc, qd)
            _layer_with(m, j, c + b, y(k + 1, a - c), acc, -qd)
    elif a < 0:
        for c in range(1, -a + 1):
            _layer_with(m, j, c + a + b, y(k + 1, -c), acc, qd)
            _layer_with(m, j, c + a, y(k + 1, b - c), acc, -qd)
    if j <= k:
        _layer_with(m, k + 1, b, y(j + 1, a), acc, None)
    else:
        _layer_with(m, k, b, y(j, a), acc, None)
        _layer_with(m, j, b, y(k + 1, a), acc, -qd)
    return acc


def right_mul_generator(x: HElement, letter: Letter) -> HElement:
    x.sig.check_letter(letter)
    acc: dict = {}
    for w, c in x.terms.items():
        for w2, d in _right_word(x.sig.m, w, letter):
            _add(acc, w2, c if d is _P1 else c * d)
    return HElement(x.sig, acc)


# -- involutions ------------------------------------------------------------


def _map_coeff_iota0(c: Scalar, names: list[str]) -> Scalar:
    return c.invert_vars(names)


def involution_iota(x: HElement) -> HElement:
    """Ring involution inverting the generators, q and the v_j."""
    names = iota0_names(x.sig.m)
    acc: dict = {}
    for w, c in x.terms.items():
        letters = [(i, -e) for i, e in word_letters(w)]
        img = _apply_letters(x.sig.m, letters, {identity_word(x.sig.n): _P1})
        cc = _map_coeff_iota0(c, names)
        for w2, d in img.items():
            _add(acc, w2, cc * d)
    return HElement(x.sig, acc)


def anti_involution_varpi(x: HElement) -> HElement:
    """Anti-involution fixing the generators."""
    acc: dict = {}
    for w, c in x.terms.items():
        letters = word_letters(w)[::-1]
        for w2, d in _apply_letters(x.sig.m, letters, {identity_word(x.sig.n): _P1}).items():
            _add(acc, w2, c * d)
    return HElement(x.sig, acc)


def iota0(c: Scalar, m: int | None) -> Scalar:
    return c.invert_vars(iota0_names(m))


# -- other bases ------------------------------------------------------------


def bplus_layer_letters(k: int, j: int, a: int) -> list[Letter]:
    """t^+_{j,a} at level k: s_{j+1}...s_{k-1} for a = 0, else s_j...s_1 t^a s_1...s_{k-1}."""
    if a == 0:
        return [(i, 1) for i in range(j + 1, k)]
    return [(i, 1) for i in range(j, 0, -1)] + tau_power_letters(a) + [(i, 1) for i in range(1, k)]


def bplus_word_letters(word: BasisWord) -> list[Letter]:
    n = len(word)
    out: list[Letter] = []
    for pos, (j, a) in enumerate(word):
        out += bplus_layer_letters(n - pos, j, a)
    return out


def bplus_element(sig: AlgebraSignature, word: BasisWord) -> HElement:
    sig.check_word(word)
    return from_word(bplus_word_letters(word), sig)


def triangular_solve(x: HElement, expand) -> dict[BasisWord, Scalar]:
    """Coordinates of x in a basis indexed by B-words, unitriangular w.r.t. lexicographic order.

    ``expand(word)`` returns the basis element as an HElement whose largest
    B-word is ``word`` itself with coefficient 1.
    """
    rest = dict(x.terms)
    out: dict[BasisWord, Scalar] = {}
    while rest:
        w = max(rest)
        c = rest[w]
        e = expand(w)
        lead = max(e.terms)
        if lead != w or not (e.terms[w] == 1):
            raise AssertionError(f"change of basis is not unitriangular at {w}")
        out[w] = c
        for w2, d in e.terms.items():
            _add(rest, w2, -(c * d))
        rest = _clean(rest)
    return out


def to_bplus_basis(x: HElement) -> dict[BasisWord, Scalar]:
    if x.sig.m is None:
        raise ValueError("the B+ conversion needs finite m")
    return triangular_solve(x, lambda w: bplus_element(x.sig, w))


def from_bplus_basis(sig: AlgebraSignature, coeffs: Mapping[BasisWord, Scalar]) -> HElement:
    acc = HElement.zero(sig)
    for w, c in coeffs.items():
        acc = acc + bplus_element(sig, w).scale(c)
    return acc


# -- specialization -----------------------------------------------------------


def specialize_to_group(x: HElement, sign: int) -> dict[GroupElement, CyclotomicNumber]:
    """Image in Q(zeta_m)[G(m,1,n)] under q -> sign, v_j -> zeta^(j-1)."""
    m = x.sig.m
    if m is None:
        raise ValueError("specialization needs finite m")
    gsig = GroupSignature(m, x.sig.n)
    out: dict[GroupElement, CyclotomicNumber] = {}
    for w, c in x.terms.items():
        g = GroupElement.identity(m, x.sig.n)
        for i, e in word_letters(w):
            g = g * GroupElement.generator(m, gsig.n, (i, e) if i == 0 else (i, 1))
        val = specialize_group(c, m, sign)
        out[g] = out[g] + val if g in out else val
    return {g: v for g, v in out.items() if not v.is_zero()}


def group_algebra_mul(
    x: Mapping[GroupElement, CyclotomicNumber], y: Mapping[GroupElement, CyclotomicNumber]
) -> dict[GroupElement, CyclotomicNumber]:
    out: dict[GroupElement, CyclotomicNumber] = {}
    for g, a in x.items():
        for h, b in y.items():
            gh = g * h
            v = a * b
            out[gh] = out[gh] + v if gh in out else v
    return {g: v for g, v in out.items() if not v.is_zero()}


# -- checks -----------------------------------------------------------------


def defining_relations(sig: AlgebraSignature) -> list[tuple[str, list[Letter], list[Letter], Scalar | None]]:
    """(name, lhs, rhs) pairs of generator words; the quadratic and cyclotomic relations are handled separately."""
    n = sig.n
    rels: list = []
    for i in range(1, n - 1):
        rels.append((f"braid s{i}s{i + 1}s{i}", [(i, 1), (i + 1, 1), (i, 1)], [(i + 1, 1), (i, 1), (i + 1, 1)]))
    for i in range(1, n):
        for k in range(i + 2, n):
            rels.append((f"commute s{i}s{k}", [(i, 1), (k, 1)], [(k, 1), (i, 1)]))
    if n >= 2:
        rels.append(("tau s1 tau s1", [(0, 1), (1, 1), (0, 1), (1, 1)], [(1, 1), (0, 1), (1, 1), (0, 1)]))
    for i in range(2, n):
        rels.append((f"tau s{i}", [(0, 1), (i, 1)], [(i, 1), (0, 1)]))
    for i in range(1, n):
        rels.append((f"inverse s{i}", [(i, 1), (i, -1)], []))
    if n >= 1:
        rels.append(("inverse tau", [(0, 1), (0, -1)], []))
        rels.append(("inverse tau (left)", [(0, -1), (0, 1)], []))
    return rels


def check_relations(sig: AlgebraSignature) -> list[tuple[str, bool]]:
    """Verify every defining relation as an identity of HElements."""
    results = []
    for name, lhs, rhs in defining_relations(sig):
        results.append((name, from_word(lhs, sig) == from_word(rhs, sig)))
    qd = qdiff()
    for i in range(1, sig.n):
        s = generator(sig, (i, 1))
        ok = multiply(s, s) == s.scale(qd) + HElement.one(sig)
        results.append((f"quadratic s{i}", ok))
    if sig.m is not None and sig.n >= 1:
        t = generator(sig, (0, 1))
        acc = HElement.one(sig)
        for jj in range(1, sig.m + 1):
            acc = multiply(t - HElement.scalar(sig, LaurentPoly.var(f"v{jj}")), acc)
        results.append(("cyclotomic", acc.is_zero()))
    return results


def check_flatness(sig: AlgebraSignature) -> bool:
    """Every basis word reduces to itself from its defining generator word."""
    for w in basis_enumerate(sig):
        if from_word(word_letters(w), sig) != HElement.basis(sig, w):
            return False
    return True


def check_lemma_flip(sig: AlgebraSignature, j: int, alpha: int, eps: int) -> bool:
    """Flipping the sign of the leading sigma block only adds terms with smaller j and the same alpha."""
    n = sig.n
    tail = tau_power_letters(alpha) + [(i, 1) for i in range(1, n)]
    lhs = from_word([(i, eps) for i in range(j, 0, -1)] + tail, sig)
    rhs = from_word([(i, -eps) for i in range(j, 0, -1)] + tail, sig)
    diff = lhs - rhs
    for w in diff.terms:
        k, a = w[0]
        if not (k < j and a == alpha):
            return False
    return True


def _lin(sig: AlgebraSignature, *pieces: tuple[Scalar, list[Letter]]) -> HElement:
    acc = HElement.zero(sig)
    for c, letters in pieces:
        acc = acc + from_word(letters, sig).scale(c)
    return acc


def _t(a: int) -> list[Letter]:
    return tau_power_letters(a)


_S1, _S1I = [(1, 1)], [(1, -1)]


def check_tau_commutation(sig: AlgebraSignature, alpha: int) -> bool:
    """t s1^-1 t^alpha s1 = (q-q^-1)(t s1 t^alpha - t^(alpha+1) s1) + s1^-1 t^alpha s1 t."""
    qd = qdiff()
    lhs = from_word(_t(1) + _S1I + _t(alpha) + _S1, sig)
    rhs = _lin(sig, (qd, _t(1) + _S1 + _t(alpha)), (-qd, _t(alpha + 1) + _S1), (_P1, _S1I + _t(alpha) + _S1 + _t(1)))
    return lhs == rhs


def check_tau_inverse_commutation(sig: AlgebraSignature, alpha: int) -> bool:
    """t^-1 s1^-1 t^alpha s1 = (q-q^-1)(t^alpha s1 t^-1 - s1 t^(alpha-1)) + s1^-1 t^alpha s1 t^-1."""
    qd = qdiff()
    lhs = from_word(_t(-1) + _S1I + _t(alpha) + _S1, sig)
    rhs = _lin(sig, (qd, _t(alpha) + _S1 + _t(-1)), (-qd, _S1 + _t(alpha - 1)), (_P1, _S1I + _t(alpha) + _S1 + _t(-1)))
    return lhs == rhs


def check_tatc(sig: AlgebraSignature, a: int, c: int) -> bool:
    """s1^-1 t^a s1 t^c = t^c s1^-1 t^a s1 + (q-q^-1) sum_i (t^(a+i) s1^-1 t^(c-i) - t^i s1^-1 t^(a+c-i))."""
    qd = qdiff()
    lhs = from_word(_S1I + _t(a) + _S1 + _t(c), sig)
    pieces = [(_P1, _t(c) + _S1I + _t(a) + _S1)]
    for i in range(1, c + 1):
        pieces += [(qd, _t(a + i) + _S1I + _t(c - i)), (-qd, _t(i) + _S1I + _t(a + c - i))]
    return lhs == _lin(sig, *pieces)


def check_tat_minus_c(sig: AlgebraSignature, a: int, c: int) -> bool:
    """s1^-1 t^a s1 t^-c = t^-c s1^-1 t^a s1 - (q-q^-1) sum_i (t^(a+i-c) s1^-1 t^-i - t^(i-c) s1^-1 t^(a-i))."""
    qd = qdiff()
    lhs = from_word(_S1I + _t(a) + _S1 + _t(-c), sig)
    pieces = [(_P1, _t(-c) + _S1I + _t(a) + _S1)]
    for i in range(1, c + 1):
        pieces += [(-qd, _t(a + i - c) + _S1I + _t(-i)), (qd, _t(i - c) + _S1I + _t(a - i))]
    return lhs == _lin(sig, *pieces)


def check_identities(sig: AlgebraSignature) -> list[tuple[str, bool]]:
    """The tau/s1 commutation identities and the flip lemma on one signature."""
    out: list[tuple[str, bool]] = []
    if sig.n < 2:
        return out
    alphas = list(sig.exponents()) if sig.m is not None else list(range(-2, 3))
    out.append(("t s1^-1 t^a s1 expansion", all(check_tau_commutation(sig, a) for a in alphas)))
    out.append(("t^-1 s1^-1 t^a s1 expansion", all(check_tau_inverse_commutation(sig, a) for a in alphas)))
    out.append(("s1^-1 t^a s1 t^c expansion, c <= 3", all(check_tatc(sig, a, c) for a in alphas for c in range(4))))
    out.append(("s1^-1 t^a s1 t^-c expansion, c <= 3", all(check_tat_minus_c(sig, a, c) for a in alphas for c in range(4))))
    for eps in (1, -1):
        ok = all(check_lemma_flip(sig, j, a, eps) for j in range(sig.n) for a in alphas)
        out.append((f"flip lemma, eps = {eps:+d}", ok))
    return out


# ---------------------------------------------------------------------------
# text grammar


_HTOKEN = re.compile(r"\s*(?:(T)(?:\^(-?\d+))?|G(\d+)(?:\^(-?1))?)\s*(\*)?")


def parse_hecke_word(text: str, n: int | None = None) -> list[Letter]:
    """Parse words such as ``T G1 T^-1 G2^-1`` (``*`` separators optional).

    With ``n`` given, generator indices are range-checked against H(m,1,n).
    """
    pos = 0
    out: list[Letter] = []
    src = text.strip()
    if src in ("", "1"):
        return out
    while pos < len(src):
        mt = _HTOKEN.match(src, pos)
        if not mt or mt.end() == pos:
            raise HeckeParseError(f"unexpected input at position {pos}: {src[pos:pos + 10]!r}")
        if mt.group(1):
            e = int(mt.group(2)) if mt.group(2) else 1
            if e == 0:
                raise HeckeParseError(f"zero exponent at position {pos}")
            if n is not None and n < 1:
                raise HeckeParseError(f"T at position {pos} needs n >= 1")
            out += tau_power_letters(e)
        else:
            i = int(mt.group(3))
            if i < 1:
                raise HeckeParseError(f"generator index must be positive at position {pos}")
            if n is not None and i > n - 1:
                raise HeckeParseError(f"G{i} at position {pos} is out of range for n={n}")
            out.append((i, int(mt.group(4)) if mt.group(4) else 1))
        pos = mt.end()
    return out


def format_hecke_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    parts = []
    for i, e in word:
        base = "T" if i == 0 else f"G{i}"
        parts.append(base if e == 1 else base + "^-1")
    return " ".join(parts)
