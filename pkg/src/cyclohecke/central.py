"""B-multiplicative central forms L^gamma, their bar-twisted version and the basis B^gamma."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .hecke import (
    AlgebraSignature,
    BasisWord,
    HElement,
    Letter,
    anti_involution_varpi,
    basis_enumerate,
    basis_enumerate_bounded,
    bplus_element,
    from_word,
    generator,
    identity_word,
    involution_iota,
    iota0,
    multiply,
    specialize_to_group,
    tau_power,
    tau_power_letters,
    triangular_solve,
)
from .group import GroupElement
from .scalars import LaurentPoly, Scalar, ScalarValue, indexed_name, qdiff, scalar_is_zero, specialize_group
from .traces import TraceParams, embed, markov_trace

Report = list[tuple[str, bool]]
_P1 = LaurentPoly.const(1)


def _coerce(c) -> Scalar:
    return c if isinstance(c, (LaurentPoly, ScalarValue)) else LaurentPoly.coerce(c)


@dataclass(frozen=True)
class GammaFunctional:
    """A linear functional on polynomials in tau, given by gamma_a = gamma(tau^a).

    For finite m only a in 0..m-1 are free; other exponents are reduced with the
    characteristic polynomial. For m = inf every exponent is independent: in
    generic mode unknown ones become indeterminates ``gamma<a>``, otherwise the
    caller has to supply them.
    """

    m: int | None
    values: Mapping[int, Scalar] = field(default_factory=dict)
    generic: bool = True

    @staticmethod
    def symbolic(m: int | None) -> "GammaFunctional":
        return GammaFunctional(m)

    @staticmethod
    def circ(m: int | None) -> "GammaFunctional":
        """gamma_0 = 1 and gamma_a = 0 otherwise."""
        return GammaFunctional(m, {0: 1}, generic=False)

    def base(self, a: int) -> Scalar:
        if a in self.values:
            return _coerce(self.values[a])
        if self.generic:
            return LaurentPoly.var(indexed_name("gamma", a))
        if self.m is not None:
            return LaurentPoly()
        raise KeyError(f"gamma_{a} must be supplied explicitly when m is infinite")

    def __call__(self, a: int) -> Scalar:
        if self.m is None or 0 <= a < self.m:
            return self.base(a)
        acc: Scalar = LaurentPoly()
        for b, c in tau_power(self.m, a):
            acc = acc + c * self.base(b)
        return acc


def L_levels(x: HElement, gammas: Sequence[GammaFunctional]) -> Scalar:
    """Layer-wise form with functional ``gammas[k-1]`` on level k."""
    n = x.sig.n
    acc: Scalar = LaurentPoly()
    for w, c in x.terms.items():
        val: Scalar = c
        for pos, (j, a) in enumerate(w):
            k = n - pos
            if j != k - 1:
                val = LaurentPoly()
                break
            g = gammas[k - 1](a)
            val = val * g
        acc = acc + val
    return acc


def L_gamma(x: HElement, gamma: GammaFunctional) -> Scalar:
    return L_levels(x, [gamma] * x.sig.n)


def L_gamma_word(word: BasisWord, gamma: GammaFunctional) -> Scalar:
    n = len(word)
    val: Scalar = _P1
    for pos, (j, a) in enumerate(word):
        if j != n - pos - 1:
            return LaurentPoly()
        val = val * gamma(a)
    return val


def iota_L_gamma(x: HElement, gamma: GammaFunctional) -> Scalar:
    """iota0 o L^gamma o iota."""
    return iota0(L_gamma(involution_iota(x), gamma), x.sig.m)


def _words(sig: AlgebraSignature, bound: int = 1) -> list[BasisWord]:
    return basis_enumerate(sig) if sig.m is not None else basis_enumerate_bounded(sig, bound)


def _gen_letters(n: int) -> list[Letter]:
    return [(0, 1), (0, -1)] + [(i, 1) for i in range(1, n)]


def verify_centrality(
    m: int | None, n: int, gamma: GammaFunctional, *, levels: Sequence[GammaFunctional] | None = None
) -> Report:
    """L(gx) = L(xg) for generators g and basis words x, plus varpi-invariance."""
    sig = AlgebraSignature(m, n)
    gs = list(levels) if levels is not None else [gamma] * n
    form = lambda y: L_levels(y, gs)  # noqa: E731
    words = _words(sig)
    gens = [generator(sig, l) for l in _gen_letters(n)]
    central = True
    for w in words:
        x = HElement.basis(sig, w)
        for g in gens:
            if form(multiply(g, x)) != form(multiply(x, g)):
                central = False
                break
        if not central:
            break
    varpi = all(form(anti_involution_varpi(HElement.basis(sig, w))) == form(HElement.basis(sig, w)) for w in words)
    return [(f"L(gx) = L(xg) on H({sig.label()})", central), ("L(varpi(x)) = L(x)", varpi)]


# -- other bases ------------------------------------------------------------------


def bgamma_layer(j: int, a: int, gamma: GammaFunctional, normalize: bool = True) -> dict[tuple[int, int], Scalar]:
    """Layer element of B^gamma as a combination of B-layers (j, .)."""
    if a == 0:
        return {(j, 0): _P1}
    g = gamma(a)
    if normalize:
        g0 = gamma(0)
        if scalar_is_zero(g0):
            raise ZeroDivisionError("gamma_0 = 0 cannot be normalised")
        if not (g0 == 1):
            g = ScalarValue.coerce(g) / g0
    out: dict[tuple[int, int], Scalar] = {(j, a): _P1}
    if not scalar_is_zero(g):
        out[(j, 0)] = -g
    return out


def bgamma_element(sig: AlgebraSignature, word: BasisWord, gamma: GammaFunctional, normalize: bool = True) -> HElement:
    sig.check_word(word)
    acc: dict[BasisWord, Scalar] = {(): _P1}
    for j, a in word:
        nxt: dict[BasisWord, Scalar] = {}
        for layer, c in bgamma_layer(j, a, gamma, normalize).items():
            for w, d in acc.items():
                nxt[w + (layer,)] = d * c
        acc = nxt
    return HElement(sig, acc)


def bgamma_basis(
    m: int, n: int, gamma: GammaFunctional, normalize: bool = True
) -> list[tuple[BasisWord, HElement, Scalar]]:
    """(label, element, L^gamma value) for every element of B^gamma."""
    sig = AlgebraSignature(m, n)
    out = []
    for w in basis_enumerate(sig):
        e = bgamma_element(sig, w, gamma, normalize)
        out.append((w, e, L_gamma(e, gamma)))
    return out


def to_bgamma_basis(x: HElement, gamma: GammaFunctional, normalize: bool = True) -> dict[BasisWord, Scalar]:
    return triangular_solve(x, lambda w: bgamma_element(x.sig, w, gamma, normalize))


def check_quasi_symmetry(m: int, n: int, gamma: GammaFunctional) -> Report:
    rows = bgamma_basis(m, n, gamma)
    one = identity_word(n)
    g0n = gamma(0) ** n if n else _P1
    ok = all((val == g0n) if w == one else scalar_is_zero(val) for w, _, val in rows)
    sig = AlgebraSignature(m, n)
    basis_ok = len(rows) == sig.dimension()
    return [("B^gamma has m^n n! elements", basis_ok), ("L^gamma(1) = gamma_0^n, zero on other B^gamma", ok)]


def check_bplus_multiplicativity(m: int, n: int, gamma: GammaFunctional) -> Report:
    sig = AlgebraSignature(m, n)
    ok = all(L_gamma(bplus_element(sig, w), gamma) == L_gamma_word(w, gamma) for w in basis_enumerate(sig))
    return [("L^gamma multiplicative on B+", ok)]


def markov_params_of(gamma: GammaFunctional, *, twisted: bool = True) -> TraceParams:
    """Markov data matching L^gamma (D = 0, mu_a = gamma_a) or iota(L^gamma).

    For the twisted form the data that actually match are D = q - q^-1 and
    mu_a = iota0(gamma_-a); the Markov parameter is not 0 because
    iota(sigma) = sigma - (q - q^-1) picks up the identity layer.
    """
    m = gamma.m
    exps = range(1, m) if m is not None else [a for a in gamma.values if a != 0]
    if not twisted:
        return TraceParams(m, D=LaurentPoly(), mu={a: gamma(a) for a in exps})
    return TraceParams(m, D=qdiff(), mu={a: iota0(gamma(-a), m) for a in exps})


def check_markov_identification(m: int, n: int, gamma: GammaFunctional) -> Report:
    """Compare L^gamma and iota(L^gamma) with compositions of relative traces."""
    if not (gamma(0) == 1):
        raise ValueError("the identification needs gamma_0 = 1")
    sig = AlgebraSignature(m, n)
    words = basis_enumerate(sig)
    plain, twisted = markov_params_of(gamma, twisted=False), markov_params_of(gamma)
    out = [
        (
            "L^gamma is the D = 0, mu = gamma Markov trace",
            all(L_gamma_word(w, gamma) == markov_trace(HElement.basis(sig, w), plain) for w in words),
        ),
        (
            "iota(L^gamma) is the D = q - q^-1, mu_a = iota0(gamma_-a) Markov trace",
            all(iota_L_gamma(HElement.basis(sig, w), gamma) == markov_trace(HElement.basis(sig, w), twisted) for w in words),
        ),
    ]
    if n >= 2:
        s = generator(sig, (n - 1, 1))
        low = AlgebraSignature(m, n - 1)
        ok = True
        for w in basis_enumerate(low):
            x = HElement.basis(low, w)
            if iota_L_gamma(multiply(s, embed(x)), gamma) != qdiff() * iota_L_gamma(x, gamma):
                ok = False
        out.append(("iota(L^gamma)(s_{n-1} x) = (q - q^-1) iota(L^gamma)(x)", ok))
        ok = True
        for a in range(m):
            head = [(i, 1) for i in range(n - 1, 0, -1)] + tau_power_letters(a) + [(i, -1) for i in range(1, n)]
            h = from_word(head, sig)
            for w in basis_enumerate(low):
                x = HElement.basis(low, w)
                if iota_L_gamma(multiply(h, embed(x)), gamma) != iota0(gamma(-a), m) * iota_L_gamma(x, gamma):
                    ok = False
        out.append(("iota(L^gamma)(s..s_1 t^a s_1^-1..s^-1 x) = iota0(gamma_-a) iota(L^gamma)(x)", ok))
    return out


def check_group_specialization(m: int, n: int, sign: int = 1) -> Report:
    """At q -> sign, v_j -> zeta^(j-1), L^gamma-circ becomes the delta form on the group."""
    sig = AlgebraSignature(m, n)
    gc = GammaFunctional.circ(m)
    ident = GroupElement.identity(m, n)
    ok_l = ok_i = True
    for w in basis_enumerate(sig):
        x = HElement.basis(sig, w)
        img = specialize_to_group(x, sign)
        expected = img.get(ident)
        for val, name in ((L_gamma(x, gc), "l"), (iota_L_gamma(x, gc), "i")):
            got = specialize_group(val, m, sign)
            good = got.is_zero() if expected is None else (got - expected).is_zero()
            if not good:
                if name == "l":
                    ok_l = False
                else:
                    ok_i = False
    return [("L^gamma-circ specialises to the group delta form", ok_l), ("iota(L^gamma-circ) likewise", ok_i)]
