"""Relative traces Tr_k : H(m,1,k) -> H(m,1,k-1) and the composed Markov trace."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .hecke import (
    AlgebraSignature,
    BasisWord,
    HElement,
    Letter,
    SignatureMismatch,
    _word_product,
    basis_enumerate,
    basis_enumerate_bounded,
    from_word,
    generator,
    identity_word,
    multiply,
    tau_power,
    tau_power_letters,
)
from .scalars import LaurentPoly, Scalar, ScalarValue, indexed_name

Report = list[tuple[str, bool]]
_P1 = LaurentPoly.const(1)


@dataclass(frozen=True)
class TraceParams:
    """D and mu_a for a in E_m minus {0}; mu_0 = 1.

    Missing mu_a (including all of them in generic mode) are adjoined as
    indeterminates named ``mu<a>`` (``mun<a>`` for negative a).
    """

    m: int | None
    D: Scalar = field(default_factory=lambda: LaurentPoly.var("D"))
    mu: Mapping[int, Scalar] = field(default_factory=dict)
    perturb_word: BasisWord | None = None

    @staticmethod
    def generic(m: int | None) -> "TraceParams":
        return TraceParams(m)

    def base_mu(self, a: int) -> Scalar:
        if a == 0:
            return _P1
        if a in self.mu:
            c = self.mu[a]
            return c if isinstance(c, (LaurentPoly, ScalarValue)) else LaurentPoly.coerce(c)
        return LaurentPoly.var(indexed_name("mu", a))

    def mu_of(self, a: int) -> Scalar:
        """mu_a for any integer a; outside E_m it is Tr_1 of the reduced power tau^a."""
        if self.m is None or 0 <= a < self.m:
            return self.base_mu(a)
        acc: Scalar = LaurentPoly()
        for b, c in tau_power(self.m, a):
            acc = acc + c * self.base_mu(b)
        return acc


def embed(x: HElement, levels: int = 1) -> HElement:
    """Image of x under H(m,1,n) -> H(m,1,n+levels)."""
    n = x.sig.n
    prefix = tuple((k - 1, 0) for k in range(n + levels, n, -1))
    return HElement(AlgebraSignature(x.sig.m, n + levels), {prefix + w: c for w, c in x.terms.items()})


def tr_k(x: HElement, params: TraceParams) -> HElement:
    k = x.sig.n
    if k == 0:
        raise ValueError("Tr_k needs k >= 1")
    if params.m != x.sig.m:
        raise SignatureMismatch("trace parameters belong to a different m")
    m = x.sig.m
    low = AlgebraSignature(m, k - 1)
    acc: dict = {}
    for w, c in x.terms.items():
        (j, a), u = w[0], w[1:]
        if j == k - 1:
            f = c * params.mu_of(a)
            old = acc.get(u)
            acc[u] = f if old is None else old + f
        else:
            f = c * params.D
            head = ((j, a),) + identity_word(k - 2)
            for w2, d in _word_product(m, head, u):
                g = f * d
                old = acc.get(w2)
                acc[w2] = g if old is None else old + g
        if params.perturb_word is not None and w == params.perturb_word:
            key = identity_word(k - 1)
            acc[key] = acc.get(key, LaurentPoly()) + c
    return HElement(low, acc)


def markov_trace(x: HElement, params: TraceParams) -> Scalar:
    while x.sig.n > 0:
        x = tr_k(x, params)
    return x.coeff(())


# ---------------------------------------------------------------------------
# verification


def _generators(sig: AlgebraSignature) -> list[HElement]:
    if sig.n == 0:
        return [HElement.one(sig)]
    letters: list[Letter] = [(0, 1), (0, -1)] + [(i, 1) for i in range(1, sig.n)]
    return [HElement.one(sig)] + [generator(sig, l) for l in letters]


def _basis(sig: AlgebraSignature, bound: int = 1) -> list[BasisWord]:
    return basis_enumerate(sig) if sig.m is not None else basis_enumerate_bounded(sig, bound)


def _exps(m: int | None) -> range:
    return range(m) if m is not None else range(-2, 3)


def lemma_tatb(m: int | None, a: int, b: int, params: TraceParams) -> bool:
    """Tr_1 Tr_2 (s1^-1 t^a s1 t^b s1) = D mu_{a+b}."""
    sig = AlgebraSignature(m, 2)
    word = [(1, -1)] + tau_power_letters(a) + [(1, 1)] + tau_power_letters(b) + [(1, 1)]
    lhs = markov_trace(from_word(word, sig), params)
    return lhs == params.D * params.mu_of(a + b)


def verify_trace_axioms(m: int | None, n: int, params: TraceParams, *, samples: int = 40, seed: int = 0) -> Report:
    out: Report = []
    one0 = HElement.one(AlgebraSignature(m, 0))
    s1 = AlgebraSignature(m, 1)
    out.append(("Tr_1(1) = 1", tr_k(HElement.one(s1), params) == one0))
    for a in _exps(m):
        if a != 0:
            ok = tr_k(from_word(tau_power_letters(a), s1), params) == one0.scale(params.mu_of(a))
            out.append((f"Tr_1(tau^{a}) = mu_{a}", ok))
    for k in range(2, n + 1):
        sig, low = AlgebraSignature(m, k), AlgebraSignature(m, k - 1)
        basis = [HElement.basis(sig, w) for w in _basis(sig)]
        gens = _generators(low)
        ok = tr_k(HElement.one(sig), params) == HElement.one(low)
        out.append((f"Tr_{k}(1) = 1", ok))
        out.append((f"Tr_{k}(s{k - 1}) = D", tr_k(generator(sig, (k - 1, 1)), params) == HElement.scalar(low, params.D)))
        ok = True
        for Z in basis:
            tz = tr_k(Z, params)
            for X in gens:
                for Y in gens:
                    lhs = tr_k(multiply(multiply(embed(X), Z), embed(Y)), params)
                    if lhs != multiply(multiply(X, tz), Y):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        out.append((f"Tr_{k}(XZY) = X Tr_{k}(Z) Y", ok))
        for eps in (1, -1):
            s, sinv = generator(sig, (k - 1, eps)), generator(sig, (k - 1, -eps))
            ok = all(
                tr_k(multiply(multiply(s, embed(HElement.basis(low, w))), sinv), params)
                == embed(tr_k(HElement.basis(low, w), params))
                for w in _basis(low)
            )
            out.append((f"Tr_{k}(s^{eps} X s^{-eps}) = Tr_{k - 1}(X)", ok))
        s = generator(sig, (k - 1, 1))
        ok = all(
            tr_k(tr_k(multiply(s, Z), params), params) == tr_k(tr_k(multiply(Z, s), params), params) for Z in basis
        )
        out.append((f"Tr_{k - 1} Tr_{k}(s Z) = Tr_{k - 1} Tr_{k}(Z s)", ok))
    if n >= 2:
        ok = all(lemma_tatb(m, a, b, params) for a in _exps(m) for b in _exps(m))
        out.append(("Tr_1 Tr_2(s1^-1 t^a s1 t^b s1) = D mu_(a+b)", ok))
    out += markov_properties(m, n, params, samples=samples, seed=seed)
    return out


def markov_properties(m: int | None, n: int, params: TraceParams, *, samples: int = 40, seed: int = 0) -> Report:
    out: Report = []
    if n < 1:
        return out
    sig = AlgebraSignature(m, n)
    out.append(("Tr(1) = 1", markov_trace(HElement.one(sig), params) == 1))
    words = _basis(sig)
    rng = random.Random(seed)
    if len(words) ** 2 <= 10_000:
        pairs = [(a, b) for a in words for b in words]
    else:
        pairs = [(rng.choice(words), rng.choice(words)) for _ in range(samples)]
    ok = all(
        markov_trace(multiply(HElement.basis(sig, a), HElement.basis(sig, b)), params)
        == markov_trace(multiply(HElement.basis(sig, b), HElement.basis(sig, a)), params)
        for a, b in pairs
    )
    out.append(("Tr(ZZ') = Tr(Z'Z)", ok))
    if n >= 2:
        low = AlgebraSignature(m, n - 1)
        lw = _basis(low)
        s = generator(sig, (n - 1, 1))
        ok = all(
            markov_trace(multiply(s, embed(HElement.basis(low, w))), params)
            == params.D * markov_trace(HElement.basis(low, w), params)
            for w in lw
        )
        out.append(("Tr(s_{n-1} X) = D Tr(X)", ok))
        ok = True
        for a in _exps(m):
            head = [(i, 1) for i in range(n - 1, 0, -1)] + tau_power_letters(a) + [(i, -1) for i in range(1, n)]
            h = from_word(head, sig)
            for w in lw:
                x = HElement.basis(low, w)
                if markov_trace(multiply(h, embed(x)), params) != params.mu_of(a) * markov_trace(x, params):
                    ok = False
        out.append(("Tr(s_{n-1}..s_1 t^a s_1^-1..s_{n-1}^-1 X) = mu_a Tr(X)", ok))
        ok = all(
            markov_trace(embed(HElement.basis(low, w)), params) == markov_trace(HElement.basis(low, w), params)
            for w in lw
        )
        out.append(("chain compatibility", ok))
    return out


def conditional_expectation_check(m: int | None, k: int, params: TraceParams) -> Report:
    if k < 1:
        raise ValueError("k must be at least 1")
    sig, low = AlgebraSignature(m, k), AlgebraSignature(m, k - 1)
    gens = _generators(low)
    strong = True
    weak = True
    for w in _basis(sig):
        Z = HElement.basis(sig, w)
        tz = tr_k(Z, params)
        for X in gens:
            rhs = multiply(tz, X)
            if tr_k(embed(rhs), params) != rhs:
                strong = False
            if markov_trace(multiply(Z, embed(X)), params) != markov_trace(rhs, params):
                weak = False
    return [
        (f"Tr_{k}(Tr_{k}(Z) X) = Tr_{k}(Z) X", strong),
        (f"Tr(Z X) = Tr(Tr_{k}(Z) X)", weak),
    ]


def conditional_expectation(z: HElement, x: HElement, params: TraceParams) -> tuple[Scalar, Scalar]:
    """Both sides of Tr(ZX) = Tr(Tr_k(Z) X); x must lie one level below z."""
    if x.sig != AlgebraSignature(z.sig.m, z.sig.n - 1):
        raise SignatureMismatch("X must lie in H(m,1,k-1) for Z in H(m,1,k)")
    return markov_trace(multiply(z, embed(x)), params), markov_trace(multiply(tr_k(z, params), x), params)
