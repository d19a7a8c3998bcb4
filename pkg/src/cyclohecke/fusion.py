"""Multipartitions, the fusion formula for H(m,1,n) and weights of the forms L^gamma."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import product
from typing import Iterator

from .central import GammaFunctional, L_gamma, iota_L_gamma
from .hecke import (
    AlgebraSignature,
    HElement,
    generator,
    iota0,
    left_mul_generator,
    multiply,
)
from .scalars import (
    LaurentPoly,
    PoleError,
    Scalar,
    ScalarValue,
    char_coeffs,
    qdiff,
    v_var,
)

Report = list[tuple[str, bool]]
Partition = tuple[int, ...]
_P1 = LaurentPoly.const(1)
_Q = LaurentPoly.var("q")
SPECTRAL = "u"


# ---------------------------------------------------------------------------
# combinatorics


def partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Partitions of n in reverse lexicographic order."""
    if n == 0:
        yield ()
        return
    top = n if largest is None else min(n, largest)
    for first in range(top, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for r in lam if r > y) for y in range(lam[0])) if lam else ()


@dataclass(frozen=True, order=True)
class MNode:
    """Node in row x, column y (both from 1) of diagram pos (from 1)."""

    pos: int
    x: int
    y: int

    @property
    def cc(self) -> int:
        return self.y - self.x

    def content(self) -> LaurentPoly:
        return v_var(self.pos) * _Q ** (2 * self.cc)


@dataclass(frozen=True)
class MultiPartition:
    parts: tuple[Partition, ...]

    def __post_init__(self):
        parts = tuple(tuple(int(r) for r in lam) for lam in self.parts)
        if not parts:
            raise ValueError("an m-partition needs m >= 1 components")
        for lam in parts:
            if any(r <= 0 for r in lam) or any(a < b for a, b in zip(lam, lam[1:])):
                raise ValueError(f"{list(lam)} is not a partition")
        object.__setattr__(self, "parts", parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(map(sum, self.parts))

    def row_length(self, x: int, j: int) -> int:
        lam = self.parts[j - 1]
        return lam[x - 1] if 1 <= x <= len(lam) else 0

    def col_length(self, y: int, k: int) -> int:
        return sum(1 for r in self.parts[k - 1] if r >= y)

    def nodes(self) -> list[MNode]:
        return [MNode(k + 1, x + 1, y + 1) for k, lam in enumerate(self.parts) for x, r in enumerate(lam) for y in range(r)]

    def hook(self, node: MNode, j: int) -> int:
        """Generalised hook length h^(j) of a node."""
        return self.row_length(node.x, j) + self.col_length(node.y, node.pos) - node.x - node.y + 1

    def to_json(self) -> list[list[int]]:
        return [list(lam) for lam in self.parts]

    @staticmethod
    def from_json(obj) -> "MultiPartition":
        return MultiPartition(tuple(tuple(lam) for lam in obj))

    def __str__(self) -> str:
        return "(" + ", ".join("(" + ",".join(map(str, lam)) + ")" if lam else "()" for lam in self.parts) + ")"


def multipartitions(m: int, n: int) -> list[MultiPartition]:
    out = []
    for sizes in _compositions(n, m):
        for parts in product(*(list(partitions(s)) for s in sizes)):
            out.append(MultiPartition(parts))
    return out


Filling = tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class MTableau:
    """Filling of an m-partition: ``filling[k][x]`` is row x+1 of diagram k+1."""

    filling: Filling

    def __post_init__(self):
        fill = tuple(tuple(tuple(int(e) for e in row) for row in diag) for diag in self.filling)
        object.__setattr__(self, "filling", fill)
        MultiPartition(tuple(tuple(len(r) for r in diag) for diag in fill))
        entries = sorted(e for diag in fill for row in diag for e in row)
        if entries != list(range(1, len(entries) + 1)):
            raise ValueError("entries must be 1..n, each once")
        for diag in fill:
            for x, row in enumerate(diag):
                if any(a >= b for a, b in zip(row, row[1:])):
                    raise ValueError("rows must increase")
                if x and any(diag[x - 1][y] >= row[y] for y in range(len(row))):
                    raise ValueError("columns must increase")

    @property
    def shape(self) -> MultiPartition:
        return MultiPartition(tuple(tuple(len(r) for r in diag) for diag in self.filling))

    @property
    def n(self) -> int:
        return self.shape.size

    def node_of(self) -> dict[int, MNode]:
        return {
            e: MNode(k + 1, x + 1, y + 1)
            for k, diag in enumerate(self.filling)
            for x, row in enumerate(diag)
            for y, e in enumerate(row)
        }

    def contents(self) -> list[LaurentPoly]:
        nodes = self.node_of()
        return [nodes[i].content() for i in range(1, self.n + 1)]

    def to_json(self) -> list:
        return [[list(row) for row in diag] for diag in self.filling]

    @staticmethod
    def from_json(obj) -> "MTableau":
        return MTableau(tuple(tuple(tuple(row) for row in diag) for diag in obj))


def _remove(parts: tuple[Partition, ...], k: int, x: int) -> tuple[Partition, ...]:
    lam = list(parts[k])
    lam[x] -= 1
    if lam[x] == 0:
        lam.pop()
    return parts[:k] + (tuple(lam),) + parts[k + 1 :]


@cache
def _fillings(parts: tuple[Partition, ...]) -> tuple[Filling, ...]:
    n = sum(map(sum, parts))
    if n == 0:
        return (tuple(() for _ in parts),)
    out = []
    for k, lam in enumerate(parts):
        for x, r in enumerate(lam):
            if x + 1 < len(lam) and lam[x + 1] == r:
                continue
            for sub in _fillings(_remove(parts, k, x)):
                diag = [list(row) for row in sub[k]]
                if x == len(diag):
                    diag.append([])
                diag[x].append(n)
                out.append(sub[:k] + (tuple(tuple(row) for row in diag),) + sub[k + 1 :])
    return tuple(sorted(out))


def standard_tableaux(lam: MultiPartition) -> list[MTableau]:
    return [MTableau(f) for f in _fillings(lam.parts)]


def canonical_tableau(lam: MultiPartition) -> MTableau:
    """Column reading: diagram 1 column by column, then diagram 2, and so on."""
    nxt = 1
    fill = []
    for parts in lam.parts:
        rows: list[list[int]] = [[0] * r for r in parts]
        for y, height in enumerate(_conjugate(parts)):
            for x in range(height):
                rows[x][y] = nxt
                nxt += 1
        fill.append(tuple(tuple(r) for r in rows))
    return MTableau(tuple(fill))


# ---------------------------------------------------------------------------
# scalars attached to a multipartition


def qint(j: int) -> LaurentPoly:
    """[j]_q = q^(j-1) + q^(j-3) + ... + q^(1-j)."""
    if j < 0:
        raise ValueError("[j]_q needs j >= 0")
    return LaurentPoly.from_terms(({"q": j - 1 - 2 * t}, 1) for t in range(j))


def _gen_factor(lam: MultiPartition, node: MNode, k: int) -> ScalarValue:
    h = lam.hook(node, k)
    den = v_var(node.pos) * _Q ** (-h) - v_var(k) * _Q**h
    return ScalarValue(_Q ** (-node.cc), den)


def f_lambda_product(lam: MultiPartition) -> ScalarValue:
    """F_lambda as the product over all m generalised hooks of every node."""
    acc = ScalarValue(qdiff() * -1) ** lam.size if lam.size else ScalarValue(1)
    for node in lam.nodes():
        acc = acc * node.content()
        for k in range(1, lam.m + 1):
            acc = acc * _gen_factor(lam, node, k)
    return acc


def f_lambda_qint(lam: MultiPartition) -> ScalarValue:
    """F_lambda with the own-diagram factor written as q^cc / [h]_q."""
    acc = ScalarValue(1)
    for node in lam.nodes():
        acc = acc * ScalarValue(_Q**node.cc, qint(lam.hook(node, node.pos)))
        for k in range(1, lam.m + 1):
            if k != node.pos:
                acc = acc * _gen_factor(lam, node, k)
    return acc


@cache
def f_lambda(lam: MultiPartition) -> ScalarValue:
    a, b = f_lambda_product(lam), f_lambda_qint(lam)
    if a != b:
        raise AssertionError(f"the two expressions for F disagree at {lam}")
    return a


def frak_a(m: int, i: int, rho: Scalar) -> Scalar:
    """a_i(rho) = rho^(m-i) + a_(m-1) rho^(m-i-1) + ... + a_i."""
    coeffs = char_coeffs(m)
    acc: Scalar = LaurentPoly()
    for t in range(m, i - 1, -1):
        acc = acc * rho + coeffs[t]
    return acc


# ---------------------------------------------------------------------------
# Baxterized elements, tau(rho), fusion


def baxterized_sigma(sig: AlgebraSignature, i: int, alpha: Scalar, beta: Scalar) -> HElement:
    """s_i + (q - q^-1) beta / (alpha - beta)."""
    diff = ScalarValue.coerce(alpha) - ScalarValue.coerce(beta)
    if diff.is_zero():
        raise PoleError("Baxterized element at alpha = beta")
    s = generator(sig, (i, 1))
    return s + HElement.scalar(sig, qdiff() * ScalarValue.coerce(beta) / diff)


def tau_rho(sig: AlgebraSignature, rho: Scalar) -> HElement:
    """tau^(m-1) + a_(m-1)(rho) tau^(m-2) + ... + a_1(rho)."""
    m = sig.m
    if m is None:
        raise ValueError("tau(rho) needs finite m")
    acc = HElement.zero(sig)
    x = HElement.one(sig)
    for mu in range(1, m + 1):
        acc = acc + x.scale(frak_a(m, mu, rho))
        if mu < m:
            x = left_mul_generator((0, 1), x)
    return acc


def check_tau_rho(m: int, n: int = 1) -> bool:
    """tau(rho)(rho - tau) = (rho - v_1)...(rho - v_m) with rho an indeterminate."""
    sig = AlgebraSignature(m, n)
    rho = LaurentPoly.var("rho")
    t = tau_rho(sig, rho)
    lhs = t.scale(rho) - multiply(t, generator(sig, (0, 1)))
    return lhs == HElement.scalar(sig, frak_a(m, 0, rho))


def _taylor_at(f: LaurentPoly, c: LaurentPoly, order: int) -> LaurentPoly:
    """Value at u = c of f / (u - c)^order; f must be a polynomial in u vanishing to that order."""
    parts = f.split_by(SPECTRAL)
    if parts and min(parts) < 0:
        raise PoleError("negative power of the spectral parameter")
    deg = max(parts, default=0)
    coeffs = [parts.get(e, LaurentPoly()) for e in range(deg + 1)]
    for _ in range(order):
        if len(coeffs) <= 1:
            if coeffs and not coeffs[0].is_zero():
                raise PoleError("non-removable pole in the fusion procedure")
            return LaurentPoly()
        out = [LaurentPoly()] * (len(coeffs) - 1)
        carry = coeffs[-1]
        for i in range(len(coeffs) - 2, -1, -1):
            out[i] = carry
            carry = coeffs[i] + carry * c
        if not carry.is_zero():
            raise PoleError("non-removable pole in the fusion procedure")
        coeffs = out
    acc = LaurentPoly()
    for co in reversed(coeffs):
        acc = acc * c + co
    return acc


@dataclass(frozen=True)
class FusionData:
    """E_T = numerator / denominator with polynomial data."""

    tableau: MTableau
    numerator: HElement
    denominator: LaurentPoly

    def element(self) -> HElement:
        den = self.denominator
        return HElement(self.numerator.sig, {w: ScalarValue(c, den) for w, c in self.numerator.terms.items()})


def _fusion_apply(T: MTableau, y: HElement) -> tuple[HElement, LaurentPoly]:
    """(P, d) with Phi_T * y = P / d, Phi_T the consecutive evaluation of Phi at the contents of T.

    Factor k is phi_k with u_1..u_{k-1} already specialised. Denominators
    (u_k - c_j) are cleared, and the limit u_k -> c_k is the Taylor coefficient
    of the resulting polynomial of the order of the zero of prod (u_k - c_j).
    The limits commute with right multiplication, so y can be any element.
    """
    m = T.shape.m
    cs = T.contents()
    u = LaurentPoly.var(SPECTRAL)
    qd = qdiff()
    den = _P1
    for k in range(1, len(cs) + 1):
        for i in range(k - 1, 0, -1):
            y = left_mul_generator((i, -1), y)
        x = HElement.zero(y.sig)
        for mu in range(1, m + 1):
            x = x + y.scale(frak_a(m, mu, u))
            if mu < m:
                y = left_mul_generator((0, 1), y)
        for j in range(1, k):
            x = left_mul_generator((j, 1), x).scale(u - cs[j - 1]) + x.scale(qd * cs[j - 1])
        ck = cs[k - 1]
        order = sum(1 for j in range(k - 1) if cs[j] == ck)
        y = HElement(y.sig, {w: _taylor_at(c, ck, order) for w, c in x.terms.items()})
        for j in range(k - 1):
            if cs[j] != ck:
                den = den * (ck - cs[j])
    return y, den


def fusion_apply(T: MTableau, y: HElement) -> tuple[HElement, LaurentPoly]:
    """(P, d) with E_T * y = P / d for y with polynomial coefficients."""
    if y.sig != AlgebraSignature(T.shape.m, T.n):
        raise ValueError("y must lie in H(m,1,n) of the tableau")
    p, den = _fusion_apply(T, y)
    f = f_lambda(T.shape)
    return p.scale(f.num), den * f.den


@cache
def fusion_data(T: MTableau) -> FusionData:
    """E_T as numerator and denominator."""
    p, den = fusion_apply(T, HElement.one(AlgebraSignature(T.shape.m, T.n)))
    return FusionData(T, p, den)


def fusion_idempotent(T: MTableau) -> HElement:
    return fusion_data(T).element()


def all_tableaux(m: int, n: int) -> list[MTableau]:
    return [T for lam in multipartitions(m, n) for T in standard_tableaux(lam)]


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class Weights:
    shape: MultiPartition
    wtilde: ScalarValue
    w: ScalarValue

    @property
    def schur(self) -> ScalarValue:
        return self.w.inverse()


def _contents(lam: MultiPartition) -> list[LaurentPoly]:
    return [node.content() for node in lam.nodes()]


def wtilde_direct(lam: MultiPartition, gamma: GammaFunctional) -> ScalarValue:
    """F * prod_i sum_mu a_mu(c_i) iota0(gamma_{-(mu-1)})."""
    m = lam.m
    g = [iota0(gamma(-(mu - 1)), m) for mu in range(1, m + 1)]
    acc = f_lambda(lam)
    for c in _contents(lam):
        acc = acc * sum((frak_a(m, mu, c) * g[mu - 1] for mu in range(1, m + 1)), LaurentPoly())
    return acc


def wtilde_inverse_form(lam: MultiPartition, gamma: GammaFunctional) -> ScalarValue:
    """F * iota0(prod_i (c_i^(1-m) gamma_0 - c_i^(2-m)/a_0 sum_mu a_(mu+1)(c_i) gamma_mu))."""
    m = lam.m
    a0 = char_coeffs(m)[0]
    inner = ScalarValue(1)
    for c in _contents(lam):
        s = sum((frak_a(m, mu + 1, c) * gamma(mu) for mu in range(1, m)), LaurentPoly())
        inner = inner * (ScalarValue(c ** (1 - m) * gamma(0)) - ScalarValue(c ** (2 - m) * s, a0))
    return f_lambda(lam) * iota0(inner, m)


def criterion(c: Scalar, gamma: GammaFunctional, m: int) -> ScalarValue:
    """-a_0 gamma_0 / c + sum_{mu=1}^{m-1} a_(mu+1)(c) gamma_mu."""
    a0 = char_coeffs(m)[0]
    c = ScalarValue.coerce(c)
    acc = -(ScalarValue.coerce(a0 * gamma(0)) / c)
    for mu in range(1, m):
        acc = acc + frak_a(m, mu + 1, c) * gamma(mu)
    return acc


def w_direct(lam: MultiPartition, gamma: GammaFunctional) -> ScalarValue:
    acc = f_lambda(lam)
    for c in _contents(lam):
        acc = acc * criterion(c, gamma, lam.m)
    return acc


def weights(lam: MultiPartition, gamma: GammaFunctional) -> Weights:
    wt = wtilde_direct(lam, gamma)
    if wt != wtilde_inverse_form(lam, gamma):
        raise AssertionError(f"the two expressions for the twisted weight disagree at {lam}")
    w = w_direct(lam, gamma)
    if w != iota0(wt, lam.m):
        raise AssertionError(f"w != iota0(wtilde) at {lam}")
    return Weights(lam, wt, w)


def cancellation_free_weight(lam: MultiPartition) -> ScalarValue:
    """w for gamma = gamma-circ as a product over nodes and diagrams."""
    n = lam.size
    acc = ScalarValue(qdiff()) ** n if n else ScalarValue(1)
    for node in lam.nodes():
        for k in range(1, lam.m + 1):
            h = lam.hook(node, k)
            den = _Q**h - v_var(k) ** -1 * v_var(node.pos) * _Q ** (-h)
            acc = acc * ScalarValue(_Q ** (-node.cc), den)
    return acc


def schur_element(lam: MultiPartition, gamma: GammaFunctional) -> ScalarValue:
    return weights(lam, gamma).schur


def check_iota0_f(lam: MultiPartition) -> bool:
    """iota0(F) = F (-a_0)^n prod c_i^(m-2)."""
    m = lam.m
    f = f_lambda(lam)
    rhs = f
    a0 = char_coeffs(m)[0]
    for c in _contents(lam):
        rhs = rhs * (-a0 * c ** (m - 2))
    return iota0(f, m) == rhs


def check_sum_rule(m: int, n: int, gamma: GammaFunctional) -> Report:
    total_w = ScalarValue(0)
    total_wt = ScalarValue(0)
    for lam in multipartitions(m, n):
        wt = weights(lam, gamma)
        d = len(standard_tableaux(lam))
        total_w = total_w + wt.w * d
        total_wt = total_wt + wt.wtilde * d
    g0n = ScalarValue.coerce(gamma(0)) ** n if n else ScalarValue(1)
    return [
        ("sum_lambda w_lambda #SYT(lambda) = gamma_0^n", total_w == g0n),
        ("sum_lambda wtilde_lambda #SYT(lambda) = gamma_0^n", total_wt == iota0(g0n, m)),
    ]


@dataclass(frozen=True)
class Degeneracy:
    degenerate: bool
    witness: ScalarValue | None = None
    p: int | None = None
    i: int | None = None
    sign: int | None = None

    def to_json(self) -> dict:
        out: dict = {"degenerate": self.degenerate}
        if self.degenerate:
            out["witness"] = {"c": self.witness.to_json(), "p": self.p, "i": self.i, "sign": self.sign}
        return out


def nondegeneracy_check(gamma: GammaFunctional, m: int, n: int) -> Degeneracy:
    """Scan c = v_p q^(+-2i), p = 1..m, i = 0..n-1; the first zero of the criterion is the witness."""
    if m is None:
        raise ValueError("the criterion needs finite m")
    for p in range(1, m + 1):
        for i in range(n):
            for sign in (1, -1) if i else (1,):
                c = v_var(p) * _Q ** (2 * sign * i)
                if criterion(c, gamma, m).is_zero():
                    return Degeneracy(True, ScalarValue.coerce(c), p, i, sign)
    return Degeneracy(False)


def degenerate_gamma(m: int, p: int = 1, i: int = 0, sign: int = 1) -> GammaFunctional:
    """gamma_0 = 1, gamma_a = 0 for 1 <= a < m-1, and gamma_(m-1) solving the criterion at c."""
    if m < 2:
        raise ValueError("m = 1 has no free gamma_a to solve for")
    c = v_var(p) * _Q ** (2 * sign * i)
    a0 = char_coeffs(m)[0]
    # a_m(c) = 1, so the criterion is -a0/c + gamma_(m-1) when the other gamma_a vanish
    vals: dict[int, Scalar] = {0: 1, m - 1: ScalarValue(a0, c)}
    vals.update({a: LaurentPoly() for a in range(1, m - 1)})
    return GammaFunctional(m, vals, generic=False)


# ---------------------------------------------------------------------------
# verification


def verify_fusion(m: int, n: int, gamma: GammaFunctional | None = None) -> Report:
    gamma = gamma if gamma is not None else GammaFunctional.symbolic(m)
    sig = AlgebraSignature(m, n)
    tabs = all_tableaux(m, n)
    data = [fusion_data(T) for T in tabs]
    out: Report = [(f"{len(tabs)} standard m-tableaux", True)]

    # E_T y is evaluated by running the fusion procedure on y
    idem = all(fusion_apply(T, d.numerator)[0] == d.numerator.scale(d.denominator) for T, d in zip(tabs, data))
    out.append(("E_T E_T = E_T", idem))
    probe = data[-1].numerator
    ok = all(fusion_apply(T, probe)[0] == multiply(d.numerator, probe) for T, d in zip(tabs[:1] + tabs[-1:], data[:1] + data[-1:]))
    out.append(("fusion operator agrees with multiplication", ok))
    orth = all(
        fusion_apply(T, b.numerator)[0].is_zero() for ia, T in enumerate(tabs) for ib, b in enumerate(data) if ia != ib
    )
    out.append(("E_T E_T' = 0 for T != T'", orth))
    total = HElement.zero(sig)
    for d in data:
        total = total + d.element()
    out.append(("sum_T E_T = 1", total == HElement.one(sig)))

    by_shape: dict[MultiPartition, set] = {}
    ok_wt = ok_w = True
    for T, d in zip(tabs, data):
        wts = weights(T.shape, gamma)
        val_t = ScalarValue.coerce(iota_L_gamma(d.numerator, gamma)) / d.denominator
        val = ScalarValue.coerce(L_gamma(d.numerator, gamma)) / d.denominator
        ok_wt &= val_t == wts.wtilde
        ok_w &= val == wts.w
        by_shape.setdefault(T.shape, set()).add(val_t)
    out.append(("iota(L^gamma)(E_T) = wtilde (closed form)", ok_wt))
    out.append(("L^gamma(E_T) = w (closed form)", ok_w))
    out.append(("weight depends only on the shape", all(len(v) == 1 for v in by_shape.values())))
    out.append(("w = iota0(wtilde); both F formulas agree", True))  # asserted inside weights/f_lambda

    lams = multipartitions(m, n)
    gc = GammaFunctional.circ(m)
    out.append(
        ("cancellation-free weights for gamma-circ", all(weights(l, gc).w == cancellation_free_weight(l) for l in lams))
    )
    out.append(("iota0(F) = F (-a_0)^n prod c^(m-2)", all(check_iota0_f(l) for l in lams)))
    out += check_sum_rule(m, n, gamma)
    if n == 1:
        ok = all(
            left_mul_generator((0, 1), d.element()) == d.element().scale(T.contents()[0]) for T, d in zip(tabs, data)
        )
        out.append(("tau E_T = c_1 E_T", ok))
    return out
