"""Induced representations M_n = V (x) E_m (x) M_{n-1} as explicit block matrices.

Flat index of the basis vector V_{j, z^e, u} is ``(j*m + e)*d + u``: u fastest,
then e, then j.  E_m is realised on the monomial basis 1, z, ..., z^{m-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .hecke import (
    AlgebraSignature,
    HElement,
    Letter,
    basis_enumerate,
    left_mul_generator,
    tau_power,
    word_letters,
)
from .scalars import LaurentPoly, char_coeffs, Scalar, ScalarValue, qdiff, v_var

_P1 = LaurentPoly.const(1)


class Matrix:
    """Square sparse matrix; ``rows[r][c]`` holds nonzero entries."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: Mapping[int, Mapping[int, Scalar]] | None = None):
        self.dim = dim
        clean: dict[int, dict[int, Scalar]] = {}
        for r, row in (rows or {}).items():
            rr = {c: v for c, v in row.items() if not _is_zero(v)}
            if rr:
                clean[r] = rr
        self.rows = clean

    @staticmethod
    def identity(dim: int, c: Scalar = _P1) -> "Matrix":
        return Matrix(dim, {i: {i: c} for i in range(dim)})

    @staticmethod
    def zero(dim: int) -> "Matrix":
        return Matrix(dim)

    @staticmethod
    def from_dense(rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        d = len(rows)
        return Matrix(d, {r: {c: _coerce(v) for c, v in enumerate(row)} for r, row in enumerate(rows)})

    def entry(self, r: int, c: int) -> Scalar:
        return self.rows.get(r, {}).get(c, LaurentPoly())

    def to_dense(self) -> list[list[Scalar]]:
        return [[self.entry(r, c) for c in range(self.dim)] for r in range(self.dim)]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: dict[int, dict[int, Scalar]] = {}
        for r, row in self.rows.items():
            acc: dict[int, Scalar] = {}
            for k, a in row.items():
                orow = other.rows.get(k)
                if not orow:
                    continue
                for c, b in orow.items():
                    p = a * b
                    old = acc.get(c)
                    acc[c] = p if old is None else old + p
            out[r] = acc
        return Matrix(self.dim, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            tgt = out.setdefault(r, {})
            for c, v in row.items():
                old = tgt.get(c)
                tgt[c] = v if old is None else old + v
        return Matrix(self.dim, out)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "Matrix":
        c = _coerce(c)
        return Matrix(self.dim, {r: {k: v * c for k, v in row.items()} for r, row in self.rows.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        keys = set(self.rows) | set(other.rows)
        for r in keys:
            a, b = self.rows.get(r, {}), other.rows.get(r, {})
            if a.keys() != b.keys() or any(not (a[c] == b[c]) for c in a):
                return False
        return True

    def is_zero(self) -> bool:
        return not self.rows

    def trace(self) -> Scalar:
        acc: Scalar = LaurentPoly()
        for r, row in self.rows.items():
            if r in row:
                acc = acc + row[r]
        return acc

    def permuted(self, perm: Sequence[int]) -> "Matrix":
        """Conjugate by the index map i -> perm[i]."""
        return Matrix(self.dim, {perm[r]: {perm[c]: v for c, v in row.items()} for r, row in self.rows.items()})

    def determinant(self) -> ScalarValue:
        """Fraction-field Gaussian elimination; meant for small matrices."""
        a = [[ScalarValue.coerce(v) for v in row] for row in self.to_dense()]
        n = self.dim
        det = ScalarValue.coerce(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
            if piv is None:
                return ScalarValue.coerce(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            p = a[col][col]
            det = det * p
            for r in range(col + 1, n):
                if a[r][col].is_zero():
                    continue
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return det.reduce()

    def to_json(self) -> list[list[dict]]:
        return [[ScalarValue.coerce(v).to_json() for v in row] for row in self.to_dense()]

    def __repr__(self):
        return f"Matrix(dim={self.dim}, nnz={sum(len(r) for r in self.rows.values())})"


def _is_zero(v) -> bool:
    return v == 0 if isinstance(v, int) else v.is_zero()


def _coerce(v) -> Scalar:
    return v if isinstance(v, (LaurentPoly, ScalarValue)) else LaurentPoly.coerce(v)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    sig: AlgebraSignature
    dim: int
    tau: Matrix | None
    sigmas: tuple[Matrix, ...]
    tau_inv: Matrix | None = None

    def letter_matrix(self, letter: Letter) -> Matrix:
        i, e = letter
        if i == 0:
            if self.tau is None:
                raise ValueError("no tau in H(m,1,0)")
            if e == 1:
                return self.tau
            if self.tau_inv is None:
                raise ValueError("tau^-1 is not available for this representation")
            return self.tau_inv
        s = self.sigmas[i - 1]
        return s if e == 1 else s - Matrix.identity(self.dim, qdiff())

    def word_matrix(self, letters: Sequence[Letter]) -> Matrix:
        out = Matrix.identity(self.dim)
        for letter in letters:
            out = out @ self.letter_matrix(letter)
        return out

    def element_matrix(self, x: HElement) -> Matrix:
        acc = Matrix.zero(self.dim)
        for w, c in x.terms.items():
            acc = acc + self.word_matrix(word_letters(w)).scale(c)
        return acc

    def direct_sum(self, other: "Representation") -> "Representation":
        if self.sig != other.sig:
            raise ValueError("signature mismatch")

        def ds(a: Matrix | None, b: Matrix | None) -> Matrix | None:
            if a is None or b is None:
                return None
            rows = {r: dict(row) for r, row in a.rows.items()}
            for r, row in b.rows.items():
                rows[r + a.dim] = {c + a.dim: v for c, v in row.items()}
            return Matrix(a.dim + b.dim, rows)

        return Representation(
            self.sig,
            self.dim + other.dim,
            ds(self.tau, other.tau),
            tuple(ds(a, b) for a, b in zip(self.sigmas, other.sigmas)),
            ds(self.tau_inv, other.tau_inv),
        )

    def to_json(self) -> dict:
        out = {
            "signature": {"m": "inf" if self.sig.m is None else self.sig.m, "n": self.sig.n},
            "dim": self.dim,
            "layout": "flat index (j*m + e)*d + u",
            "sigma": [s.to_json() for s in self.sigmas],
        }
        if self.tau is not None:
            out["tau"] = self.tau.to_json()
        if self.tau_inv is not None:
            out["tau_inv"] = self.tau_inv.to_json()
        return out


def trivial_module(m: int | None) -> Representation:
    """The one-dimensional module of H(m,1,0) = A_m."""
    return Representation(AlgebraSignature(m, 0), 1, None, ())


def one_dimensional(sig: AlgebraSignature, e: int = 1, tau_value: Scalar | None = None) -> Representation:
    """sigma_i -> q and tau -> v_e (for m = None, ``tau_value`` or v_e as a formal unit)."""
    if sig.m is not None and not 1 <= e <= sig.m:
        raise ValueError(f"e must lie in 1..{sig.m}")
    tv = LaurentPoly.coerce(tau_value) if tau_value is not None else v_var(e)
    q = LaurentPoly.var("q")
    tau = Matrix.identity(1, tv) if sig.n >= 1 else None
    tau_inv = None
    if sig.n >= 1 and tv.is_monomial():
        tau_inv = Matrix.identity(1, tv.inverse_monomial())
    return Representation(sig, 1, tau, tuple(Matrix.identity(1, q) for _ in range(sig.n - 1)), tau_inv)


def sigma_blocks(n: int, deg: int, d: int, i: int, lower: Sequence[Matrix]) -> Matrix:
    """F_{sigma_i} on V (x) E (x) M where ``lower`` are the sigma matrices of M."""
    qd = qdiff()
    rows: dict[int, dict[int, Scalar]] = {}

    def put(r: int, c: int, v: Scalar) -> None:
        rows.setdefault(r, {})[c] = v

    for j in range(n):
        for e in range(deg):
            base = (j * deg + e) * d
            if j == i - 1:
                other = (i * deg + e) * d
                for u in range(d):
                    put(base + u, base + u, qd)
                    put(other + u, base + u, _P1)
            elif j == i:
                other = ((i - 1) * deg + e) * d
                for u in range(d):
                    put(other + u, base + u, _P1)
            else:
                mat = lower[i - 2] if j < i - 1 else lower[i - 1]
                for r, row in mat.rows.items():
                    for c, v in row.items():
                        put(base + r, base + c, v)
    return Matrix(n * deg * d, rows)


def induce(rep: Representation, *, check: bool = False) -> Representation:
    """Induce a module of H(m,1,n-1) to H(m,1,n)."""
    m = rep.sig.m
    if m is None:
        raise ValueError("induction needs finite m: E_m is infinite-dimensional for m = None")
    if check:
        bad = [name for name, ok in check_relations(rep) if not ok]
        if bad:
            raise ValueError(f"input representation violates {bad[0]}")
    n = rep.sig.n + 1
    d = rep.dim
    D = n * m * d
    qd = qdiff()
    sigmas = tuple(sigma_blocks(n, m, d, i, rep.sigmas) for i in range(1, n))

    rows: dict[int, dict[int, Scalar]] = {}

    def add_block(rb: int, cb: int, mat: Matrix, scale: Scalar) -> None:
        for r, row in mat.rows.items():
            tgt = rows.setdefault(rb + r, {})
            for c, v in row.items():
                x = v * scale
                old = tgt.get(cb + c)
                tgt[cb + c] = x if old is None else old + x

    ident = Matrix.identity(d)
    for e in range(m):
        cb = e * d
        for b, c in tau_power(m, e + 1):
            add_block(b * d, cb, ident, c)
    if n > 1:
        tau_pows = [Matrix.identity(d)]
        for _ in range(1, m):
            tau_pows.append(tau_pows[-1] @ rep.tau)
        for j in range(1, n):
            beta = rep.word_matrix([(i, -1) for i in range(j - 1, 0, -1)])
            for e in range(m):
                cb = (j * m + e) * d
                first = beta @ tau_pows[e]
                for b, c in tau_power(m, 1):
                    add_block(b * d, cb, first, c * qd)
                for b, c in tau_power(m, e + 1):
                    add_block(b * d, cb, beta, -(c * qd))
                add_block(cb, cb, rep.tau, _P1)
    tau = Matrix(D, rows)
    return Representation(AlgebraSignature(m, n), D, tau, sigmas, _tau_inverse(m, tau, D))


def _tau_inverse(m: int, tau: Matrix, dim: int) -> Matrix:
    # tau^-1 = -(1/a_0)(tau^{m-1} + a_{m-1} tau^{m-2} + ... + a_1)
    a = char_coeffs(m)
    a0inv = a[0].inverse_monomial()
    acc = Matrix.zero(dim)
    cur = Matrix.identity(dim)
    for k in range(1, m + 1):
        acc = acc + cur.scale(-(a[k] * a0inv))
        if k < m:
            cur = cur @ tau
    return acc


def burau(sig: AlgebraSignature, e: int) -> Representation:
    """Analogue of the Burau module: induce the module sigma -> q, tau -> v_e."""
    if sig.m is None:
        raise ValueError("burau needs finite m")
    if not 1 <= e <= sig.m:
        raise ValueError(f"e must lie in 1..{sig.m}")
    if sig.n < 1:
        raise ValueError("burau needs n >= 1")
    return induce(one_dimensional(AlgebraSignature(sig.m, sig.n - 1), e))


def regular_rep(sig: AlgebraSignature) -> Representation:
    """n-fold induction from the trivial H(m,1,0)-module."""
    if sig.m is None:
        raise ValueError("regular_rep needs finite m")
    rep = trivial_module(sig.m)
    for _ in range(sig.n):
        rep = induce(rep)
    return rep


def left_multiplication_matrix(sig: AlgebraSignature, letter: Letter) -> Matrix:
    """Matrix of left multiplication by a generator in the basis B (lexicographic order)."""
    words = basis_enumerate(sig)
    index = {w: k for k, w in enumerate(words)}
    rows: dict[int, dict[int, Scalar]] = {}
    for c, w in enumerate(words):
        img = left_mul_generator(letter, HElement.basis(sig, w))
        for w2, v in img.terms.items():
            rows.setdefault(index[w2], {})[c] = v
    return Matrix(len(words), rows)


def check_relations(rep: Representation) -> list[tuple[str, bool]]:
    """Each defining relation as a matrix identity, in a fixed order."""
    n, d = rep.sig.n, rep.dim
    I = Matrix.identity(d)
    S = rep.sigmas
    qd = qdiff()
    out: list[tuple[str, bool]] = []
    for i in range(n - 2):
        out.append((f"braid s{i + 1}s{i + 2}s{i + 1}", S[i] @ S[i + 1] @ S[i] == S[i + 1] @ S[i] @ S[i + 1]))
    for i in range(n - 1):
        for k in range(i + 2, n - 1):
            out.append((f"commute s{i + 1}s{k + 1}", S[i] @ S[k] == S[k] @ S[i]))
    for i in range(n - 1):
        out.append((f"quadratic s{i + 1}", S[i] @ S[i] == S[i].scale(qd) + I))
    if n >= 1 and rep.tau is not None:
        T = rep.tau
        if n >= 2:
            out.append(("tau s1 tau s1", T @ S[0] @ T @ S[0] == S[0] @ T @ S[0] @ T))
        for i in range(1, n - 1):
            out.append((f"tau s{i + 1}", T @ S[i] == S[i] @ T))
        if rep.sig.m is not None:
            acc = I
            for j in range(1, rep.sig.m + 1):
                acc = (T - I.scale(v_var(j))) @ acc
            out.append(("cyclotomic", acc.is_zero()))
        if rep.tau_inv is not None:
            out.append(("tau inverse", T @ rep.tau_inv == I))
    return out


def first_failure(report: Iterable[tuple[str, bool]]) -> str | None:
    return next((name for name, ok in report if not ok), None)


def direct_sum_permutation(n: int, m: int, d1: int, d2: int) -> list[int]:
    """Index map from induce(A (+) B) to induce(A) (+) induce(B)."""
    perm = []
    block1 = n * m * d1
    for j in range(n):
        for e in range(m):
            for u in range(d1 + d2):
                if u < d1:
                    perm.append((j * m + e) * d1 + u)
                else:
                    perm.append(block1 + (j * m + e) * d2 + (u - d1))
    return perm
