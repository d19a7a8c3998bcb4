"""The reflection group G(m,1,n) as the wreath product C_m wr S_n.

An element is a pair (colors, perm).  ``perm`` lists the images of 1..n and the
product follows the wreath convention (v, w)(v', w') = (v + w.v', ww'), where
w.v permutes positions: (w.v)[w(b)] = v[b].  ``m is None`` encodes the
affine case m = infinity, where colors are unreduced integers.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

# A letter is (i, e): i = 0 is t with e = +-1, i >= 1 is s_i (e = 1).
Letter = tuple[int, int]
Word = tuple[Letter, ...]


@dataclass(frozen=True)
class GroupSignature:
    m: int | None
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.m is not None and self.m < 1:
            raise ValueError("m must be positive or None (infinite)")

    @property
    def finite(self) -> bool:
        return self.m is not None

    def order(self) -> int:
        if self.m is None:
            raise ValueError("G(inf,1,n) is infinite")
        f = 1
        for k in range(2, self.n + 1):
            f *= k
        return self.m**self.n * f


@dataclass(frozen=True)
class GroupElement:
    m: int | None
    colors: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError("perm is not a permutation of 1..n")
        if len(self.colors) != len(self.perm):
            raise ValueError("colors and perm lengths differ")
        if self.m is not None and any(not 0 <= c < self.m for c in self.colors):
            raise ValueError("colors must be reduced mod m")

    @property
    def n(self) -> int:
        return len(self.perm)

    @staticmethod
    def identity(m: int | None, n: int) -> "GroupElement":
        return GroupElement(m, (0,) * n, tuple(range(1, n + 1)))

    @staticmethod
    def generator(m: int | None, n: int, letter: Letter) -> "GroupElement":
        i, e = letter
        if i == 0:
            if n < 1:
                raise ValueError("t needs n >= 1")
            c = e % m if m is not None else e
            return GroupElement(m, (c,) + (0,) * (n - 1), tuple(range(1, n + 1)))
        if not 1 <= i <= n - 1:
            raise ValueError(f"s{i} out of range for n={n}")
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return GroupElement(m, (0,) * n, tuple(perm))

    def _red(self, c: int) -> int:
        return c % self.m if self.m is not None else c

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("signature mismatch")
        n = self.n
        colors = list(self.colors)
        for b in range(n):
            # (w.v')[w(b)] = v'[b]
            colors[self.perm[b] - 1] += other.colors[b]
        perm = tuple(self.perm[other.perm[b] - 1] for b in range(n))
        return GroupElement(self.m, tuple(self._red(c) for c in colors), perm)

    def inverse(self) -> "GroupElement":
        n = self.n
        inv = [0] * n
        for b in range(n):
            inv[self.perm[b] - 1] = b + 1
        # (w^-1 . (-v))[b] = -v[w(b)]
        colors = tuple(self._red(-self.colors[self.perm[b] - 1]) for b in range(n))
        return GroupElement(self.m, colors, tuple(inv))

    def restrict(self) -> "GroupElement":
        """View an element fixing n (with color 0 there) inside G(m,1,n-1)."""
        if self.perm[-1] != self.n or self.colors[-1] != 0:
            raise ValueError("element does not lie in G(m,1,n-1)")
        return GroupElement(self.m, self.colors[:-1], self.perm[:-1])

    def extend(self) -> "GroupElement":
        return GroupElement(self.m, self.colors + (0,), self.perm + (self.n + 1,))

    def to_json(self) -> dict:
        return {"colors": list(self.colors), "perm": list(self.perm)}

    @staticmethod
    def from_json(obj: dict, m: int | None) -> "GroupElement":
        return GroupElement(m, tuple(obj["colors"]), tuple(obj["perm"]))


def all_elements(sig: GroupSignature) -> Iterator[GroupElement]:
    if not sig.finite:
        raise ValueError("cannot enumerate an infinite group")
    for perm in permutations(range(1, sig.n + 1)):
        for colors in product(range(sig.m), repeat=sig.n):
            yield GroupElement(sig.m, colors, perm)


# ---------------------------------------------------------------------------
# words


def check_word(word: Sequence[Letter], n: int) -> None:
    for i, e in word:
        if i == 0:
            if e not in (1, -1):
                raise ValueError("t letters carry exponent +-1")
        elif not 1 <= i <= n - 1:
            raise ValueError(f"generator index s{i} out of range for n={n}")


def word_to_element(word: Sequence[Letter], sig: GroupSignature) -> GroupElement:
    check_word(word, sig.n)
    g = GroupElement.identity(sig.m, sig.n)
    for letter in word:
        g = g * GroupElement.generator(sig.m, sig.n, letter)
    return g


_TOKEN = re.compile(r"\s*(?:(t)(?:\^(-?\d+))?|s(\d+))\s*(\*)?")


def parse_group_word(text: str) -> Word:
    """Parse ``t s1 t^-1 s2`` (spaces or ``*`` separate letters)."""
    out: list[Letter] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse group word at position {pos}: {text[pos:pos + 8]!r}")
        if mt.group(1):
            k = int(mt.group(2)) if mt.group(2) else 1
            out.extend([(0, 1 if k > 0 else -1)] * abs(k))
        else:
            i = int(mt.group(3))
            if i < 1:
                raise ValueError(f"bad generator s{i} at position {pos}")
            out.append((i, 1))
        pos = mt.end()
    return tuple(out)


def format_group_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    parts = []
    for i, e in word:
        parts.append(("t" if e == 1 else "t^-1") if i == 0 else f"s{i}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# normal form


@dataclass(frozen=True)
class NestedNormalForm:
    """Layers stored top-first: ``layers[0]`` is (j_n, alpha_n), the last is (j_1, alpha_1)."""

    m: int | None
    layers: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.layers)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.layers]


def layer_word(k: int, j: int, alpha: int, *, compact: bool = True) -> Word:
    """s_j...s_1 t^alpha s_1...s_{k-1}; with ``compact`` and alpha = 0, s_{j+1}...s_{k-1}."""
    if alpha == 0 and compact:
        return tuple((i, 1) for i in range(j + 1, k))
    t = [(0, 1 if alpha > 0 else -1)] * abs(alpha)
    return tuple([(i, 1) for i in range(j, 0, -1)] + t + [(i, 1) for i in range(1, k)])


def normal_form(g: GroupElement) -> NestedNormalForm:
    layers = []
    cur = g
    while True:
        k = cur.n
        top = cur.perm[k - 1]
        j, alpha = top - 1, cur.colors[top - 1]
        layers.append((j, alpha))
        if k == 1:
            break
        c = word_to_element(layer_word(k, j, alpha), GroupSignature(cur.m, k))
        cur = (c.inverse() * cur).restrict()
    return NestedNormalForm(g.m, tuple(layers))


def normal_form_word(nf: NestedNormalForm, *, compact: bool = True) -> Word:
    out: list[Letter] = []
    n = nf.n
    for pos, (j, a) in enumerate(nf.layers):
        out.extend(layer_word(n - pos, j, a, compact=compact))
    return tuple(out)


def normal_form_to_element(nf: NestedNormalForm) -> GroupElement:
    return word_to_element(normal_form_word(nf), GroupSignature(nf.m, nf.n))


def all_normal_forms(sig: GroupSignature) -> Iterator[NestedNormalForm]:
    if not sig.finite:
        raise ValueError("infinitely many normal forms")
    ranges = [[(j, a) for j in range(k) for a in range(sig.m)] for k in range(sig.n, 0, -1)]
    for layers in product(*ranges):
        yield NestedNormalForm(sig.m, tuple(layers))


def reduced_word(nf: NestedNormalForm) -> Word:
    """Positive word pi t_{n,a_n}...t_{1,a_1} built from the nested normal form."""
    if nf.m is None:
        raise ValueError("reduced words are only defined for finite m")
    n = nf.n
    pi: list[int] = []
    tparts: list[Letter] = []
    # walk bottom-up so that pi for the lower levels is available
    for k in range(1, n + 1):
        j, a = nf.layers[n - k]
        if a == 0:
            pi = list(range(j + 1, k)) + pi
        else:
            pi = list(range(j, 0, -1)) + [i + 1 for i in pi]
    for k in range(n, 0, -1):
        j, a = nf.layers[n - k]
        if a:
            tparts.extend([(0, 1)] * a + [(i, 1) for i in range(1, k)])
    return tuple((i, 1) for i in pi) + tuple(tparts)


# ---------------------------------------------------------------------------
# Todd-Coxeter enumeration


class _CosetEnumerator:
    """Felsch-free HLT enumeration with coincidence handling."""

    def __init__(self, ngens: int, inverse: list[int], limit: int = 200_000):
        self.ngens = ngens
        self.inv = inverse
        self.table: list[list[int | None]] = [[None] * ngens]
        self.parent = [0]
        self.limit = limit

    def find(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.limit:
            raise RuntimeError("coset enumeration exceeded its limit")
        d = len(self.table)
        self.table.append([None] * self.ngens)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][self.inv[x]] = c

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        T, inv = self.table, self.inv
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ngens):
                d = T[g][x]
                if d is None:
                    continue
                if T[d][inv[x]] == g:
                    T[d][inv[x]] = None
                mu, nu = self.find(g), self.find(d)
                if T[mu][x] is not None:
                    self._merge(nu, T[mu][x], queue)
                elif T[nu][inv[x]] is not None:
                    self._merge(mu, T[nu][inv[x]], queue)
                else:
                    T[mu][x] = nu
                    T[nu][inv[x]] = mu

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        T, inv = self.table, self.inv
        f = b = c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and T[f][word[i]] is not None:
                f = T[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][inv[word[j]]] is not None:
                b = T[b][inv[word[j]]]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][word[i]] = b
                T[b][inv[word[i]]] = f
                return
            self.define(f, word[i])

    def run(self, relators: list[list[int]], subgroup: list[list[int]]) -> None:
        for w in subgroup:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            for r in relators:
                if not self.alive(c):
                    break
                self.scan_and_fill(c, r)
            if self.alive(c):
                for x in range(self.ngens):
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1

    def live_table(self) -> tuple[list[int], list[list[int]]]:
        live = [c for c in range(len(self.table)) if self.alive(c)]
        pos = {c: i for i, c in enumerate(live)}
        rows = [[pos[self.find(self.table[c][x])] for x in range(self.ngens)] for c in live]
        return live, rows


@dataclass(frozen=True)
class CosetTable:
    """Left cosets gW of W = <t, s_1..s_{n-2}> in G(m,1,n).

    ``vertices[c]`` is the label (j, alpha): every g in the coset sends n to
    j+1 carrying color alpha.  ``actions[name][c]`` is the vertex x.c for the
    generator named ``t``, ``t^-1`` or ``s<i>`` (``None`` outside a lazy window).
    """

    sig: GroupSignature
    vertices: tuple[tuple[int, int], ...]
    actions: dict[str, tuple[int | None, ...]]
    transversal: tuple[Word, ...]

    def vertex_of(self, label: tuple[int, int]) -> int:
        return self.vertices.index(label)

    def act_word(self, word: Sequence[Letter], start: int) -> int | None:
        c: int | None = start
        for i, e in reversed(list(word)):
            name = ("t" if e == 1 else "t^-1") if i == 0 else f"s{i}"
            c = self.actions[name][c]
            if c is None:
                return None
        return c

    def to_json(self) -> dict:
        return {
            "m": self.sig.m if self.sig.m is not None else "inf",
            "n": self.sig.n,
            "vertices": [list(v) for v in self.vertices],
            "actions": {k: list(v) for k, v in self.actions.items()},
            "transversal": [format_group_word(w) for w in self.transversal],
        }


def _coset_label(g: GroupElement) -> tuple[int, int]:
    top = g.perm[g.n - 1]
    return (top - 1, g.colors[top - 1])


def coxeter_todd(sig: GroupSignature, depth: int = 3) -> CosetTable:
    """Enumerate cosets of G(m,1,n-1) in G(m,1,n).

    Finite m runs a genuine coset enumeration on the Coxeter-like presentation.
    For m = infinity the table is built lazily from the wreath model for
    colors in [-depth, depth]; actions leaving that window are ``None``.
    """
    n, m = sig.n, sig.m
    names = ["t", "t^-1"] + [f"s{i}" for i in range(1, n)]
    if m is None:
        labels = [(j, a) for a in range(-depth, depth + 1) for j in range(n)]
        idx = {lab: c for c, lab in enumerate(labels)}
        reps = [word_to_element(layer_word(n, j, a), sig) for j, a in labels]
        actions = {}
        for gi, name in enumerate(names):
            letter = (0, 1) if gi == 0 else (0, -1) if gi == 1 else (gi - 1, 1)
            x = GroupElement.generator(m, n, letter)
            actions[name] = tuple(idx.get(_coset_label(x * r)) for r in reps)
        transversal = tuple(layer_word(n, j, a) for j, a in labels)
        return CosetTable(sig, tuple(labels), actions, transversal)

    # generator indices: 0 = t, 1 = t^-1, 1 + i = s_i
    ngens = 2 + (n - 1)
    inverse = [1, 0] + [2 + i for i in range(n - 1)]
    T, Ti = 0, 1

    def s(i: int) -> int:
        return 1 + i

    rels: list[list[int]] = [[T] * m]
    for i in range(1, n):
        rels.append([s(i), s(i)])
    for i in range(1, n - 1):
        rels.append([s(i), s(i + 1)] * 3)
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append([s(i), s(j)] * 2)
    if n >= 2:
        rels.append([T, s(1), T, s(1), Ti, s(1), Ti, s(1)])
    for i in range(2, n):
        rels.append([T, s(i), Ti, s(i)])
    subgroup = [[T]] + [[s(i)] for i in range(1, n - 1)] if n >= 2 else []
    en = _CosetEnumerator(ngens, inverse)
    en.run(rels, subgroup)
    _, rows = en.live_table()

    # right cosets W g <-> left cosets g^-1 W, so the left action of x is the
    # right action of x^-1.  Relabel by a BFS over left actions from W.
    left = [[rows[c][inverse[x]] for x in range(ngens)] for c in range(len(rows))]
    order = [0]
    words: dict[int, Word] = {0: ()}
    seen = {0}
    queue = deque([0])
    letters = [(0, 1), (0, -1)] + [(i, 1) for i in range(1, n)]
    while queue:
        c = queue.popleft()
        for x in range(ngens):
            d = left[c][x]
            if d not in seen:
                seen.add(d)
                words[d] = (letters[x],) + words[c]
                order.append(d)
                queue.append(d)
    labels = []
    for c in order:
        labels.append(_coset_label(word_to_element(words[c], sig)))
    if len(set(labels)) != len(labels):
        raise RuntimeError("coset enumeration produced clashing labels")
    pos = {c: i for i, c in enumerate(order)}
    actions = {name: tuple(pos[left[c][x]] for c in order) for x, name in enumerate(names)}
    transversal = tuple(layer_word(n, j, a) for j, a in labels)
    return CosetTable(sig, tuple(labels), actions, transversal)
