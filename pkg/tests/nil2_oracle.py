"""Independent normal-form oracle for the free class-2 group on n generators.

Deliberately shares no code with the package: elements are kept in collected
form x_1^a_1 .. x_n^a_n * prod_{i<j} [x_j, x_i]^b_ij (the commutators are
central at class 2), with the product rule derived from pushing x_i^p past
x_j^q at the cost of [x_j, x_i]^{qp}.

`to_poly` re-derives the truncated power-series coefficients of the normal
form directly, so oracle elements can be compared against the package's
representation without ever calling it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class Nil2:
    n: int
    a: tuple[int, ...]  # generator exponents
    b: tuple[tuple[int, int, int], ...]  # (i, j, b_ij) for i < j, b_ij != 0


def _pack(n: int, a, b: dict) -> Nil2:
    return Nil2(
        n,
        tuple(a),
        tuple((i, j, b[i, j]) for i, j in sorted(b) if b[i, j]),
    )


def _bdict(g: Nil2) -> dict:
    return {(i, j): v for i, j, v in g.b}


def identity(n: int) -> Nil2:
    return Nil2(n, (0,) * n, ())


def gen(n: int, i: int, e: int = 1) -> Nil2:
    a = [0] * n
    a[i - 1] = e
    return Nil2(n, tuple(a), ())


def mul(g: Nil2, h: Nil2) -> Nil2:
    assert g.n == h.n
    a = [x + y for x, y in zip(g.a, h.a)]
    b = _bdict(g)
    hb = _bdict(h)
    for key in set(b) | set(hb):
        b[key] = b.get(key, 0) + hb.get(key, 0)
    # moving h's x_i block left through g's x_j blocks, j > i
    for i, j in combinations(range(1, g.n + 1), 2):
        b[i, j] = b.get((i, j), 0) + g.a[j - 1] * h.a[i - 1]
    return _pack(g.n, a, b)


def inverse(g: Nil2) -> Nil2:
    a = tuple(-x for x in g.a)
    b = {}
    for (i, j), v in _bdict(g).items():
        b[i, j] = -v
    for i, j in combinations(range(1, g.n + 1), 2):
        # solve b_ij(g) + b_ij(g^-1) + a_j(g) * a_i(g^-1) = 0
        b[i, j] = b.get((i, j), 0) + g.a[j - 1] * g.a[i - 1]
    return _pack(g.n, a, b)


def from_word(n: int, pairs) -> Nil2:
    out = identity(n)
    for g, e in pairs:
        out = mul(out, gen(n, g, e))
    return out


def to_poly(g: Nil2) -> dict:
    """Coefficients of the image under x_i -> 1 + X_i, truncated at degree 2.

    x_i^a contributes a on X_i and C(a,2) on X_i X_i; ordered products of the
    generator blocks contribute a_i a_j on X_i X_j for i < j; each central
    [x_j, x_i]^b contributes b on X_j X_i and -b on X_i X_j.
    """
    poly = {(): 1}
    b = _bdict(g)
    for i in range(1, g.n + 1):
        ai = g.a[i - 1]
        if ai:
            poly[(i,)] = ai
        sq = ai * (ai - 1) // 2
        if sq:
            poly[(i, i)] = sq
    for i, j in combinations(range(1, g.n + 1), 2):
        lo = g.a[i - 1] * g.a[j - 1] - b.get((i, j), 0)
        hi = b.get((i, j), 0)
        if lo:
            poly[(i, j)] = lo
        if hi:
            poly[(j, i)] = hi
    return poly
