"""Independent oracles used by the test suite.

Kept deliberately dumb and slow: exact rational polygon clipping for slice
areas, and exhaustive word enumeration for transition-matrix entries.
"""

from __future__ import annotations

import random
from fractions import Fraction

from fracphase.line_ifs import LineIFS, normalize

UNIT_SQUARE = [
    (Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(1)),
    (Fraction(0), Fraction(1)),
]


def _clip_halfplane(poly, f):
    """Sutherland-Hodgman clip of a polygon against f(x, y) >= 0."""
    if not poly:
        return []
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp, fq = f(*p), f(*q)
        if fp >= 0:
            out.append(p)
            if fq < 0:
                t = fp / (fp - fq)
                out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        elif fq >= 0:
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _shoelace(poly) -> Fraction:
    if len(poly) < 3:
        return Fraction(0)
    total = Fraction(0)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2


def clip_area(a, b, c) -> Fraction:
    """Exact area of {(x, y) in [0,1]^2 : 0 <= a*x + b*y + c <= 1}.

    This is the projected slice area: the plane z = ax + by + c meets the
    unit cube above (x, y) exactly when ax + by + c lies in [0, 1].
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    poly = _clip_halfplane(UNIT_SQUARE, lambda x, y: a * x + b * y + c)
    poly = _clip_halfplane(poly, lambda x, y: 1 - (a * x + b * y + c))
    return _shoelace(poly)


def htilde_oracle(a, b, c) -> Fraction:
    """The slack function evaluated purely through the clipping oracle."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    corners = [
        (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1),
        (2, 1, 1), (1, 2, 1), (1, 1, 2),
    ]
    total = 5 * clip_area(a, b, c)
    for u3, v3, w3 in corners:
        total -= clip_area(a, b, a * u3 + b * v3 + 3 * c - w3)
    return total / 9


def compose_interval(ifs: LineIFS, translations, k: int):
    """Identify f_{i_1..i_n}(J^k) as (ell, digits) by innermost-first steps.

    Applying a single map to J^k_w yields J^{k'}_{b w} with
    k' = (k + t) div L and b = (k + t) mod L; compositions apply the
    innermost (last) map first and prepend digits outward.
    """
    L = ifs.L
    cur = k
    digits: tuple[int, ...] = ()
    for t in reversed(translations):
        cur, b = divmod(cur + t, L)
        digits = (b,) + digits
    return cur, digits


def brute_force_entry(ifs: LineIFS, offsets, word, ell: int, k: int) -> int:
    """A_w(ell, k) by enumerating all words over the M maps (Lemma-style)."""
    maps = ifs.map_translations()
    n = len(word)
    target = tuple(word)
    count = 0
    idx = [0] * n
    total = len(maps) ** n
    for flat in range(total):
        x = flat
        for pos in range(n):
            idx[pos] = x % len(maps)
            x //= len(maps)
        cur, digits = compose_interval(ifs, [maps[i] for i in idx], offsets[k])
        if digits == target and cur == offsets[ell]:
            count += 1
    return count


def random_small_ifs(rng: random.Random) -> LineIFS:
    """A random valid small system (L <= 3, M <= 6) for equivalence tests."""
    while True:
        L = rng.choice([2, 3])
        m = rng.randint(1, 3)
        span = rng.randint(1, 3) * (L - 1)  # ensures divisibility
        ts = {0, span} if span > 0 else {0}
        while len(ts) < m and len(ts) <= span:
            ts.add(rng.randint(0, span))
        ts = sorted(ts)
        total = 0
        pairs = []
        for t in ts:
            n = rng.randint(1, 2)
            pairs.append((t, n))
            total += n
        if total <= 6:
            raw = [t for t, n in pairs for _ in range(n)]
            return normalize(L, raw)
