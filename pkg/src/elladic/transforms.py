"""Generating-series transforms of coset-tower measures.

Two commutative series are attached to a measure on (Z_ell)^r:

* the binomial-moment series ("A-form"), whose coefficient at A^n is the
  integral of prod_j C(x_j, n_j); a point mass at alpha maps to (1+A)^alpha;
* the exponential-moment series ("X-form"), whose coefficient at X^n is the
  integral of prod_j x_j^(n_j) / n_j!.

The X-form is the A-form composed with A_j = exp(X_j) - 1.  Coefficients are
computed as exact level sums; such a sum approximates the true coefficient to
``level - denom_exponent - v(n!)`` digits.

Because the cells at level n biject with the basis (1+A)^i, 0 <= i < ell^n, of
the length-ell^n group ring, an A-form polynomial can be folded back into a
tower: A^k expands into that basis after reducing exponents mod ell^n, which
is what ``measure_from_p_series`` does.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .measures import MeasureTower, _decode
from .ncseries import pmul

__all__ = [
    "IwasawaSeries",
    "p_transform",
    "f_transform",
    "p_series_to_f",
    "measure_from_p_series",
]


class IwasawaSeries:
    """Truncated commutative series with Fraction coefficients.

    kind "binomial": variables A_1..A_r, per-variable degree bound ``degree``.
    kind "exp": variables X_1..X_r, total degree bound ``degree``.
    """

    __slots__ = ("rank", "kind", "degree", "coeffs")

    def __init__(self, rank, kind, degree, coeffs):
        if kind not in ("binomial", "exp"):
            raise ValueError("kind must be 'binomial' or 'exp'")
        self.rank = rank
        self.kind = kind
        self.degree = degree
        self.coeffs = {
            tuple(k): Fraction(v) for k, v in coeffs.items() if Fraction(v) != 0
        }

    def __getitem__(self, index):
        if isinstance(index, int):
            index = (index,)
        return self.coeffs.get(tuple(index), Fraction(0))

    @property
    def constant(self):
        return self[(0,) * self.rank]

    def __eq__(self, other):
        return (
            isinstance(other, IwasawaSeries)
            and self.rank == other.rank
            and self.kind == other.kind
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return (
            f"IwasawaSeries({self.kind}, rank={self.rank}, degree={self.degree}, "
            f"{len(self.coeffs)} terms)"
        )


def _multi_indices(rank, degree, total):
    if rank == 0:
        yield ()
        return
    for head in range(degree + 1):
        rest_cap = degree - head if total else degree
        for tail in _multi_indices(rank - 1, rest_cap, total):
            yield (head,) + tail


def p_transform(
    mu: MeasureTower, degree: int, level: int | None = None, total: bool = True
) -> IwasawaSeries:
    """Binomial-moment series; coefficient of A^n is sum C(cell, n) * value.

    ``total`` selects total-degree truncation; per-variable truncation
    (total=False) is what the tower reconstruction needs.
    """
    if level is None:
        level = mu.depth
    m = mu.ell ** level
    r = mu.rank
    cells = [
        (_decode(idx, m, r), v) for idx, v in enumerate(mu.levels[level]) if v
    ]
    coeffs = {}
    for n in _multi_indices(r, degree, total):
        acc = Fraction(0)
        for coords, v in cells:
            w = 1
            for c, nj in zip(coords, n):
                if nj:
                    w *= comb(c, nj)
                    if w == 0:
                        break
            if w:
                acc += w * v
        if acc:
            coeffs[n] = acc
    return IwasawaSeries(r, "binomial", degree, coeffs)


def f_transform(
    mu: MeasureTower, degree: int, level: int | None = None
) -> IwasawaSeries:
    """Exponential-moment series; coefficient of X^n is sum cell^n/n! * value."""
    if level is None:
        level = mu.depth
    m = mu.ell ** level
    r = mu.rank
    cells = [
        (_decode(idx, m, r), v) for idx, v in enumerate(mu.levels[level]) if v
    ]
    coeffs = {}
    for n in _multi_indices(r, degree, True):
        acc = Fraction(0)
        for coords, v in cells:
            w = 1
            for c, nj in zip(coords, n):
                if nj:
                    w *= c ** nj
                    if w == 0:
                        break
            if w:
                acc += w * v
        if acc:
            den = 1
            for nj in n:
                den *= factorial(nj)
            coeffs[n] = acc / den
    return IwasawaSeries(r, "exp", degree, coeffs)


def p_series_to_f(series: IwasawaSeries, degree: int) -> IwasawaSeries:
    """Substitute A_j = exp(X_j) - 1 into a binomial-kind series."""
    if series.kind != "binomial":
        raise ValueError("input must be binomial-kind")
    r = series.rank
    em1 = [Fraction(0)] + [Fraction(1, factorial(k)) for k in range(1, degree + 1)]
    # per-variable powers of (e^X - 1), truncated at the total degree
    pow_table = [[Fraction(1)] + [Fraction(0)] * degree]
    for _ in range(degree):
        pow_table.append(pmul(pow_table[-1], em1, degree))
    out: dict[tuple, Fraction] = {}

    def spread(j, index, partial_coeff, exps):
        if j == r:
            key = tuple(exps)
            out[key] = out.get(key, Fraction(0)) + partial_coeff
            return
        nj = index[j]
        room = degree - sum(exps)
        tab = pow_table[nj] if nj <= degree else None
        if tab is None:
            return
        for k in range(nj, room + 1):
            if tab[k]:
                spread(j + 1, index, partial_coeff * tab[k], exps + [k])

    for index, c in series.coeffs.items():
        if sum(index) > degree:
            continue
        spread(0, index, c, [])
    out = {k: v for k, v in out.items() if v}
    return IwasawaSeries(r, "exp", degree, out)


def measure_from_p_series(series: IwasawaSeries, ell: int, depth: int) -> MeasureTower:
    """Fold a binomial-kind polynomial into the depth-n tower it represents.

    A^k expands in the basis (1+A)^i of the level-n group ring after reducing
    exponents mod ell^n; the basis coefficients are the level-n cell values.
    Degrees of the input may exceed ell^depth; they wrap around.
    """
    if series.kind != "binomial":
        raise ValueError("input must be binomial-kind")
    r = series.rank
    if r > 2:
        raise ValueError("tower reconstruction supports rank 1 and 2 only")
    m = ell ** depth
    kmax = max((max(k) for k in series.coeffs), default=0)
    # T[k][i] = sum over j = i mod m, j <= k of (-1)^(k-j) C(k, j)
    tables = []
    for k in range(kmax + 1):
        row = [Fraction(0)] * m
        for j in range(k + 1):
            row[j % m] += (-1) ** (k - j) * comb(k, j)
        tables.append(row)
    top = [Fraction(0)] * (m ** r)
    for index, c in series.coeffs.items():
        if r == 1:
            row = tables[index[0]]
            for i in range(m):
                if row[i]:
                    top[i] += c * row[i]
        else:
            r1, r2 = tables[index[0]], tables[index[1]]
            for i2 in range(m):
                if not r2[i2]:
                    continue
                base = i2 * m
                f = c * r2[i2]
                for i1 in range(m):
                    if r1[i1]:
                        top[base + i1] += f * r1[i1]
    levels = [top]
    cur = top
    for n in range(depth, 0, -1):
        mm = ell ** n
        small = ell ** (n - 1)
        nxt = [Fraction(0)] * (small ** r)
        for idx, v in enumerate(cur):
            if v:
                coords = _decode(idx, mm, r)
                nxt[_encode_small(tuple(c % small for c in coords), small)] += v
        levels.append(nxt)
        cur = nxt
    levels.reverse()
    return MeasureTower(ell, r, levels, validate=True)


def _encode_small(coords, m):
    idx = 0
    for c in reversed(coords):
        idx = idx * m + c
    return idx
