"""Bounded measures on (Z_ell)^r stored as coherent coset-value towers.

A tower keeps, for every level n <= depth, the table of values on the
``ell**(r*n)`` cosets of level n.  The defining coherence ("distribution")
property says each value equals the sum of the ``ell**r`` values above it.
Values are exact Fractions; ``denom_exponent`` is the smallest d with every
value in ``ell**(-d) * Z_(ell)``.

Cells at level n are indexed by coordinate tuples in ``[0, ell**n)**r``; the
flat index is ``sum_j c_j * (ell**n)**j`` (first coordinate fastest).

Riemann sums against the closed integrand family (powers, unit inverses,
Teichmuller powers, one-unit powers) return ell-adic values carrying the
guaranteed absolute precision ``level - denom_exponent`` reduced by one per
inverse factor: every admitted factor moves points by at most their distance,
so the level-n oscillation of the integrand is at most ell**(-n).

Towers are immutable after construction; Riemann sums are exact rational
additions, so any evaluation order gives identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .padic import PadicNum, teichmuller, _check_prime

__all__ = [
    "MeasureTower",
    "Word",
    "Factor",
    "measure_from_tower",
    "bernoulli_measure",
    "dirac_tower",
    "zero_tower",
    "product_tower",
    "random_bounded_tower",
    "pushforward_linear",
    "successive_difference_pushforward",
    "restrict",
    "dilation_pullback",
    "integrate",
    "word_coefficient",
    "raw_word_integral",
    "mellin_multi",
    "congruence_check",
    "CongruenceReport",
    "tower_to_json",
    "tower_from_json",
]


def _frac_val(q: Fraction, ell: int) -> int:
    """ell-adic valuation of a nonzero rational."""
    num, den = q.numerator, q.denominator
    v = 0
    while num % ell == 0:
        num //= ell
        v += 1
    while den % ell == 0:
        den //= ell
        v -= 1
    return v


def _fraction_to_padic_abs(s: Fraction, ell: int, abs_exp: int) -> PadicNum:
    """Encode an exactly-known rational at claimed absolute precision."""
    if s == 0 or _frac_val(s, ell) >= abs_exp:
        return PadicNum.zero_to_precision(ell, abs_exp)
    v = _frac_val(s, ell)
    return PadicNum.from_rational(s, ell, abs_exp - v)


def _decode(idx: int, m: int, rank: int) -> tuple:
    out = []
    for _ in range(rank):
        idx, c = divmod(idx, m)
        out.append(c)
    return tuple(out)


def _encode(coords, m: int) -> int:
    idx = 0
    for c in reversed(coords):
        idx = idx * m + c
    return idx


class MeasureTower:
    __slots__ = ("ell", "rank", "depth", "levels", "denom_exponent", "units_only")

    def __init__(self, ell, rank, levels, units_only=False, validate=True):
        _check_prime(ell)
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.ell = ell
        self.rank = rank
        self.depth = len(levels) - 1
        norm = []
        for n, table in enumerate(levels):
            size = ell ** (rank * n)
            if len(table) != size:
                raise ValueError(f"level {n} must have {size} cells, got {len(table)}")
            norm.append(tuple(Fraction(v) for v in table))
        self.levels = tuple(norm)
        self.units_only = units_only
        per_level_d = [
            max((max(0, -_frac_val(v, ell)) for v in table if v), default=0)
            for table in self.levels
        ]
        self.denom_exponent = max(per_level_d, default=0)
        if validate:
            self._validate(per_level_d)

    def _validate(self, per_level_d):
        ell, rank = self.ell, self.rank
        for n in range(self.depth):
            m = ell ** n
            child = self.levels[n + 1]
            acc = [Fraction(0)] * len(self.levels[n])
            for idx, v in enumerate(child):
                if v:
                    coords = _decode(idx, m * ell, rank)
                    acc[_encode(tuple(c % m for c in coords), m)] += v
            for idx, v in enumerate(self.levels[n]):
                if acc[idx] != v:
                    raise ValueError(
                        f"not a distribution: level {n} cell "
                        f"{_decode(idx, m, rank)} has {v}, children sum to {acc[idx]}"
                    )
        # Growth heuristic: denominators gaining an ell at every single level
        # is the signature of an unbounded family (e.g. the uniform "measure"
        # with value ell**(-r*n) on each level-n cell).
        if self.depth >= 2 and all(
            per_level_d[n] > per_level_d[n - 1] for n in range(1, self.depth + 1)
        ):
            raise ValueError("not bounded: denominator exponent grows with every level")

    # -- cell access --------------------------------------------------------

    def value(self, level: int, coords) -> Fraction:
        m = self.ell ** level
        coords = tuple(c % m for c in coords)
        return self.levels[level][_encode(coords, m)]

    def cells(self, level: int):
        m = self.ell ** level
        for idx, v in enumerate(self.levels[level]):
            yield _decode(idx, m, self.rank), v

    @property
    def total_mass(self) -> Fraction:
        return self.levels[0][0]

    def __repr__(self):
        return (
            f"MeasureTower(ell={self.ell}, rank={self.rank}, depth={self.depth}, "
            f"d={self.denom_exponent})"
        )


def measure_from_tower(levels, ell: int, rank: int) -> MeasureTower:
    """Validate a raw family of level tables and wrap it as a measure."""
    return MeasureTower(ell, rank, levels, validate=True)


# -- constructors -------------------------------------------------------------


def bernoulli_measure(c: int, ell: int, depth: int) -> MeasureTower:
    """The c-regularized first Bernoulli distribution on Z_ell.

    Level-n value at i: i/ell^n - c*<c^(-1) i>/ell^n + (c-1)/2.
    """
    _check_prime(ell)
    if c % ell == 0:
        raise ValueError("not a unit: c must be coprime to ell")
    shift = Fraction(c - 1, 2)
    levels = []
    for n in range(depth + 1):
        m = ell ** n
        cinv = pow(c, -1, m) if m > 1 else 0
        table = [
            Fraction(i, m) - c * Fraction(cinv * i % m, m) + shift for i in range(m)
        ]
        levels.append(table)
    return MeasureTower(ell, 1, levels, validate=True)


def dirac_tower(point, ell: int, rank: int, depth: int) -> MeasureTower:
    point = tuple(point) if not isinstance(point, int) else (point,)
    if len(point) != rank:
        raise ValueError("rank mismatch")
    levels = []
    for n in range(depth + 1):
        m = ell ** n
        table = [Fraction(0)] * (m ** rank)
        table[_encode(tuple(p % m for p in point), m)] = Fraction(1)
        levels.append(table)
    return MeasureTower(ell, rank, levels, validate=False)


def zero_tower(ell: int, rank: int, depth: int) -> MeasureTower:
    levels = [[Fraction(0)] * (ell ** (rank * n)) for n in range(depth + 1)]
    return MeasureTower(ell, rank, levels, validate=False)


def product_tower(mu1: MeasureTower, mu2: MeasureTower) -> MeasureTower:
    """Product measure on the concatenated coordinates."""
    if mu1.ell != mu2.ell:
        raise ValueError("prime mismatch")
    ell = mu1.ell
    rank = mu1.rank + mu2.rank
    depth = min(mu1.depth, mu2.depth)
    levels = []
    for n in range(depth + 1):
        m = ell ** n
        t1, t2 = mu1.levels[n], mu2.levels[n]
        table = [Fraction(0)] * (m ** rank)
        for i2, v2 in enumerate(t2):
            if not v2:
                continue
            base = i2 * m ** mu1.rank
            for i1, v1 in enumerate(t1):
                if v1:
                    table[base + i1] = v1 * v2
        levels.append(table)
    return MeasureTower(ell, rank, levels, validate=False)


def random_bounded_tower(
    ell: int,
    rank: int,
    depth: int,
    denom_exponent: int = 0,
    seed: int = 0,
    zero_total: bool = False,
) -> MeasureTower:
    """Seeded synthetic bounded tower: split each value into ell^r children.

    Values stay in ell^(-denom_exponent) Z, so the result is bounded with
    exponent <= denom_exponent by construction.
    """
    rng = Random(seed)

    def rand_val():
        e = rng.randint(0, denom_exponent) if denom_exponent else 0
        return Fraction(rng.randint(-9, 9), ell ** e)

    levels = [[Fraction(0) if zero_total else rand_val()]]
    for n in range(depth):
        m = ell ** n
        big = m * ell
        child = [Fraction(0)] * (ell ** (rank * (n + 1)))
        offsets = list(range(ell ** rank))
        for idx, val in enumerate(levels[n]):
            coords = _decode(idx, m, rank)
            kids = []
            for off in offsets:
                e = _decode(off, ell, rank)
                kids.append(tuple(c + m * ej for c, ej in zip(coords, e)))
            running = Fraction(0)
            for kid in kids[:-1]:
                v = rand_val()
                child[_encode(kid, big)] = v
                running += v
            child[_encode(kids[-1], big)] = val - running
        levels.append(child)
    return MeasureTower(ell, rank, levels, validate=False)


# -- pushforward / restriction / pullback -------------------------------------


def pushforward_linear(matrix, mu: MeasureTower) -> MeasureTower:
    """Image measure under an integer matrix acting on coordinates.

    Computed levelwise: the value on a level-n cell is the sum of values over
    its preimage cells at the same level, which is exact for any integer
    matrix (reduction mod ell^n commutes with the map).
    """
    r = mu.rank
    matrix = [list(row) for row in matrix]
    if len(matrix) != r or any(len(row) != r for row in matrix):
        raise ValueError("matrix shape must match rank")
    levels = []
    for n in range(mu.depth + 1):
        m = mu.ell ** n
        table = [Fraction(0)] * (m ** r)
        for idx, v in enumerate(mu.levels[n]):
            if not v:
                continue
            x = _decode(idx, m, r)
            img = tuple(sum(matrix[i][j] * x[j] for j in range(r)) % m for i in range(r))
            table[_encode(img, m)] += v
        levels.append(table)
    return MeasureTower(mu.ell, r, levels, validate=False)


def successive_difference_pushforward(mu: MeasureTower) -> MeasureTower:
    """Pushforward under (x1,...,xr) -> (x1-x2, ..., x_{r-1}-x_r, x_r)."""
    r = mu.rank
    if r == 1:
        return mu
    mat = [[0] * r for _ in range(r)]
    for i in range(r - 1):
        mat[i][i] = 1
        mat[i][i + 1] = -1
    mat[r - 1][r - 1] = 1
    return pushforward_linear(mat, mu)


def restrict(mu: MeasureTower, region) -> MeasureTower:
    """Restriction to a compact-open region.

    ``region`` is either the string "units" (unit coordinates) or a pair
    ``(level, cells)`` where cells is an iterable of coordinate tuples at that
    level.  Coarser levels are rebuilt by summation so the result is again a
    distribution tower.
    """
    ell, r = mu.ell, mu.rank
    if region == "units":
        base_level, keep = 1, None
    else:
        base_level, cells = region
        keep = {tuple(c % ell ** base_level for c in t) for t in cells}
    if base_level > mu.depth:
        raise ValueError("region not expressible at available depth")

    def kept(coords):
        if keep is None:
            return all(c % ell for c in coords)
        return tuple(c % ell ** base_level for c in coords) in keep

    levels = [None] * (mu.depth + 1)
    for n in range(base_level, mu.depth + 1):
        m = ell ** n
        levels[n] = [
            v if v and kept(_decode(idx, m, r)) else Fraction(0)
            for idx, v in enumerate(mu.levels[n])
        ]
    for n in range(base_level - 1, -1, -1):
        m = ell ** n
        big = m * ell
        table = [Fraction(0)] * (m ** r)
        for idx, v in enumerate(levels[n + 1]):
            if v:
                coords = _decode(idx, big, r)
                table[_encode(tuple(c % m for c in coords), m)] += v
        levels[n] = table
    units_only = keep is None or all(
        all(c % ell for c in t) for t in keep
    )
    return MeasureTower(ell, r, levels, units_only=units_only, validate=False)


def dilation_pullback(mu: MeasureTower, k) -> MeasureTower:
    """Pullback along per-coordinate scaling x_j -> ell^(k_j) x_j.

    The level-n value at c is mu of the product of cosets
    ell^(k_j) c_j + ell^(n+k_j) Z_ell, read off from level n + max(k).
    """
    ell, r = mu.ell, mu.rank
    ks = tuple(k) if not isinstance(k, int) else (k,) * r
    if len(ks) != r or any(kj < 0 for kj in ks):
        raise ValueError("scaling exponents must be nonnegative, one per coordinate")
    kmax = max(ks)
    if kmax > mu.depth:
        raise ValueError("region not expressible at available depth")
    new_depth = mu.depth - kmax
    levels = []
    for n in range(new_depth + 1):
        m = ell ** n
        big = ell ** (n + kmax)
        table = [Fraction(0)] * (m ** r)
        src = mu.levels[n + kmax]
        for idx in range(len(table)):
            coords = _decode(idx, m, r)
            total = Fraction(0)
            reps = [
                [(ell ** kj * cj + ell ** (n + kj) * e) % big for e in range(ell ** (kmax - kj))]
                for cj, kj in zip(coords, ks)
            ]
            for combo in _cartesian(reps):
                total += src[_encode(combo, big)]
            table[idx] = total
        levels.append(table)
    return MeasureTower(ell, r, levels, validate=False)


def _cartesian(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _cartesian(lists[1:]):
            yield (head,) + rest


# -- integration ---------------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """One coordinate's factor: x^power * (x^-1)? * omega(x)^teich * [x]^bracket."""

    power: int = 0
    inverse: bool = False
    teich: int = 0
    bracket: object = None

    @property
    def needs_units(self) -> bool:
        return self.inverse or self.teich != 0 or self.bracket is not None


def _normalize_integrand(integrand, rank):
    """Returns list of (Fraction coefficient, factor tuple) terms."""
    if isinstance(integrand, Factor):
        integrand = (integrand,)
    if isinstance(integrand, tuple) and all(isinstance(f, Factor) for f in integrand):
        terms = [(Fraction(1), integrand)]
    else:
        terms = [(Fraction(c), tuple(fs)) for c, fs in integrand]
    for _, fs in terms:
        if len(fs) != rank:
            raise ValueError("rank mismatch: one factor per coordinate required")
        for f in fs:
            if f.power < 0:
                raise ValueError("negative powers are spelled with inverse=True")
    return terms


def integrate(mu: MeasureTower, integrand, level: int | None = None) -> PadicNum:
    """Level-n Riemann sum of a closed-family integrand against the tower.

    Returns an ell-adic value with guaranteed absolute precision
    ``level - denom_exponent - (#inverse factors)``, further capped by the
    stated precision of any ell-adic bracket exponent.
    """
    ell, r = mu.ell, mu.rank
    if level is None:
        level = mu.depth
    if not 0 <= level <= mu.depth:
        raise ValueError("level out of range")
    terms = _normalize_integrand(integrand, r)
    needs_units = any(f.needs_units for _, fs in terms for f in fs)
    if needs_units:
        if not mu.units_only:
            raise ValueError(
                "integrand undefined on region: restrict to units before "
                "integrating inverse/omega/bracket factors"
            )
        if level < 1:
            raise ValueError("integrand undefined on region: need level >= 1")

    n_inv = max(sum(1 for f in fs if f.inverse) for _, fs in terms)
    cap = math.inf
    for _, fs in terms:
        for f in fs:
            if isinstance(f.bracket, PadicNum) and not f.bracket.is_exact_zero:
                cap = min(cap, f.bracket.abs_prec + 1)
    prec = min(level - n_inv, cap) - mu.denom_exponent
    K = max(level + mu.denom_exponent + 3, int(prec) + mu.denom_exponent + 3)
    modK = ell ** K

    omega_table = [None] * ell
    if needs_units:
        for u in range(1, ell):
            omega_table[u] = teichmuller(u, ell, K).residue(K)

    # per-factor bracket exponents reduced into the one-unit group exponent
    from .padic import _angle_from_scalar

    def bracket_residue(s):
        if isinstance(s, PadicNum):
            digits = min(K - 1, s.abs_prec if s.abs_prec is not math.inf else K - 1)
            return s.residue(int(digits)) if not s.is_exact_zero else 0
        return _angle_from_scalar(s, ell, K - 1)

    prepared = []
    for coeff, fs in terms:
        pf = []
        for f in fs:
            sres = bracket_residue(f.bracket) if f.bracket is not None else None
            pf.append((f, sres))
        prepared.append((coeff, pf))

    m = ell ** level
    total = Fraction(0)
    for idx, wt in enumerate(mu.levels[level]):
        if not wt:
            continue
        coords = _decode(idx, m, r)
        if needs_units and any(c % ell == 0 for c in coords):
            continue
        cellsum = Fraction(0)
        for coeff, pf in prepared:
            val = 1
            for x, (f, sres) in zip(coords, pf):
                v = pow(x, f.power, modK) if f.power else 1
                if f.needs_units:
                    om = omega_table[x % ell]
                    if f.inverse:
                        v = v * pow(x, -1, modK) % modK
                    if f.teich:
                        v = v * pow(om, f.teich % (ell - 1), modK) % modK
                    if f.bracket is not None:
                        br = x * pow(om, -1, modK) % modK
                        v = v * pow(br, sres, modK) % modK
                val = val * v % modK
            cellsum += coeff * val
        total += cellsum * wt
    return _fraction_to_padic_abs(total, ell, int(prec))


# -- word integrals -------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """Exponent pattern (a0, a1, ..., ar) of X^a0 Y X^a1 Y ... Y X^ar."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if len(self.exponents) < 2:
            raise ValueError("a word needs at least one Y")
        if any(a < 0 for a in self.exponents):
            raise ValueError("exponents must be nonnegative")

    @property
    def rank(self) -> int:
        return len(self.exponents) - 1


def _word_poly_sum(mu: MeasureTower, word: Word, level: int) -> Fraction:
    """Exact level sum of (-x1)^a0 (x1-x2)^a1 ... x_r^a_r against the tower."""
    if word.rank != mu.rank:
        raise ValueError("rank mismatch")
    a = word.exponents
    r = mu.rank
    m = mu.ell ** level
    total = Fraction(0)
    for idx, wt in enumerate(mu.levels[level]):
        if not wt:
            continue
        x = _decode(idx, m, r)
        val = (-x[0]) ** a[0]
        for i in range(1, r):
            val *= (x[i - 1] - x[i]) ** a[i]
        val *= x[r - 1] ** a[r]
        if val:
            total += val * wt
    return total


def raw_word_integral(mu: MeasureTower, word: Word, level: int | None = None):
    """The un-normalized word integral and its guaranteed precision exponent."""
    if level is None:
        level = mu.depth
    s = _word_poly_sum(mu, word, level)
    return s, level - mu.denom_exponent


def word_coefficient(mu: MeasureTower, word: Word, level: int | None = None) -> PadicNum:
    """Coefficient integral: (prod a_i!)^(-1) * raw word integral."""
    if level is None:
        level = mu.depth
    s, prec = raw_word_integral(mu, word, level)
    fact = 1
    for ai in word.exponents:
        fact *= math.factorial(ai)
    lost = _frac_val(Fraction(fact), mu.ell)
    return _fraction_to_padic_abs(s / fact, mu.ell, prec - lost)


def mellin_multi(mu: MeasureTower, s_list, beta_list, level: int | None = None) -> PadicNum:
    """Integral of prod_i [t_i]^(s_i) t_i^(-1) omega(t_i)^(beta_i) over units."""
    if len(s_list) != mu.rank or len(beta_list) != mu.rank:
        raise ValueError("rank mismatch")
    target = mu if mu.units_only else restrict(mu, "units")
    fs = tuple(
        Factor(inverse=True, teich=b, bracket=s) for s, b in zip(s_list, beta_list)
    )
    return integrate(target, fs, level)


# -- moment congruence checker ---------------------------------------------------


@dataclass(frozen=True)
class CongruenceReport:
    lhs: Fraction
    rhs: Fraction
    difference: Fraction
    difference_valuation: object  # int or math.inf
    required_valuation: int
    riemann_floor: int
    passed: bool


def congruence_check(mu: MeasureTower, w: Word, v: Word, M: int) -> CongruenceReport:
    """Check (prod a_i!) li_w = (prod b_i!) li_v mod ell^(M+1-d) on the tower.

    Hypotheses: both words start with Y (a0 = 0), all inner exponents coprime
    to ell and congruent mod (ell-1) ell^M.  Both sides are the raw word
    integrals evaluated at the full stored depth.
    """
    ell = mu.ell
    if w.rank != mu.rank or v.rank != mu.rank:
        raise ValueError("rank mismatch")
    a, b = w.exponents, v.exponents
    if a[0] != 0 or b[0] != 0:
        raise ValueError("hypotheses not met: words must start with Y (a0 = 0)")
    step = (ell - 1) * ell ** M
    for ai, bi in zip(a[1:], b[1:]):
        if ai % ell == 0 or bi % ell == 0:
            raise ValueError("hypotheses not met: exponents must be coprime to ell")
        if (ai - bi) % step:
            raise ValueError(
                f"hypotheses not met: exponents must agree mod (ell-1)*ell^{M}"
            )
    if mu.depth < M + 1:
        raise ValueError("tower depth insufficient for the requested modulus")
    lhs, _ = raw_word_integral(mu, w)
    rhs, _ = raw_word_integral(mu, v)
    diff = lhs - rhs
    dval = math.inf if diff == 0 else _frac_val(diff, ell)
    required = M + 1 - mu.denom_exponent
    return CongruenceReport(
        lhs=lhs,
        rhs=rhs,
        difference=diff,
        difference_valuation=dval,
        required_valuation=required,
        riemann_floor=mu.depth - mu.denom_exponent,
        passed=dval >= required,
    )


# -- serialization ----------------------------------------------------------------


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def tower_to_json(mu: MeasureTower) -> dict:
    return {
        "ell": mu.ell,
        "rank": mu.rank,
        "depth": mu.depth,
        "denom_exponent": mu.denom_exponent,
        "levels": [[_frac_str(v) for v in table] for table in mu.levels],
    }


def tower_from_json(doc: dict) -> MeasureTower:
    levels = [[Fraction(s) for s in table] for table in doc["levels"]]
    return MeasureTower(doc["ell"], doc["rank"], levels, validate=True)
