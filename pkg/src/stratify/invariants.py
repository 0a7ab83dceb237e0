"""Finite matrix groups over the rationals or the Eisenstein integers.

Provides multiplicative closure from generators, Molien series of invariant
rings, invariant cohomology of abelian-variety quotients by exact character
averaging, and cycle-index symmetrization of even graded Poincare series.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import _backend
from .series import BettiTable, TruncatedSeries, duality_check

DEFAULT_CAP = 10**6


class QOmega:
    """Element a + b*omega of the cyclotomic field, a and b rational."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        return QOmega(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return QOmega(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return QOmega(-self.a, -self.b)

    def __mul__(self, o):
        bd = self.b * o.b
        return QOmega(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    def conj(self):
        return QOmega(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "QOmega":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(omega)")
        c = self.conj()
        return QOmega(c.a / n, c.b / n)

    def __truediv__(self, o):
        return self * o.inverse()

    def __eq__(self, o):
        return isinstance(o, QOmega) and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_rational(self):
        return self.b == 0

    def __repr__(self):
        return f"({self.a}{self.b:+}w)"


QOMEGA_ZERO = QOmega(0, 0)
QOMEGA_ONE = QOmega(1, 0)


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """Explicit finite matrix group; elements in canonical sorted order.

    ``ring`` is "Q" (entries are Fractions, matrices stored as nested tuples)
    or "E" (entries in Z[omega], matrices stored as flat int tuples in the
    kernel layout).  ``form`` optionally carries a hermitian Gram matrix (flat
    Eisenstein layout) the group is unitary for.
    """

    ring: str
    dim: int
    elements: tuple
    gens: tuple = ()
    form: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m):
        return m in set(self.elements)


def _is_eis_entry(x) -> bool:
    return isinstance(x, (tuple, list)) and len(x) == 2 and all(
        isinstance(v, int) for v in x
    )


def flatten_eis_matrix(mat) -> tuple:
    k = len(mat)
    flat = []
    for row in mat:
        if len(row) != k:
            raise ValueError("matrix must be square")
        for a, b in row:
            flat.extend((int(a), int(b)))
    return tuple(flat)


def unflatten_eis_matrix(flat, k) -> tuple:
    return tuple(
        tuple((flat[2 * (i * k + j)], flat[2 * (i * k + j) + 1]) for j in range(k))
        for i in range(k)
    )


def _q_matrix(mat) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in mat)


def _q_mul(x, y):
    k = len(x)
    return tuple(
        tuple(sum(x[i][l] * y[l][j] for l in range(k)) for j in range(k))
        for i in range(k)
    )


def _q_det(mat) -> Fraction:
    m = [list(r) for r in mat]
    k = len(m)
    det = Fraction(1)
    for c in range(k):
        piv = next((i for i in range(c, k) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, k):
            if m[i][c] != 0:
                f = m[i][c] * inv
                for j in range(c, k):
                    m[i][j] -= f * m[c][j]
    return det


def _eis_to_qomega(flat, k):
    return tuple(
        tuple(
            QOmega(flat[2 * (i * k + j)], flat[2 * (i * k + j) + 1])
            for j in range(k)
        )
        for i in range(k)
    )


def _qomega_det(mat) -> QOmega:
    m = [list(r) for r in mat]
    k = len(m)
    det = QOMEGA_ONE
    for c in range(k):
        piv = next((i for i in range(c, k) if not m[i][c].is_zero()), None)
        if piv is None:
            return QOMEGA_ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, k):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                for j in range(c, k):
                    m[i][j] = m[i][j] - f * m[c][j]
    return det


def _cache_dir() -> str | None:
    return os.environ.get("STRATIFY_CACHE") or None


def _closure_cache_key(kind, k, gens, cap) -> str:
    payload = json.dumps([kind, k, [list(g) for g in gens], cap], sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def close_group(generators, cap: int = DEFAULT_CAP, cache_dir: str | None = None):
    """Breadth-first multiplicative closure with exact equality testing.

    Accepts rational matrices (entries int/Fraction) or Eisenstein matrices
    (entries (a, b) integer pairs).  Elements are returned canonically
    ordered.  Raises on a non-invertible generator or when the closure
    exceeds ``cap``.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    first = generators[0]
    k = len(first)
    eis = _is_eis_entry(first[0][0]) if not isinstance(first[0][0], (int, Fraction)) else False

    if eis:
        flats = [flatten_eis_matrix(g) for g in generators]
        for flat in flats:
            if _qomega_det(_eis_to_qomega(flat, k)).is_zero():
                raise ValueError("generator is not invertible")
        cache_dir = cache_dir or _cache_dir()
        cached = None
        key = _closure_cache_key("E", k, flats, cap)
        if cache_dir:
            path = os.path.join(cache_dir, f"group-{key}.json")
            if os.path.exists(path):
                with open(path) as fh:
                    cached = [tuple(e) for e in json.load(fh)]
        if cached is None:
            cached = [tuple(e) for e in _backend.close_eis(flats, k, cap)]
            if cache_dir:
                os.makedirs(cache_dir, exist_ok=True)
                path = os.path.join(cache_dir, f"group-{key}.json")
                tmp = path + ".tmp"
                with open(tmp, "w") as fh:
                    json.dump([list(e) for e in cached], fh)
                os.replace(tmp, path)
        return FiniteMatrixGroup("E", k, tuple(cached), tuple(flats))

    gens = [_q_matrix(g) for g in generators]
    for g in gens:
        if _q_det(g) == 0:
            raise ValueError("generator is not invertible")
    ident = tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(k))
        for i in range(k)
    )
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _q_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise _backend.ResourceCapError(
                            f"group closure exceeded cap {cap}"
                        )
                    nxt.append(y)
        frontier = nxt
    return FiniteMatrixGroup("Q", k, tuple(sorted(seen)), tuple(gens))


def _qomega_elements(group: FiniteMatrixGroup):
    if group.ring == "E":
        for flat in group.elements:
            yield _eis_to_qomega(flat, group.dim)
    else:
        for mat in group.elements:
            yield tuple(tuple(QOmega(x) for x in row) for row in mat)


def _elementary_symmetric(mat, k):
    """e_0..e_k of the eigenvalues, via Newton's identities on trace powers."""
    powers = []
    cur = mat
    for _ in range(k):
        powers.append(cur)
        cur = tuple(
            tuple(
                sum((cur[i][l] * mat[l][j] for l in range(k)), QOMEGA_ZERO)
                for j in range(k)
            )
            for i in range(k)
        )
    ps = [sum((powers[p - 1][i][i] for i in range(k)), QOMEGA_ZERO) for p in range(1, k + 1)]
    es = [QOMEGA_ONE]
    for p in range(1, k + 1):
        s = QOMEGA_ZERO
        sign = 1
        for j in range(1, p + 1):
            term = es[p - j] * ps[j - 1]
            s = s + (term if sign > 0 else -term)
            sign = -sign
        es.append(QOmega(s.a / p, s.b / p))
    return es


def molien(group: FiniteMatrixGroup, generator_degree: int, order: int) -> TruncatedSeries:
    """Invariant Poincare series: average of det(1 - t^g M)^(-1) over the group.

    ``generator_degree`` is the (even) cohomological degree the algebra
    generators are placed in.  The result is checked to be integral with
    constant term 1.
    """
    if generator_degree < 1 or generator_degree % 2 != 0:
        raise ValueError("generator degree must be a positive even integer")
    k = group.dim
    g = generator_degree
    total = [QOMEGA_ZERO] * (order + 1)
    for mat in _qomega_elements(group):
        es = _elementary_symmetric(mat, k)
        # det(1 - T M) = sum_p (-1)^p e_p T^p with T = t^g
        poly = [QOMEGA_ZERO] * (order + 1)
        poly[0] = QOMEGA_ONE
        for p in range(1, k + 1):
            if p * g > order:
                break
            c = es[p]
            poly[p * g] = QOmega(-c.a, -c.b) if p % 2 else c
        inv = [QOMEGA_ONE] + [QOMEGA_ZERO] * order
        for m in range(1, order + 1):
            s = QOMEGA_ZERO
            for t in range(1, m + 1):
                if not poly[t].is_zero():
                    s = s + poly[t] * inv[m - t]
            inv[m] = -s
        for i in range(order + 1):
            total[i] = total[i] + inv[i]
    n = group.order
    coeffs = []
    for c in total:
        if not QOmega(c.a / n, c.b / n).is_rational():
            raise AssertionError("Molien average has an irrational coefficient")
        val = c.a / n
        if val.denominator != 1 or val < 0:
            raise AssertionError(f"Molien coefficient {val} is not a nonnegative integer")
        coeffs.append(val)
    if coeffs[0] != 1:
        raise AssertionError("Molien series must have constant term 1")
    return TruncatedSeries.from_coeffs(coeffs, order)


_CHAR_SUM_CACHE: dict = {}


def abelian_quotient_betti(
    group: FiniteMatrixGroup, k: int, form=None
) -> BettiTable:
    """Betti table of the quotient of a k-dimensional abelian variety.

    The variety is the k-fold product of the j-invariant-zero elliptic curve;
    the group acts through its Eisenstein matrix representation.  Invariant
    (p, q)-cohomology dimensions are computed exactly by averaging
    e_p(M) * conj(e_q(M)) over the group; every element is checked to be
    unitary for the declared hermitian form.  Character sums are memoized
    in-process, keyed by the generators that determine the closure.
    """
    if group.ring != "E":
        raise ValueError("abelian quotients need a group over the Eisenstein integers")
    if group.dim != k:
        raise ValueError("rank mismatch")
    gram = form if form is not None else group.form
    if gram is None:
        raise ValueError("no hermitian form declared for unitarity checking")
    cache_key = (group.gens, group.dim, group.order, tuple(gram)) if group.gens else None
    acc = _CHAR_SUM_CACHE.get(cache_key) if cache_key else None
    if acc is None:
        acc = _backend.eis_char_sums(list(group.elements), k, tuple(gram))
        if cache_key:
            _CHAR_SUM_CACHE[cache_key] = acc
    n = group.order
    h = [[0] * (k + 1) for _ in range(k + 1)]
    for p in range(k + 1):
        for q in range(k + 1):
            a, b = acc[p][q]
            if b != 0 or a % n != 0 or a < 0:
                raise AssertionError(
                    f"character average at (p,q)=({p},{q}) is not a nonnegative integer"
                )
            h[p][q] = a // n
    betti = [0] * (2 * k + 1)
    for p in range(k + 1):
        for q in range(k + 1):
            betti[p + q] += h[p][q]
    table = BettiTable.from_list(betti, k)
    rep = duality_check(table)
    if not rep.ok:
        raise AssertionError(f"abelian quotient table violates duality: {rep.message}")
    return table


def _partitions(n: int):
    """Partitions of n as multiplicity dicts {part: count}."""

    def rec(n, maxpart):
        if n == 0:
            yield {}
            return
        for p in range(min(n, maxpart), 0, -1):
            for rest in rec(n - p, p):
                d = dict(rest)
                d[p] = d.get(p, 0) + 1
                yield d

    yield from rec(n, n)


def wreath_symmetrize(p, n: int):
    """Symmetric-power invariants via the cycle index of the symmetric group.

    Input must have vanishing odd part (so no sign issues arise); accepts a
    TruncatedSeries or a BettiTable and returns the same kind.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(p, BettiTable):
        series = p.poincare_series(2 * p.complex_dim * n)
        out = wreath_symmetrize(series, n)
        return BettiTable.from_list(out.integer_coeffs(), p.complex_dim * n)
    if any(p.coeffs[i] != 0 for i in range(1, p.order + 1, 2)):
        raise ValueError("odd coefficients present; signed symmetrization not supported")
    order = p.order
    total = TruncatedSeries.zero(order)
    for part in _partitions(n):
        weight = factorial(n)
        for c, m in part.items():
            weight //= (c**m) * factorial(m)
        term = TruncatedSeries.one(order)
        for c, m in part.items():
            pc = p.substitute_power(c)
            for _ in range(m):
                term = term * pc
        total = total + term.scale(Fraction(weight, factorial(n)))
    return total


def backend_name() -> str:
    return _backend.BACKEND
