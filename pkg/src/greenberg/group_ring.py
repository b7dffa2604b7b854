"""Ideal arithmetic in Z/2^d[T]/(p(T)) via Howell normal form.

The coefficient ring Z/2^d has zero divisors, so plain row echelon form
cannot decide membership; the Howell form can, and is the unique canonical
basis of a submodule of (Z/2^d)^rank.  Ideals additionally carry T-closure:
inserting a generator inserts all of its T-shifts.

Two quotient presentations occur:

  * full:    p(T) = (T+1)^(2^n) - 1,        rank 2^n
  * divided: p(T) = ((T+1)^(2^n) - 1) / T,  rank 2^n - 1

Ring elements are int64 numpy vectors of T-basis coefficients in [0, 2^d).
All products stay far below 2^63 (coefficients < 2^14, ranks <= 2^13).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

Vec = np.ndarray


def _binomial_row(N: int, mod: int) -> np.ndarray:
    """Row N of Pascal's triangle mod 2^d (additions only, so mod commutes)."""
    row = np.zeros(N + 1, dtype=np.int64)
    row[0] = 1
    for i in range(N):
        row[1:i + 2] = (row[1:i + 2] + row[:i + 1]) % mod
    return row


class RingSpec:
    """Quotient ring data: modulus 2^d, monic relation, reduction table."""

    __slots__ = ("d", "n", "divided", "rank", "modulus", "relation", "_red")

    def __init__(self, d: int, n: int, divided: bool):
        if divided and n < 1:
            raise ValueError("divided presentation needs level n >= 1")
        self.d = d
        self.n = n
        self.divided = divided
        self.rank = (1 << n) - 1 if divided else 1 << n
        self.modulus = 1 << d
        binom = _binomial_row(1 << n, self.modulus)
        if divided:
            # ((T+1)^(2^n) - 1) / T = sum_j C(2^n, j+1) T^j
            rel = binom[1:].copy()
        else:
            rel = binom.copy()
            rel[0] = 0
        self.relation = rel  # length rank+1, monic
        self._red = None

    @property
    def red(self) -> np.ndarray:
        """red[t] = T^(rank+t) mod relation, for t < rank-1 (built lazily)."""
        if self._red is None:
            rank, mod = self.rank, self.modulus
            red = np.zeros((max(rank - 1, 1), rank), dtype=np.int64)
            red[0] = (-self.relation[:rank]) % mod
            for t in range(1, rank - 1):
                top = red[t - 1, rank - 1]
                red[t, 1:] = red[t - 1, :rank - 1]
                red[t] = (red[t] + top * red[0]) % mod
            self._red = red
        return self._red

    def __repr__(self):
        kind = "divided" if self.divided else "full"
        return f"RingSpec(d={self.d}, n={self.n}, {kind}, rank={self.rank})"

    def __eq__(self, other):
        return (isinstance(other, RingSpec)
                and (self.d, self.n, self.divided) == (other.d, other.n, other.divided))

    def __hash__(self):
        return hash((self.d, self.n, self.divided))


@lru_cache(maxsize=64)
def full_spec(n: int, d: int | None = None) -> RingSpec:
    return RingSpec(n + 1 if d is None else d, n, divided=False)


@lru_cache(maxsize=64)
def divided_spec(n: int, d: int | None = None) -> RingSpec:
    return RingSpec(n + 1 if d is None else d, n, divided=True)


def zero(spec: RingSpec) -> Vec:
    return np.zeros(spec.rank, dtype=np.int64)


def one(spec: RingSpec) -> Vec:
    v = zero(spec)
    v[0] = 1 % spec.modulus
    return v


def scalar(c: int, spec: RingSpec) -> Vec:
    v = zero(spec)
    v[0] = c % spec.modulus
    return v


def from_coeffs(seq, spec: RingSpec) -> Vec:
    """Ring element from ascending T-coefficients of any degree."""
    v = np.asarray(list(seq), dtype=np.int64) % spec.modulus
    if len(v) <= spec.rank:
        out = zero(spec)
        out[:len(v)] = v
        return out
    return _reduce_long(v, spec)


def _reduce_long(v: Vec, spec: RingSpec) -> Vec:
    """Synthetic division of an arbitrary-degree vector by the monic relation."""
    v = v.copy()
    rank, mod = spec.rank, spec.modulus
    rel = spec.relation[:rank]
    for j in range(len(v) - 1, rank - 1, -1):
        c = v[j]
        if c:
            v[j] = 0
            v[j - rank:j] = (v[j - rank:j] - c * rel) % mod
    return v[:rank]


def poly_mul_mod(a: Vec, b: Vec, spec: RingSpec) -> Vec:
    """Product in the quotient ring: schoolbook convolution, then the
    precomputed tail-reduction (relation is monic)."""
    c = np.convolve(a, b) % spec.modulus
    if len(c) <= spec.rank:
        out = zero(spec)
        out[:len(c)] = c
        return out
    head = c[:spec.rank].copy()
    tail = c[spec.rank:]
    head = (head + tail @ spec.red[:len(tail)]) % spec.modulus
    return head


def t_shift(a: Vec, spec: RingSpec) -> Vec:
    """Multiplication by T."""
    out = np.empty(spec.rank, dtype=np.int64)
    out[0] = 0
    out[1:] = a[:-1]
    top = a[spec.rank - 1]
    if top:
        out = (out + top * spec.red[0]) % spec.modulus
    return out


def norm_element(m: int, spec: RingSpec) -> Vec:
    """sum_{i < 2^m} (T+1)^i, reduced; built as prod_{j<m} (1 + (T+1)^(2^j))."""
    if m < 0:
        raise ValueError("norm element level must be >= 0")
    acc = one(spec)
    sq = from_coeffs([1, 1], spec)  # T + 1
    for _ in range(m):
        term = sq.copy()
        term[0] = (term[0] + 1) % spec.modulus
        acc = poly_mul_mod(acc, term, spec)
        sq = poly_mul_mod(sq, sq, spec)
    return acc


def divide_by_aug(p: Vec, spec: RingSpec, out_spec: RingSpec | None = None) -> Vec:
    """Canonical quotient q with T*q = p, for p in the augmentation ideal.

    In the T-basis the augmentation condition is simply a zero constant term
    (coefficients are the least nonnegative lift), so division is an exact
    left shift.  Quotients are only defined up to the annihilator of T; this
    canonical representative is the one fixed throughout.
    """
    if p[0] % spec.modulus != 0:
        raise ValueError("element is not in the augmentation ideal")
    target = spec if out_spec is None else out_spec
    out = np.zeros(target.rank, dtype=np.int64)
    k = min(spec.rank - 1, target.rank)
    out[:k] = p[1:k + 1] % target.modulus
    return out


def aug_value(p: Vec, spec: RingSpec) -> int:
    """Evaluation at the group identity (T = 0)."""
    return int(p[0]) % spec.modulus


def to_T_basis(xcoeffs, mod: int) -> np.ndarray:
    """Substitute X = T + 1 (Horner); pure polynomial identity, no reduction."""
    a = np.asarray(list(xcoeffs), dtype=np.int64)
    res = np.zeros(len(a), dtype=np.int64)
    for i in range(len(a) - 1, -1, -1):
        res[1:] = (res[1:] + res[:-1]) % mod
        res[0] = (res[0] + a[i]) % mod
    return res


def to_X_basis(tcoeffs, mod: int) -> np.ndarray:
    """Substitute T = X - 1 (Horner); inverse of :func:`to_T_basis`."""
    c = np.asarray(list(tcoeffs), dtype=np.int64)
    res = np.zeros(len(c), dtype=np.int64)
    for j in range(len(c) - 1, -1, -1):
        res[1:], res[0] = (res[:-1] - res[1:]) % mod, (-res[0]) % mod
        res[0] = (res[0] + c[j]) % mod
    return res


# ---------------------------------------------------------------------------
# Howell normal form

def _min_val_and_index(vals: np.ndarray) -> tuple[int, int]:
    low = np.bitwise_and(vals, -vals)
    combined = int(np.bitwise_or.reduce(low))
    e = (combined & -combined).bit_length() - 1
    idx = int(np.argmax(low == (1 << e)))
    return e, idx


def howell_form(rows, d: int, rank: int) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Canonical Howell form of the span of ``rows`` in (Z/2^d)^rank.

    Columns are T-degrees processed from high to low, so a row's pivot is
    its highest-degree coefficient (the orientation in which T-shifting a
    pivot row raises its degree, making pivot valuations non-increasing in
    the degree for T-closed spans).  Pivots are normalized to exact powers
    of two; for every pivot 2^e the annihilator row 2^(d-e) * row is fed
    back in (this is what upgrades echelon form to Howell form over Z/2^d);
    entries of the other rows at each pivot degree are reduced mod the
    pivot.  The result is the unique canonical basis, independent of
    generator order; rows are returned sorted by ascending pivot degree.
    """
    mod = 1 << d
    G = np.asarray(rows, dtype=np.int64).reshape(-1, rank) % mod
    G = G[G.any(axis=1)]
    m = G.shape[0]
    # one annihilator row can appear per pivot, so m + rank slots suffice
    A = np.zeros((m + rank, rank), dtype=np.int64)
    A[:m] = G
    count = m
    active = list(range(m))
    res: list[np.ndarray] = []
    pivots: list[tuple[int, int]] = []
    for col in range(rank - 1, -1, -1):
        if not active:
            break
        act = np.asarray(active)
        colvals = A[act, col]
        nz = colvals != 0
        if not nz.any():
            continue
        sel = act[nz]
        e, idx = _min_val_and_index(A[sel, col])
        p = int(sel[idx])
        unit_inv = pow(int(A[p, col]) >> e, -1, mod)
        A[p] = A[p] * unit_inv % mod
        others = sel[sel != p]
        if len(others):
            t = A[others, col] >> e
            A[others] = (A[others] - t[:, None] * A[p][None, :]) % mod
        res.append(A[p].copy())
        pivots.append((col, e))
        # retire the pivot row; keep untouched rows and nonzero remainders
        touched = set(int(i) for i in sel)
        active = [i for i in active if i not in touched]
        active.extend(int(i) for i in others if A[i].any())
        if e > 0:
            ann = A[p] * (1 << (d - e)) % mod
            if ann.any():
                A[count] = ann
                active.append(count)
                count += 1
    if not res:
        return np.zeros((0, rank), dtype=np.int64), []
    R = np.array(res)
    # reduce every row's entries at the lower pivot degrees (a row's support
    # sits at degrees <= its pivot, so later passes never disturb earlier ones)
    for j in range(1, len(pivots)):
        cj, ej = pivots[j]
        t = R[:j, cj] >> ej
        nzr = np.nonzero(t)[0]
        if len(nzr):
            R[nzr] = (R[nzr] - t[nzr, None] * R[j][None, :]) % mod
    order = np.argsort([c for c, _ in pivots])
    return R[order], [pivots[i] for i in order]


class HowellIdeal:
    """An ideal of the quotient ring, held in canonical Howell form.

    Immutable by convention: ``insert`` returns a new ideal (or ``self``
    when the element was already a member, the cheap and common path).
    """

    __slots__ = ("spec", "rows", "pivots")

    def __init__(self, spec: RingSpec, rows: np.ndarray, pivots: list[tuple[int, int]]):
        self.spec = spec
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def empty(cls, spec: RingSpec) -> "HowellIdeal":
        return cls(spec, np.zeros((0, spec.rank), dtype=np.int64), [])

    @classmethod
    def from_generators(cls, spec: RingSpec, gens) -> "HowellIdeal":
        ideal = cls.empty(spec)
        for g in gens:
            ideal = ideal.insert(from_coeffs(g, spec))
        return ideal

    def reduce_vec(self, v: Vec) -> Vec:
        """Canonical remainder of v against the Howell rows (top degree down)."""
        mod = self.spec.modulus
        v = v.copy() % mod
        for (col, e), row in zip(reversed(self.pivots), reversed(self.rows)):
            t = int(v[col]) >> e
            if t:
                v = (v - t * row) % mod
        return v

    def contains(self, v: Vec) -> bool:
        return not self.reduce_vec(v).any()

    def contains_ideal(self, other: "HowellIdeal") -> bool:
        return all(self.contains(row) for row in other.rows)

    def insert(self, g: Vec) -> "HowellIdeal":
        """Ideal generated by self and g (all T-shifts of g are adjoined)."""
        rem = self.reduce_vec(g)
        if not rem.any():
            return self
        shifts = [rem]
        for _ in range(self.spec.rank - 1):
            shifts.append(t_shift(shifts[-1], self.spec))
        stack = np.vstack([self.rows] + [np.asarray(shifts)])
        rows, pivots = howell_form(stack, self.spec.d, self.spec.rank)
        return HowellIdeal(self.spec, rows, pivots)

    def log2_index(self) -> int:
        """log2 of the index of the ideal in the quotient ring."""
        pivot_cols = {col for col, _ in self.pivots}
        free = self.spec.rank - len(pivot_cols)
        return free * self.spec.d + sum(e for _, e in self.pivots)

    def __eq__(self, other):
        return (isinstance(other, HowellIdeal) and self.spec == other.spec
                and self.rows.shape == other.rows.shape
                and bool(np.array_equal(self.rows, other.rows)))

    def __hash__(self):
        return hash((self.spec, self.rows.tobytes()))

    def __repr__(self):
        return f"HowellIdeal({self.spec}, log2_index={self.log2_index()})"


def mutual_membership(a: HowellIdeal, b: HowellIdeal) -> bool:
    """Ideal equality by double containment (generator sets are not unique)."""
    return a.contains_ideal(b) and b.contains_ideal(a)


@dataclass(frozen=True)
class ReportedIdeal:
    """The lifted ideal of Z_2[T] presented by a minimal generating set.

    ``generators`` are ascending T-coefficient tuples; together with 2^d and
    the relation polynomial they regenerate the Howell ideal they came from
    (asserted at construction).  ``divided`` records which presentation the
    quotient used.
    """

    generators: tuple[tuple[int, ...], ...]
    log2_index: int
    d: int
    n: int
    divided: bool

    def __str__(self):
        return "(" + ", ".join(poly_str(g) for g in self.generators) + ")"


def canonical_generators(ideal: HowellIdeal) -> ReportedIdeal:
    """Minimal strong generating set of the lifted Z_2[T]-ideal.

    Walking T-degrees upward, keep exactly the rows where the pivot
    2-valuation strictly drops; degree 0 contributes 2^d when no pivot sits
    there, and the (reduced) relation polynomial closes the list at degree
    rank when every in-ring pivot valuation is positive.  T-shifts and
    2-power multiples of the kept rows regenerate all skipped strata, so the
    list generates; strictness makes it minimal.
    """
    spec = ideal.spec
    pivot_map = {col: (e, row) for (col, e), row in zip(ideal.pivots, ideal.rows)}
    gens: list[tuple[int, ...]] = []
    v_prev = spec.d + 1
    for col in range(spec.rank):
        if col in pivot_map:
            e, row = pivot_map[col]
            if e < v_prev:
                gens.append(_trim(row))
                v_prev = e
        elif col == 0:
            gens.append((spec.modulus,))
            v_prev = spec.d
    if v_prev > 0:
        rem = ideal.reduce_vec(spec.relation[:spec.rank].copy())
        gens.append(tuple(int(x) for x in rem) + (1,))
    reported = ReportedIdeal(generators=tuple(gens), log2_index=ideal.log2_index(),
                             d=spec.d, n=spec.n, divided=spec.divided)
    regen = HowellIdeal.from_generators(spec, reported.generators)
    assert regen == ideal, "canonical generators failed to regenerate the ideal"
    return reported


def _trim(row: np.ndarray) -> tuple[int, ...]:
    nz = np.nonzero(row)[0]
    top = int(nz[-1]) if len(nz) else 0
    return tuple(int(x) for x in row[:top + 1])


def poly_str(coeffs) -> str:
    """Human form, descending degree: e.g. (0, 2, 1) -> 'T^2 + 2T'."""
    terms = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[j])
        if c == 0:
            continue
        if j == 0:
            terms.append(str(c))
        else:
            var = "T" if j == 1 else f"T^{j}"
            terms.append(var if c == 1 else f"{c}{var}")
    return " + ".join(terms) if terms else "0"


def parse_poly(text: str) -> tuple[int, ...]:
    """Inverse of :func:`poly_str` for test fixtures and CSV round-trips."""
    text = text.strip()
    if text in ("0", ""):
        return (0,)
    coeffs: dict[int, int] = {}
    for term in text.replace("-", "+ -").split("+"):
        term = term.strip().replace(" ", "")
        if not term:
            continue
        if "T" in term:
            head, _, exp = term.partition("T")
            c = int(head) if head not in ("", "-") else (-1 if head == "-" else 1)
            j = int(exp.lstrip("^")) if exp else 1
        else:
            c, j = int(term), 0
        coeffs[j] = coeffs.get(j, 0) + c
    top = max(coeffs)
    return tuple(coeffs.get(j, 0) for j in range(top + 1))
