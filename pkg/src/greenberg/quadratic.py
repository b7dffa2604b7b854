"""Arithmetic invariants of F = Q(sqrt(f)): characters, class number, gate.

Everything here is exact integer arithmetic.  The class number comes from
counting cycles of reduced indefinite binary quadratic forms under the
reduction operator (the narrow class number) combined with the fundamental
unit's norm, read off from the continued-fraction period parity.  The
analytic class number formula is deliberately not used here; it serves as
an independent oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from greenberg.finite_field import factorize

GATE_RUN_SPLIT = "run_split"
GATE_RUN_NONSPLIT = "run_nonsplit"
GATE_TRIVIAL = "trivially_stable"
GATE_EXCLUDED = "excluded"


def _jacobi(b: int, a: int) -> int:
    """Jacobi symbol (b|a) for odd positive a."""
    b %= a
    t = 1
    while b:
        while b % 2 == 0:
            b //= 2
            if a % 8 in (3, 5):
                t = -t
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            t = -t
        b %= a
    return t if a == 1 else 0


def kronecker(D: int, a: int) -> int:
    """Kronecker symbol (D|a) for a >= 0 (fully multiplicative in a)."""
    if a == 0:
        return 1 if D in (1, -1) else 0
    v = 0
    while a % 2 == 0:
        a //= 2
        v += 1
    if v and D % 2 == 0:
        return 0
    t = 1
    if v % 2 == 1 and D % 8 in (3, 5):
        t = -1
    return t * _jacobi(D, a)


def is_squarefree(m: int) -> bool:
    return all(e == 1 for e in factorize(m).values())


def _require_valid_radicand(f: int) -> None:
    if f < 3 or f % 2 == 0 or not is_squarefree(f):
        raise ValueError(f"radicand must be an odd squarefree integer >= 3, got {f}")


@dataclass(frozen=True)
class KernelSet:
    """Residues a mod f with chi(a) = +1, for chi the quadratic character
    attached to sqrt(f) (f = 1 mod 4) or sqrt(-f) (f = 3 mod 4)."""

    f: int
    sign_case: str            # "chi_f" or "chi_minus_f"
    residues: tuple[int, ...]

    def __contains__(self, a: int) -> bool:
        return a % self.f in self._set

    @property
    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.residues)
            object.__setattr__(self, "_cached_set", s)
        return s


def character_kernel(f: int) -> KernelSet:
    """Kernel of the quadratic character cutting out the relevant subfield
    of Q(zeta_f); it indexes the conjugates in every eta-product."""
    _require_valid_radicand(f)
    if f % 4 == 1:
        disc, case = f, "chi_f"
    else:
        disc, case = -f, "chi_minus_f"
    residues = tuple(a for a in range(1, f)
                     if gcd(a, f) == 1 and kronecker(disc, a) == 1)
    phi = 1
    for p, _ in factorize(f).items():
        phi *= p - 1
    assert len(residues) == phi // 2, "kernel must have index 2 in (Z/f)^x"
    return KernelSet(f=f, sign_case=case, residues=residues)


def _cf_period(D: int) -> int:
    """Period length of the continued fraction of (s + sqrt(D))/2, s = D mod 2.

    This is the principal quadratic irrational of discriminant D; the parity
    of its period gives the norm of the fundamental unit.
    """
    s = isqrt(D)
    assert s * s != D, "discriminant must not be a square"
    P, Q = D % 2, 2
    seen: dict[tuple[int, int], int] = {}
    idx = 0
    while (P, Q) not in seen:
        seen[(P, Q)] = idx
        a = (P + s) // Q if Q > 0 else (-(P + s) - 1) // (-Q)
        P = a * Q - P
        Q = (D - P * P) // Q
        idx += 1
    return idx - seen[(P, Q)]


def _divisors(m: int) -> list[int]:
    out = [1]
    for p, e in factorize(m).items():
        out = [d * p**j for d in out for j in range(e + 1)]
    return sorted(out)


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """All reduced indefinite forms (a, b, c) of discriminant D > 0."""
    s = isqrt(D)
    forms = []
    for b in range(1, s + 1):
        if (D - b * b) % 4:
            continue
        M = (D - b * b) // 4
        for aa in _divisors(M):
            # sqrt(D) - b < 2|a| < sqrt(D) + b, tested exactly by squaring
            if (2 * aa + b) ** 2 > D and (2 * aa - b < 0 or (2 * aa - b) ** 2 < D):
                forms.append((aa, b, -(M // aa)))
                forms.append((-aa, b, M // aa))
    return forms


def _rho(form: tuple[int, int, int], D: int, s: int) -> tuple[int, int, int]:
    """Reduction operator; permutes the reduced forms, cycles = narrow classes."""
    _, b, c = form
    ac = abs(c)
    t = (-b) % (2 * ac)
    r = s - ((s - t) % (2 * ac))
    return (c, r, (r * r - D) // (4 * c))


def narrow_class_number(D: int) -> int:
    """Number of cycles of reduced forms of discriminant D under reduction."""
    all_forms = set(reduced_forms(D))
    s = isqrt(D)
    remaining = set(all_forms)
    cycles = 0
    while remaining:
        start = min(remaining)
        g = start
        while True:
            remaining.discard(g)
            g = _rho(g, D, s)
            assert g in all_forms, "reduction left the reduced-form set"
            if g == start:
                break
        cycles += 1
    return cycles


@dataclass(frozen=True)
class QuadFieldInfo:
    """Class-number data for Q(sqrt(f)) plus the derived gate classification.

    m0 is the 2-valuation of the order of the base-level unit-index module:
    v2(h) for f = 1 mod 4 and v2(h) - 1 for f = 3 mod 4 (where h must be
    even for the algorithm to run at all).
    """

    f: int
    D: int
    h: int
    h_narrow: int
    unit_norm: int
    m0: int
    split8: bool
    gate: str


def _gate(f: int, h: int) -> str:
    if f < 3 or f % 2 == 0 or not is_squarefree(f):
        return GATE_EXCLUDED
    if f % 8 == 1:
        return GATE_RUN_SPLIT
    return GATE_RUN_NONSPLIT if h % 2 == 0 else GATE_TRIVIAL


def classify_gate(info: QuadFieldInfo) -> str:
    """Which of the two algorithm variants runs for f, if any.

    2 splits in Q(sqrt(f)) exactly when f = 1 mod 8; otherwise an odd class
    number already forces the whole tower trivial.
    """
    return _gate(info.f, info.h)


def class_number(f: int) -> QuadFieldInfo:
    """Class number of Q(sqrt(f)) by form-cycle counting, with the gate.

    h_narrow counts reduction cycles; the unit norm (continued-fraction
    period parity) converts to the wide class number.
    """
    _require_valid_radicand(f)
    D = f if f % 4 == 1 else 4 * f
    h_narrow = narrow_class_number(D)
    unit_norm = -1 if _cf_period(D) % 2 else 1
    if unit_norm == -1:
        h = h_narrow
    else:
        assert h_narrow % 2 == 0, "norm +1 forces an even narrow class number"
        h = h_narrow // 2
    v2 = (h & -h).bit_length() - 1
    if f % 4 == 1:
        m0 = v2
    else:
        m0 = v2 - 1 if h % 2 == 0 else 0
    return QuadFieldInfo(f=f, D=D, h=h, h_narrow=h_narrow, unit_norm=unit_norm,
                         m0=m0, split8=(f % 8 == 1), gate=_gate(f, h))
