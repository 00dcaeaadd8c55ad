"""Exact phase-tracking Pauli and projector algebra for odd prime p.

Monomials are kept in the sitewise normal order X^a Z^b with a phase
exponent c, representing omega^c * prod_site X^a Z^b.  Moving Z past X
on one site costs omega^-1, so the product rule is

    (a, b, c) * (a', b', c') = (a + a', b + b', c + c' - b . a'),

which reproduces the commutation law S_a S_b = S_b S_a omega^<a, b>.

Sums of monomials carry coefficients in the cyclotomic field Q(omega),
stored as rational vectors on the basis 1, omega, ..., omega^(p-2) and
reduced with 1 + omega + ... + omega^(p-1) = 0.  Everything is exact;
term counts grow quickly, so products are guarded to generator-sized
problems (p = 3 on a 2x2x2 torus) unless explicitly unlocked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .codes import CodeParams, PauliConfig, Site, build_generator
from .fp import check_prime


class NotOrderPError(ValueError):
    """Raised when a projector is requested for an operator with s^p != 1."""


def _guard(p: int, n_sites: int, allow_large: bool) -> None:
    if allow_large:
        return
    if p > 3 or n_sites > 8:
        raise ValueError(
            f"operator-sum algebra guarded to p <= 3 on <= 8 sites "
            f"(got p={p}, sites={n_sites}); pass allow_large=True to override")


def _check_odd_prime(p: int) -> int:
    p = check_prime(p)
    if p == 2:
        raise ValueError("phase algebra requires an odd prime modulus")
    return p


# ---------------------------------------------------------------------------
# Cyclotomic coefficients: tuples of p-1 Fractions on basis omega^0..omega^(p-2)


def cyc_zero(p: int) -> tuple:
    return tuple(Fraction(0) for _ in range(p - 1))


def cyc_is_zero(v: tuple) -> bool:
    return all(x == 0 for x in v)


def cyc_from_power(k: int, p: int) -> tuple:
    """omega^k as a basis vector, with omega^(p-1) = -(1 + ... + omega^(p-2))."""
    k %= p
    if k < p - 1:
        return tuple(Fraction(1) if i == k else Fraction(0) for i in range(p - 1))
    return tuple(Fraction(-1) for _ in range(p - 1))


def cyc_add(u: tuple, v: tuple) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def cyc_scale(u: tuple, c) -> tuple:
    c = Fraction(c)
    return tuple(a * c for a in u)


def cyc_mul(u: tuple, v: tuple, p: int) -> tuple:
    """Product in Q(omega): convolve exponents mod p, then reduce."""
    acc = [Fraction(0)] * p
    for i, a in enumerate(u):
        if a == 0:
            continue
        for j, b in enumerate(v):
            if b == 0:
                continue
            acc[(i + j) % p] += a * b
    top = acc[p - 1]
    return tuple(acc[k] - top for k in range(p - 1))


def cyc_mul_power(u: tuple, k: int, p: int) -> tuple:
    return cyc_mul(u, cyc_from_power(k, p), p)


# ---------------------------------------------------------------------------
# Phased Pauli monomials


@dataclass(frozen=True)
class PhasedPauli:
    """omega^phase * prod_site X^x Z^z on a fixed, sorted site tuple."""

    p: int
    sites: tuple[Site, ...]
    x: tuple[int, ...]
    z: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        p = _check_odd_prime(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "sites", tuple(self.sites))
        object.__setattr__(self, "x", tuple(v % p for v in self.x))
        object.__setattr__(self, "z", tuple(v % p for v in self.z))
        object.__setattr__(self, "phase", self.phase % p)
        if not (len(self.sites) == len(self.x) == len(self.z)):
            raise ValueError("sites, x, z must have equal length")

    def monomial(self) -> tuple:
        return (self.x, self.z)

    def is_identity(self) -> bool:
        return self.phase == 0 and not any(self.x) and not any(self.z)


def identity_pauli(p: int, sites) -> PhasedPauli:
    sites = tuple(sites)
    return PhasedPauli(p, sites, (0,) * len(sites), (0,) * len(sites))


def pauli_mul(u: PhasedPauli, v: PhasedPauli) -> PhasedPauli:
    """Normal-ordered product; the phase collects -z_u . x_v."""
    if u.p != v.p or u.sites != v.sites:
        raise ValueError("operands must share modulus and site set")
    p = u.p
    cross = sum(zu * xv for zu, xv in zip(u.z, v.x))
    return PhasedPauli(
        p, u.sites,
        tuple((a + b) % p for a, b in zip(u.x, v.x)),
        tuple((a + b) % p for a, b in zip(u.z, v.z)),
        (u.phase + v.phase - cross) % p,
    )


def pauli_power(u: PhasedPauli, m: int) -> PhasedPauli:
    if m < 0:
        raise ValueError("power must be nonnegative")
    out = identity_pauli(u.p, u.sites)
    for _ in range(m):
        out = pauli_mul(out, u)
    return out


def pauli_inverse(u: PhasedPauli) -> PhasedPauli:
    return pauli_power(u, u.p - 1) if not u.is_identity() else u


def commutator_exponent(u: PhasedPauli, v: PhasedPauli) -> int:
    """e with u v = v u omega^e; the summed sitewise symplectic product."""
    if u.p != v.p or u.sites != v.sites:
        raise ValueError("operands must share modulus and site set")
    e = sum(xu * zv - zu * xv for xu, zu, xv, zv in zip(u.x, u.z, v.x, v.z))
    return e % u.p


def torus_sites(dims) -> tuple[Site, ...]:
    return tuple(sorted(product(range(dims[0]), range(dims[1]), range(dims[2]))))


def pauli_from_config(config: PauliConfig, sites=None) -> PhasedPauli:
    """Lift a phase-free configuration to a phase-0 monomial."""
    if sites is None:
        if config.dims is None:
            raise ValueError("need explicit sites for a non-torus configuration")
        sites = torus_sites(config.dims)
    sites = tuple(sites)
    idx = {q: i for i, q in enumerate(sites)}
    x = [0] * len(sites)
    z = [0] * len(sites)
    for q, pair in config.support.items():
        x[idx[q]], z[idx[q]] = pair
    return PhasedPauli(config.p, sites, tuple(x), tuple(z))


def generator_pauli(params: CodeParams, dims, position: Site = (0, 0, 0)) -> PhasedPauli:
    """The cube generator at ``position`` as a phase-0 monomial on the torus."""
    sites = torus_sites(dims)
    idx = {q: i for i, q in enumerate(sites)}
    x = [0] * len(sites)
    z = [0] * len(sites)
    p = params.p
    for v, g in build_generator(params).items():
        q = tuple((position[a] + v[a]) % dims[a] for a in range(3))
        i = idx[q]
        x[i] = (x[i] + g[0]) % p
        z[i] = (z[i] + g[1]) % p
    return PhasedPauli(p, sites, tuple(x), tuple(z))


# ---------------------------------------------------------------------------
# Operator sums


class OperatorSum:
    """Finite sum of monomials with exact cyclotomic-rational coefficients.

    Terms are keyed by exponent vectors; zero-coefficient terms are
    dropped, so equality of term maps is canonical regardless of how the
    sum was assembled.
    """

    __slots__ = ("p", "sites", "terms")

    def __init__(self, p: int, sites, terms: dict | None = None):
        self.p = _check_odd_prime(p)
        self.sites = tuple(sites)
        self.terms: dict = {}
        if terms:
            for key, coeff in terms.items():
                self._accumulate(key, coeff)

    def _accumulate(self, key, coeff) -> None:
        cur = self.terms.get(key)
        new = cyc_add(cur, coeff) if cur is not None else tuple(coeff)
        if cyc_is_zero(new):
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def add_monomial(self, mono: PhasedPauli, coeff=Fraction(1)) -> None:
        if mono.p != self.p or mono.sites != self.sites:
            raise ValueError("monomial does not match this operator sum")
        vec = cyc_scale(cyc_from_power(mono.phase, self.p), coeff) \
            if not isinstance(coeff, tuple) else cyc_mul_power(coeff, mono.phase, self.p)
        self._accumulate(mono.monomial(), vec)

    def copy(self) -> "OperatorSum":
        out = OperatorSum(self.p, self.sites)
        out.terms = dict(self.terms)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, OperatorSum) and self.p == other.p
                and self.sites == other.sites and self.terms == other.terms)

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        if self.p != other.p or self.sites != other.sites:
            raise ValueError("operator sums must share modulus and sites")
        out = self.copy()
        for key, coeff in other.terms.items():
            out._accumulate(key, coeff)
        return out

    def __mul__(self, other: "OperatorSum") -> "OperatorSum":
        return op_mul(self, other)

    def __repr__(self) -> str:
        return f"OperatorSum(p={self.p}, terms={len(self.terms)})"


def operator_identity(p: int, sites) -> OperatorSum:
    out = OperatorSum(p, sites)
    out.add_monomial(identity_pauli(p, sites))
    return out


def op_mul(a: OperatorSum, b: OperatorSum, allow_large: bool = False) -> OperatorSum:
    """Exact product; term pairs pick up the normal-ordering phase."""
    if a.p != b.p or a.sites != b.sites:
        raise ValueError("operator sums must share modulus and sites")
    p = a.p
    _guard(p, len(a.sites), allow_large)
    out = OperatorSum(p, a.sites)
    for (x1, z1), c1 in a.terms.items():
        for (x2, z2), c2 in b.terms.items():
            cross = sum(zu * xv for zu, xv in zip(z1, x2)) % p
            key = (tuple((u + v) % p for u, v in zip(x1, x2)),
                   tuple((u + v) % p for u, v in zip(z1, z2)))
            out._accumulate(key, cyc_mul_power(cyc_mul(c1, c2, p), -cross, p))
    return out


def build_projector(s: PhasedPauli, r: int, allow_large: bool = False) -> OperatorSum:
    """P(s, r) = (1/p) sum_m (omega^r s)^m; requires s^p = identity exactly."""
    p = s.p
    _guard(p, len(s.sites), allow_large)
    if not pauli_power(s, p).is_identity():
        raise NotOrderPError("operator does not have order p (including phase)")
    out = OperatorSum(p, s.sites)
    power = identity_pauli(p, s.sites)
    for m in range(p):
        out.add_monomial(
            PhasedPauli(p, s.sites, power.x, power.z,
                        (power.phase + r * m) % p),
            Fraction(1, p))
        power = pauli_mul(power, s)
    return out


def inversion_conjugate(P: OperatorSum, center, dims) -> OperatorSum:
    """Conjugate by the inversion permutation about a (half-)lattice centre.

    Site permutations carry no phase: each term's exponent vectors are
    re-indexed and the coefficient kept.
    """
    from .codes import InvalidCenterError

    c2 = []
    for comp in center:
        doubled = 2 * comp
        if abs(doubled - round(doubled)) > 1e-9:
            raise InvalidCenterError(f"centre component {comp} is not a half-integer")
        c2.append(int(round(doubled)))
    sites = P.sites
    idx = {q: i for i, q in enumerate(sites)}
    perm = []
    for q in sites:
        image = tuple((c2[a] - q[a]) % dims[a] for a in range(3))
        perm.append(idx[image])
    out = OperatorSum(P.p, sites)
    for (x, z), coeff in P.terms.items():
        nx = [0] * len(sites)
        nz = [0] * len(sites)
        for i, j in enumerate(perm):
            nx[j] = x[i]
            nz[j] = z[i]
        out._accumulate((tuple(nx), tuple(nz)), coeff)
    return out


# ---------------------------------------------------------------------------
# Identity verifiers used by the CLI and the acceptance suite


def verify_commutation_law(p: int, trials: int = 200, seed: int = 7) -> bool:
    """u v = v u omega^<u, v> on random one- and two-site monomials."""
    import random

    rng = random.Random(seed)
    sites = ((0, 0, 0), (1, 0, 0))
    for _ in range(trials):
        u = PhasedPauli(p, sites, (rng.randrange(p), rng.randrange(p)),
                        (rng.randrange(p), rng.randrange(p)), rng.randrange(p))
        v = PhasedPauli(p, sites, (rng.randrange(p), rng.randrange(p)),
                        (rng.randrange(p), rng.randrange(p)), rng.randrange(p))
        lhs = pauli_mul(u, v)
        rhs = pauli_mul(v, u)
        e = commutator_exponent(u, v)
        if lhs != PhasedPauli(p, sites, rhs.x, rhs.z, (rhs.phase + e) % p):
            return False
    return True


def verify_projector_identities(params: CodeParams, dims=(2, 2, 2),
                                allow_large: bool = False) -> dict:
    """Idempotence, orthogonality, completeness of {P(s, r)} for the
    cube generator on the given torus."""
    p = params.p
    s = generator_pauli(params, dims)
    projectors = [build_projector(s, r, allow_large) for r in range(p)]
    idempotent = all(op_mul(P, P, allow_large) == P for P in projectors)
    orthogonal = all(
        op_mul(projectors[r], projectors[q], allow_large).is_zero()
        for r in range(p) for q in range(p) if r != q)
    total = projectors[0]
    for P in projectors[1:]:
        total = total + P
    complete = total == operator_identity(p, s.sites)
    return {"idempotent": idempotent, "orthogonal": orthogonal, "complete": complete}


def verify_inversion_action(params: CodeParams, dims=(2, 2, 2), r: int = 1,
                            allow_large: bool = False) -> dict:
    """Conjugating P(s, r) by inversion about the cube centre.

    Expected fixed for symmetric codes and mapped to P(s, -r) for
    antisymmetric ones.
    """
    s = generator_pauli(params, dims)
    P = build_projector(s, r, allow_large)
    conj = inversion_conjugate(P, (0.5, 0.5, 0.5), dims)
    expect_r = r if params.parity == "S" else (-r) % params.p
    expected = build_projector(s, expect_r, allow_large)
    return {"r": r, "expected_r": expect_r, "matches": conj == expected}
