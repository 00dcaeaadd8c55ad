"""Cubic-lattice qupit codes: generators, Pauli configurations, commutation.

A code lives on the simple cubic lattice with one prime-dimensional qupit
per site.  Each unit cube carries a single stabilizer generator whose
eight vertex labels are symplectic pairs in F_p^2.  Four independent
pairs (alpha, beta, gamma, delta) sit at a vertex and its three positive
neighbours; the inversion images through the cube centre carry the same
pairs scaled by +1 (symmetric code) or -1 (antisymmetric code):

    (0,0,0) alpha     (1,1,1) s*alpha
    (1,0,0) beta      (0,1,1) s*beta
    (0,1,0) gamma     (1,0,1) s*gamma
    (0,0,1) delta     (1,1,0) s*delta

Pauli operators are kept phase-free here: commutation questions depend
only on the symplectic data (the exact phase algebra lives in
:mod:`qupitcube.algebra`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .fp import check_prime

Site = tuple[int, int, int]
Pair = tuple[int, int]

VERTICES: tuple[Site, ...] = tuple(product((0, 1), repeat=3))

# 26 nonzero offsets at which two cube generators can overlap.
NEIGHBOR_OFFSETS: tuple[Site, ...] = tuple(
    o for o in product((-1, 0, 1), repeat=3) if o != (0, 0, 0)
)


class InvalidCenterError(ValueError):
    """Raised for an inversion centre off the lattice and dual lattice,
    or one that cannot pair sites consistently under periodic wrap."""


def symplectic_product(a: Pair, b: Pair, p: int) -> int:
    """The antisymmetric form a1*b2 - a2*b1 mod p.

    Vanishes exactly when one argument is a scalar multiple of the other
    (for nonzero arguments), which is what makes it the commutation
    obstruction between generalized Paulis.
    """
    return (a[0] * b[1] - a[1] * b[0]) % p


@dataclass(frozen=True)
class CodeParams:
    """Defining data of a code: modulus, four pairs, and the inversion parity.

    ``parity`` is "S" (generator fixed by inversion) or "A" (generator
    inverted to its own negation).
    """

    p: int
    alpha: Pair
    beta: Pair
    gamma: Pair
    delta: Pair
    parity: str = "S"

    def __post_init__(self):
        p = check_prime(self.p)
        object.__setattr__(self, "p", p)
        if self.parity not in ("S", "A"):
            raise ValueError(f"parity must be 'S' or 'A', got {self.parity!r}")
        for name in ("alpha", "beta", "gamma", "delta"):
            a = getattr(self, name)
            pair = (int(a[0]) % p, int(a[1]) % p)
            if pair == (0, 0):
                raise ValueError(f"pair {name} must be nonzero mod {p}")
            object.__setattr__(self, name, pair)

    @property
    def pairs(self) -> tuple[Pair, Pair, Pair, Pair]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def sign(self) -> int:
        """Inversion scale factor: 1 for symmetric, p - 1 for antisymmetric."""
        return 1 if self.parity == "S" else self.p - 1

    def with_parity(self, parity: str) -> "CodeParams":
        return CodeParams(self.p, self.alpha, self.beta, self.gamma, self.delta, parity)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "gamma": list(self.gamma),
            "delta": list(self.delta),
            "parity": self.parity,
        }


def params_from_dict(d: dict) -> CodeParams:
    """Build CodeParams from the parameter-file dictionary layout."""
    try:
        return CodeParams(
            int(d["p"]),
            tuple(int(x) for x in d["alpha"]),
            tuple(int(x) for x in d["beta"]),
            tuple(int(x) for x in d["gamma"]),
            tuple(int(x) for x in d["delta"]),
            str(d.get("parity", "S")),
        )
    except KeyError as e:
        raise ValueError(f"parameter file is missing field {e.args[0]!r}") from None


def load_params(path) -> CodeParams:
    """Read a code-parameter file (JSON with fields p, alpha..delta, parity)."""
    with open(path) as f:
        return params_from_dict(json.load(f))


def scale_pair(a: Pair, c: int, p: int) -> Pair:
    return ((a[0] * c) % p, (a[1] * c) % p)


def add_pairs(a: Pair, b: Pair, p: int) -> Pair:
    return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)


def build_generator(params: CodeParams, scale_override: int | None = None) -> dict[Site, Pair]:
    """Vertex-to-pair labels of the cube generator at the origin.

    ``scale_override`` substitutes an arbitrary scalar for the inversion
    sign; useful for demonstrating that scales with s^2 != 1 break the
    translation commutation (such families are not valid codes).
    """
    s = params.sign if scale_override is None else scale_override % params.p
    a, b, g, d = params.pairs
    p = params.p
    labels = {
        (0, 0, 0): a,
        (1, 0, 0): b,
        (0, 1, 0): g,
        (0, 0, 1): d,
        (1, 1, 1): scale_pair(a, s, p),
        (0, 1, 1): scale_pair(b, s, p),
        (1, 0, 1): scale_pair(g, s, p),
        (1, 1, 0): scale_pair(d, s, p),
    }
    return labels


class PauliConfig:
    """Finitely supported, phase-free Pauli operator on the cubic lattice.

    Maps sites to nonzero symplectic pairs.  With ``dims`` set, sites are
    wrapped into the torus at insertion so supports are canonical.
    """

    __slots__ = ("p", "dims", "support")

    def __init__(self, p: int, dims: Site | None = None,
                 support: dict[Site, Pair] | None = None):
        self.p = check_prime(p)
        if dims is not None:
            dims = tuple(int(L) for L in dims)
            if len(dims) != 3 or any(L < 2 for L in dims):
                raise ValueError(f"torus dims must be three sizes >= 2, got {dims}")
        self.dims = dims
        self.support: dict[Site, Pair] = {}
        if support:
            for site, pair in support.items():
                self.add(site, pair)

    def _wrap(self, site) -> Site:
        x, y, z = (int(c) for c in site)
        if self.dims is None:
            return (x, y, z)
        return (x % self.dims[0], y % self.dims[1], z % self.dims[2])

    def add(self, site, pair: Pair) -> None:
        """Accumulate a pair at a site (sitewise addition mod p)."""
        site = self._wrap(site)
        cur = self.support.get(site, (0, 0))
        new = ((cur[0] + pair[0]) % self.p, (cur[1] + pair[1]) % self.p)
        if new == (0, 0):
            self.support.pop(site, None)
        else:
            self.support[site] = new

    def copy(self) -> "PauliConfig":
        out = PauliConfig(self.p, self.dims)
        out.support = dict(self.support)
        return out

    def mul(self, other: "PauliConfig") -> "PauliConfig":
        """Phase-free product: sitewise sum of exponent pairs."""
        self._check_compatible(other)
        out = self.copy()
        for site, pair in other.support.items():
            out.add(site, pair)
        return out

    def scale(self, c: int) -> "PauliConfig":
        out = PauliConfig(self.p, self.dims)
        for site, pair in self.support.items():
            out.add(site, scale_pair(pair, c, self.p))
        return out

    def shift(self, offset: Site) -> "PauliConfig":
        out = PauliConfig(self.p, self.dims)
        for (x, y, z), pair in self.support.items():
            out.add((x + offset[0], y + offset[1], z + offset[2]), pair)
        return out

    def _check_compatible(self, other: "PauliConfig") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
        if self.dims != other.dims:
            raise ValueError(f"torus mismatch: {self.dims} vs {other.dims}")

    def is_identity(self) -> bool:
        return not self.support

    def sites(self) -> list[Site]:
        return sorted(self.support)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PauliConfig) and self.p == other.p
                and self.dims == other.dims and self.support == other.support)

    def __repr__(self) -> str:
        return f"PauliConfig(p={self.p}, dims={self.dims}, weight={len(self.support)})"


def generator_config(params: CodeParams, position: Site = (0, 0, 0),
                     dims: Site | None = None,
                     scale_override: int | None = None) -> PauliConfig:
    """The cube generator at ``position`` as a PauliConfig."""
    cfg = PauliConfig(params.p, dims)
    for v, pair in build_generator(params, scale_override).items():
        cfg.add((position[0] + v[0], position[1] + v[1], position[2] + v[2]), pair)
    return cfg


def commutation_exponent(a: PauliConfig, b: PauliConfig) -> int:
    """Exponent e with A B = B A omega^e, summed over shared sites."""
    a._check_compatible(b)
    small, big = (a, b) if len(a.support) <= len(b.support) else (b, a)
    e = 0
    for site, pair in small.support.items():
        other = big.support.get(site)
        if other is not None:
            e += pair[0] * other[1] - pair[1] * other[0]
    e %= a.p
    if small is b:
        e = (-e) % a.p
    return e


def verify_translation_commutation(params: CodeParams,
                                   scale_override: int | None = None) -> list[tuple[Site, int]]:
    """Commutation exponents of the generator against its 26 neighbours.

    Returns the list of (offset, exponent) entries with nonzero exponent;
    an empty list certifies a consistent (abelian) generator family, since
    generators further apart never overlap.
    """
    base = generator_config(params, scale_override=scale_override)
    bad = []
    for off in NEIGHBOR_OFFSETS:
        e = commutation_exponent(base, base.shift(off))
        if e != 0:
            bad.append((off, e))
    return bad


def inversion_image(config: PauliConfig, center) -> PauliConfig:
    """Reflect a configuration through a lattice or dual-lattice centre.

    ``center`` components may be integers or half-integers.  Pairs are
    carried unchanged; only sites move (site -> 2*center - site).  On a
    torus, a half-integer component along an odd-length axis is rejected:
    such a reflection has a fixed site under wrap and cannot pair the
    lattice consistently.
    """
    c2 = []
    for comp in center:
        doubled = 2 * comp
        if abs(doubled - round(doubled)) > 1e-9:
            raise InvalidCenterError(f"centre component {comp} is not a half-integer")
        c2.append(int(round(doubled)))
    if config.dims is not None:
        for axis, L in enumerate(config.dims):
            if L % 2 == 1 and c2[axis] % 2 == 1:
                raise InvalidCenterError(
                    f"dual-lattice inversion along axis {axis} is misaligned on odd length {L}")
    out = PauliConfig(config.p, config.dims)
    for (x, y, z), pair in config.support.items():
        out.add((c2[0] - x, c2[1] - y, c2[2] - z), pair)
    return out


# Reference codes used throughout the tests and narrative examples.
def d3_code(parity: str = "S", variant: int = 0) -> CodeParams:
    """The two p=3 representatives: delta = (1,2) (variant 0) or (2,1)."""
    delta = (1, 2) if variant == 0 else (2, 1)
    return CodeParams(3, (1, 0), (0, 1), (1, 1), delta, parity)


def d5_code(parity: str = "S") -> CodeParams:
    """The p=5 no-string code with delta = (3, -3) = (3, 2) mod 5."""
    return CodeParams(5, (1, 0), (0, 1), (1, 1), (3, 2), parity)
