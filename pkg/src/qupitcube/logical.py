"""Planar logical operators and encoded-qudit counting on tori.

A torus L_x x L_y x L_z carries one qupit per site and one cube
generator per site, so the stabilizer group has at most n = L_x L_y L_z
independent generators acting on n qupits; the encoded qudit count is
k = n - rank of the generator matrix over F_p.

Noncontractible plane operators are built from a 2x2 tile that matches
the generator's face across the plane: the tile entry at in-plane parity
(a, b) is the generator label on the face vertex with those offsets, and
the label diagonal to alpha inherits the inversion sign of the code.
The four unit translates of the tile are the base patterns; products of
translate pairs stay periodic across one odd direction, and the product
of all four is uniform, giving the 4 / 2 / 1 census by the parities of
the two in-plane dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import fp
from .codes import (
    CodeParams,
    PauliConfig,
    Site,
    build_generator,
    commutation_exponent,
)


class InvalidCodeError(ValueError):
    """Raised when a generator family on a torus is not abelian."""


def check_dims(dims) -> Site:
    dims = tuple(int(L) for L in dims)
    if len(dims) != 3 or any(L < 2 for L in dims):
        raise ValueError(f"torus dims must be three sizes >= 2, got {dims}")
    return dims


class TorusCode:
    """A code instantiated on a periodic L_x x L_y x L_z lattice."""

    def __init__(self, params: CodeParams, dims):
        self.params = params
        self.dims = check_dims(dims)
        self.n = self.dims[0] * self.dims[1] * self.dims[2]
        self._matrix = None
        self._rank = None

    def site_index(self, site: Site) -> int:
        x, y, z = (c % L for c, L in zip(site, self.dims))
        return (x * self.dims[1] + y) * self.dims[2] + z

    def cube_positions(self) -> list[Site]:
        return [c for c in product(range(self.dims[0]), range(self.dims[1]),
                                   range(self.dims[2]))]

    @property
    def generator_matrix(self) -> np.ndarray:
        """One row per cube over 2n columns (x-exponent, z-exponent per site)."""
        if self._matrix is None:
            labels = build_generator(self.params)
            p = self.params.p
            M = np.zeros((self.n, 2 * self.n), dtype=np.int64)
            for r, c in enumerate(self.cube_positions()):
                for v, g in labels.items():
                    t = self.site_index((c[0] + v[0], c[1] + v[1], c[2] + v[2]))
                    M[r, 2 * t] = (M[r, 2 * t] + g[0]) % p
                    M[r, 2 * t + 1] = (M[r, 2 * t + 1] + g[1]) % p
            self._matrix = M
        return self._matrix

    def config_vector(self, config: PauliConfig) -> np.ndarray:
        vec = np.zeros(2 * self.n, dtype=np.int64)
        for site, pair in config.support.items():
            t = self.site_index(site)
            vec[2 * t] = pair[0]
            vec[2 * t + 1] = pair[1]
        return vec

    def check_abelian(self) -> bool:
        """All generator rows pairwise symplectically orthogonal."""
        M = self.generator_matrix
        p = self.params.p
        X = M[:, 0::2]
        Z = M[:, 1::2]
        comm = (X @ Z.T - Z @ X.T) % p
        return not comm.any()

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = fp.mat_rank(self.generator_matrix, self.params.p)
        return self._rank


def is_logical(config: PauliConfig, torus: TorusCode) -> bool:
    """True when the configuration commutes with every cube generator."""
    vec = torus.config_vector(config)
    M = torus.generator_matrix
    p = torus.params.p
    # symplectic pairing of each generator row with the config
    e = (M[:, 0::2] @ vec[1::2] - M[:, 1::2] @ vec[0::2]) % p
    return not e.any()


@dataclass(frozen=True)
class PlanarPattern:
    """A tiled plane: normal axis, layer offset, tile translation, transpose."""

    normal_axis: int
    offset: int = 0
    translation: tuple[int, int] = (0, 0)
    transpose: bool = False

    @property
    def plane_axes(self) -> tuple[int, int]:
        u, v = [a for a in range(3) if a != self.normal_axis]
        return (u, v)


def face_tile(params: CodeParams, normal_axis: int) -> dict[tuple[int, int], tuple]:
    """Tile entries from the zero-side face of the cube generator.

    Keyed by in-plane vertex offsets; the entry diagonal to alpha carries
    the code's inversion sign, which is what makes the tiling commute
    with every generator on a seamless torus.
    """
    labels = build_generator(params)
    u, v = [a for a in range(3) if a != normal_axis]
    tile = {}
    for vert, g in labels.items():
        if vert[normal_axis] == 0:
            tile[(vert[u], vert[v])] = g
    return tile


def build_planar_operator(params: CodeParams, pattern: PlanarPattern, dims) -> tuple[PauliConfig, bool]:
    """Tile a plane of the torus with the pattern.

    Labels are assigned by absolute coordinate parity, so on a plane with
    an odd dimension the wrap breaks the periodicity; the returned flag
    reports such a seam (the configuration itself is still well formed).
    """
    dims = check_dims(dims)
    u, v = pattern.plane_axes
    tile = face_tile(params, pattern.normal_axis)
    cfg = PauliConfig(params.p, dims)
    ta, tb = pattern.translation
    for cu in range(dims[u]):
        for cv in range(dims[v]):
            a, b = (cu + ta) % 2, (cv + tb) % 2
            if pattern.transpose:
                a, b = b, a
            site = [0, 0, 0]
            site[pattern.normal_axis] = pattern.offset
            site[u] = cu
            site[v] = cv
            cfg.add(tuple(site), tile[(a, b)])
    seam = dims[u] % 2 == 1 or dims[v] % 2 == 1
    return cfg, seam


def planar_census(params: CodeParams, dims) -> dict:
    """Count valid plane-operator constructions for each orientation.

    Tier order per orientation: the four translated tilings, then the
    paper pairing of translate products (periodic across one direction),
    then the product of all four (uniform).  The first tier containing a
    logical, nonempty configuration supplies the count: 4 when both
    in-plane dimensions are even, 2 when one is, 1 when none are.  Both
    tile alignments (plain and transposed) are tried; the first that
    produces a nonzero census is reported.
    """
    dims = check_dims(dims)
    torus = TorusCode(params, dims)
    out = {}
    for normal in range(3):
        u, v = [a for a in range(3) if a != normal]
        entry = None
        for transpose in (False, True):
            pats = [PlanarPattern(normal, 0, t, transpose)
                    for t in ((0, 0), (1, 0), (0, 1), (1, 1))]
            built = [build_planar_operator(params, pat, dims)[0] for pat in pats]
            base_ok = [cfg for cfg in built if not cfg.is_identity() and is_logical(cfg, torus)]
            if base_ok:
                entry = {"count": len(base_ok), "tier": "base", "transpose": transpose}
                break
            pair_products = [built[0].mul(built[1]), built[2].mul(built[3]),
                             built[0].mul(built[2]), built[1].mul(built[3])]
            pair_ok = [cfg for cfg in pair_products
                       if not cfg.is_identity() and is_logical(cfg, torus)]
            if pair_ok:
                entry = {"count": len(pair_ok), "tier": "pair-products", "transpose": transpose}
                break
            total = built[0].mul(built[1]).mul(built[2]).mul(built[3])
            if not total.is_identity() and is_logical(total, torus):
                entry = {"count": 1, "tier": "full-product", "transpose": transpose}
                break
        if entry is None:
            entry = {"count": 0, "tier": None, "transpose": None}
        entry["in_plane_dims"] = (dims[u], dims[v])
        out[f"normal_{'xyz'[normal]}"] = entry
    return out


def census_operators(params: CodeParams, dims, normal: int) -> list[PauliConfig]:
    """The logical plane operators the census counts for one orientation."""
    dims = check_dims(dims)
    torus = TorusCode(params, dims)
    for transpose in (False, True):
        pats = [PlanarPattern(normal, 0, t, transpose)
                for t in ((0, 0), (1, 0), (0, 1), (1, 1))]
        built = [build_planar_operator(params, pat, dims)[0] for pat in pats]
        ok = [cfg for cfg in built if not cfg.is_identity() and is_logical(cfg, torus)]
        if ok:
            return ok
        pair_products = [built[0].mul(built[1]), built[2].mul(built[3]),
                         built[0].mul(built[2]), built[1].mul(built[3])]
        ok = [cfg for cfg in pair_products if not cfg.is_identity() and is_logical(cfg, torus)]
        if ok:
            return ok
        total = built[0].mul(built[1]).mul(built[2]).mul(built[3])
        if not total.is_identity() and is_logical(total, torus):
            return [total]
    return []


def product_of_all_generators(params: CodeParams, dims) -> PauliConfig:
    """Sitewise product over every cube generator on the torus.

    Each site collects (1 + s) times the sum of the four pairs: the zero
    configuration for antisymmetric codes (the global relation behind
    their guaranteed encoded qudit), a uniform configuration otherwise.
    """
    dims = check_dims(dims)
    out = PauliConfig(params.p, dims)
    labels = build_generator(params)
    for c in product(range(dims[0]), range(dims[1]), range(dims[2])):
        for v, g in labels.items():
            out.add((c[0] + v[0], c[1] + v[1], c[2] + v[2]), g)
    return out


def encoded_qudit_count(torus: TorusCode) -> int:
    """k = n - rank of the generator matrix over F_p.

    Raises InvalidCodeError for a non-commuting generator family (the
    quantity is undefined there).
    """
    if not torus.check_abelian():
        raise InvalidCodeError("generator family is not abelian on this torus")
    return torus.n - torus.rank


def encoded_qudit_table(params: CodeParams, sizes=range(2, 5)) -> dict[Site, int]:
    """k over a cube of torus sizes; exposes the size dependence of k."""
    table = {}
    for dims in product(sizes, repeat=3):
        table[dims] = encoded_qudit_count(TorusCode(params, dims))
    return table


def logical_commutation_table(configs: list[PauliConfig]) -> np.ndarray:
    """Pairwise commutation exponents; antisymmetric with zero diagonal."""
    n = len(configs)
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            out[i, j] = commutation_exponent(configs[i], configs[j])
    return out
