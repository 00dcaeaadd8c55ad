"""Exact decision procedure for nontrivial logical string segments.

A candidate segment lives on a width-w, length-l strip of lattice sites,
either flat (contained in one lattice plane) or cornered (an L-shaped
cross section bent around an edge).  Its unknowns are the symplectic
pairs on the strip.  Every cube generator that overlaps the strip while
staying clear of the two anchor cross-sections (one lattice step beyond
each end) imposes one linear constraint: the total symplectic product
between the generator's labels and the unknowns on the shared sites must
vanish.  The solution space of that system is computed exactly over F_p.

A solution is counted as a nontrivial segment when the solution space
projects nonzero onto BOTH end columns of the strip.  Over a field a
linear space is never the union of two proper subspaces, so this is
equivalent to the existence of a single witness acting at both ends,
which is the operational stand-in for "every equivalent segment stays
connected between the anchors".

Column layout: sites are ordered along the strip (length-major, then
cross-section); each site contributes two adjacent columns holding
(z-exponent, x-exponent).  With that order the width-1 constraint blocks
are literally the 2x2 base matrices [[g1, -g2], ...] of the transition
formalism, which the canonical block reduction exploits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from . import fp
from .codes import (
    CodeParams,
    PauliConfig,
    Site,
    VERTICES,
    build_generator,
    commutation_exponent,
    generator_config,
)
from .conditions import (
    PrerequisiteError,
    check_deformability,
    minimal_string_determinants,
)


class DegenerateGeometryError(ValueError):
    """Raised for geometries too small to separate the two anchors."""


class PivotError(ValueError):
    """Raised when block elimination meets a rank-deficient pivot block
    (possible only when deformability fails)."""


class FlattenError(ValueError):
    """Raised when a configuration cannot be deformed onto the target
    profile; carries the first blocking site."""

    def __init__(self, site: Site, message: str | None = None):
        self.site = site
        super().__init__(message or f"cannot eliminate support at site {site}")


ORIENTATIONS: tuple[tuple[int, int], ...] = tuple(permutations(range(3), 2))


@dataclass(frozen=True)
class SegmentGeometry:
    """Strip geometry: kind, width, length, axes, and corner position.

    ``orientation`` is (length_axis, width_axis).  For a cornered strip
    the cross section runs ``corner_at`` sites along the width axis and
    then bends along the remaining axis; 1 <= corner_at < width.
    """

    kind: str
    width: int
    length: int
    orientation: tuple[int, int] = (0, 1)
    corner_at: int | None = None

    def __post_init__(self):
        if self.kind not in ("flat", "cornered"):
            raise ValueError(f"kind must be 'flat' or 'cornered', got {self.kind!r}")
        la, wa = self.orientation
        if la == wa or not {la, wa} <= {0, 1, 2}:
            raise ValueError(f"orientation must be two distinct axes, got {self.orientation}")
        if self.width < 1 or self.length < 2:
            raise DegenerateGeometryError(
                f"need width >= 1 and length >= 2, got w={self.width}, l={self.length}")
        if self.kind == "cornered":
            if self.corner_at is None or not 1 <= self.corner_at < self.width:
                raise DegenerateGeometryError(
                    f"cornered strip needs 1 <= corner_at < width, got {self.corner_at}")
        elif self.corner_at is not None:
            raise ValueError("corner_at is only meaningful for cornered strips")

    @property
    def length_axis(self) -> int:
        return self.orientation[0]

    @property
    def width_axis(self) -> int:
        return self.orientation[1]

    @property
    def bend_axis(self) -> int:
        return 3 - self.orientation[0] - self.orientation[1]

    def cross_section(self) -> list[Site]:
        """Cross-section offsets (zero along the length axis)."""
        offs = []
        for i in range(self.width if self.kind == "flat" else self.corner_at):
            o = [0, 0, 0]
            o[self.width_axis] = i
            offs.append(tuple(o))
        if self.kind == "cornered":
            for k in range(1, self.width - self.corner_at + 1):
                o = [0, 0, 0]
                o[self.width_axis] = self.corner_at - 1
                o[self.bend_axis] = k
                offs.append(tuple(o))
        return offs

    def column_sites(self, j: int) -> list[Site]:
        cs = self.cross_section()
        out = []
        for o in cs:
            q = list(o)
            q[self.length_axis] += j
            out.append(tuple(q))
        return out

    def support(self) -> list[Site]:
        """All strip sites, length-major then cross-section order."""
        out = []
        for j in range(self.length):
            out.extend(self.column_sites(j))
        return out

    def anchors(self) -> tuple[set[Site], set[Site]]:
        """The two anchor cross-sections, one step beyond each strip end."""
        return set(self.column_sites(-1)), set(self.column_sites(self.length))


@dataclass
class ConstraintSystem:
    """Assembled constraint matrix with its site and cube bookkeeping."""

    params: CodeParams
    geometry: SegmentGeometry
    sites: list[Site]
    matrix: np.ndarray
    cubes: list[Site]

    @property
    def site_index(self) -> dict[Site, int]:
        return {q: t for t, q in enumerate(self.sites)}


def build_segment_constraints(params: CodeParams, geom: SegmentGeometry) -> ConstraintSystem:
    """One scalar row per generator overlapping the strip but not the anchors."""
    support = geom.support()
    if not support:
        raise DegenerateGeometryError("empty strip support")
    index = {q: t for t, q in enumerate(support)}
    anchor1, anchor2 = geom.anchors()
    anchors = anchor1 | anchor2
    labels = build_generator(params)
    p = params.p

    candidates = set()
    for q in support:
        for v in VERTICES:
            candidates.add((q[0] - v[0], q[1] - v[1], q[2] - v[2]))
    cubes = []
    for c in sorted(candidates):
        cube_sites = [(c[0] + v[0], c[1] + v[1], c[2] + v[2]) for v in VERTICES]
        if any(s in anchors for s in cube_sites):
            continue
        cubes.append(c)

    rows = np.zeros((len(cubes), 2 * len(support)), dtype=np.int64)
    for r, c in enumerate(cubes):
        for v in VERTICES:
            q = (c[0] + v[0], c[1] + v[1], c[2] + v[2])
            t = index.get(q)
            if t is None:
                continue
            g = labels[v]
            rows[r, 2 * t] = (rows[r, 2 * t] + g[0]) % p
            rows[r, 2 * t + 1] = (rows[r, 2 * t + 1] - g[1]) % p
    return ConstraintSystem(params, geom, support, rows, cubes)


def _vector_to_config(system: ConstraintSystem, vec: np.ndarray) -> PauliConfig:
    cfg = PauliConfig(system.params.p)
    for t, q in enumerate(system.sites):
        pair = (int(vec[2 * t + 1]), int(vec[2 * t]))  # columns hold (z, x)
        if pair != (0, 0):
            cfg.add(q, pair)
    return cfg


@dataclass
class SegmentSolution:
    """Verdict for one geometry: solution space size, ends, and a witness."""

    geometry: SegmentGeometry
    n_rows: int
    n_cols: int
    nullspace_dim: int
    end_projections: tuple[bool, bool]
    nontrivial: bool
    witness: PauliConfig | None


def solve_segment(params: CodeParams, geom: SegmentGeometry) -> SegmentSolution:
    """Solve the constraint system and decide nontriviality for one geometry."""
    system = build_segment_constraints(params, geom)
    basis = fp.nullspace(system.matrix, params.p)
    k = len(geom.cross_section())
    first = list(range(0, 2 * k))
    last = list(range(2 * k * (geom.length - 1), 2 * k * geom.length))
    witness_vec = _ends_witness(basis, first, last, params.p)
    return SegmentSolution(
        geometry=geom,
        n_rows=system.matrix.shape[0],
        n_cols=system.matrix.shape[1],
        nullspace_dim=basis.shape[0],
        end_projections=(_projects(basis, first), _projects(basis, last)),
        nontrivial=witness_vec is not None,
        witness=None if witness_vec is None else _vector_to_config(system, witness_vec),
    )


def _projects(basis: np.ndarray, idx: list[int]) -> bool:
    return bool(basis.size) and bool(basis[:, idx].any())


def _ends_witness(basis: np.ndarray, idx1: list[int], idx2: list[int], p: int):
    """A nullspace vector nonzero on both end-column index sets, if one exists.

    Both projections nonzero is sufficient: a space over F_p is never the
    union of two proper subspaces, and u + v repairs a vector vanishing
    at one end.
    """
    if basis.size == 0:
        return None
    on1 = [v for v in basis if v[idx1].any()]
    on2 = [v for v in basis if v[idx2].any()]
    if not on1 or not on2:
        return None
    u = on1[0]
    if u[idx2].any():
        return u
    v = on2[0]
    if v[idx1].any():
        return v
    return (u + v) % p


def geometries(width: int, length: int, kind: str,
               orientations=None) -> list[SegmentGeometry]:
    """All scan geometries for a width and length (cornered: all corners)."""
    orients = ORIENTATIONS if orientations is None else tuple(orientations)
    out = []
    for o in orients:
        if kind == "flat":
            out.append(SegmentGeometry("flat", width, length, o))
        else:
            for w1 in range(1, width):
                out.append(SegmentGeometry("cornered", width, length, o, w1))
    return out


@dataclass
class SegmentReport:
    """Scan result over lengths: largest nontrivial length and aspect ratio."""

    width: int
    kind: str
    lengths_scanned: list[int]
    nullspace_dims: dict[int, int]
    nontrivial_lengths: list[int]
    max_nontrivial_length: int | None
    aspect_ratio: Fraction | None
    witness: PauliConfig | None = None
    witness_geometry: SegmentGeometry | None = None

    def as_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = [{"site": list(q), "pair": list(pair)}
                       for q, pair in sorted(self.witness.support.items())]
        return {
            "width": self.width,
            "kind": self.kind,
            "lengths_scanned": self.lengths_scanned,
            "nullspace_dims": {str(l): d for l, d in sorted(self.nullspace_dims.items())},
            "nontrivial_lengths": self.nontrivial_lengths,
            "max_nontrivial_length": self.max_nontrivial_length,
            "aspect_ratio": None if self.aspect_ratio is None else
                [self.aspect_ratio.numerator, self.aspect_ratio.denominator],
            "witness": witness,
        }


def max_nontrivial_length(params: CodeParams, width: int, l_max: int | None = None,
                          kind: str = "flat", orientations=None) -> SegmentReport:
    """Scan lengths 2..l_max over all orientations (and corner positions).

    The default horizon 2*width + 4 comfortably covers both the w+1 and
    the 2w length bounds.  Width-1 cornered strips have no admissible
    corner and come back empty.
    """
    if l_max is None:
        l_max = 2 * width + 4
    if l_max < 2:
        raise ValueError(f"l_max must be >= 2, got {l_max}")
    dims: dict[int, int] = {}
    found: list[int] = []
    witness = None
    witness_geom = None
    for length in range(2, l_max + 1):
        geoms = geometries(width, length, kind, orientations)
        if not geoms:
            break  # no admissible geometry at this width (width-1 cornered)
        best_dim = 0
        hit = False
        for geom in geoms:
            sol = solve_segment(params, geom)
            best_dim = max(best_dim, sol.nullspace_dim)
            if sol.nontrivial and not hit:
                hit = True
                witness = sol.witness
                witness_geom = geom
        dims[length] = best_dim
        if hit:
            found.append(length)
    max_len = max(found) if found else None
    return SegmentReport(
        width=width,
        kind=kind,
        lengths_scanned=list(range(2, l_max + 1)),
        nullspace_dims=dims,
        nontrivial_lengths=found,
        max_nontrivial_length=max_len,
        aspect_ratio=None if max_len is None else Fraction(max_len, width),
        witness=witness,
        witness_geometry=witness_geom,
    )


def verify_witness(params: CodeParams, geom: SegmentGeometry, witness: PauliConfig) -> bool:
    """Re-check a witness against every anchor-avoiding generator.

    Independent of the constraint matrix: generators are rebuilt as
    configurations and tested through the commutation exponent.
    """
    anchor1, anchor2 = geom.anchors()
    anchors = anchor1 | anchor2
    candidates = set()
    for q in witness.support:
        for v in VERTICES:
            candidates.add((q[0] - v[0], q[1] - v[1], q[2] - v[2]))
    for c in sorted(candidates):
        cube_sites = [(c[0] + v[0], c[1] + v[1], c[2] + v[2]) for v in VERTICES]
        if any(s in anchors for s in cube_sites):
            continue
        if commutation_exponent(generator_config(params, c), witness) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Canonical block reduction


@dataclass
class ReductionResult:
    """Outcome of the structured block elimination of a strip system."""

    width: int
    length: int
    triangular: np.ndarray
    transfer_blocks: list[np.ndarray]
    leftover_blocks: list[np.ndarray]
    residual: np.ndarray
    rank: int
    nullspace_dim: int
    direct_rank: int
    agrees_with_direct: bool
    krylov_matrix: np.ndarray | None
    krylov_bound_ok: bool | None


def canonical_reduction(params: CodeParams, width: int, length: int,
                        orientation: tuple[int, int] = (0, 1),
                        kind: str = "flat", corner_at: int | None = None) -> ReductionResult:
    """Block-eliminate the strip system into upper block-triangular form.

    Constraint rows split by the length coordinate of their cube; every
    group touches only two adjacent column blocks, so eliminating each
    group against its own column block leaves an identity block, a
    transfer block feeding the next column, and two leftover rows.  The
    leftover rows propagate to the final column block, whose rank fixes
    the rank of the whole system:

        rank = 2w(l-1) + rank(residual)
             <= 2w(l-1) + rank(Krylov stack of the leftover rows).

    Raises PivotError when a pivot block is rank deficient, which can
    only happen for codes failing deformability.
    """
    geom = SegmentGeometry(kind, width, length, orientation, corner_at)
    system = build_segment_constraints(params, geom)
    p = params.p
    la = geom.length_axis
    k = len(geom.cross_section())
    ncols = 2 * k

    groups: dict[int, list[int]] = {}
    for r, c in enumerate(system.cubes):
        groups.setdefault(c[la], []).append(r)
    if sorted(groups) != list(range(length - 1)):
        raise PivotError(f"unexpected cube grouping {sorted(groups)}")

    transfer: list[np.ndarray] = []
    leftovers: list[np.ndarray] = []
    tri_rows = []
    v_rows = []
    for g in range(length - 1):
        block = system.matrix[groups[g]]
        local = np.concatenate(
            [block[:, ncols * g: ncols * (g + 1)], block[:, ncols * (g + 1): ncols * (g + 2)]],
            axis=1)
        R, pivots = fp.mat_rref(local, p, n_pivot_cols=ncols)
        if pivots != list(range(ncols)):
            raise PivotError(f"pivot block at length position {g} has rank < {ncols}")
        T = R[:ncols, ncols:]
        v = R[ncols:, ncols:]
        if R[ncols:, :ncols].any():
            raise PivotError(f"leftover rows at position {g} not cleared")
        transfer.append(T)
        leftovers.append(v)
        full_t = np.zeros((ncols, system.matrix.shape[1]), dtype=np.int64)
        full_t[:, ncols * g: ncols * (g + 1)] = np.eye(ncols, dtype=np.int64)
        full_t[:, ncols * (g + 1): ncols * (g + 2)] = T
        tri_rows.append(full_t)
        full_v = np.zeros((v.shape[0], system.matrix.shape[1]), dtype=np.int64)
        full_v[:, ncols * (g + 1): ncols * (g + 2)] = v
        v_rows.append(full_v)

    triangular = np.concatenate(tri_rows + v_rows, axis=0) if tri_rows else \
        np.zeros((0, system.matrix.shape[1]), dtype=np.int64)

    residual_rows = []
    for g, v in enumerate(leftovers):
        vec = v
        for nxt in range(g + 1, length - 1):
            vec = (-(vec @ transfer[nxt])) % p
        residual_rows.append(vec)
    residual = np.concatenate(residual_rows, axis=0) if residual_rows else \
        np.zeros((0, ncols), dtype=np.int64)

    rank = ncols * (length - 1) + fp.mat_rank(residual, p)
    nullspace_dim = system.matrix.shape[1] - rank
    direct_rank = fp.mat_rank(system.matrix, p)

    krylov = None
    bound_ok = None
    uniform = all((t == transfer[0]).all() for t in transfer[1:]) and \
        all((v == leftovers[0]).all() for v in leftovers[1:])
    if uniform and leftovers:
        T = transfer[0]
        rowstrip = leftovers[0]
        stack = []
        vec = rowstrip
        for _ in range(ncols):
            stack.append(vec)
            vec = (vec @ T) % p
        krylov = np.concatenate(stack, axis=0)
        bound_ok = rank <= ncols * (length - 1) + fp.mat_rank(krylov, p)

    return ReductionResult(
        width=width,
        length=length,
        triangular=triangular,
        transfer_blocks=transfer,
        leftover_blocks=leftovers,
        residual=residual,
        rank=rank,
        nullspace_dim=nullspace_dim,
        direct_rank=direct_rank,
        agrees_with_direct=rank == direct_rank,
        krylov_matrix=krylov,
        krylov_bound_ok=bound_ok,
    )


def width1_criterion(params: CodeParams, lengths=range(2, 7)) -> dict:
    """Compare the width-1 determinant test against the segment solver.

    Evaluates det(T - T^-1) for the three direction matrices and runs the
    solver at width 1 over the given lengths for each length axis.  The
    determinant test asserts det != 0 implies no width-1 string; the
    returned flags record whether the solver agrees, in aggregate and as
    unordered per-direction multisets (the direction-to-matrix pairing is
    convention dependent).
    """
    if not check_deformability(params):
        raise PrerequisiteError("width-1 criterion needs a deformable code")
    dets = minimal_string_determinants(params)
    det_nonzero = [d != 0 for d in dets]
    oracle_no_string = []
    for axis in range(3):
        wa = 0 if axis != 0 else 1
        hit = False
        for length in lengths:
            geom = SegmentGeometry("flat", 1, length, (axis, wa))
            if solve_segment(params, geom).nontrivial:
                hit = True
                break
        oracle_no_string.append(not hit)
    return {
        "determinants": dets,
        "det_nonzero": det_nonzero,
        "oracle_no_string": oracle_no_string,
        "aggregate_agreement": all(det_nonzero) == all(oracle_no_string),
        "multiset_agreement": sorted(det_nonzero) == sorted(oracle_no_string),
        "polarity": "det-nonzero-implies-no-string",
    }


# ---------------------------------------------------------------------------
# Constructive flattening


def kink_profile(box: tuple[int, int, int]) -> set[Site]:
    """Target support after flattening a (w, h, l) box: the bottom row of
    each cross section plus the far column above its end, for all lengths."""
    w, h, l = box
    prof = set()
    for z in range(l):
        for x in range(w):
            prof.add((x, 0, z))
        for y in range(1, h):
            prof.add((w - 1, y, z))
    return prof


def in_box_cubes(box: tuple[int, int, int]) -> list[Site]:
    w, h, l = box
    return [(x, y, z) for x in range(w - 1) for y in range(h - 1) for z in range(l - 1)]


def in_box_generator_matrix(params: CodeParams, box: tuple[int, int, int]):
    """Matrix of in-box generator vectors over the box coordinates.

    Returns (matrix, cubes, sites); rows are generators, columns run over
    box sites with two components each (x-exponent then z-exponent).
    """
    w, h, l = box
    sites = [(x, y, z) for x in range(w) for y in range(h) for z in range(l)]
    index = {q: t for t, q in enumerate(sites)}
    cubes = in_box_cubes(box)
    labels = build_generator(params)
    M = np.zeros((len(cubes), 2 * len(sites)), dtype=np.int64)
    for r, c in enumerate(cubes):
        for v, g in labels.items():
            t = index[(c[0] + v[0], c[1] + v[1], c[2] + v[2])]
            M[r, 2 * t] = g[0]
            M[r, 2 * t + 1] = g[1]
    return M % params.p, cubes, sites


def config_to_box_vector(config: PauliConfig, box: tuple[int, int, int]) -> np.ndarray:
    w, h, l = box
    sites = [(x, y, z) for x in range(w) for y in range(h) for z in range(l)]
    vec = np.zeros(2 * len(sites), dtype=np.int64)
    for t, q in enumerate(sites):
        pair = config.support.get(q)
        if pair:
            vec[2 * t] = pair[0]
            vec[2 * t + 1] = pair[1]
    return vec


def is_stabilizer_combination(params: CodeParams, config: PauliConfig,
                              box: tuple[int, int, int]) -> bool:
    """Exact span membership of a box-supported config in the in-box generators."""
    M, _, _ = in_box_generator_matrix(params, box)
    vec = config_to_box_vector(config, box)
    return fp.mat_rank(np.concatenate([M, vec.reshape(1, -1)]), params.p) == fp.mat_rank(M, params.p)


def flatten_segment(params: CodeParams, config: PauliConfig,
                    box: tuple[int, int, int]) -> PauliConfig:
    """Deform a box-supported configuration onto the kinked surface profile.

    Multiplies by in-box generators only, so the result is exactly
    equivalent to the input.  Flat inputs are returned unchanged.  When
    no in-box combination clears the off-profile support (inevitably so
    for some inputs when deformability fails), FlattenError names the
    first site that cannot be eliminated.
    """
    w, h, l = box
    if min(box) < 1:
        raise ValueError(f"box must be positive, got {box}")
    for q in config.support:
        if not (0 <= q[0] < w and 0 <= q[1] < h and 0 <= q[2] < l):
            raise ValueError(f"config has support outside the box at {q}")
    profile = kink_profile(box)
    off_sites = sorted(q for q in ((x, y, z)
                                   for x in range(w) for y in range(h) for z in range(l))
                       if q not in profile)
    if all(q in profile for q in config.support):
        return config.copy()

    cubes = in_box_cubes(box)
    labels = build_generator(params)
    p = params.p
    cube_cols = {}
    for j, c in enumerate(cubes):
        col = {}
        for v, g in labels.items():
            col[(c[0] + v[0], c[1] + v[1], c[2] + v[2])] = g
        cube_cols[j] = col

    def build_rows(site_list):
        A = np.zeros((2 * len(site_list), len(cubes)), dtype=np.int64)
        b = np.zeros(2 * len(site_list), dtype=np.int64)
        for i, q in enumerate(site_list):
            cur = config.support.get(q, (0, 0))
            b[2 * i] = (-cur[0]) % p
            b[2 * i + 1] = (-cur[1]) % p
            for j in range(len(cubes)):
                g = cube_cols[j].get(q)
                if g:
                    A[2 * i, j] = g[0]
                    A[2 * i + 1, j] = g[1]
        return A % p, b

    A, b = build_rows(off_sites)
    coeffs = fp.solve(A, b, p)
    if coeffs is None:
        for n in range(1, len(off_sites) + 1):
            Ap, bp = build_rows(off_sites[:n])
            if fp.solve(Ap, bp, p) is None:
                raise FlattenError(off_sites[n - 1])
        raise FlattenError(off_sites[-1])  # unreachable; defensive

    out = config.copy()
    for j, c in enumerate(cubes):
        x = int(coeffs[j])
        if x:
            out = out.mul(generator_config(params, c).scale(x))
    leftover = [q for q in out.support if q not in profile]
    if leftover:
        raise FlattenError(sorted(leftover)[0], "elimination left off-profile support")
    return out
