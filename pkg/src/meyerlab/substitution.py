"""Substitution Delone multisets: system configs, the matrix function system
and its iteration, finite patch generation with certified completeness
margins, generating clusters, primitivity, and cluster legality.

A system is m colors, an expansive map Q, and finite digit sets D[i][j] so
that the color-i point set satisfies  Lambda_i = union_j (Q Lambda_j + D[i][j])
with disjoint unions.  Points are exact algebraic vectors throughout; any
coincidence inside one color aborts iteration with a witness, since it
violates the defining disjointness.
"""

from __future__ import annotations

import json
import math
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arithmetic import (
    AlgebraicContext,
    AlgebraicScalar,
    AlgebraicVector,
    FieldMatrix,
    RationalMatrix,
    parse_fraction,
    parse_scalar,
)
from .errors import ConfigError, GenerationError, NonExpansiveError, OverlapError
from .spectral import SpectralData, analyze_expansion

DEFAULT_LEGALITY_KMAX = 8


@dataclass
class SubstitutionMatrix:
    """S[i][j] = number of digits mapping color-j parents into color i."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.entries)

    def power(self, k: int):
        out = np.eye(self.m, dtype=object)
        base = np.array(self.entries, dtype=object)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def perron_data(self) -> tuple[float, np.ndarray, np.ndarray]:
        """(spectral radius, right eigenvector, left eigenvector), floats."""
        s = np.array(self.entries, dtype=float)
        vals, vecs = np.linalg.eig(s)
        i = int(np.argmax(vals.real))
        right = np.abs(vecs[:, i].real)
        valsl, vecsl = np.linalg.eig(s.T)
        j = int(np.argmax(valsl.real))
        left = np.abs(vecsl[:, j].real)
        return float(vals[i].real), right, left

    def to_json(self):
        return [list(r) for r in self.entries]


@dataclass
class PrimitivityResult:
    primitive: bool
    witness: int | None
    l_max: int

    def to_json(self):
        return {"primitive": self.primitive, "witness_power": self.witness, "l_max": self.l_max}


def is_primitive(s: SubstitutionMatrix, l_max: int | None = None) -> PrimitivityResult:
    """Smallest l <= l_max with S^l strictly positive, or a negative verdict."""
    m = s.m
    if l_max is None:
        l_max = max(1, m * m)
    power = np.eye(m, dtype=object)
    base = np.array(s.entries, dtype=object)
    for l in range(1, l_max + 1):
        power = power @ base
        if all(power[i][j] > 0 for i in range(m) for j in range(m)):
            return PrimitivityResult(True, l, l_max)
    return PrimitivityResult(False, None, l_max)


class ColoredPointSet:
    """Finite patch of the multiset: per color, a sorted tuple of exact
    points, complete inside the stated window radius."""

    def __init__(self, points: Sequence[Sequence[AlgebraicVector]], window):
        self.points = tuple(
            tuple(sorted(ps, key=lambda v: v.floats())) for ps in points
        )
        self.window = parse_fraction(window) if not isinstance(window, Fraction) else window
        self._sets: tuple[frozenset, ...] | None = None

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        for ps in self.points:
            if ps:
                return ps[0].dim
        raise ValueError("empty point set has no dimension")

    def counts(self) -> list[int]:
        return [len(ps) for ps in self.points]

    @property
    def total(self) -> int:
        return sum(self.counts())

    def color_sets(self) -> tuple[frozenset, ...]:
        if self._sets is None:
            self._sets = tuple(frozenset(ps) for ps in self.points)
        return self._sets

    def contains(self, color: int, v: AlgebraicVector) -> bool:
        return v in self.color_sets()[color]

    def union_points(self) -> list[AlgebraicVector]:
        seen = {}
        for ps in self.points:
            for v in ps:
                seen.setdefault(v, v)
        return sorted(seen.values(), key=lambda v: v.floats())

    def translate(self, x: AlgebraicVector) -> "ColoredPointSet":
        return ColoredPointSet(
            tuple(tuple(v + x for v in ps) for ps in self.points), self.window
        )

    def restrict(self, radius) -> "ColoredPointSet":
        r = parse_fraction(radius)
        r2 = r * r
        rf = float(r)
        out = []
        for ps in self.points:
            keep = []
            for v in ps:
                fl = v.floats()
                n2 = sum(x * x for x in fl)
                if n2 < (rf - 1e-9) ** 2:
                    keep.append(v)
                elif n2 > (rf + 1e-9) ** 2:
                    continue
                elif v.norm_sq() <= r2:
                    keep.append(v)
            out.append(tuple(keep))
        return ColoredPointSet(out, min(self.window, r))

    def float_arrays(self) -> list[np.ndarray]:
        d = self.dim
        return [
            np.array([v.floats() for v in ps], dtype=float).reshape(len(ps), d)
            for ps in self.points
        ]

    def coefficient_data(self) -> tuple[list[np.ndarray], int]:
        """Integer coefficient rows per color (points x (d*s)), plus the
        common denominator.  This is the exact kernel representation."""
        den = 1
        for ps in self.points:
            for v in ps:
                for e in v.entries:
                    for c in e.coeffs:
                        den = den * c.denominator // math.gcd(den, c.denominator)
        arrays = []
        for ps in self.points:
            rows = [
                [int(c * den) for e in v.entries for c in e.coeffs] for v in ps
            ]
            width = len(rows[0]) if rows else 0
            arrays.append(np.array(rows, dtype=np.int64).reshape(len(rows), width))
        return arrays, den

    def __repr__(self):
        return f"ColoredPointSet(counts={self.counts()}, window={float(self.window):g})"


class SubstitutionSystem:
    """Colors, expansion Q over the generator field, and digit sets."""

    def __init__(
        self,
        dim: int,
        colors: Sequence[str],
        q: FieldMatrix,
        digits: Sequence[Sequence[Sequence[AlgebraicVector]]],
        context: AlgebraicContext,
        name: str = "system",
    ):
        self.dim = dim
        self.colors = tuple(colors)
        self.m = len(self.colors)
        self.Q = q
        self.context = context
        self.name = name
        if q.nrows != dim or q.ncols != dim:
            raise ConfigError("Q must be d x d")
        if len(digits) != self.m or any(len(row) != self.m for row in digits):
            raise ConfigError("digits must be an m x m array of vector lists")
        canon = []
        for i in range(self.m):
            row = []
            for j in range(self.m):
                vs = list(digits[i][j])
                for v in vs:
                    if v.dim != dim:
                        raise ConfigError(f"digit in D[{i}][{j}] has wrong dimension")
                if len(set(vs)) != len(vs):
                    raise ConfigError(f"duplicate digit in D[{i}][{j}]")
                row.append(tuple(sorted(vs)))
            canon.append(tuple(row))
        self.digits = tuple(canon)
        self._spectral: SpectralData | None = None
        self._power_cache: dict[int, "SubstitutionSystem"] = {}

    # -- derived data --------------------------------------------------------

    def substitution_matrix(self) -> SubstitutionMatrix:
        return SubstitutionMatrix(
            tuple(
                tuple(len(self.digits[i][j]) for j in range(self.m))
                for i in range(self.m)
            )
        )

    def spectral(self) -> SpectralData:
        if self._spectral is None:
            self._spectral = analyze_expansion(self.Q)
        return self._spectral

    def q_rational(self) -> RationalMatrix | None:
        return self.Q.to_rational() if self.Q.is_rational() else None

    def apply_q(self, v: AlgebraicVector) -> AlgebraicVector:
        return self.Q.apply(v)

    def sigma_min_lower(self) -> float:
        """Lower bound for the smallest singular value of Q."""
        diag = self.Q.is_scalar_multiple_of_identity()
        if diag is not None:
            spec = self.spectral()
            return spec.min_modulus_lower()
        qf = np.array(self.Q.floats())
        return float(np.linalg.svd(qf, compute_uv=False)[-1]) * (1 - 1e-9)

    def max_digit_norm(self) -> float:
        out = 0.0
        for i in range(self.m):
            for j in range(self.m):
                for v in self.digits[i][j]:
                    out = max(out, math.sqrt(sum(x * x for x in v.floats())))
        return out * (1 + 1e-12) + 1e-15

    def support_radius_bound(self) -> float:
        """All prototile supports fit in a ball of this radius about 0."""
        s = self.sigma_min_lower()
        if s <= 1.0:
            raise GenerationError(
                "smallest singular value of Q is <= 1; increase the iteration "
                "power before generating patches"
            )
        return self.max_digit_norm() / (s - 1.0)

    def power(self, k: int) -> "SubstitutionSystem":
        """The k-fold composed system: expansion Q^k, composed digit sets."""
        if k == 1:
            return self
        if k in self._power_cache:
            return self._power_cache[k]
        cur = {
            (i, j): set(self.digits[i][j]) for i in range(self.m) for j in range(self.m)
        }
        for _ in range(k - 1):
            nxt = {(i, j): set() for i in range(self.m) for j in range(self.m)}
            for i in range(self.m):
                for l in range(self.m):
                    acc = nxt[(i, l)]
                    for j in range(self.m):
                        for d_prev in cur[(j, l)]:
                            qd = self.apply_q(d_prev)
                            for a in self.digits[i][j]:
                                w = qd + a
                                if w in acc:
                                    raise OverlapError(
                                        f"composed digit collision in D^k[{i}][{l}]",
                                        witness=w,
                                    )
                                acc.add(w)
            cur = nxt
        digits = [
            [tuple(sorted(cur[(i, j)])) for j in range(self.m)] for i in range(self.m)
        ]
        sysk = SubstitutionSystem(
            self.dim,
            self.colors,
            self.Q.pow(k),
            digits,
            self.context,
            name=f"{self.name}^{k}",
        )
        self._power_cache[k] = sysk
        return sysk

    # -- config --------------------------------------------------------------

    @classmethod
    def from_config(cls, cfg: dict, name: str | None = None) -> "SubstitutionSystem":
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        dim = cfg.get("dimension")
        if not isinstance(dim, int) or dim < 1:
            raise ConfigError("dimension must be a positive integer")
        colors = cfg.get("colors")
        if isinstance(colors, int):
            if colors < 1:
                raise ConfigError("colors must be positive")
            names = list(string.ascii_lowercase[:colors]) if colors <= 26 else [
                f"c{i}" for i in range(colors)
            ]
        elif isinstance(colors, (list, tuple)) and all(isinstance(c, str) for c in colors):
            names = list(colors)
        else:
            raise ConfigError("colors must be a count or a list of names")
        theta_cfg = cfg.get("theta")
        if theta_cfg is None:
            ctx = AlgebraicContext.rational()
            allow_theta = False
        else:
            if "minpoly" not in theta_cfg or "root_interval" not in theta_cfg:
                raise ConfigError("theta needs minpoly and root_interval")
            lo, hi = theta_cfg["root_interval"]
            ctx = AlgebraicContext.get(theta_cfg["minpoly"], lo, hi)
            allow_theta = True

        def scalar(expr):
            return parse_scalar(expr, ctx, allow_theta=allow_theta)

        qcfg = cfg.get("Q")
        if qcfg is None:
            raise ConfigError("Q missing")
        if not isinstance(qcfg, list):
            qcfg = [[qcfg]]
        if qcfg and not isinstance(qcfg[0], list):
            qcfg = [qcfg] if dim > 1 else [[x] for x in qcfg]
        if len(qcfg) != dim or any(len(r) != dim for r in qcfg):
            raise ConfigError("Q must be a d x d array of scalar expressions")
        q = FieldMatrix([[scalar(x) for x in row] for row in qcfg])

        void = cfg.get("digits")
        if void is None:
            raise ConfigError("digits missing")
        m = len(names)
        if len(void) != m or any(len(r) != m for r in void):
            raise ConfigError("digits must be an m x m array")
        digits = []
        for i in range(m):
            row = []
            for j in range(m):
                vecs = []
                for entry in void[i][j]:
                    if not isinstance(entry, (list, tuple)):
                        entry = [entry]
                    if len(entry) != dim:
                        raise ConfigError(
                            f"digit vector in D[{i}][{j}] must have {dim} entries"
                        )
                    vecs.append(AlgebraicVector(tuple(scalar(x) for x in entry)))
                row.append(tuple(vecs))
            digits.append(tuple(row))
        return cls(
            dim,
            names,
            q,
            digits,
            ctx,
            name=name or cfg.get("name", "system"),
        )

    @classmethod
    def load(cls, path) -> "SubstitutionSystem":
        with open(path) as fh:
            cfg = json.load(fh)
        return cls.from_config(cfg, name=cfg.get("name"))

    def to_config(self) -> dict:
        def scalar_str(e: AlgebraicScalar) -> str:
            if e.is_rational():
                return str(e.as_fraction())
            terms = []
            for k, c in enumerate(e.coeffs):
                if c == 0:
                    continue
                if k == 0:
                    terms.append(str(c))
                elif k == 1:
                    terms.append(f"{c}*t" if c != 1 else "t")
                else:
                    terms.append(f"{c}*t^{k}" if c != 1 else f"t^{k}")
            return " + ".join(terms).replace("+ -", "- ") if terms else "0"

        cfg = {
            "name": self.name,
            "dimension": self.dim,
            "colors": list(self.colors),
        }
        if self.context.degree > 1:
            cfg["theta"] = {
                "minpoly": list(self.context.minpoly),
                "root_interval": [str(self.context._lo), str(self.context._hi)],
            }
        else:
            cfg["theta"] = None
        cfg["Q"] = [[scalar_str(x) for x in row] for row in self.Q.rows]
        cfg["digits"] = [
            [
                [[scalar_str(x) for x in v.entries] for v in self.digits[i][j]]
                for j in range(self.m)
            ]
            for i in range(self.m)
        ]
        return cfg

    def __repr__(self):
        return f"SubstitutionSystem({self.name!r}, d={self.dim}, m={self.m})"


# -- iteration ------------------------------------------------------------------


def iterate_phi(
    sys: SubstitutionSystem,
    seed: ColoredPointSet,
    k: int,
    track_parents: bool = False,
):
    """Exact k-fold image of the seed under the matrix function system.

    Returns the patch, or (patch, levels) when track_parents is set; levels
    is a list of dicts {(color, point): (parent_color, parent_point, digit)}.
    A coincidence within one color raises OverlapError with a witness.
    """
    if seed.total == 0:
        raise GenerationError("seed is empty")
    current = [dict.fromkeys(ps) for ps in seed.points]
    levels = []
    window = seed.window
    sig = sys.sigma_min_lower()
    for _ in range(k):
        nxt: list[dict] = [dict() for _ in range(sys.m)]
        level_parents: dict = {}
        for j in range(sys.m):
            for v in current[j]:
                qv = sys.apply_q(v)
                for i in range(sys.m):
                    for a in sys.digits[i][j]:
                        w = qv + a
                        if w in nxt[i]:
                            raise OverlapError(
                                f"color {sys.colors[i]!r} receives the point "
                                f"{tuple(float(x) for x in w.floats())} twice; the "
                                "defining unions are not disjoint",
                                witness=(i, w),
                            )
                        nxt[i][w] = None
                        if track_parents:
                            level_parents[(i, w)] = (j, v, a)
        current = nxt
        if track_parents:
            levels.append(level_parents)
        window = window * parse_fraction(
            Fraction(max(int(sig * 10 ** 6), 1), 10 ** 6)
        )
    out = ColoredPointSet([tuple(dct.keys()) for dct in current], window)
    if track_parents:
        return out, levels
    return out


# -- generating clusters ----------------------------------------------------------


@dataclass
class GeneratingCluster:
    found: bool
    points: list[tuple[int, AlgebraicVector]] = field(default_factory=list)
    power: int = 0
    cover_radius: float = 0.0
    message: str | None = None

    def as_pointset(self, m: int, window=0) -> ColoredPointSet:
        per = [[] for _ in range(m)]
        for c, v in self.points:
            per[c].append(v)
        return ColoredPointSet(per, Fraction(window))

    def to_json(self, colors):
        return {
            "found": self.found,
            "power": self.power,
            "cover_radius": self.cover_radius,
            "points": [
                {"color": colors[c], "point": [float(x) for x in v.floats()]}
                for c, v in self.points
            ],
            "message": self.message,
        }


def _digit_paths_fixed_points(sys: SubstitutionSystem, k: int):
    """Fixed points of the k-step branch maps whose color path returns to its
    start: x = Q^k x + accumulated digit."""
    sysk = sys.power(k)
    ctx = sys.context
    eye = FieldMatrix.identity(sys.dim, ctx)
    try:
        inv = sysk.Q.add(eye.scale(ctx.scalar(-1))).inverse()  # (Q^k - I)^-1
    except ZeroDivisionError:
        return []
    out = []
    for j in range(sys.m):
        for a in sysk.digits[j][j]:
            x = inv.apply(a.scale(ctx.scalar(-1)))  # x = -(Q^k - I)^{-1} a
            out.append((j, x))
    return out


def _tile_cover_radius_1d(sys, cluster) -> float:
    """Largest r with (-r, r) inside the union of the cluster's tiles."""
    from .geometry import solve_interval_supports

    intervals = solve_interval_supports(sys)
    segs = sorted(
        (
            float(v.entries[0]) + float(intervals[c][0]),
            float(v.entries[0]) + float(intervals[c][1]),
        )
        for c, v in cluster
    )
    merged: list[list[float]] = []
    for lo, hi in segs:
        if merged and lo <= merged[-1][1] + 1e-12:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    for lo, hi in merged:
        if lo < -1e-12 and hi > 1e-12:
            return min(-lo, hi)
    return 0.0


def _tile_cover_radius_raster(sys, cluster) -> float:
    from .geometry import adjoint_supports_cached

    approx = adjoint_supports_cached(sys)
    best = 0.0
    for ring in np.arange(0.1, 3.0, 0.1):
        pts = _ring_samples(sys.dim, ring)
        ok = True
        for p in pts:
            covered = False
            for c, v in cluster:
                rel = p - np.array(v.floats())
                if approx.contains(c, rel, slack=approx.resolution):
                    covered = True
                    break
            if not covered:
                ok = False
                break
        if ok:
            best = float(ring)
        else:
            break
    return best


def _ring_samples(dim: int, r: float, n: int = 24) -> list[np.ndarray]:
    if dim == 1:
        return [np.array([r]), np.array([-r])]
    if dim == 2:
        ang = np.linspace(0, 2 * np.pi, n, endpoint=False)
        return [np.array([r * np.cos(a), r * np.sin(a)]) for a in ang]
    rng = np.random.default_rng(7)
    out = []
    for _ in range(4 * n):
        v = rng.normal(size=dim)
        out.append(r * v / np.linalg.norm(v))
    return out


def find_generating(
    sys: SubstitutionSystem, search_radius: float = 12.0, k_max: int = 6
) -> GeneratingCluster:
    """Search for a cluster P with P inside Phi^k(P) whose tiles cover a
    neighborhood of the origin; such a P generates the full multiset."""
    r2 = Fraction(search_radius).limit_denominator(1000) ** 2
    candidates: dict[int, list[tuple[int, AlgebraicVector]]] = {}
    for k in range(1, k_max + 1):
        pts = []
        for kk in range(1, k + 1):
            if k % kk == 0:
                pts.extend(_digit_paths_fixed_points(sys, kk))
        uniq = {}
        for j, x in pts:
            if x.norm_sq() <= r2:
                uniq[(j, x)] = None
        candidates[k] = list(uniq.keys())
        if not candidates[k]:
            continue
        cover = (
            _tile_cover_radius_1d(sys, candidates[k])
            if sys.dim == 1
            else _tile_cover_radius_raster(sys, candidates[k])
        )
        if cover <= 0:
            continue
        cluster = _trim_cluster(sys, candidates[k], cover)
        seed = GeneratingCluster(True, cluster, k, cover)
        if _verify_generating(sys, seed):
            return seed
    return GeneratingCluster(
        False,
        message=(
            f"no generating cluster with origin in its support interior found "
            f"for k <= {k_max}, |x| <= {search_radius}"
        ),
    )


def _trim_cluster(sys, cluster, cover) -> list[tuple[int, AlgebraicVector]]:
    """Drop fixed points whose tiles cannot touch the covered neighborhood."""
    rho = sys.support_radius_bound()
    keep = []
    for c, v in cluster:
        if math.sqrt(sum(x * x for x in v.floats())) <= cover + rho + 1e-9:
            keep.append((c, v))
    return keep


def _verify_generating(sys: SubstitutionSystem, gen: GeneratingCluster) -> bool:
    seed = gen.as_pointset(sys.m)
    try:
        image = iterate_phi(sys.power(gen.power) if gen.power > 1 else sys, seed, 1)
    except OverlapError:
        return False
    sets = image.color_sets()
    for c, v in gen.points:
        if v not in sets[c]:
            return False
    return True


# -- patch generation -------------------------------------------------------------


def generate_patch(
    sys: SubstitutionSystem,
    radius,
    seed: GeneratingCluster | None = None,
    track_parents: bool = False,
    search_radius: float = 12.0,
    k_max: int = 6,
):
    """All points of each color inside the closed ball B_radius(0).

    Completeness: the seed's tiles cover B_r0(0); n steps of the composed
    map blow that cover up to B_(sigma^n r0), and points are emitted only in
    the region whose tiles are already final, i.e. radius + tile bound
    inside the blown-up cover.
    """
    r = parse_fraction(Fraction(radius) if not isinstance(radius, (int, str)) else radius)
    if seed is None:
        seed = find_generating(sys, search_radius=search_radius, k_max=k_max)
    if not seed.found:
        raise GenerationError(
            "no generating cluster known; run find_generating with a larger "
            "search radius or power cap"
        )
    sysk = sys.power(seed.power) if seed.power > 1 else sys
    rho = sys.support_radius_bound()
    r0 = seed.cover_radius
    if r0 <= 0:
        raise GenerationError("generating cluster does not cover the origin")
    sig = sysk.sigma_min_lower()
    need = (float(r) + rho) / r0
    n = max(0, math.ceil(math.log(max(need, 1.0)) / math.log(sig))) if need > 1 else 0
    base = seed.as_pointset(sys.m)
    if track_parents:
        patch, levels = iterate_phi(sysk, base, n, track_parents=True)
        full = patch
        out = full.restrict(r)
        return out, AddressedPatch(sysk, seed, full, levels, out)
    patch = iterate_phi(sysk, base, n)
    out = patch.restrict(r)
    out.window = r
    return out


@dataclass
class AddressedPatch:
    """A generated patch together with its derivation forest: each point's
    parent chain back to the generating cluster."""

    system: SubstitutionSystem  # the composed system actually iterated
    seed: GeneratingCluster
    full: ColoredPointSet
    levels: list[dict]
    patch: ColoredPointSet

    @property
    def depth(self) -> int:
        return len(self.levels)

    def ancestry(self, color: int, v: AlgebraicVector):
        """[(color, point, digit-from-parent)] from the point itself up to a
        seed point; digit is None at the seed level."""
        chain = [(color, v, None)]
        cur = (color, v)
        for level in reversed(self.levels):
            j, parent, a = level[cur]
            chain[-1] = (chain[-1][0], chain[-1][1], a)
            chain.append((j, parent, None))
            cur = (j, parent)
        return chain


# -- legality ----------------------------------------------------------------------


@dataclass
class LegalityResult:
    found: bool
    color: int | None = None
    power: int | None = None
    translation: AlgebraicVector | None = None

    def to_json(self, colors):
        return {
            "legal": self.found,
            "witness_color": colors[self.color] if self.found else None,
            "witness_power": self.power,
            "translation": [float(x) for x in self.translation.floats()]
            if self.translation is not None
            else None,
        }


def is_legal(
    sys: SubstitutionSystem,
    cluster: Sequence[tuple[int, AlgebraicVector]],
    k_max: int = DEFAULT_LEGALITY_KMAX,
) -> LegalityResult:
    """Search for (j, k, t) with cluster + t inside Phi^k(one color-j point).

    A not-found verdict is inconclusive, not a disproof.
    """
    cluster = list(cluster)
    if not cluster:
        raise ValueError("empty cluster")
    if len(cluster) == 1:
        c, v = cluster[0]
        return LegalityResult(True, c, 0, v.scale(sys.context.scalar(-1)))
    c0, v0 = cluster[0]
    for k in range(1, k_max + 1):
        sysk = sys.power(k)
        shape = [
            [frozenset(sysk.digits[i][j]) for j in range(sys.m)] for i in range(sys.m)
        ]
        for j in range(sys.m):
            for anchor in shape[c0][j]:
                t = anchor - v0
                if all((v + t) in shape[c][j] for c, v in cluster):
                    return LegalityResult(True, j, k, t)
    return LegalityResult(False)


# -- validation --------------------------------------------------------------------


@dataclass
class ValidationReport:
    expansive: bool
    expansive_note: str | None
    disjoint_depth: int
    delone_min_gap: float | None
    delone_max_gap: float | None
    cross_color_coincidences: int
    generating_found: bool
    notes: list[str]

    @property
    def ok(self) -> bool:
        return self.expansive and self.disjoint_depth > 0

    def to_json(self):
        return {
            "expansive": self.expansive,
            "expansive_note": self.expansive_note,
            "disjoint_depth_checked": self.disjoint_depth,
            "delone_min_gap": self.delone_min_gap,
            "delone_max_gap": self.delone_max_gap,
            "cross_color_coincidences": self.cross_color_coincidences,
            "generating_found": self.generating_found,
            "notes": self.notes,
        }


def validate_system(sys: SubstitutionSystem, check_depth: int = 6) -> ValidationReport:
    """Expansiveness (certified), disjointness of iterated unions on a seed,
    and Delone sanity on a sample window.  Hard failures raise."""
    notes: list[str] = []
    spec = sys.spectral()
    ok, msg = spec.is_expansive()
    if not ok:
        raise NonExpansiveError(msg)
    if not spec.certified:
        notes.append("spectral data not fully certified (numeric fallback)")
    gen = find_generating(sys)
    depth_checked = 0
    min_gap = max_gap = None
    coincidences = 0
    if gen.found:
        sysk = sys.power(gen.power) if gen.power > 1 else sys
        seed = gen.as_pointset(sys.m)
        # OverlapError propagates: disjointness is part of the definition
        patch = seed
        for depth in range(1, check_depth + 1):
            patch = iterate_phi(sysk, patch, 1)
            depth_checked = depth
        pts = patch.union_points()
        per_color_total = patch.total
        coincidences = per_color_total - len(pts)
        if len(pts) >= 2:
            from .geometry import min_pairwise_gap_exact, max_gap_estimate

            g = min_pairwise_gap_exact(patch)
            min_gap = float(g) if g is not None else None
            max_gap = max_gap_estimate(patch)
            if min_gap is not None and min_gap <= 0:
                raise OverlapError("coincident support points within one color")
    else:
        notes.append(gen.message or "no generating cluster found")
    return ValidationReport(
        expansive=True,
        expansive_note=None,
        disjoint_depth=depth_checked,
        delone_min_gap=min_gap,
        delone_max_gap=max_gap,
        cross_color_coincidences=coincidences,
        generating_found=gen.found,
        notes=notes,
    )
