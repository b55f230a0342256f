"""Spectral data for expansion maps: exact characteristic polynomials,
certified eigenvalue discs, the Pisot-family test, polynomial expansions of
<Q^n w, a>, the integer-matrix construction certifying algebraic integers,
and the certified separation lower bound for bounded-coefficient integer
polynomials evaluated at a Pisot number.

Certification strategy: roots are approximated with mpmath, then each
approximation gets a rigorous radius from the exact residual
|p(z)|/|lc| <= (r^deg) via exact Gaussian-rational evaluation.  Pairwise
disjoint discs then each contain exactly one root.  Comparisons against the
unit circle are exact Fraction comparisons on |center|^2 vs (1 +- r)^2,
with an exact fallback deciding |z| = 1 through the z -> 1/z symmetry of
self-reciprocal polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from mpmath import mp, mpf, polyroots, workdps

from . import polynomials as P
from .arithmetic import (
    AlgebraicContext,
    AlgebraicScalar,
    AlgebraicVector,
    FieldMatrix,
    RationalMatrix,
    mat_rank,
    parse_fraction,
)
from .errors import NotPisotError, PrecisionError, RankError
from .lattice import IntegerLattice

_DPS_LADDER = (30, 60, 120, 240)


# -- rational root helpers ----------------------------------------------------


def _log2_fraction(x: Fraction) -> float:
    """log2 of a positive rational, accurate to ~1e-12 relative."""
    n, d = x.numerator, x.denominator
    bn, bd = n.bit_length(), d.bit_length()
    mn = n / (1 << (bn - 1)) if bn > 53 else float(n)
    md = d / (1 << (bd - 1)) if bd > 53 else float(d)
    ln = math.log2(mn) + (bn - 1 if bn > 53 else 0)
    ld = math.log2(md) + (bd - 1 if bd > 53 else 0)
    return ln - ld


def sqrt_upper(x: Fraction) -> Fraction:
    """Rational u with u >= sqrt(x), tight to ~1e-12 relative."""
    if x < 0:
        raise ValueError("sqrt of negative")
    if x == 0:
        return Fraction(0)
    u = Fraction(2.0 ** (_log2_fraction(x) / 2)) * (1 + Fraction(1, 10 ** 10))
    while u * u < x:
        u *= 1 + Fraction(1, 10 ** 6)
    return u


def sqrt_lower(x: Fraction) -> Fraction:
    if x <= 0:
        return Fraction(0)
    u = Fraction(2.0 ** (_log2_fraction(x) / 2)) / (1 + Fraction(1, 10 ** 10))
    while u * u > x:
        u /= 1 + Fraction(1, 10 ** 6)
    return u


def nth_root_upper(x: Fraction, k: int) -> Fraction:
    """Rational u with u >= x^(1/k)."""
    if x < 0:
        raise ValueError("root of negative")
    if x == 0:
        return Fraction(0)
    u = Fraction(2.0 ** (_log2_fraction(x) / k)) * (1 + Fraction(1, 10 ** 9))
    while u ** k < x:
        u *= 1 + Fraction(1, 10 ** 6)
    return u


def _mp_to_fraction(x, dps: int) -> Fraction:
    return Fraction(mp.nstr(mpf(x), dps, strip_zeros=False))


# -- certified root discs ------------------------------------------------------


@dataclass
class RootDisc:
    """Closed disc certified to contain exactly one root of its polynomial."""

    re: Fraction
    im: Fraction
    radius: Fraction
    mod_vs_one: int | None = None  # -1 / 0 / +1, filled by the certifier

    @property
    def center_norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def modulus_bounds(self) -> tuple[Fraction, Fraction]:
        c = sqrt_lower(self.center_norm_sq), sqrt_upper(self.center_norm_sq)
        return max(Fraction(0), c[0] - self.radius), c[1] + self.radius

    def contains_real(self, lo: Fraction, hi: Fraction) -> bool:
        """Could a real number in [lo, hi] lie in the disc? (conservative)"""
        dre = max(self.re - hi, lo - self.re, Fraction(0))
        return dre * dre + self.im * self.im <= self.radius * self.radius

    def is_real_candidate(self) -> bool:
        return abs(self.im) <= self.radius

    def approx(self) -> complex:
        return complex(float(self.re), float(self.im))

    def intersects(self, other: "RootDisc") -> bool:
        dx, dy = self.re - other.re, self.im - other.im
        rr = self.radius + other.radius
        return dx * dx + dy * dy <= rr * rr


def _raw_root_discs(ip: Sequence[int], dps: int) -> list[RootDisc]:
    p = P.poly(ip)
    n = P.degree(p)
    if n == 1:
        return [RootDisc(Fraction(-p[0], p[1]), Fraction(0), Fraction(0))]
    discs = []
    lc2 = Fraction(int(ip[-1])) ** 2
    with workdps(dps):
        approx = polyroots([int(c) for c in reversed(ip)], maxsteps=200, extraprec=80)
        for z in approx:
            zr = _mp_to_fraction(z.real if hasattr(z, "real") else z, dps)
            zi = _mp_to_fraction(z.imag, dps) if hasattr(z, "imag") else Fraction(0)
            pr, pi = P.poly_eval_gauss(p, zr, zi)
            mag2 = pr * pr + pi * pi
            r = nth_root_upper(mag2 / lc2, 2 * n)
            discs.append(RootDisc(zr, zi, r))
    return discs


def _discs_disjoint(discs: list[RootDisc]) -> bool:
    for i in range(len(discs)):
        for j in range(i + 1, len(discs)):
            if discs[i].intersects(discs[j]):
                return False
    return True


def _is_self_reciprocal(ip: Sequence[int]) -> bool:
    rev = tuple(reversed(ip))
    return tuple(ip) == rev or tuple(-c for c in ip) == rev


def _match_unique_disc(discs: list[RootDisc], probe: RootDisc) -> int | None:
    hits = [k for k, d in enumerate(discs) if d.intersects(probe)]
    return hits[0] if len(hits) == 1 else None


def _decide_unit_positions(ip, discs: list[RootDisc]) -> bool:
    """Fill mod_vs_one on each disc; False means more precision is needed."""
    reciprocal = _is_self_reciprocal(ip)
    one = Fraction(1)
    for k, d in enumerate(discs):
        c2, r = d.center_norm_sq, d.radius
        if c2 > (one + r) ** 2:
            d.mod_vs_one = 1
        elif r < 1 and c2 < (one - r) ** 2:
            d.mod_vs_one = -1
        elif reciprocal:
            # |z| = 1  <=>  1/z = conj(z); both are roots here, so compare discs
            conj_probe = RootDisc(d.re, -d.im, r)
            j_conj = _match_unique_disc(discs, conj_probe)
            clo = sqrt_lower(c2)
            if clo <= r:
                return False  # disc too coarse to invert
            inv_norm = c2
            inv_center_re = d.re / inv_norm
            inv_center_im = -d.im / inv_norm
            inv_radius = r / (clo * (clo - r)) if clo > r else None
            if inv_radius is None:
                return False
            inv_probe = RootDisc(inv_center_re, inv_center_im, inv_radius)
            j_inv = _match_unique_disc(discs, inv_probe)
            if j_conj is None or j_inv is None:
                return False
            if j_conj == j_inv:
                d.mod_vs_one = 0
            else:
                return False  # modulus != 1 but undecided: refine
        else:
            return False
    return True


_TARGET_RADIUS = Fraction(1, 10 ** 10)


def certify_factor_roots(ip: Sequence[int]) -> list[RootDisc]:
    """Certified, pairwise-disjoint root discs (radius <= 1e-10) with
    unit-circle positions decided."""
    last_exc = None
    for dps in _DPS_LADDER:
        try:
            discs = _raw_root_discs(ip, dps)
        except Exception as e:  # mpmath NoConvergence
            last_exc = e
            continue
        if any(d.radius > _TARGET_RADIUS for d in discs):
            continue
        if not _discs_disjoint(discs):
            continue
        if _decide_unit_positions(ip, discs):
            return discs
    raise PrecisionError(
        f"could not certify roots of {P.poly_str(P.poly(ip))} at dps<= {_DPS_LADDER[-1]}"
        + (f" ({last_exc})" if last_exc else "")
    )


# -- minimal polynomials of field elements ------------------------------------


def multiplication_matrix(a: AlgebraicScalar) -> RationalMatrix:
    """Matrix of x -> a*x on the power basis of the generator context."""
    ctx = a.context
    cols = []
    power = ctx.one()
    for _ in range(ctx.degree):
        cols.append((a * power).coeffs)
        power = power * ctx.theta()
    return RationalMatrix([[cols[j][i] for j in range(ctx.degree)] for i in range(ctx.degree)])


def poly_eval_scalar(p: Sequence, a: AlgebraicScalar) -> AlgebraicScalar:
    acc = a.context.zero()
    for c in reversed(list(p)):
        acc = acc * a + a.context.scalar(parse_fraction(c))
    return acc


def minimal_polynomial(a: AlgebraicScalar) -> tuple[int, ...]:
    """Primitive integer minimal polynomial of a over Q."""
    if a.is_rational():
        v = a.as_fraction()
        return (int(-v.numerator), int(v.denominator))
    cp = multiplication_matrix(a).charpoly()
    _, factors = P.factor(cp)
    for f, _ in factors:
        if poly_eval_scalar(f, a).is_zero():
            return tuple(int(c) for c in f)
    raise PrecisionError("no factor of the multiplication matrix vanishes at the scalar")


def designated_disc_index(a: AlgebraicScalar, discs: list[RootDisc]) -> int:
    """Which certified root disc holds this (real) scalar.  Exact."""
    width = Fraction(1, 2 ** 20)
    for _ in range(60):
        lo, hi = a.enclosure(width)
        hits = [k for k, d in enumerate(discs) if d.contains_real(lo, hi)]
        if len(hits) == 1:
            return hits[0]
        width /= 2 ** 10
    raise PrecisionError("could not match scalar to a unique root disc")


# -- spectral data -------------------------------------------------------------


@dataclass
class EigenvalueRecord:
    factor_index: int
    root_index: int          # index into the factor's disc list
    disc: RootDisc
    multiplicity: int        # algebraic multiplicity in Q
    block_sizes: tuple[int, ...]
    exact: AlgebraicScalar | None = None

    @property
    def approx(self) -> complex:
        return self.disc.approx()


@dataclass
class SpectralData:
    dim: int
    reported_poly: tuple[int, ...]
    reported_kind: str                       # charpoly | scalar_minpoly | numeric
    charpoly_rational: P.Coeffs | None
    factors: list[tuple[tuple[int, ...], int]]
    factor_discs: list[list[RootDisc]]
    spectrum_flags: list[list[bool]]         # per factor root: eigenvalue of Q?
    records: list[EigenvalueRecord]
    K: int
    certified: bool
    notes: list[str] = field(default_factory=list)

    def eigenvalue_approxes(self) -> list[complex]:
        return [r.approx for r in self.records]

    def min_modulus_lower(self) -> float:
        out = math.inf
        for r in self.records:
            lo, _ = r.disc.modulus_bounds()
            out = min(out, float(lo))
        return out

    def is_expansive(self) -> tuple[bool, str | None]:
        for rec in self.records:
            pos = rec.disc.mod_vs_one
            if pos is None or pos <= 0:
                lo, hi = rec.disc.modulus_bounds()
                return False, (
                    f"eigenvalue near {rec.approx:.6g} has modulus in "
                    f"[{float(lo):.6g}, {float(hi):.6g}] (not certified > 1)"
                )
        return True, None

    def to_json(self):
        return {
            "reported_poly": list(self.reported_poly),
            "reported_kind": self.reported_kind,
            "factors": [
                {"poly": list(f), "multiplicity": m} for f, m in self.factors
            ],
            "eigenvalues": [
                {
                    "approx": [float(r.disc.re), float(r.disc.im)],
                    "radius": float(r.disc.radius),
                    "multiplicity": r.multiplicity,
                    "blocks": list(r.block_sizes),
                    "factor": r.factor_index,
                }
                for r in self.records
            ],
            "K": self.K,
            "certified": self.certified,
            "notes": self.notes,
        }


def _block_sizes_from_ranks(ranks: list[int], dim: int, mult: int) -> tuple[int, ...]:
    # ranks[k] = rank((Q - lambda I)^k), ranks[0] = dim
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(1, len(ge) + 1):
        exact_k = ge[k - 1] - (ge[k] if k < len(ge) else 0)
        sizes.extend([k] * exact_k)
    sizes.sort(reverse=True)
    assert sum(sizes) == mult, "Jordan structure bookkeeping failed"
    return tuple(sizes)


def _jordan_blocks_rational_eigen(q: RationalMatrix, lam: Fraction, mult: int) -> tuple[int, ...]:
    d = q.nrows
    shifted = RationalMatrix(
        [[q.rows[i][j] - (lam if i == j else 0) for j in range(d)] for i in range(d)]
    )
    ranks = [d]
    power = RationalMatrix.identity(d)
    while len(ranks) <= mult:
        power = power @ shifted
        ranks.append(mat_rank(power.rows))
        if len(ranks) > 1 and ranks[-1] == ranks[-2]:
            break
    return _block_sizes_from_ranks(ranks, d, mult)


def _jordan_blocks_field_eigen(
    q_rows, ctx: AlgebraicContext, lam: AlgebraicScalar, mult: int
) -> tuple[int, ...]:
    d = len(q_rows)
    shifted = [
        [q_rows[i][j] - (lam if i == j else ctx.zero()) for j in range(d)]
        for i in range(d)
    ]
    ranks = [d]
    power = [[ctx.one() if i == j else ctx.zero() for j in range(d)] for i in range(d)]
    from .arithmetic import mat_mul

    while len(ranks) <= mult:
        power = mat_mul(power, shifted)
        ranks.append(mat_rank(power))
        if len(ranks) > 1 and ranks[-1] == ranks[-2]:
            break
    return _block_sizes_from_ranks(ranks, d, mult)


def _jordan_blocks_numeric(qf: np.ndarray, lam: complex, mult: int) -> tuple[int, ...]:
    d = qf.shape[0]
    shifted = qf - lam * np.eye(d)
    ranks = [d]
    power = np.eye(d, dtype=complex)
    for _ in range(mult):
        power = power @ shifted
        ranks.append(int(np.linalg.matrix_rank(power, tol=1e-8)))
        if ranks[-1] == ranks[-2]:
            break
    return _block_sizes_from_ranks(ranks, d, mult)


def isolate_real_roots(f: Sequence[int]) -> list[AlgebraicContext]:
    """Exact Sturm-bisection isolation of all real roots of an irreducible
    integer polynomial; each root becomes a field context."""
    fp = P.poly(f)
    if P.degree(fp) == 1:
        root = Fraction(-fp[0], fp[1])
        return [AlgebraicContext.get(f, root, root)] if fp[1] == 1 else []
    bound = P.cauchy_root_bound(fp) + 1
    total = P.count_real_roots(fp, -bound, bound)
    segments = [(-bound, bound, total)]
    done = []
    while segments:
        lo, hi, cnt = segments.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            done.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        while P.poly_eval(fp, mid) == 0:
            mid += (hi - lo) / 257  # irreducible deg>=2 has no rational roots
        left = P.count_real_roots(fp, lo, mid)
        segments.append((lo, mid, left))
        segments.append((mid, hi, cnt - left))
    return [AlgebraicContext.get(f, lo, hi) for lo, hi in sorted(done)]


def _real_root_for_disc(f: tuple[int, ...], discs: list[RootDisc], idx: int) -> AlgebraicContext | None:
    """The exact real root living in discs[idx], or None if that root is complex."""
    for ctx in isolate_real_roots(f):
        if designated_disc_index(ctx.theta(), discs) == idx:
            return ctx
    return None


def analyze_rational(q: RationalMatrix) -> SpectralData:
    """Full exact spectral analysis of a rational square matrix."""
    d = q.nrows
    cp = q.charpoly()
    unit, factors = P.factor(cp)
    factor_discs = [certify_factor_roots(f) for f, _ in factors]
    records: list[EigenvalueRecord] = []
    notes: list[str] = []
    certified = True
    for fi, ((f, mult), discs) in enumerate(zip(factors, factor_discs)):
        for ri, disc in enumerate(discs):
            if mult == 1:
                blocks = (1,)
            else:
                if P.degree(P.poly(f)) == 1:
                    lam = Fraction(-f[0], f[1])
                    blocks = _jordan_blocks_rational_eigen(q, lam, mult)
                else:
                    root_ctx = (
                        _real_root_for_disc(f, discs, ri)
                        if disc.is_real_candidate()
                        else None
                    )
                    if root_ctx is not None:
                        qf_rows = [[root_ctx.scalar(x) for x in row] for row in q.rows]
                        blocks = _jordan_blocks_field_eigen(
                            qf_rows, root_ctx, root_ctx.theta(), mult
                        )
                    else:
                        blocks = _jordan_blocks_numeric(
                            np.array(q.floats()), disc.approx(), mult
                        )
                        notes.append(
                            f"jordan blocks for complex eigenvalue near "
                            f"{disc.approx():.4g} from numeric rank (tol 1e-8)"
                        )
                        certified = False
            records.append(
                EigenvalueRecord(
                    factor_index=fi,
                    root_index=ri,
                    disc=disc,
                    multiplicity=mult,
                    block_sizes=blocks,
                )
            )
    K = max(max(r.block_sizes) for r in records) - 1
    ip = P.primitive_part(cp)
    return SpectralData(
        dim=d,
        reported_poly=ip,
        reported_kind="charpoly",
        charpoly_rational=cp,
        factors=factors,
        factor_discs=factor_discs,
        spectrum_flags=[[True] * len(ds) for ds in factor_discs],
        records=records,
        K=K,
        certified=certified,
        notes=notes,
    )


def analyze_scalar_expansion(a: AlgebraicScalar, dim: int) -> SpectralData:
    """Spectral data of Q = a * Identity (dim x dim), a irrational allowed."""
    f = minimal_polynomial(a)
    discs = certify_factor_roots(f)
    idx = designated_disc_index(a, discs)
    flags = [i == idx for i in range(len(discs))]
    rec = EigenvalueRecord(
        factor_index=0,
        root_index=idx,
        disc=discs[idx],
        multiplicity=dim,
        block_sizes=(1,) * dim,
        exact=a,
    )
    return SpectralData(
        dim=dim,
        reported_poly=f,
        reported_kind="scalar_minpoly",
        charpoly_rational=None,
        factors=[(f, dim)],
        factor_discs=[discs],
        spectrum_flags=[flags],
        records=[rec],
        K=0,
        certified=True,
    )


def analyze_numeric(qf: np.ndarray) -> SpectralData:
    """Uncertified fallback for expansions outside the exact cases."""
    d = qf.shape[0]
    eigvals = np.linalg.eigvals(qf)
    records = []
    discs = []
    for ev in eigvals:
        disc = RootDisc(
            Fraction(float(ev.real)).limit_denominator(10 ** 12),
            Fraction(float(ev.imag)).limit_denominator(10 ** 12),
            Fraction(1, 10 ** 9),
        )
        lo, hi = disc.modulus_bounds()
        disc.mod_vs_one = 1 if lo > 1 else (-1 if hi < 1 else None)
        discs.append(disc)
    for i, disc in enumerate(discs):
        records.append(
            EigenvalueRecord(
                factor_index=0,
                root_index=i,
                disc=disc,
                multiplicity=1,
                block_sizes=(1,),
            )
        )
    return SpectralData(
        dim=d,
        reported_poly=(),
        reported_kind="numeric",
        charpoly_rational=None,
        factors=[],
        factor_discs=[discs],
        spectrum_flags=[[True] * len(discs)],
        records=records,
        K=d - 1,
        certified=False,
        notes=["numeric-only spectral data: eigenvalues from float eigensolver"],
    )


def analyze_expansion(q) -> SpectralData:
    """Dispatch: rational matrix, scalar multiple of identity, or numeric."""
    if isinstance(q, RationalMatrix):
        return analyze_rational(q)
    if isinstance(q, FieldMatrix):
        if q.is_rational():
            return analyze_rational(q.to_rational())
        diag = q.is_scalar_multiple_of_identity()
        if diag is not None:
            return analyze_scalar_expansion(diag, q.nrows)
        cp = q.charpoly()
        if all(c.is_rational() for c in cp):
            return analyze_rational_from_charpoly(q, P.poly([c.as_fraction() for c in cp]))
        return analyze_numeric(np.array(q.floats()))
    raise TypeError(f"unsupported expansion type {type(q)!r}")


def analyze_rational_from_charpoly(q: FieldMatrix, cp: P.Coeffs) -> SpectralData:
    """Irrational entries but rational charpoly: certified values, simple
    eigenvalues get exact blocks, repeated ones fall back to numeric rank."""
    d = q.nrows
    unit, factors = P.factor(cp)
    factor_discs = [certify_factor_roots(f) for f, _ in factors]
    records = []
    notes = []
    certified = True
    qf = np.array(q.floats())
    for fi, ((f, mult), discs) in enumerate(zip(factors, factor_discs)):
        for ri, disc in enumerate(discs):
            if mult == 1:
                blocks = (1,)
            else:
                blocks = _jordan_blocks_numeric(qf, disc.approx(), mult)
                notes.append("numeric jordan ranks for repeated eigenvalue")
                certified = False
            records.append(EigenvalueRecord(fi, ri, disc, mult, blocks))
    K = max(max(r.block_sizes) for r in records) - 1
    return SpectralData(
        dim=d,
        reported_poly=P.primitive_part(cp),
        reported_kind="charpoly",
        charpoly_rational=cp,
        factors=factors,
        factor_discs=factor_discs,
        spectrum_flags=[[True] * len(ds) for ds in factor_discs],
        records=records,
        K=K,
        certified=certified,
        notes=notes,
    )


# -- spec-facing operations ----------------------------------------------------


def char_poly(q) -> tuple[tuple[int, ...], str]:
    """Exact reported polynomial of the expansion: the rational characteristic
    polynomial when Q is rational, else the minimal polynomial of the scalar
    for scalar expansions.  Returns (primitive integer coeffs, kind)."""
    spec = analyze_expansion(q)
    if spec.reported_kind == "numeric":
        raise PrecisionError("no exact characteristic polynomial available")
    return spec.reported_poly, spec.reported_kind


def factor_charpoly(p: Sequence) -> tuple[Fraction, list[tuple[tuple[int, ...], int]]]:
    """Irreducible factorization over Q; exact mode capped at degree 6."""
    pl = P.poly([parse_fraction(c) for c in p])
    if P.degree(pl) > P.FACTOR_DEGREE_CAP:
        raise PrecisionError(
            f"degree {P.degree(pl)} beyond exact factorization cap "
            f"{P.FACTOR_DEGREE_CAP}; numeric-only mode"
        )
    unit, factors = P.factor(pl)
    return unit, [(tuple(int(c) for c in f), m) for f, m in factors]


@dataclass
class PisotFamilyVerdict:
    verdict: str  # pisot_family | not_pisot_family
    witnesses: list[dict]
    margins: list[tuple[float, float]]
    certified: bool
    notes: list[str] = field(default_factory=list)

    @property
    def is_pisot_family(self) -> bool:
        return self.verdict == "pisot_family"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "margins": [[a, b] for a, b in self.margins],
            "certified": self.certified,
            "notes": self.notes,
        }


def pisot_family_check(spec: SpectralData) -> PisotFamilyVerdict:
    """Do all conjugates of eigenvalues with modulus >= 1 occur as eigenvalues?"""
    witnesses = []
    margins = []
    notes = list(spec.notes)
    if spec.reported_kind == "numeric":
        notes.append("verdict from uncertified numeric data")
    for fi, discs in enumerate(spec.factor_discs):
        flags = spec.spectrum_flags[fi]
        for ri, disc in enumerate(discs):
            if disc.mod_vs_one is None:
                raise PrecisionError(
                    "conjugate modulus vs 1 undecided; raise precision"
                )
            if disc.mod_vs_one >= 0 and not flags[ri]:
                lo, hi = disc.modulus_bounds()
                witnesses.append(
                    {
                        "factor": fi,
                        "conjugate_approx": [float(disc.re), float(disc.im)],
                        "modulus_bounds": [float(lo), float(hi)],
                    }
                )
                margins.append((float(lo), float(hi)))
    verdict = "not_pisot_family" if witnesses else "pisot_family"
    return PisotFamilyVerdict(verdict, witnesses, margins, spec.certified, notes)


def is_pisot_scalar(a: AlgebraicScalar) -> tuple[bool, str | None]:
    """Is a a Pisot number: real algebraic integer > 1, conjugates inside
    the open unit disc."""
    f = minimal_polynomial(a)
    if f[-1] != 1:
        return False, "not an algebraic integer (minimal polynomial not monic)"
    if not (a - 1).sign() > 0:
        return False, "not greater than 1"
    discs = certify_factor_roots(f)
    idx = designated_disc_index(a, discs)
    for k, d in enumerate(discs):
        if k == idx:
            continue
        if d.mod_vs_one is None or d.mod_vs_one >= 0:
            lo, hi = d.modulus_bounds()
            return False, f"conjugate with modulus in [{float(lo):.6g}, {float(hi):.6g}]"
    return True, None


# -- polynomial expansion of <Q^n w, alpha> ------------------------------------


@dataclass
class JordanExpansion:
    eigenvalues: list[complex]
    coefficients: list[list[complex]]  # per eigenvalue, degree-major (c_0..c_k)
    exact: bool
    residuals: list[float]
    growth: float  # max |eigenvalue|
    condition_note: str | None = None

    def evaluate(self, n: int) -> complex:
        total = 0j
        for lam, cs in zip(self.eigenvalues, self.coefficients):
            pval = sum(c * (n ** k) for k, c in enumerate(cs))
            total += pval * (lam ** n)
        return total


def _sequence_exact(q: RationalMatrix, w, alpha, count: int) -> list[Fraction]:
    vec = [parse_fraction(x) for x in w]
    al = [parse_fraction(x) for x in alpha]
    out = []
    for _ in range(count):
        out.append(sum(a * b for a, b in zip(vec, al)))
        vec = [sum(q.rows[i][j] * vec[j] for j in range(len(vec))) for i in range(len(vec))]
    return out


def jordan_expansion(q, w, alpha, validate_n: int | None = None) -> JordanExpansion:
    """Coefficients of the per-eigenvalue polynomials P_i with
    <Q^n w, alpha> = sum_i P_i(n) lambda_i^n, deg P_i < max block size."""
    spec = analyze_expansion(q)
    if isinstance(q, FieldMatrix) and q.is_rational():
        q = q.to_rational()
    eigen = []
    for rec in spec.records:
        kmax = max(rec.block_sizes)
        eigen.append((rec, kmax))
    t = sum(k for _, k in eigen)
    d = spec.dim
    n_validate = validate_n if validate_n is not None else 2 * d + 2
    count = max(t, n_validate + 1)

    def _all_exact(xs):
        try:
            for x in xs:
                parse_fraction(x)
            return True
        except Exception:
            return False

    rational_path = (
        isinstance(q, RationalMatrix)
        and all(rec.disc.radius == 0 and rec.disc.im == 0 for rec, _ in eigen)
        and _all_exact(list(w) + list(alpha))
    )

    if rational_path:
        seq = _sequence_exact(q, w, alpha, count)
        cols = []
        lams = [rec.disc.re for rec, _ in eigen]
        for (rec, kmax), lam in zip(eigen, lams):
            for k in range(kmax):
                cols.append((lam, k))
        rows = [[(lam ** n) * Fraction(n ** k) for (lam, k) in cols] for n in range(t)]
        from .arithmetic import mat_inverse

        inv = mat_inverse(rows, Fraction(1), Fraction(0))
        sol = [sum(inv[i][j] * seq[j] for j in range(t)) for i in range(t)]
        coeffs = []
        pos = 0
        for rec, kmax in eigen:
            coeffs.append([complex(float(sol[pos + k]), 0.0) for k in range(kmax)])
            pos += kmax
        expansion = JordanExpansion(
            eigenvalues=[complex(float(l), 0.0) for l in lams],
            coefficients=coeffs,
            exact=True,
            residuals=[],
            growth=max(abs(float(l)) for l in lams),
        )
        # exact residual check
        resid = []
        pos = 0
        for n in range(count):
            val = Fraction(0)
            p0 = 0
            for (rec, kmax), lam in zip(eigen, lams):
                pv = sum(sol[p0 + k] * Fraction(n ** k) for k in range(kmax))
                val += pv * lam ** n
                p0 += kmax
            resid.append(abs(float(val - seq[n])))
        expansion.residuals = resid
        return expansion

    # numeric path at elevated precision
    with workdps(60):
        lam_vals = []
        for rec, kmax in eigen:
            re_f = mp.mpf(rec.disc.re.numerator) / mp.mpf(rec.disc.re.denominator)
            im_f = mp.mpf(rec.disc.im.numerator) / mp.mpf(rec.disc.im.denominator)
            lam_vals.append(mp.mpc(re_f, im_f))
        qf = np.array(q.floats() if hasattr(q, "floats") else q, dtype=float)

        def _tofloat(x):
            return float(parse_fraction(x)) if isinstance(x, (int, Fraction, str)) else float(x)

        wv = np.array([_tofloat(x) for x in w])
        av = np.array([_tofloat(x) for x in alpha])
        seq = []
        cur = wv.copy()
        for _ in range(count):
            seq.append(float(av @ cur))
            cur = qf @ cur
        cols = []
        for (rec, kmax), lam in zip(eigen, lam_vals):
            for k in range(kmax):
                cols.append((lam, k))
        amat = mp.matrix(t, t)
        for n in range(t):
            for j, (lam, k) in enumerate(cols):
                amat[n, j] = (lam ** n) * (n ** k)
        rhs = mp.matrix([seq[n] for n in range(t)])
        sol = mp.lu_solve(amat, rhs)
        coeffs = []
        pos = 0
        for rec, kmax in eigen:
            coeffs.append([complex(sol[pos + k]) for k in range(kmax)])
            pos += kmax
    lams_c = [complex(l) for l in lam_vals]
    growth = max(abs(l) for l in lams_c)
    exp = JordanExpansion(
        eigenvalues=lams_c,
        coefficients=coeffs,
        exact=False,
        residuals=[],
        growth=growth,
    )
    resid = [abs(exp.evaluate(n) - seq[n]) for n in range(count)]
    exp.residuals = resid
    worst = max(r / (growth ** n if growth > 1 else 1.0) for n, r in enumerate(resid))
    if worst > 1e-9:
        exp.condition_note = f"normalized residual {worst:.3g}; jordan basis ill-conditioned"
    return exp


# -- algebraic integer construction --------------------------------------------


@dataclass
class AlgebraicIntegerCertificate:
    ok: bool
    matrix: list[list[int]] | None
    basis: list[AlgebraicVector] | None
    witness: dict | None

    def to_json(self):
        return {
            "ok": self.ok,
            "matrix": self.matrix,
            "witness": self.witness,
        }


def coefficient_rows(vectors: Sequence[AlgebraicVector]) -> tuple[list[list[int]], int]:
    """Flatten vectors to integer rows in coefficient space (common denominator)."""
    den = 1
    for v in vectors:
        for e in v.entries:
            for c in e.coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
    rows = []
    for v in vectors:
        row = []
        for e in v.entries:
            for c in e.coeffs:
                row.append(int(c * den))
        rows.append(row)
    return rows, den


def algebraic_integer_check(generators: Sequence[AlgebraicVector], q) -> AlgebraicIntegerCertificate:
    """Solve Q g_i = sum_j M_ij g_j exactly over the group generated by the
    generators.  Success certifies that all eigenvalues of Q are algebraic
    integers (they are eigenvalues of the integer matrix M)."""
    gens = list(generators)
    if not gens:
        raise RankError("no generators")
    ctx = gens[0].context
    d = gens[0].dim
    field_rows = [[e for e in v.entries] for v in gens]
    if mat_rank([[*row] for row in zip(*field_rows)]) < d:
        raise RankError("generators do not span the ambient space")
    if isinstance(q, RationalMatrix):
        qm = FieldMatrix.from_rational(q, ctx)
    else:
        qm = q
    rows, den = coefficient_rows(gens)
    ncols = len(rows[0])
    lat = IntegerLattice(ncols)
    lat.extend(rows)
    # basis vectors of the group, lifted back to algebraic vectors
    s = ctx.degree
    basis_vecs = []
    for brow in lat.basis():
        entries = []
        for i in range(d):
            coeffs = [Fraction(brow[i * s + k], den) for k in range(s)]
            entries.append(ctx.from_coeffs(coeffs))
        basis_vecs.append(AlgebraicVector(tuple(entries)))
    m_rows = []
    for bi, bvec in enumerate(basis_vecs):
        img = qm.apply(bvec)
        img_row, img_den = coefficient_rows([img])
        scaled = [Fraction(x, img_den) * den for x in img_row[0]]
        coords = lat.membership(scaled)
        if coords is None:
            frac_coords = lat.coordinates(scaled)
            return AlgebraicIntegerCertificate(
                ok=False,
                matrix=None,
                basis=basis_vecs,
                witness={
                    "basis_index": bi,
                    "image": [float(e) for e in img.entries],
                    "coordinates": [str(c) for c in frac_coords] if frac_coords else None,
                },
            )
        m_rows.append(coords)
    return AlgebraicIntegerCertificate(
        ok=True, matrix=m_rows, basis=basis_vecs, witness=None
    )


# -- separation bound ----------------------------------------------------------


@dataclass
class SeparationCertificate:
    minpoly: tuple[int, ...]
    coeff_bound: int
    degree_cap: int
    b_multiplier: int
    conjugate_bounds: list[Fraction]  # certified upper bounds, all < 1
    per_conjugate_sum: list[Fraction]
    c2: Fraction
    l_count: int
    h_count: int
    lower_bound: Fraction

    def to_json(self):
        return {
            "minpoly": list(self.minpoly),
            "coeff_bound": self.coeff_bound,
            "degree_cap": self.degree_cap,
            "b": self.b_multiplier,
            "conjugate_bounds": [str(t) for t in self.conjugate_bounds],
            "C2": str(self.c2),
            "L": self.l_count,
            "H": self.h_count,
            "lower_bound": str(self.lower_bound),
            "lower_bound_float": float(self.lower_bound),
        }


def separation_bound(
    lam: AlgebraicScalar, coeff_bound: int = 1, poly_degree_cap: int = 0, b: int = 1
) -> SeparationCertificate:
    """Certified positive lower bound for |S(lam)| over nonzero values of
    integer polynomials S(x) = sum_{n,k} a_{n,k} n^k x^n with |a_{n,k}| <=
    coeff_bound, k <= poly_degree_cap, any length.

    The argument is the conjugate-product one: the norm of S(lam) is a
    nonzero rational integer, and every other conjugate contributes at most
    C * sum_k sum_n n^k t^n with t a certified upper bound (< 1) on its
    modulus, so |S(lam)| >= 1 / prod(contributions).
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    ok, reason = is_pisot_scalar(lam)
    if not ok:
        raise NotPisotError(f"separation bound requires a Pisot number: {reason}")
    f = minimal_polynomial(lam)
    discs = certify_factor_roots(f)
    idx = designated_disc_index(lam, discs)
    conj_bounds: list[Fraction] = []
    for k, d in enumerate(discs):
        if k == idx:
            continue
        _, hi = d.modulus_bounds()
        if hi >= 1:
            # positions certified < 1 by is_pisot_scalar, but the certified
            # numeric upper bound may still exceed 1: tighten via re-certify
            raise PrecisionError("conjugate modulus bound not below 1; raise precision")
        conj_bounds.append(hi)
    sums = []
    for t in conj_bounds:
        total = sum(
            P.power_weighted_geometric_sum(k, t) for k in range(poly_degree_cap + 1)
        )
        sums.append(coeff_bound * total)
    prod = Fraction(1)
    for sval in sums:
        prod *= sval
    lower = Fraction(1, b) / prod
    return SeparationCertificate(
        minpoly=f,
        coeff_bound=coeff_bound,
        degree_cap=poly_degree_cap,
        b_multiplier=b,
        conjugate_bounds=conj_bounds,
        per_conjugate_sum=sums,
        c2=max(sums) if sums else Fraction(1),
        l_count=len(conj_bounds),
        h_count=1,
        lower_bound=lower,
    )
