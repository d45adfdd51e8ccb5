"""Exact rational convex polytope engine.

Converts between vertex (V) and facet (H) representations of convex polytopes
using the incremental double description method, entirely over exact rational
arithmetic.  No floating point is used anywhere in this module.

H-representation rows (b, a) encode the half-space b + a.x >= 0; linearity
rows encode b + a.x = 0.  This matches the "b  -A" layout of the interchange
format (A.x <= b written with the constant first and the negated coefficient
row after it).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rat = Fraction


@dataclass(frozen=True)
class VRep:
    dimension: int
    points: tuple

    def __post_init__(self):
        if not self.points:
            raise ValueError("V-representation must contain at least one point")
        for p in self.points:
            if len(p) != self.dimension:
                raise ValueError("point length does not match dimension")


@dataclass(frozen=True)
class HRep:
    dimension: int
    inequalities: tuple  # tuples (b, a1, .., am): b + a.x >= 0
    linearities: tuple   # tuples (b, a1, .., am): b + a.x = 0


def _normalize_row(row):
    """Scale a rational row to coprime integers, preserving orientation."""
    denom = 1
    for x in row:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero row")
    return tuple(x // g for x in ints)


def _rref(rows, ncols):
    """Reduced row echelon form over Fraction. Returns (rref rows, pivot cols)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank], pivots


# ---------------------------------------------------------------------------
# double description core
# ---------------------------------------------------------------------------

def _dd_cone(dim, constraints):
    """Extreme rays of {y in R^dim : c.y >= 0 (or = 0) for all constraints}.

    constraints: list of (vector, is_equality).  Returns (rays, lineality)
    where rays are coprime-integer tuples each paired with nothing (the zero
    sets are internal), and lineality is a basis of the final lineality space.
    """
    lineality = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays = []     # list of [vector tuple, zero-set bitmask]
    nproc = 0     # number of inequality constraints processed (bitmask width)
    neqpiv = 0    # independent equality constraints absorbed so far

    for cvec, is_eq in constraints:
        cvec = tuple(cvec)
        # try to pivot a lineality vector out
        pivot = None
        for idx, u in enumerate(lineality):
            if _dot(cvec, u) != 0:
                pivot = idx
                break
        if pivot is not None:
            u = lineality.pop(pivot)
            du = _dot(cvec, u)
            lineality = [_combine(v, _dot(cvec, v), u, du) for v in lineality]
            for r in rays:
                r[0] = _combine_keep(r[0], _dot(cvec, r[0]), u, du)
            if is_eq:
                neqpiv += 1
            else:
                # the adjustment put every existing ray on this constraint's
                # hyperplane, so they all gain the new tight bit; the new ray
                # (the pivoted lineality direction) is tight for everything
                # processed before but strictly feasible for this constraint
                bit = 1 << nproc
                for r in rays:
                    r[1] |= bit
                w = u if du > 0 else tuple(-x for x in u)
                rays.append([w, bit - 1])
                nproc += 1
            continue

        dots = [_dot(cvec, r[0]) for r in rays]
        pos = [i for i, d in enumerate(dots) if d > 0]
        neg = [i for i, d in enumerate(dots) if d < 0]
        zer = [i for i, d in enumerate(dots) if d == 0]

        # dimension of the pointed quotient the rays live in
        effdim = dim - len(lineality) - neqpiv
        if is_eq:
            keep = [rays[i] for i in zer]
            new = _combinations(rays, dots, pos, neg, effdim, extra_bit=None)
            rays = keep + new
        else:
            bit = 1 << nproc
            for i in zer:
                rays[i][1] |= bit
            new = _combinations(rays, dots, pos, neg, effdim, extra_bit=bit)
            rays = [rays[i] for i in pos + zer] + new
            nproc += 1
    return [r[0] for r in rays], lineality


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _combine(v, dv, u, du):
    # v' = v - (dv/du) u, scaled to coprime integers (orientation irrelevant)
    w = tuple(du * x - dv * y for x, y in zip(v, u))
    return _int_reduce(w)


def _combine_keep(v, dv, u, du):
    # same, but keep the orientation of v
    w = tuple(du * x - dv * y for x, y in zip(v, u))
    if du < 0:
        w = tuple(-x for x in w)
    return _int_reduce(w)


def _int_reduce(w):
    g = 0
    for x in w:
        g = gcd(g, abs(x))
    if g > 1:
        w = tuple(x // g for x in w)
    return w


def _combinations(rays, dots, pos, neg, effdim, extra_bit):
    """New rays from adjacent (positive, negative) pairs."""
    if not pos or not neg:
        return []
    masks = [r[1] for r in rays]
    inv = [~z for z in masks]
    # witnesses against adjacency are rays whose zero set contains the common
    # zero set of the pair; scan large zero sets first to find them quickly
    order = sorted(range(len(masks)), key=lambda k: -masks[k].bit_count())
    new = []
    # adjacency needs common tight constraints of rank effdim-2, hence at
    # least that many of them
    minpop = max(0, effdim - 2)
    for ip in pos:
        zp = masks[ip]
        dp = dots[ip]
        vp = rays[ip][0]
        for im in neg:
            mask = zp & masks[im]
            if mask.bit_count() < minpop:
                continue
            adjacent = True
            for k in order:
                if k != ip and k != im and mask & inv[k] == 0:
                    adjacent = False
                    break
            if not adjacent:
                continue
            dm = dots[im]
            vm = rays[im][0]
            w = _int_reduce(tuple(dp * y - dm * x for x, y in zip(vp, vm)))
            z = mask if extra_bit is None else mask | extra_bit
            new.append([w, z])
    return new


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def hull(v: VRep) -> HRep:
    """Minimal H-representation of conv(points): linearities for the affine
    hull's codimension, then exactly the facets via double description."""
    points = []
    seen = set()
    for p in v.points:
        key = tuple(Fraction(x) for x in p)
        if key not in seen:
            seen.add(key)
            points.append(key)
    m = v.dimension

    # affine hull: null space of the [1 | p] matrix gives one linearity row
    # per codimension
    rref, pivots = _rref([(Fraction(1),) + p for p in points], m + 1)
    pivset = set(pivots)
    linearities = []
    for col in range(m + 1):
        if col in pivset:
            continue
        vec = [Fraction(0)] * (m + 1)
        vec[col] = Fraction(1)
        for rr, pc in zip(rref, pivots):
            vec[pc] = -rr[col]
        linearities.append(tuple(vec))

    # affine rank r: dimension of the polytope
    r = len(rref) - 1
    if r <= 0:
        return canonicalize(HRep(m, (), tuple(linearities)))

    # parametrize the affine hull by r coordinates on which the difference
    # vectors have full rank
    p0 = points[0]
    diffs = [tuple(x - y for x, y in zip(p, p0)) for p in points[1:]]
    _, cols = _rref(diffs, m)
    reduced = [tuple(p[j] - p0[j] for j in cols) for p in points]

    # facets of the full-dimensional reduced polytope = extreme rays of the
    # cone of valid inequalities {(b,a) : b + a.w >= 0 for all vertices w}
    constraints = [(_normalize_row((Fraction(1),) + w), False) for w in reduced]
    rays, lin = _dd_cone(r + 1, constraints)
    assert not lin, "dual cone of a full-dimensional polytope is pointed"

    inequalities = []
    for ray in rays:
        beta, alpha = ray[0], ray[1:]
        if all(x == 0 for x in alpha):
            continue  # the trivial valid inequality 1 >= 0
        a = [Fraction(0)] * m
        for j, x in zip(cols, alpha):
            a[j] = Fraction(x)
        b = Fraction(beta) - sum(Fraction(x) * p0[j] for j, x in zip(cols, alpha))
        inequalities.append((b, *a))
    return canonicalize(HRep(m, tuple(inequalities), tuple(linearities)))


def vertices(h: HRep) -> VRep:
    """Exact extreme points of a bounded H-polytope."""
    m = h.dimension
    constraints = [((1,) + (0,) * m, False)]  # homogenization: t >= 0
    for row in h.linearities:
        constraints.append((_normalize_row(row), True))
    for row in h.inequalities:
        constraints.append((_normalize_row(row), False))
    rays, lin = _dd_cone(m + 1, constraints)
    if lin:
        raise ValueError("polyhedron contains a line: " + str(lin[0]))
    points = set()
    for ray in rays:
        t = ray[0]
        if t == 0:
            raise ValueError("unbounded polyhedron, recession ray "
                             + str(ray[1:]))
        points.add(tuple(Fraction(x, t) for x in ray[1:]))
    if not points:
        raise ValueError("infeasible H-representation (empty polytope)")
    return VRep(m, tuple(sorted(points)))


def canonicalize(h: HRep) -> HRep:
    """Canonical form: linearity rows in reduced echelon form with coprime
    integer entries and positive leading coefficient; inequality rows reduced
    modulo the linearity space, scaled to coprime integers, deduplicated, and
    sorted.  Idempotent; two H-representations describe the same polytope with
    the same affine hull iff their canonical forms are equal."""
    m = h.dimension
    # echelon-reduce linearities with column order a1..am, b so the leading
    # nonzero coefficient is positive
    perm = list(range(1, m + 1)) + [0]
    rows = [[Fraction(r[j]) for j in perm] for r in h.linearities]
    rref, pivots = _rref(rows, m + 1)
    inv = {pj: i for i, pj in enumerate(perm)}
    lin = []
    for rr in rref:
        back = [rr[inv[j]] for j in range(m + 1)]
        lin.append(_normalize_row(back))

    ineqs = set()
    for row in h.inequalities:
        vec = [Fraction(row[j]) for j in perm]
        for rr, pc in zip(rref, pivots):
            if vec[pc] != 0:
                f = vec[pc]
                vec = [x - f * y for x, y in zip(vec, rr)]
        back = [vec[inv[j]] for j in range(m + 1)]
        ineqs.add(_normalize_row(back))
    return HRep(m, tuple(sorted(ineqs)), tuple(sorted(lin)))


# ---------------------------------------------------------------------------
# interchange format
# ---------------------------------------------------------------------------

def _parse_number(tok):
    if "/" in tok:
        num, den = tok.split("/")
        return Fraction(int(num), int(den))
    if "." in tok or "e" in tok or "E" in tok:
        return Fraction(tok)  # exact decimal conversion
    return Fraction(int(tok))


def parse_dd(text: str):
    """Parse the DD interchange format into a VRep or HRep."""
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("*")]
    pos = 0
    kind = None
    linearity_idx = set()
    while pos < len(lines):
        head = lines[pos].strip()
        if head in ("V-representation", "H-representation"):
            kind = head[0]
        elif head.startswith("linearity"):
            parts = head.split()
            k = int(parts[1])
            linearity_idx = {int(t) for t in parts[2:]}
            if len(linearity_idx) != k:
                raise ValueError("linearity count mismatch")
        elif head == "begin":
            pos += 1
            break
        else:
            raise ValueError(f"unexpected line before begin: {head!r}")
        pos += 1
    else:
        raise ValueError("missing begin")
    if kind is None:
        raise ValueError("missing V-representation/H-representation header")
    header = lines[pos].split()
    nrows, ncols = int(header[0]), int(header[1])
    pos += 1
    toks = []
    while pos < len(lines) and lines[pos].strip() != "end":
        toks.extend(lines[pos].split())
        pos += 1
    if pos >= len(lines):
        raise ValueError("missing end")
    if len(toks) != nrows * ncols:
        raise ValueError(f"expected {nrows}x{ncols} entries, got {len(toks)}")
    if nrows == 0:
        raise ValueError("empty body")
    rows = [tuple(_parse_number(t) for t in toks[i * ncols:(i + 1) * ncols])
            for i in range(nrows)]
    if kind == "V":
        if linearity_idx:
            raise ValueError("linearity rows not supported in V-representation")
        for row in rows:
            if row[0] != 1:
                raise ValueError(f"V-row leading marker must be 1, got {row[0]}")
        return VRep(ncols - 1, tuple(r[1:] for r in rows))
    ineqs, lins = [], []
    for i, row in enumerate(rows, start=1):
        (lins if i in linearity_idx else ineqs).append(row)
    return HRep(ncols - 1, tuple(ineqs), tuple(lins))


def _fmt(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def emit_dd(rep, comments=()) -> str:
    """Emit a VRep or HRep in the DD interchange format."""
    out = [f"* {c}" for c in comments]
    if isinstance(rep, VRep):
        out.append("V-representation")
        rows = [(Fraction(1),) + tuple(Fraction(x) for x in p) for p in rep.points]
    else:
        out.append("H-representation")
        rows = [tuple(Fraction(x) for x in r) for r in rep.inequalities]
        nin = len(rows)
        rows += [tuple(Fraction(x) for x in r) for r in rep.linearities]
        if rep.linearities:
            idx = " ".join(str(i) for i in range(nin + 1, len(rows) + 1))
            out.append(f"linearity {len(rep.linearities)}  {idx}")
    out.append("begin")
    out.append(f" {len(rows)}  {rep.dimension + 1}  real")
    for row in rows:
        out.append(" " + "  ".join(_fmt(x) for x in row))
    out.append("end")
    return "\n".join(out) + "\n"
