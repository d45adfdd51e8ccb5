"""Spin observables, singlet correlations, and quantum bounds.

Builds spin-j component matrices by the ladder construction, projectors and
tensor-product operators for Bell-type expressions, and computes Hermitian
spectra with a cyclic Jacobi eigensolver.  The extreme eigenvalues of the
operator substituted for an inequality's left-hand side are the quantum
bounds; a derivative-free pattern search maximizes them over free measurement
angles.

All arithmetic here is double precision; exact rational work lives in
exact_hull.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .realization import load_builtin as load_builtin_vectors
from .realization import parse_vectors

HERMITIAN_TOL = 1e-12
JACOBI_SWEEP_CAP = 100
JACOBI_THRESHOLD = 1e-13  # times the Frobenius norm


@dataclass(frozen=True)
class Direction:
    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("direction angles must be finite")


def _check_j(j):
    j = Fraction(j)
    if 2 * j != int(2 * j) or j < 0:
        raise ValueError(f"j={j} is not a nonnegative half-integer")
    return j


def spin_components(j):
    """(Mx, My, Mz) for spin j, basis ordered m = +j .. -j."""
    j = _check_j(j)
    d = int(2 * j + 1)
    m = np.array([float(j - k) for k in range(d)])
    plus = np.zeros((d, d), dtype=complex)
    for k in range(1, d):
        # raising: |j, m_k> -> sqrt(j(j+1) - m_k(m_k+1)) |j, m_{k-1}>
        plus[k - 1, k] = math.sqrt(float(j * (j + 1)) - m[k] * (m[k] + 1))
    minus = plus.conj().T
    mx = (plus + minus) / 2
    my = (plus - minus) / 2j
    mz = np.diag(m).astype(complex)
    return mx, my, mz


def spin_operator(j, direction: Direction):
    """S_j(theta, phi) = sin(t)cos(p) Mx + sin(t)sin(p) My + cos(t) Mz."""
    mx, my, mz = spin_components(j)
    t, p = direction.theta, direction.phi
    return (math.sin(t) * math.cos(p) * mx
            + math.sin(t) * math.sin(p) * my
            + math.cos(t) * mz)


def _assert_hermitian(h):
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("matrix must be square")
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian within 1e-12")
    return h


def _offdiag_norm(a):
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return math.sqrt(float(np.sum(np.abs(b) ** 2)))


def eigensystem(h):
    """Eigenvalues (ascending) and eigenvectors of a Hermitian matrix via
    cyclic Jacobi rotations.

    Each rotation zeroes one off-diagonal entry exactly; sweeps repeat until
    the off-diagonal Frobenius mass drops below 1e-13 of the matrix norm."""
    a = _assert_hermitian(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    fro = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    if fro == 0.0:
        return np.zeros(n), v
    stop = JACOBI_THRESHOLD * fro
    skip = 1e-14 * fro / max(n, 1)
    for _ in range(JACOBI_SWEEP_CAP):
        off = _offdiag_norm(a)
        if off <= stop:
            break
        for p in range(n - 1):
            row = a[p, p + 1:]
            for q in np.nonzero(np.abs(row) > skip)[0] + p + 1:
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                # unitary differing from I in the (p,q) block:
                #   U[pp]=c, U[pq]=s*phase, U[qp]=-s*conj(phase), U[qq]=c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vcp, vcq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vcp - s * np.conj(phase) * vcq
                v[:, q] = s * phase * vcp + c * vcq
    else:
        off = _offdiag_norm(a)
        if off > stop:
            raise ArithmeticError(f"Jacobi did not converge in {JACOBI_SWEEP_CAP} sweeps")
    vals = np.diag(a).real
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


def eigenvalues(h):
    """All eigenvalues of a Hermitian matrix, ascending."""
    vals, _ = eigensystem(h)
    return list(vals)


def _fix_phase(vec):
    """First nonzero component made real positive."""
    for x in vec:
        if abs(x) > 1e-12:
            return vec * (abs(x) / x)
    return vec


def projectors(j, direction: Direction):
    """Orthogonal projectors F_m onto the eigenvectors of S_j(direction),
    returned in ascending m = -j .. +j."""
    s = spin_operator(j, direction)
    _, vecs = eigensystem(s)
    out = []
    for k in range(vecs.shape[1]):
        u = _fix_phase(vecs[:, k])
        out.append(np.outer(u, u.conj()))
    return out


def singlet(j):
    """Total-spin-zero state of two spin-j particles:
    sum_m (-1)^(j-m)/sqrt(2j+1) |m, -m>."""
    j = _check_j(j)
    d = int(2 * j + 1)
    psi = np.zeros(d * d, dtype=complex)
    for k in range(d):       # m = j - k, row index of |m> is k, of |-m> is d-1-k
        psi[k * d + (d - 1 - k)] = (-1) ** k / math.sqrt(d)
    return psi


def joint_probability(j, dir1: Direction, dir2: Direction, m1, m2):
    """Tr{rho_singlet (F_m1(dir1) x F_m2(dir2))}."""
    j = _check_j(j)
    m1, m2 = Fraction(m1), Fraction(m2)
    if abs(m1) > j or abs(m2) > j or (j - m1).denominator != 1 or (j - m2).denominator != 1:
        raise ValueError("m out of range for this j")
    f1 = projectors(j, dir1)[int(m1 + j)]
    f2 = projectors(j, dir2)[int(m2 + j)]
    psi = singlet(j)
    return float(np.real(psi.conj() @ np.kron(f1, f2) @ psi))


def correlation(j, dir1: Direction, dir2: Direction):
    """Unnormalized singlet correlation Tr{rho (S x S)}
    = -(j(j+1)/3) [cos t1 cos t2 + cos(p1-p2) sin t1 sin t2]."""
    s1 = spin_operator(j, dir1)
    s2 = spin_operator(j, dir2)
    psi = singlet(j)
    return float(np.real(psi.conj() @ np.kron(s1, s2) @ psi))


def classical_correlation(theta):
    """E_c = 2*theta/pi - 1 on [0, pi]."""
    if not 0 <= theta <= math.pi:
        raise ValueError("theta must lie in [0, pi]")
    return 2 * theta / math.pi - 1


def delta_E(theta):
    """Classical-minus-quantum correlation gap -1 + 2*theta/pi + cos(theta)."""
    if not 0 <= theta <= math.pi:
        raise ValueError("theta must lie in [0, pi]")
    return -1 + 2 * theta / math.pi + math.cos(theta)


def stronger_than_quantum(theta):
    """E_s = sgn(theta - pi/2), the extreme ('PR-box style') correlation."""
    if not 0 <= theta <= math.pi:
        raise ValueError("theta must lie in [0, pi]")
    return float((theta > math.pi / 2) - (theta < math.pi / 2))


def chsh_eigen_formula(t1, t2, t3, t4):
    """The four eigenvalues -+2*sqrt(1 -+ sin(t1-t2) sin(t3-t4)), ascending."""
    q = math.sin(t1 - t2) * math.sin(t3 - t4)
    lo, hi = 2 * math.sqrt(max(1 - q, 0.0)), 2 * math.sqrt(1 + q)
    return sorted([-hi, -lo, lo, hi])


def bell_state(name):
    """One of the four two-qubit Bell states by name."""
    r = 1 / math.sqrt(2)
    table = {
        "psi-minus": [0, r, -r, 0],
        "psi-plus": [0, r, r, 0],
        "phi-minus": [r, 0, 0, -r],
        "phi-plus": [r, 0, 0, r],
    }
    if name not in table:
        raise ValueError(f"unknown Bell state {name!r}")
    return np.array(table[name], dtype=complex)


def project_and_bound(op, state):
    """<state| op |state>: the operator's extremum restricted to the ray of
    the given unit state."""
    op = np.asarray(op, dtype=complex)
    state = np.asarray(state, dtype=complex)
    if op.shape != (state.size, state.size):
        raise ValueError("operator and state dimensions differ")
    return float(np.real(state.conj() @ op @ state))


# --- operator expressions -------------------------------------------------

@dataclass(frozen=True)
class OperatorExpr:
    """A signed combination of tensor-product terms over labeled one-site
    observables, with optional named angle parameters."""
    sites: int
    terms: tuple      # (coefficient, factors) with factors = label per site
    binds: tuple      # (label, spec); spec = ("spin", j, theta, phi) with
                      # angles float or "$param", or ("proj", matrix)
    params: tuple     # (name, default) in declaration order

    def __post_init__(self):
        for coeff, factors in self.terms:
            if len(factors) != self.sites:
                raise ValueError("every term needs one factor per site")
        bound = {lbl for lbl, _ in self.binds}
        used = {lbl for _, factors in self.terms for lbl in factors}
        if not used <= bound:
            raise ValueError(f"unbound labels {sorted(used - bound)}")

    @property
    def param_names(self):
        return tuple(name for name, _ in self.params)

    @property
    def defaults(self):
        return dict(self.params)


def _load_vector_matrix(source, atom, base_dir=None):
    """Dichotomic observable 2|a><a|/<a|a> - I for the named vector."""
    if source.startswith("builtin:"):
        real = load_builtin_vectors(source[len("builtin:"):])
    else:
        from pathlib import Path
        path = Path(source)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        real = parse_vectors(path.read_text())
    by_name = {v.name: v for v in real.vectors}
    if atom not in by_name:
        raise ValueError(f"no vector named {atom!r} in {source}")
    a = np.array([float(x) for x in by_name[atom].coords], dtype=complex)
    return 2 * np.outer(a, a.conj()) / float(np.real(a.conj() @ a)) - np.eye(a.size)


def parse_operator_expr(text, base_dir=None) -> OperatorExpr:
    """Parse the operator expression format: `sites <n>`, optional
    `param <name> <default>` lines, `term <coeff> <label@site> ...` lines,
    and `bind <label> spin <j> <theta> <phi>` or
    `bind <label> proj <vector-file> <atom>` lines."""
    sites = None
    terms = []
    binds = []
    params = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "sites":
            sites = int(parts[1])
        elif kw == "param":
            params.append((parts[1], float(parts[2])))
        elif kw == "term":
            if sites is None:
                raise ValueError(f"line {lineno}: sites must come first")
            coeff = float(Fraction(parts[1]))
            factors = [None] * sites
            for tok in parts[2:]:
                label, _, site = tok.rpartition("@")
                factors[int(site) - 1] = label
            if any(f is None for f in factors):
                raise ValueError(f"line {lineno}: term must cover all {sites} sites")
            terms.append((coeff, tuple(factors)))
        elif kw == "bind":
            label, kind = parts[1], parts[2]
            if kind == "spin":
                j = Fraction(parts[3])
                angles = [t if t.startswith("$") else float(t) for t in parts[4:6]]
                binds.append((label, ("spin", j, angles[0], angles[1])))
            elif kind == "proj":
                binds.append((label, ("proj", _load_vector_matrix(parts[3], parts[4],
                                                                  base_dir))))
            else:
                raise ValueError(f"line {lineno}: unknown bind kind {kind!r}")
        else:
            raise ValueError(f"line {lineno}: unknown directive {kw!r}")
    if sites is None:
        raise ValueError("missing sites header")
    return OperatorExpr(sites, tuple(terms), tuple(binds), tuple(params))


def load_preset_expr(name: str) -> OperatorExpr:
    try:
        text = (resources.files("correlpoly.data") / "ops" / f"{name}.op").read_text()
    except FileNotFoundError:
        raise ValueError(f"unknown operator preset {name!r}") from None
    return parse_operator_expr(text)


def resolve_bindings(expr: OperatorExpr, params=None):
    """Materialize every bind into a matrix, substituting angle parameters."""
    values = expr.defaults
    values.update(params or {})
    unknown = set(values) - set(expr.param_names)
    if unknown:
        raise ValueError(f"unknown parameters {sorted(unknown)}")

    def angle(x):
        return values[x[1:]] if isinstance(x, str) else x

    out = {}
    for label, spec in expr.binds:
        if spec[0] == "spin":
            _, j, t, p = spec
            out[label] = spin_operator(j, Direction(angle(t), angle(p)))
        else:
            out[label] = spec[1]
    return out


def build_operator(expr: OperatorExpr, bindings):
    """sum_t coeff_t * kron(factors); Hermitian when every factor is."""
    total = None
    for coeff, factors in expr.terms:
        term = np.array([[coeff]], dtype=complex)
        for label in factors:
            m = np.asarray(bindings[label], dtype=complex)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise ValueError(f"binding {label!r} is not a square matrix")
            term = np.kron(term, m)
        if total is None:
            total = term
        elif total.shape != term.shape:
            raise ValueError("terms have inconsistent Kronecker dimensions")
        else:
            total = total + term
    if total is None:
        raise ValueError("expression has no terms")
    return total


def realize_operator(expr: OperatorExpr, params=None):
    return build_operator(expr, resolve_bindings(expr, params))


def maximize_bound(expr: OperatorExpr, param_names=None, grid=16, seed=0):
    """Largest eigenvalue of the expression's operator, maximized over the
    free angles: per-axis grid scan (default 16 points over one period),
    then cyclic pattern search halving the step from pi/8 down to 1e-7.
    Deterministic for a fixed seed; seed 0 starts exactly at the declared
    defaults."""
    names = list(param_names if param_names is not None else expr.param_names)
    if not names:
        raise ValueError("no free parameters to optimize")
    defaults = expr.defaults

    def objective(vec):
        vals = dict(zip(names, vec))
        return eigenvalues(realize_operator(expr, vals))[-1]

    rng = random.Random(seed)
    point = [defaults[n] + (rng.uniform(-math.pi, math.pi) if seed else 0.0)
             for n in names]
    best = objective(point)

    for _ in range(8):  # cyclic grid scans until stable
        improved = False
        for i in range(len(names)):
            for k in range(grid):
                trial = list(point)
                trial[i] = -math.pi + 2 * math.pi * k / grid
                val = objective(trial)
                if val > best + 1e-12:
                    best, point = val, trial
                    improved = True
        if not improved:
            break

    step = math.pi / 8
    while step > 1e-7:
        moved = False
        for i in range(len(names)):
            for sgn in (1, -1):
                trial = list(point)
                trial[i] = point[i] + sgn * step
                val = objective(trial)
                if val > best + 1e-13:
                    best, point = val, trial
                    moved = True
        if not moved:
            step /= 2
    return best, dict(zip(names, point))
