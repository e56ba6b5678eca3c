"""Determinant polynomials of n x n x 3 tensors and the substitution test.

For a tensor with mode-3 slices A, B, C the determinant polynomial is
``f(x, y, z) = det(x*A + y*B + z*C)``, homogeneous of degree n.  Two tensors
related by slice transformations have determinant polynomials related by a
linear substitution of variables, which yields a necessary condition for
equivalence: after monic normalization, ``f2`` must equal ``f1`` composed
with some nonsingular 3x3 matrix G acting on the variable row vector as
``x -> x @ G.T``.  :func:`detpoly_equiv_test` searches for such a G
numerically and never converts a failed search into a verdict of
inequivalence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .tensor import as_tensor
from .transforms import is_nonsingular, random_nonsingular

ZERO_POLY_TOL = 1e-10
DEFAULT_EQUIV_TOL = 1e-8
DEFAULT_RESTARTS = 64


def monomials(degree: int):
    """Exponent triples (p, q, r) with p+q+r = degree, lex order x > y > z."""
    out = []
    for p in range(degree, -1, -1):
        for q in range(degree - p, -1, -1):
            out.append((p, q, degree - p - q))
    return out


class HomPoly3:
    """Homogeneous complex polynomial in (x, y, z), monomial-coefficient map.

    Coefficients are stored sparsely; exact zeros are dropped.  The degree is
    carried explicitly so the zero polynomial of any degree is representable.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        self.degree = int(degree)
        self.coeffs = {}
        if coeffs:
            for exp, c in coeffs.items():
                if sum(exp) != self.degree:
                    raise ValueError(f"exponent {exp} does not sum to {self.degree}")
                c = complex(c)
                if c != 0:
                    self.coeffs[tuple(exp)] = c

    @classmethod
    def constant(cls, value):
        return cls(0, {(0, 0, 0): value})

    @classmethod
    def linear(cls, cx, cy, cz):
        return cls(1, {(1, 0, 0): cx, (0, 1, 0): cy, (0, 0, 1): cz})

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot add polynomials of different degree")
        out = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            out[exp] = out.get(exp, 0.0) + c
        return HomPoly3(self.degree, out)

    def __sub__(self, other):
        return self + (other * (-1.0))

    def __mul__(self, other):
        if isinstance(other, HomPoly3):
            out = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    out[exp] = out.get(exp, 0.0) + c1 * c2
            return HomPoly3(self.degree + other.degree, out)
        out = {exp: c * other for exp, c in self.coeffs.items()}
        return HomPoly3(self.degree, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def coeff_vector(self) -> np.ndarray:
        """Dense coefficient vector over the degree's monomials in lex order."""
        return np.array(
            [self.coeffs.get(exp, 0.0) for exp in monomials(self.degree)],
            dtype=complex,
        )

    @classmethod
    def from_vector(cls, degree: int, vec) -> "HomPoly3":
        return cls(degree, dict(zip(monomials(degree), vec)))

    def __call__(self, x, y, z):
        total = 0.0 + 0.0j
        for (p, q, r), c in self.coeffs.items():
            total += c * (x**p) * (y**q) * (z**r)
        return total

    def leading(self, rel_tol: float = 1e-12):
        """Lexicographically greatest monomial with a non-negligible coefficient."""
        scale = self.max_abs_coeff()
        if scale == 0.0:
            return None
        for exp in sorted(self.coeffs, reverse=True):
            if abs(self.coeffs[exp]) > rel_tol * scale:
                return exp
        return None

    def __repr__(self):
        return f"HomPoly3({self.degree}, {self.coeffs!r})"

    def to_text(self) -> str:
        """Render as e.g. ``x^2*y + 2*x*y*z - (0.5+1i)*z^3`` in lex order."""
        if not self.coeffs:
            return "0"
        parts = []
        for exp in sorted(self.coeffs, reverse=True):
            c = self.coeffs[exp]
            vars_ = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip("xyz", exp)
                if e > 0
            )
            cs = _coeff_str(c)
            if vars_:
                body = vars_ if cs == "" else ("-" + vars_ if cs == "-" else f"{cs}*{vars_}")
            else:
                body = cs if cs not in ("", "-") else ("1" if cs == "" else "-1")
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json(self) -> str:
        terms = [
            {"exp": list(exp), "coef": [self.coeffs[exp].real, self.coeffs[exp].imag]}
            for exp in sorted(self.coeffs, reverse=True)
        ]
        return json.dumps({"degree": self.degree, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "HomPoly3":
        doc = json.loads(text)
        coeffs = {tuple(t["exp"]): complex(t["coef"][0], t["coef"][1]) for t in doc["terms"]}
        return cls(int(doc["degree"]), coeffs)


def _coeff_str(c: complex) -> str:
    re, im = c.real, c.imag
    if im == 0.0:
        if re == 1.0:
            return ""
        if re == -1.0:
            return "-"
        return _real_str(re)
    if re == 0.0:
        return f"{_real_str(im)}i"
    sign = "+" if im >= 0 else "-"
    return f"({_real_str(re)}{sign}{_real_str(abs(im))}i)"


def _real_str(x: float) -> str:
    return str(int(x)) if x == int(x) and abs(x) < 1e15 else repr(x)


# --- determinant polynomial --------------------------------------------------


def det_poly(t) -> HomPoly3:
    """Determinant polynomial det(x*A + y*B + z*C) of an n x n x 3 tensor.

    Exact cofactor expansion over polynomial entries for n <= 6; for larger n
    the polynomial is recovered from determinant evaluations on a roots-of-
    unity grid (a perfectly conditioned linear system).
    """
    t = as_tensor(t)
    n1, n2, n3 = t.shape
    if n1 != n2:
        raise ValueError(f"slices must be square, got {n1} x {n2}")
    if n3 != 3:
        raise ValueError(f"expected 3 slices in mode 3, got {n3}")
    if n1 <= 6:
        return _det_poly_symbolic(t)
    return _det_poly_interpolate(t)


def _det_poly_symbolic(t) -> HomPoly3:
    n = t.shape[0]
    entries = [
        [HomPoly3.linear(t[i, j, 0], t[i, j, 1], t[i, j, 2]) for j in range(n)]
        for i in range(n)
    ]
    cache = {}

    def minor(rows_start: int, cols: tuple) -> HomPoly3:
        # determinant of the submatrix on rows rows_start.. and the given columns
        if len(cols) == 1:
            return entries[rows_start][cols[0]]
        key = (rows_start, cols)
        if key in cache:
            return cache[key]
        acc = HomPoly3(len(cols), {})
        sign = 1.0
        for pos, c in enumerate(cols):
            rest = cols[:pos] + cols[pos + 1 :]
            term = entries[rows_start][c] * minor(rows_start + 1, rest)
            acc = acc + term * sign
            sign = -sign
        cache[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def _det_poly_interpolate(t) -> HomPoly3:
    n = t.shape[0]
    m = n + 1
    omega = np.exp(2j * np.pi / m)
    xs = omega ** np.arange(m)
    values = np.empty((m, m), dtype=complex)
    a, b, c = t[:, :, 0], t[:, :, 1], t[:, :, 2]
    for ia, x in enumerate(xs):
        for ib, y in enumerate(xs):
            values[ia, ib] = np.linalg.det(x * a + y * b + c)
    # values[a, b] = sum_pq c[p, q] w^(ap) w^(bq); the matching inverse is the
    # forward FFT divided by the grid size
    coeff_grid = np.fft.fft2(values) / (m * m)
    scale = max(np.max(np.abs(coeff_grid)), 1.0)
    coeffs = {}
    for p in range(m):
        for q in range(m):
            cpq = coeff_grid[p, q]
            if p + q > n:
                if abs(cpq) > 1e-8 * scale:
                    raise ArithmeticError(
                        "determinant interpolation produced spurious high-order terms"
                    )
                continue
            if cpq != 0:
                coeffs[(p, q, n - p - q)] = cpq
    return HomPoly3(n, coeffs)


# --- substitution and normalization ------------------------------------------


def substitute(f: HomPoly3, g) -> HomPoly3:
    """Polynomial f evaluated at the substituted variables x -> x @ G.T.

    Row i of G gives the linear form replacing variable i, so the worked
    substitution x -> (x-y+z)/2, ... is the matrix with rows
    (1,-1,1)/2, (1,1,-1)/2, (-1,1,1)/2.
    """
    g = np.asarray(g, dtype=complex)
    if g.shape != (3, 3):
        raise ValueError("substitution matrix must be 3x3")
    forms = [HomPoly3.linear(*g[i]) for i in range(3)]
    # cache powers of each linear form up to the needed exponent
    powers = [[HomPoly3.constant(1.0)] for _ in range(3)]
    for var in range(3):
        need = max((exp[var] for exp in f.coeffs), default=0)
        for _ in range(need):
            powers[var].append(powers[var][-1] * forms[var])
    acc = HomPoly3(f.degree, {})
    for (p, q, r), c in f.coeffs.items():
        term = powers[0][p] * powers[1][q] * powers[2][r]
        acc = acc + term * c
    return acc


def monic_normalize(f: HomPoly3):
    """Divide by the coefficient of the lex-greatest nonzero monomial.

    Returns the normalized polynomial and the leading coefficient removed.
    """
    lead = f.leading()
    if lead is None:
        raise ValueError("cannot normalize the zero polynomial")
    c = f.coeffs[lead]
    return f * (1.0 / c), c


# --- equivalence test ---------------------------------------------------------


@dataclass
class EquivVerdict:
    """Outcome of the determinant-polynomial necessary-condition test.

    ``kind`` is one of ``CertifiedObstruction`` (exactly one determinant
    polynomial vanishes identically, so no substitution can exist),
    ``CandidateFound`` (a nonsingular G was found with residual below
    tolerance) or ``NoCandidateFound`` (search failed; explicitly
    inconclusive, never a proof of inequivalence).
    """

    kind: str
    residual: float | None = None
    g: np.ndarray | None = None
    detail: str = ""

    def to_json(self) -> str:
        doc = {"kind": self.kind, "detail": self.detail}
        if self.residual is not None:
            doc["residual"] = self.residual
        if self.g is not None:
            doc["g"] = [[z.real, z.imag] for z in self.g.ravel()]
        return json.dumps(doc, sort_keys=True)


@dataclass
class _ValueGrid:
    """Evaluation of degree-n homogeneous polynomials on (1, w^a, w^b) nodes.

    The node set dehomogenizes x=1 and samples (y, z) on a roots-of-unity
    grid, making values and coefficients related by a unitary (scaled DFT)
    map, so value-space least squares is exactly coefficient-space least
    squares.
    """

    degree: int
    nodes: np.ndarray = field(init=False)
    exps: np.ndarray = field(init=False)

    def __post_init__(self):
        m = self.degree + 1
        omega = np.exp(2j * np.pi / m)
        grid = omega ** np.arange(m)
        ys, zs = np.meshgrid(grid, grid, indexing="ij")
        ones = np.ones(m * m, dtype=complex)
        self.nodes = np.column_stack([ones, ys.ravel(), zs.ravel()])
        self.exps = np.array(monomials(self.degree), dtype=float)

    def eval_at(self, coeff_vec: np.ndarray, points: np.ndarray) -> np.ndarray:
        mono = np.prod(points[:, None, :] ** self.exps[None, :, :], axis=2)
        return mono @ coeff_vec


def detpoly_equiv_test(
    t1,
    t2,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    tol: float = DEFAULT_EQUIV_TOL,
) -> EquivVerdict:
    """Necessary-condition equivalence test on determinant polynomials.

    Runs a seeded multi-start local minimization of the squared coefficient
    distance between monic(f1 composed with G) and monic(f2) over complex
    3x3 matrices G (18 real parameters).  Restart 0 starts from the identity
    so self-comparison returns immediately with G = I and residual 0.
    """
    t1 = as_tensor(t1)
    t2 = as_tensor(t2)
    if t1.shape != t2.shape:
        raise ValueError("tensors must share dims")
    f1 = det_poly(t1)
    f2 = det_poly(t2)
    n = f1.degree

    zero1 = _poly_is_zero(f1, t1)
    zero2 = _poly_is_zero(f2, t2)
    if zero1 and zero2:
        # both determinant polynomials vanish: the substitution equation is
        # vacuously solvable, e.g. by the identity
        return EquivVerdict(
            "CandidateFound", 0.0, np.eye(3, dtype=complex),
            "both determinant polynomials are identically zero",
        )
    if zero1 != zero2:
        which = "first" if zero1 else "second"
        return EquivVerdict(
            "CertifiedObstruction",
            detail=f"only the {which} determinant polynomial is identically zero",
        )

    monic1, _ = monic_normalize(f1)
    monic2, _ = monic_normalize(f2)
    target_lead = monic2.leading()
    target_vec = monic2.coeff_vector()

    grid = _ValueGrid(n)
    c1 = monic1.coeff_vector()
    c2 = target_vec
    w_fwd = grid.eval_at(c2, grid.nodes)
    w_rev = grid.eval_at(c1, grid.nodes)

    def value_residual(coeffs, target):
        def residual(x):
            g = (x[:9] + 1j * x[9:]).reshape(3, 3)
            v = grid.eval_at(coeffs, grid.nodes @ g.T)
            vv = np.vdot(v, v).real
            if vv < 1e-300:
                return np.concatenate([(-target).real, (-target).imag])
            s = np.vdot(v, target) / vv
            r = s * v - target
            return np.concatenate([r.real, r.imag])

        return residual

    residual_fwd = value_residual(c1, w_fwd)
    residual_rev = value_residual(c2, w_rev)

    def contract_residual(g):
        # Normalize the composed polynomial at the target's leading monomial:
        # near a solution that IS its lex-leading term, while optimizer noise
        # on lex-greater monomials that should vanish would otherwise be
        # mistaken for a leading coefficient.
        sub = substitute(monic1, g)
        scale = sub.max_abs_coeff()
        lead_c = sub.coeffs.get(target_lead, 0.0)
        if scale == 0.0:
            return np.inf
        if abs(lead_c) <= 1e-12 * scale:
            lead = sub.leading()
            lead_c = sub.coeffs[lead]
        diff = (sub * (1.0 / lead_c)).coeff_vector() - target_vec
        return float(np.vdot(diff, diff).real)

    # lm needs at least as many residuals as variables (18)
    method = "lm" if 2 * grid.nodes.shape[0] >= 18 else "trf"
    best_res = np.inf
    best_g = None
    for r in range(max(1, restarts)):
        # even restarts search G with f1 o G ~ f2, odd restarts search the
        # reverse equation whose solution inverts to a forward one; the two
        # landscapes have different basins
        forward = r % 2 == 0
        if r <= 1:
            g0 = np.eye(3, dtype=complex)
        else:
            g0 = random_nonsingular(3, np.random.SeedSequence([seed, r]), cond_bound=100.0)
        x0 = np.concatenate([g0.real.ravel(), g0.imag.ravel()])
        sol = least_squares(residual_fwd if forward else residual_rev, x0,
                            method=method, xtol=1e-15, ftol=1e-15, gtol=1e-15,
                            max_nfev=4000)
        g = (sol.x[:9] + 1j * sol.x[9:]).reshape(3, 3)
        if not is_nonsingular(g):
            continue
        if not forward:
            g = np.linalg.inv(g)
        res = contract_residual(g)
        if res < best_res:
            best_res = res
            best_g = g
        if best_res < tol:
            break

    if best_res < tol:
        return EquivVerdict("CandidateFound", best_res, best_g,
                            "substitution matrix found")
    return EquivVerdict("NoCandidateFound", best_res, None,
                        "no substitution found; test inconclusive")


def _poly_is_zero(f: HomPoly3, t) -> bool:
    scale = max(float(np.max(np.abs(t))) ** f.degree, 1e-300)
    return f.max_abs_coeff() <= ZERO_POLY_TOL * scale
