"""Linear-fractional solution map, extremal elements and Weyl intervals.

Feeding a constant parameter pair (phi, psi) through the resolvent blocks,
S = (U11 phi + U12 psi)(U21 phi + U22 psi)^{-1}, yields the Stieltjes
transform of a solution of the truncated moment problem.  The trivial
pairs give the two extremal solutions; at a real point off the half-line
the solution values fill the matrix interval between them exactly.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    Array, DEFAULT_TOL, ToleranceConfig, as_matrix, hermitize, is_pd, is_psd,
    sqrt_psd,
)
from .moments import (
    LEFT, RIGHT, HankelPack, MomentSequence, block_shift, first_block_column,
    half, require_stieltjes_pd, resolvent_R,
)
from .orthopoly import stieltjes_quadruple
from .resolvent import ResolventU, dyukarev_quadruple

CONSTANT = "CONSTANT"
SCHUR_CONSTANT = "SCHUR_CONSTANT"


@dataclass(frozen=True)
class StieltjesPair:
    """Constant parameter pair for the linear-fractional transformation.

    CONSTANT pairs (phi, psi) need rank [phi; psi] = q and psi^* phi
    Hermitian with psi^* phi >= 0 on the right half-line (<= 0 on the
    left).  SCHUR_CONSTANT wraps a unitary F with PSD imaginary part and
    is mapped to (i(I - F), I + F) before use.
    """

    kind: str
    side: str = RIGHT
    phi: Array | None = None
    psi: Array | None = None
    f: Array | None = None
    tol: ToleranceConfig = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        if self.kind == CONSTANT:
            phi, psi = as_matrix(self.phi), as_matrix(self.psi)
            q = phi.shape[0]
            if np.linalg.matrix_rank(np.vstack([phi, psi])) < q:
                raise ValueError("pair is rank deficient")
            cross = psi.conj().T @ phi
            if np.linalg.norm(cross - cross.conj().T) > self.tol.herm_tol * (1 + np.linalg.norm(cross)):
                raise ValueError("psi^* phi must be Hermitian")
            semidef = cross if self.side == RIGHT else -cross
            if not is_psd(semidef, self.tol):
                raise ValueError("psi^* phi has the wrong sign for this half-line")
            object.__setattr__(self, "phi", phi)
            object.__setattr__(self, "psi", psi)
        elif self.kind == SCHUR_CONSTANT:
            f = as_matrix(self.f)
            q = f.shape[0]
            if np.linalg.norm(f.conj().T @ f - np.eye(q)) > self.tol.identity_tol * q:
                raise ValueError("Schur parameter must be unitary")
            if not is_psd((f - f.conj().T) / 2j, self.tol):
                raise ValueError("Schur parameter needs PSD imaginary part")
            object.__setattr__(self, "f", f)
        else:
            raise ValueError(f"unknown pair kind: {self.kind}")

    def values(self):
        """(phi, psi) actually fed into the transformation."""
        if self.kind == CONSTANT:
            return self.phi, self.psi
        q = self.f.shape[0]
        return 1j * (np.eye(q) - self.f), np.eye(q) + self.f


def pair_min(q: int, side: str = RIGHT) -> StieltjesPair:
    """(0, I): the pair generating the lower extremal on the right half-line."""
    return StieltjesPair(kind=CONSTANT, side=side, phi=np.zeros((q, q)), psi=np.eye(q))


def pair_max(q: int, side: str = RIGHT) -> StieltjesPair:
    """(I, 0): the pair generating the upper extremal on the right half-line."""
    return StieltjesPair(kind=CONSTANT, side=side, phi=np.eye(q), psi=np.zeros((q, q)))


def _off_cut(side: str, alpha: float, z: complex) -> bool:
    if z.imag != 0:
        return True
    return z.real < alpha if side == RIGHT else z.real > alpha


class SingularDenominator(ValueError):
    """U21 phi + U22 psi singular at the requested point."""


def lft_solve(u: ResolventU, pair: StieltjesPair, z: complex) -> Array:
    """Evaluate the linear-fractional transformation at a point off the cut."""
    if not _off_cut(u.side, u.alpha, z):
        raise ValueError(f"point {z} lies on the cut of this half-line")
    phi, psi = pair.values()
    u11, u12, u21, u22 = u.blocks(z)
    den = u21 @ phi + u22 @ psi
    num = u11 @ phi + u12 @ psi
    dets = np.linalg.det(den)
    if abs(dets) < 1e-13 * max(1.0, np.linalg.norm(den) ** den.shape[0]):
        raise SingularDenominator(f"denominator singular at z={z}")
    return num @ np.linalg.inv(den)


def lft_solve_schur(sig_poly, f: Array, z: complex, q: int) -> Array:
    """Schur-route transformation S = (S11 F + S12)(S21 F + S22)^{-1}."""
    s = sig_poly(z)
    f = as_matrix(f)
    num = s[:q, :q] @ f + s[:q, q:]
    den = s[q:, :q] @ f + s[q:, q:]
    if abs(np.linalg.det(den)) < 1e-13:
        raise SingularDenominator(f"Schur denominator singular at z={z}")
    return num @ np.linalg.inv(den)


class ExtremalSolution:
    """One extremal solution with its three agreeing computation routes."""

    def __init__(self, routes: dict, side: str, alpha: float,
                 tol: ToleranceConfig = DEFAULT_TOL):
        self.routes = routes
        self.side = side
        self.alpha = alpha
        self.tol = tol

    def __call__(self, z: complex) -> Array:
        return self.routes["quadruple"](z)

    def route_spread(self, z: complex) -> float:
        vals = [r(z) for r in self.routes.values()]
        return max(float(np.linalg.norm(v - vals[0])) for v in vals[1:])


def extremal(seq: MomentSequence, m: int | None = None,
             tol: ToleranceConfig = DEFAULT_TOL):
    """(S_min, S_max) evaluators for the solution set up to index m.

    Each evaluator carries three routes: the quadruple ratio, the
    resolvent-pencil closed form and the orthogonal-polynomial quotient.
    """
    require_stieltjes_pd(seq, tol)
    if m is None:
        m = seq.kappa
    if not 1 <= m <= seq.kappa:
        raise ValueError(f"index m={m} outside 1..kappa={seq.kappa}")
    sub = MomentSequence(q=seq.q, alpha=seq.alpha, side=seq.side,
                         moments=seq.moments[:m + 1])
    dq = dyukarev_quadruple(sub, tol)
    quad = stieltjes_quadruple(sub, tol)
    pack = HankelPack(sub, tol)
    q, a = seq.q, seq.alpha
    right = seq.side == RIGHT
    n_lo, n_hi = half(m - 1), half(m)

    a_poly, c_poly = dq.a[n_hi], dq.c[n_hi]
    b_poly, d_poly = dq.b[half(m + 1)], dq.d[half(m + 1)]

    def ratio(num, den):
        def f(z):
            return num(z) @ np.linalg.inv(den(z))
        return f

    # pencil data for the y^*[...]^{-1}y closed form
    h_lo = pack.h(n_lo)
    h_sh_lo = pack.h_shift(n_lo)
    y_lo = pack.y(0, n_lo)

    def pencil_y(z):
        # right: y^* [Hshift - (z-a) H]^{-1} y; left: y^* [(a-z) H - Hshift]^{-1} y
        if right:
            return y_lo.conj().T @ np.linalg.inv(h_sh_lo - (z - a) * h_lo) @ y_lo
        return y_lo.conj().T @ np.linalg.inv((a - z) * h_lo - h_sh_lo) @ y_lo

    # corner-padded shifted Hankel for the second pencil (index half(m))
    h_hi = pack.h(n_hi)
    t_hi = block_shift(q, n_hi)
    v_hi = first_block_column(q, n_hi)
    r_alpha_inv = np.eye((n_hi + 1) * q) - a * t_hi
    if 2 * n_hi == m and m >= 1:
        sh = pack.shifted
        pad = np.zeros(((n_hi + 1) * q, (n_hi + 1) * q), dtype=complex)
        if n_hi >= 1:
            pad[:n_hi * q, :n_hi * q] = pack.h_shift(n_hi - 1)
            pad[:n_hi * q, n_hi * q:] = np.vstack([sh[j] for j in range(n_hi, 2 * n_hi)])
            pad[n_hi * q:, :n_hi * q] = np.hstack([sh[j] for j in range(n_hi, 2 * n_hi)])
        h_sh_hi = pad
    else:
        h_sh_hi = pack.h_shift(n_hi)
    core = t_hi @ h_sh_hi @ t_hi.conj().T
    hh = r_alpha_inv @ h_hi @ r_alpha_inv.conj().T
    pencil_sign = 1.0 if right else -1.0

    def pencil_v(z):
        w = (z - a) if right else (a - z)
        mat = core - hh / w
        return pencil_sign * np.linalg.inv(v_hi.conj().T @ np.linalg.inv(mat) @ v_hi)

    # polynomial quotients via the conjugated families
    p_cs = quad.p[half(m + 1)].conj_star()
    p2_cs = quad.second[half(m + 1)].conj_star()
    psh_cs = quad.p_shift[n_hi].conj_star()
    phat_cs = quad.phat[n_hi].conj_star()

    def poly_min_right(z):
        return -p2_cs(z) @ np.linalg.inv(p_cs(z))

    def poly_max_right(z):
        return (-1.0 / (z - a)) * phat_cs(z) @ np.linalg.inv(psh_cs(z))

    def poly_min_left(z):
        return (1.0 / (z - a)) * phat_cs(z) @ np.linalg.inv(psh_cs(z))

    poly_max_left = poly_min_right

    if right:
        s_min = ExtremalSolution({"quadruple": ratio(b_poly, d_poly),
                                  "pencil": pencil_y,
                                  "polynomial": poly_min_right}, seq.side, a, tol)
        s_max = ExtremalSolution({"quadruple": ratio(a_poly, c_poly),
                                  "pencil": pencil_v,
                                  "polynomial": poly_max_right}, seq.side, a, tol)
    else:
        s_min = ExtremalSolution({"quadruple": ratio(a_poly, c_poly),
                                  "pencil": pencil_v,
                                  "polynomial": poly_min_left}, seq.side, a, tol)
        s_max = ExtremalSolution({"quadruple": ratio(b_poly, d_poly),
                                  "pencil": pencil_y,
                                  "polynomial": poly_max_left}, seq.side, a, tol)
    return s_min, s_max


@dataclass(frozen=True)
class WeylInterval:
    x: float
    lower: Array
    upper: Array

    @property
    def gap(self) -> Array:
        return self.upper - self.lower


def weyl_interval(seq: MomentSequence, m: int | None = None, x: float = -1.0,
                  tol: ToleranceConfig = DEFAULT_TOL) -> WeylInterval:
    """[S_min(x), S_max(x)] at a real point on the free side of the line."""
    if m is None:
        m = seq.kappa
    if seq.side == RIGHT and not x < seq.alpha:
        raise ValueError("x must lie strictly left of alpha on the right half-line")
    if seq.side == LEFT and not x > seq.alpha:
        raise ValueError("x must lie strictly right of alpha on the left half-line")
    s_min, s_max = extremal(seq, m, tol)
    lo, hi = hermitize(s_min(x)), hermitize(s_max(x))
    # values are PD left of alpha on the right half-line, negative definite
    # right of alpha on the left one
    sign = 1.0 if seq.side == RIGHT else -1.0
    if not is_pd(sign * lo, tol) or not is_pd(sign * hi, tol):
        raise AssertionError("extremal values are not definite; inconsistent inputs")
    if not is_pd(hi - lo, tol):
        raise AssertionError("Weyl interval degenerate; inconsistent inputs")
    return WeylInterval(x=float(x), lower=lo, upper=hi)


def interval_point(seq: MomentSequence, m: int | None, x: float, k: Array,
                   tol: ToleranceConfig = DEFAULT_TOL):
    """Value T = S_max(x) - sqrt(gap) K sqrt(gap) plus a pair realizing it.

    For PD K the returned constant pair reproduces T through lft_solve at
    x; for boundary K the matching extremal pair is returned instead.
    """
    k = as_matrix(k)
    q = seq.q
    if not (is_psd(k, tol) and is_psd(np.eye(q) - k, tol)):
        raise ValueError("K must satisfy 0 <= K <= I")
    if m is None:
        m = seq.kappa
    iv = weyl_interval(seq, m, x, tol)
    root = sqrt_psd(iv.gap, tol)
    t = hermitize(iv.upper - root @ k @ root)

    pair = None
    if np.allclose(k, 0.0, atol=tol.identity_tol):
        t = iv.upper
        pair = pair_max(q, seq.side) if seq.side == RIGHT else pair_min(q, seq.side)
    elif np.allclose(k, np.eye(q), atol=tol.identity_tol):
        t = iv.lower
        pair = pair_min(q, seq.side) if seq.side == RIGHT else pair_max(q, seq.side)
    elif is_pd(k, tol):
        dq = dyukarev_quadruple(seq, tol)
        gap_inv_root = np.linalg.inv(root)
        c_x = dq.c[half(m)](x)
        c_inv = np.linalg.inv(c_x)
        if seq.side == RIGHT:
            mid = gap_inv_root @ (np.linalg.inv(k) - np.eye(q)) @ gap_inv_root
            w = c_inv @ mid @ c_inv.conj().T
            pair = StieltjesPair(kind=CONSTANT, side=seq.side,
                                 phi=hermitize(w), psi=np.eye(q))
        elif is_pd(np.eye(q) - k, tol):
            mid = gap_inv_root @ (np.linalg.inv(np.eye(q) - k) @ k) @ gap_inv_root
            w = c_inv @ hermitize(mid) @ c_inv.conj().T
            pair = StieltjesPair(kind=CONSTANT, side=seq.side,
                                 phi=-hermitize(w), psi=np.eye(q))
    return t, pair


def difference_inverse(seq: MomentSequence, m: int | None = None,
                       z: complex = -1.0, tol: ToleranceConfig = DEFAULT_TOL) -> Array:
    """Closed polynomial formula for [S_max(z) - S_min(z)]^{-1}.

    With w = z - alpha (right) resp. alpha - z (left) and n = half(m):

        -w v_n^* R_n^*(conj z) H_n^{-1} R_n(z) v_n
        + w^2 v_j^* R_j^*(conj z) Hshift_j^{-1} R_j(z) v_j

    where j = n for odd m and j = n - 1 for even m, matching the two
    cases in the underlying proof.
    """
    if m is None:
        m = seq.kappa
    require_stieltjes_pd(seq, tol)
    sub = MomentSequence(q=seq.q, alpha=seq.alpha, side=seq.side,
                         moments=seq.moments[:m + 1])
    pack = HankelPack(sub, tol)
    q, a = seq.q, seq.alpha
    w = (z - a) if seq.side == RIGHT else (a - z)
    n = half(m)
    j = n if m % 2 == 1 else n - 1

    v_n = first_block_column(q, n)
    term1 = -w * (v_n.conj().T @ resolvent_R(q, n, np.conj(z)).conj().T
                  @ pack.h_inv(n) @ resolvent_R(q, n, z) @ v_n)
    if j < 0:
        return term1
    v_j = first_block_column(q, j)
    term2 = (w ** 2) * (v_j.conj().T @ resolvent_R(q, j, np.conj(z)).conj().T
                        @ pack.h_shift_inv(j) @ resolvent_R(q, j, z) @ v_j)
    return term1 + term2


def reflect_solution(s_eval):
    """Map a solution evaluator to the mirrored half-line: S~(z) = -S(-z)."""
    def mirrored(z: complex) -> Array:
        return -s_eval(-z)
    return mirrored
