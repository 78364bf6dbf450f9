"""Finitely atomic matrix measures behind the extremal solutions.

The extremal Stieltjes transforms are rational with poles on the support
half-line; their measures are sums of PSD mass matrices at finitely many
real atoms.  One extremal comes from a Hermitian-definite generalized
eigenproblem of the two Hankel blocks (exact masses), the other from
residue extrapolation at the determinant zeros of the shifted orthogonal
polynomial plus the base point.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import Array, DEFAULT_TOL, ToleranceConfig, hermitize, is_psd, sqrt_psd
from .moments import (
    LEFT, RIGHT, HankelPack, MomentSequence, half, hankel, hankel_k,
    hankel_ktilde, require_stieltjes_pd,
)
from .orthopoly import GENERAL, real_zeros
from .solutions import extremal


@dataclass(frozen=True)
class MolecularMeasure:
    """Real atoms with PSD q x q masses, supported on a tagged half-line."""

    atoms: tuple
    masses: tuple
    support_side: str
    alpha: float

    def __post_init__(self):
        if len(self.atoms) != len(self.masses):
            raise ValueError("atoms and masses must align")
        for m in self.masses:
            if not is_psd(m):
                raise ValueError("mass matrices must be PSD")
        slack = 1e-9 * (1 + abs(self.alpha))
        for x in self.atoms:
            if self.support_side == RIGHT and x < self.alpha - slack:
                raise ValueError(f"atom {x} outside [{self.alpha}, inf)")
            if self.support_side == LEFT and x > self.alpha + slack:
                raise ValueError(f"atom {x} outside (-inf, {self.alpha}]")


def stieltjes_transform(mu: MolecularMeasure, z: complex) -> Array:
    """sum_k M_k / (x_k - z); poles exactly at the atoms."""
    if mu.atoms and any(abs(z - x) == 0 for x in mu.atoms):
        raise ValueError(f"z={z} coincides with an atom")
    if not mu.atoms:
        q = 1
        return np.zeros((q, q), dtype=complex)
    out = np.zeros_like(np.asarray(mu.masses[0], dtype=complex))
    for x, mass in zip(mu.atoms, mu.masses):
        out = out + np.asarray(mass, dtype=complex) / (x - z)
    return out


def measure_moments(mu: MolecularMeasure, up_to: int) -> list:
    """Power moments sum_k x_k^j M_k for j = 0..up_to."""
    if not mu.atoms:
        raise ValueError("empty measure has undefined matrix size")
    out = []
    for j in range(up_to + 1):
        acc = np.zeros_like(np.asarray(mu.masses[0], dtype=complex))
        for x, mass in zip(mu.atoms, mu.masses):
            acc = acc + (x ** j) * np.asarray(mass, dtype=complex)
        out.append(acc)
    return out


def _merge_atoms(atoms, masses, alpha: float, drop_tol: float):
    """Merge clustered atoms, drop negligible masses, clip to the half-line."""
    order = np.argsort(atoms)
    atoms = [atoms[i] for i in order]
    masses = [masses[i] for i in order]
    merged_a, merged_m = [], []
    merge_dist = 1e-7 * (1 + abs(alpha))
    for x, m in zip(atoms, masses):
        if merged_a and abs(x - merged_a[-1]) < merge_dist:
            total = merged_m[-1] + m
            w_old = float(np.trace(merged_m[-1]).real)
            w_new = float(np.trace(m).real)
            if w_old + w_new > 0:
                merged_a[-1] = (w_old * merged_a[-1] + w_new * x) / (w_old + w_new)
            merged_m[-1] = total
        else:
            merged_a.append(float(x))
            merged_m.append(m)
    out_a, out_m = [], []
    scale = max((np.linalg.norm(m) for m in merged_m), default=1.0)
    for x, m in zip(merged_a, merged_m):
        if np.linalg.norm(m) < drop_tol * max(1.0, scale):
            continue
        w, v = np.linalg.eigh(hermitize(m))
        w = np.clip(w, 0.0, None)
        out_a.append(x)
        out_m.append((v * w) @ v.conj().T)
    return out_a, out_m


def _pencil_measure(seq: MomentSequence, m: int, tol: ToleranceConfig) -> MolecularMeasure:
    """Eigen-decomposition of the (shifted Hankel, Hankel) pencil.

    Gives the measure of y^* [Hshift - w H]^{-1} y with w = z - alpha
    (right) resp. alpha - z (left); atoms alpha + mu_k resp. alpha - mu_k.
    """
    pack = HankelPack(MomentSequence(q=seq.q, alpha=seq.alpha, side=seq.side,
                                     moments=seq.moments[:m + 1]), tol)
    n = half(m - 1)
    h = pack.h(n)
    h_sh = pack.h_shift(n)
    y = pack.y(0, n)

    root_inv = np.linalg.inv(sqrt_psd(h, tol))
    pencil = hermitize(root_inv @ h_sh @ root_inv.conj().T)
    mu_vals, vecs = np.linalg.eigh(pencil)
    g = y.conj().T @ root_inv.conj().T @ vecs
    atoms, masses = [], []
    for k, mu_k in enumerate(mu_vals):
        col = g[:, k:k + 1]
        x = seq.alpha + mu_k if seq.side == RIGHT else seq.alpha - mu_k
        atoms.append(float(x))
        masses.append(col @ col.conj().T)
    atoms, masses = _merge_atoms(atoms, masses, seq.alpha, drop_tol=1e-12)
    return MolecularMeasure(atoms=tuple(atoms), masses=tuple(masses),
                            support_side=seq.side, alpha=seq.alpha)


def _residue_measure(seq: MomentSequence, m: int, s_eval,
                     tol: ToleranceConfig) -> MolecularMeasure:
    """Residue extrapolation at the candidate atoms of a rational transform.

    Candidates are the base point plus the real determinant zeros of the
    shifted first-kind polynomial; masses come from a two-point Richardson
    limit of (x - z) S(z) along z = x + i*eps.
    """
    from .orthopoly import monic_orthogonal_system
    from .moments import shift_sequence

    sub = MomentSequence(q=seq.q, alpha=seq.alpha, side=seq.side,
                         moments=seq.moments[:m + 1])
    shifted = shift_sequence(sub)
    p_shift = monic_orthogonal_system(shifted, tol)[half(m)]
    zeros = real_zeros(p_shift, kind=GENERAL)
    candidates = [seq.alpha] + [float(x) for x in zeros]

    eps1, eps2 = 1e-5, 1e-6
    atoms, masses = [], []
    for x in candidates:
        f1 = (x - (x + 1j * eps1)) * s_eval(x + 1j * eps1)
        f2 = (x - (x + 1j * eps2)) * s_eval(x + 1j * eps2)
        mass = (eps1 * f2 - eps2 * f1) / (eps1 - eps2)
        mass = hermitize(mass)
        if not np.all(np.isfinite(mass)):
            raise ArithmeticError(f"residue extrapolation diverged at atom {x}")
        atoms.append(x)
        masses.append(mass)
    atoms, masses = _merge_atoms(atoms, masses, seq.alpha, drop_tol=1e-6)
    return MolecularMeasure(atoms=tuple(atoms), masses=tuple(masses),
                            support_side=seq.side, alpha=seq.alpha)


def _transported_measure(seq: MomentSequence, m: int,
                         tol: ToleranceConfig) -> MolecularMeasure:
    """Measure of the extremal with the 1/(z - alpha) prefactor, exactly.

    The push-forward d(nu) = |x - alpha| d(mu) has the alpha-shifted
    moments, and its transform is the pencil-expressible extremal of the
    shifted sequence.  So: run the pencil there, divide each mass by
    |x_k - alpha|, and park the remaining s_0-mass at the base point.
    """
    from .moments import shift_sequence

    q, a = seq.q, seq.alpha
    sub = MomentSequence(q=q, alpha=a, side=seq.side, moments=seq.moments[:m + 1])
    n = half(m)
    if n == 0:
        return MolecularMeasure(atoms=(a,), masses=(seq[0].copy(),),
                                support_side=seq.side, alpha=a)
    shifted = shift_sequence(sub)
    nu = _pencil_measure(shifted, 2 * n - 1, tol)

    atoms, masses = [], []
    total = np.zeros((q, q), dtype=complex)
    for x, mass in zip(nu.atoms, nu.masses):
        dist = abs(x - a)
        if dist < 1e-10 * (1 + abs(a)):
            raise ArithmeticError("transported pencil atom collapsed onto the base point")
        transported = np.asarray(mass) / dist
        atoms.append(x)
        masses.append(transported)
        total = total + transported
    remainder = hermitize(seq[0] - total)
    w, v = np.linalg.eigh(remainder)
    remainder = (v * np.clip(w, 0.0, None)) @ v.conj().T
    atoms.append(a)
    masses.append(remainder)
    atoms, masses = _merge_atoms(atoms, masses, a, drop_tol=1e-12)
    return MolecularMeasure(atoms=tuple(atoms), masses=tuple(masses),
                            support_side=seq.side, alpha=a)


def recover_min(seq: MomentSequence, m: int | None = None,
                tol: ToleranceConfig = DEFAULT_TOL) -> MolecularMeasure:
    """Measure of the lower extremal solution.

    Direct pencil route on the right half-line; on the left the lower
    extremal carries the 1/(z - alpha) prefactor and is recovered through
    the transported pencil of the shifted sequence.
    """
    require_stieltjes_pd(seq, tol)
    if m is None:
        m = seq.kappa
    if seq.side == RIGHT:
        return _pencil_measure(seq, m, tol)
    return _transported_measure(seq, m, tol)


def recover_max(seq: MomentSequence, m: int | None = None,
                tol: ToleranceConfig = DEFAULT_TOL) -> MolecularMeasure:
    """Measure of the upper extremal solution (mirror of recover_min)."""
    require_stieltjes_pd(seq, tol)
    if m is None:
        m = seq.kappa
    if seq.side == LEFT:
        return _pencil_measure(seq, m, tol)
    return _transported_measure(seq, m, tol)


def recover_residue(seq: MomentSequence, m: int | None = None,
                    tol: ToleranceConfig = DEFAULT_TOL) -> MolecularMeasure:
    """Residue-extrapolation route to the prefactor extremal's measure.

    Secondary, lower-precision construction kept as an independent check
    of the transported-pencil route (upper extremal on the right half-line,
    lower on the left): candidate atoms are the base point plus the
    determinant zeros of the shifted first-kind polynomial, masses come
    from two-point Richardson limits along z = x + i*eps.
    """
    require_stieltjes_pd(seq, tol)
    if m is None:
        m = seq.kappa
    s_min, s_max = extremal(seq, m, tol)
    s_eval = s_max if seq.side == RIGHT else s_min
    return _residue_measure(seq, m, s_eval, tol)


@dataclass(frozen=True)
class HausdorffReport:
    solvable: bool
    parity: str
    conditions: dict
    one_sided: dict | None

    def __str__(self):
        lines = [f"[alpha, beta] solvability: {'yes' if self.solvable else 'no'} ({self.parity} case)"]
        for name, ok in self.conditions.items():
            lines.append(f"  {name}: {'PSD' if ok else 'not PSD'}")
        if self.one_sided is not None:
            lines.append("  decomposition: right-problem "
                         f"{'solvable' if self.one_sided['right'] else 'unsolvable'}, "
                         f"left-problem {'solvable' if self.one_sided['left'] else 'unsolvable'}")
        return "\n".join(lines)


def hausdorff_solvable(seq: MomentSequence, alpha: float, beta: float,
                       tol: ToleranceConfig = DEFAULT_TOL) -> HausdorffReport:
    """Solvability of the two-endpoint moment problem on [alpha, beta].

    Odd count 2n+1: solvable iff both shifted Hankel blocks
    -alpha*H_n + K_n and beta*H_n - K_n are PSD; this matches the
    conjunction of the two one-sided problems.  Even count 2n: H_n PSD
    and, for n >= 1, -alpha*beta*H_{n-1} + (alpha+beta)*K_{n-1} - Ktilde_{n-1}
    PSD.
    """
    if not alpha < beta:
        raise ValueError("need alpha < beta")
    kappa = seq.kappa
    base = MomentSequence(q=seq.q, alpha=alpha, side=RIGHT, moments=seq.moments)

    if kappa % 2 == 1:
        n = (kappa - 1) // 2
        h_right = -alpha * hankel(base, n) + hankel_k(base, n)
        h_left = beta * hankel(base, n) - hankel_k(base, n)
        cond = {"right-shift block": is_psd(h_right, tol),
                "left-shift block": is_psd(h_left, tol)}
        h_plain = is_psd(hankel(base, n), tol)
        one_sided = {"right": h_plain and cond["right-shift block"],
                     "left": h_plain and cond["left-shift block"]}
        solvable = cond["right-shift block"] and cond["left-shift block"]
        return HausdorffReport(solvable=solvable, parity="odd",
                               conditions=cond, one_sided=one_sided)

    n = kappa // 2
    cond = {"Hankel block": is_psd(hankel(base, n), tol)}
    if n >= 1:
        mixed = (-alpha * beta * hankel(base, n - 1)
                 + (alpha + beta) * hankel_k(base, n - 1)
                 - hankel_ktilde(base, n - 1))
        cond["two-endpoint block"] = is_psd(mixed, tol)
    return HausdorffReport(solvable=all(cond.values()), parity="even",
                           conditions=cond, one_sided=None)
