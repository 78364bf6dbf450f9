"""Moment sequences, block Hankel structures and positivity classification.

A sequence s_0..s_kappa of complex q x q matrices together with a base
point alpha and a half-line tag ("right" for [alpha, inf), "left" for
(-inf, alpha]) is the basic object everything else consumes.  The block
Hankel matrices H_n = (s_{j+k}), their left Schur complements and the
alpha-shifted sequence -alpha*s_j + s_{j+1} (right) resp.
alpha*s_j - s_{j+1} (left) drive both the classification and all
parametrizations downstream.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    Array, DEFAULT_TOL, ToleranceConfig, as_matrix, block_psd, pinv,
    psd_class, PD, PSD,
)

RIGHT = "right"
LEFT = "left"


@dataclass(frozen=True)
class MomentSequence:
    """Finite sequence of q x q moments with base point and side tag."""

    q: int
    alpha: float
    side: str
    moments: tuple
    shifted_from: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.side not in (RIGHT, LEFT):
            raise ValueError(f"side must be '{RIGHT}' or '{LEFT}'")
        if len(self.moments) == 0:
            raise ValueError("at least one moment required")
        mats = tuple(as_matrix(m) for m in self.moments)
        for m in mats:
            if m.shape != (self.q, self.q):
                raise ValueError(f"moment has shape {m.shape}, expected ({self.q},{self.q})")
        object.__setattr__(self, "moments", mats)

    @property
    def kappa(self) -> int:
        return len(self.moments) - 1

    def __getitem__(self, j: int) -> Array:
        return self.moments[j]


def sequence(moments, alpha: float = 0.0, side: str = RIGHT) -> MomentSequence:
    """Build a MomentSequence from scalars / arrays, inferring q."""
    mats = [as_matrix(m) for m in moments]
    q = mats[0].shape[0]
    return MomentSequence(q=q, alpha=float(alpha), side=side, moments=tuple(mats))


def half(k: int) -> int:
    """floor(k/2); the index bound used throughout the Hankel machinery."""
    return k // 2


def y_stack(seq: MomentSequence, j: int, k: int) -> Array:
    """Column stack (s_j; ...; s_k)."""
    return np.vstack([seq[i] for i in range(j, k + 1)])


def z_stack(seq: MomentSequence, j: int, k: int) -> Array:
    """Row stack (s_j ... s_k)."""
    return np.hstack([seq[i] for i in range(j, k + 1)])


def hankel(seq: MomentSequence, n: int) -> Array:
    """Block Hankel matrix H_n = (s_{j+k})_{j,k=0..n}."""
    q = seq.q
    h = np.empty(((n + 1) * q, (n + 1) * q), dtype=complex)
    for j in range(n + 1):
        for k in range(n + 1):
            h[j * q:(j + 1) * q, k * q:(k + 1) * q] = seq[j + k]
    return h


def hankel_k(seq: MomentSequence, n: int) -> Array:
    """K_n = (s_{j+k+1})_{j,k=0..n}."""
    q = seq.q
    h = np.empty(((n + 1) * q, (n + 1) * q), dtype=complex)
    for j in range(n + 1):
        for k in range(n + 1):
            h[j * q:(j + 1) * q, k * q:(k + 1) * q] = seq[j + k + 1]
    return h


def hankel_ktilde(seq: MomentSequence, n: int) -> Array:
    """K~_n = (s_{j+k+2})_{j,k=0..n}."""
    q = seq.q
    h = np.empty(((n + 1) * q, (n + 1) * q), dtype=complex)
    for j in range(n + 1):
        for k in range(n + 1):
            h[j * q:(j + 1) * q, k * q:(k + 1) * q] = seq[j + k + 2]
    return h


def schur_complement(seq: MomentSequence, n: int,
                     tol: ToleranceConfig = DEFAULT_TOL) -> Array:
    """Left Schur complement H^_n = s_{2n} - z_{n,2n-1} H_{n-1}^+ y_{n,2n-1}."""
    if n == 0:
        return seq[0].copy()
    z = z_stack(seq, n, 2 * n - 1)
    y = y_stack(seq, n, 2 * n - 1)
    return seq[2 * n] - z @ pinv(hankel(seq, n - 1), tol) @ y


def shift_sequence(seq: MomentSequence) -> MomentSequence:
    """Alpha-shifted sequence; one moment shorter, same side and alpha.

    right: r_j = -alpha*s_j + s_{j+1};  left: r_j = alpha*s_j - s_{j+1}.
    """
    if seq.kappa < 1:
        raise ValueError("shift needs at least two moments")
    a = seq.alpha
    if seq.side == RIGHT:
        mats = tuple(-a * seq[j] + seq[j + 1] for j in range(seq.kappa))
    else:
        mats = tuple(a * seq[j] - seq[j + 1] for j in range(seq.kappa))
    return MomentSequence(q=seq.q, alpha=a, side=seq.side, moments=mats,
                          shifted_from=seq.side)


def reflect(seq: MomentSequence) -> MomentSequence:
    """t_j = (-1)^j s_j with alpha -> -alpha and the side flipped."""
    mats = tuple(((-1) ** j) * seq[j] for j in range(seq.kappa + 1))
    side = LEFT if seq.side == RIGHT else RIGHT
    return MomentSequence(q=seq.q, alpha=-seq.alpha, side=side, moments=mats)


class HankelPack:
    """All Hankel blocks of a sequence and of its alpha-shift, memoised."""

    def __init__(self, seq: MomentSequence, tol: ToleranceConfig = DEFAULT_TOL):
        self.seq = seq
        self.tol = tol
        self.shifted = shift_sequence(seq) if seq.kappa >= 1 else None
        self._cache = {}

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def h(self, n: int) -> Array:
        if not 0 <= n <= half(self.seq.kappa):
            raise IndexError(f"H_{n} not available for kappa={self.seq.kappa}")
        return self._memo(("h", n), lambda: hankel(self.seq, n))

    def k(self, n: int) -> Array:
        if not 0 <= n <= half(self.seq.kappa - 1):
            raise IndexError(f"K_{n} not available for kappa={self.seq.kappa}")
        return self._memo(("k", n), lambda: hankel_k(self.seq, n))

    def ktilde(self, n: int) -> Array:
        if not 0 <= n <= half(self.seq.kappa - 2):
            raise IndexError(f"Ktilde_{n} not available for kappa={self.seq.kappa}")
        return self._memo(("kt", n), lambda: hankel_ktilde(self.seq, n))

    def hhat(self, n: int) -> Array:
        if not 0 <= n <= half(self.seq.kappa):
            raise IndexError(f"Hhat_{n} not available for kappa={self.seq.kappa}")
        return self._memo(("hh", n), lambda: schur_complement(self.seq, n, self.tol))

    def h_shift(self, n: int) -> Array:
        if self.shifted is None or not 0 <= n <= half(self.seq.kappa - 1):
            raise IndexError(f"shifted H_{n} not available for kappa={self.seq.kappa}")
        return self._memo(("hs", n), lambda: hankel(self.shifted, n))

    def hhat_shift(self, n: int) -> Array:
        if self.shifted is None or not 0 <= n <= half(self.seq.kappa - 1):
            raise IndexError(f"shifted Hhat_{n} not available for kappa={self.seq.kappa}")
        return self._memo(("hhs", n), lambda: schur_complement(self.shifted, n, self.tol))

    def h_inv(self, n: int) -> Array:
        return self._memo(("hi", n), lambda: np.linalg.inv(self.h(n)))

    def h_shift_inv(self, n: int) -> Array:
        return self._memo(("hsi", n), lambda: np.linalg.inv(self.h_shift(n)))

    def y(self, j: int, k: int) -> Array:
        return y_stack(self.seq, j, k)

    def z(self, j: int, k: int) -> Array:
        return z_stack(self.seq, j, k)

    def y_shift(self, j: int, k: int) -> Array:
        return y_stack(self.shifted, j, k)

    def z_shift(self, j: int, k: int) -> Array:
        return z_stack(self.shifted, j, k)


# --- structural kit ---------------------------------------------------------

def block_shift(q: int, n: int) -> Array:
    """T_n: (n+1)q block down-shift, nilpotent, det(I - z T_n) = 1."""
    t = np.zeros(((n + 1) * q, (n + 1) * q), dtype=complex)
    for j in range(n):
        t[(j + 1) * q:(j + 2) * q, j * q:(j + 1) * q] = np.eye(q)
    return t


def first_block_column(q: int, n: int) -> Array:
    """v_n = (I_q; 0; ...; 0), shape (n+1)q x q."""
    v = np.zeros(((n + 1) * q, q), dtype=complex)
    v[:q, :] = np.eye(q)
    return v


def lower_embedding(q: int, n: int) -> Array:
    """L_n = (0_{q x nq}; I_{nq}), shape (n+1)q x nq."""
    m = np.zeros(((n + 1) * q, n * q), dtype=complex)
    m[q:, :] = np.eye(n * q)
    return m


def upper_embedding(q: int, n: int) -> Array:
    """Lhat_n = (I_{nq}; 0_{q x nq}), shape (n+1)q x nq."""
    m = np.zeros(((n + 1) * q, n * q), dtype=complex)
    m[:n * q, :] = np.eye(n * q)
    return m


def alternating_signs(q: int, n: int) -> Array:
    """V_n = diag((-1)^j I_q), the reflection conjugator."""
    blocks = [((-1) ** j) * np.eye(q) for j in range(n + 1)]
    v = np.zeros(((n + 1) * q, (n + 1) * q), dtype=complex)
    for j, b in enumerate(blocks):
        v[j * q:(j + 1) * q, j * q:(j + 1) * q] = b
    return v


def resolvent_R(q: int, n: int, z: complex) -> Array:
    """R_n(z) = (I - z T_n)^{-1}; block lower triangular with powers of z."""
    r = np.zeros(((n + 1) * q, (n + 1) * q), dtype=complex)
    eye = np.eye(q)
    for j in range(n + 1):
        for k in range(j + 1):
            r[j * q:(j + 1) * q, k * q:(k + 1) * q] = (z ** (j - k)) * eye
    return r


def column_E(q: int, n: int, z: complex) -> Array:
    """E_n(z) = (I; zI; ...; z^n I) = R_n(z) v_n."""
    e = np.empty(((n + 1) * q, q), dtype=complex)
    for j in range(n + 1):
        e[j * q:(j + 1) * q, :] = (z ** j) * np.eye(q)
    return e


def u_vector(seq: MomentSequence, n: int) -> Array:
    """u_n = (0; y_{0,n-1}); u_0 = 0."""
    q = seq.q
    u = np.zeros(((n + 1) * q, q), dtype=complex)
    if n >= 1:
        u[q:, :] = y_stack(seq, 0, n - 1)
    return u


def u_shift_vector(seq: MomentSequence, n: int) -> Array:
    """Shifted companion of u_n for the sequence's own side.

    right: u_{a>n} = y_{0,n} - alpha u_n;  left: u_{a<n} = -y_{0,n} + alpha u_n.
    """
    y = y_stack(seq, 0, n)
    u = u_vector(seq, n)
    if seq.side == RIGHT:
        return y - seq.alpha * u
    return -y + seq.alpha * u


def lower_triangular_S(seq: MomentSequence, n: int) -> Array:
    """Block Toeplitz S_n with s_0 on the diagonal and s_j below."""
    q = seq.q
    s = np.zeros(((n + 1) * q, (n + 1) * q), dtype=complex)
    for j in range(n + 1):
        for k in range(j + 1):
            s[j * q:(j + 1) * q, k * q:(k + 1) * q] = seq[j - k]
    return s


def shat_matrix(seq: MomentSequence, n: int) -> Array:
    """Toeplitz companion of u_{a>n}/u_{a<n}: R_n(z) u = Shat E_n(z).

    right: Shat = S_n - alpha * down(S_{n-1});  left: the negative of that.
    """
    q = seq.q
    s = lower_triangular_S(seq, n)
    down = np.zeros_like(s)
    if n >= 1:
        down[q:, :n * q] = lower_triangular_S(seq, n - 1)
    shat = s - seq.alpha * down
    return shat if seq.side == RIGHT else -shat


# --- classification ---------------------------------------------------------

HANKEL_NO = "NO"
STIELTJES_NO = "NO"
NND = "NND"
NND_EXTENDABLE = "NND_EXTENDABLE"


@dataclass(frozen=True)
class SequenceClass:
    hankel: str
    stieltjes: str
    side: str


def _kernel_included(q_a: Array, q_b: Array, tol: ToleranceConfig) -> bool:
    """N(Q_a) subset of N(Q_b), tested through the pinv projector of Q_a."""
    proj = np.eye(q_a.shape[0]) - q_a @ pinv(q_a, tol)
    return np.linalg.norm(q_b @ proj) <= tol.identity_tol * (1.0 + np.linalg.norm(q_b))


def stieltjes_parameters_raw(seq: MomentSequence,
                             tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """Interlaced Schur complements Q_0..Q_kappa (pinv-based, NND-safe)."""
    pack = HankelPack(seq, tol)
    out = []
    for j in range(seq.kappa + 1):
        n = j // 2
        out.append(pack.hhat(n) if j % 2 == 0 else pack.hhat_shift(n))
    return out


def classify(seq: MomentSequence, tol: ToleranceConfig = DEFAULT_TOL) -> SequenceClass:
    """Hankel and alpha-Stieltjes definiteness classes of a sequence.

    The Hankel class comes from the spectrum of the largest H_n.  The
    Stieltjes class is decided through the interlaced Schur complements:
    all PD means PD; all PSD plus the kernel-inclusion chain up to j-1
    means the solvability class (NND) resp. the extendability class.
    """
    pack = HankelPack(seq, tol)
    # PD is decided through the Schur complements (numerically robust and
    # equivalent); NND falls back to the spectrum of the full block
    if all(psd_class(pack.hhat(n), tol) == PD for n in range(half(seq.kappa) + 1)):
        hankel_cls = PD
    else:
        h_cls = psd_class(pack.h(half(seq.kappa)), tol)
        hankel_cls = NND if h_cls in (PD, PSD) else HANKEL_NO

    qs = stieltjes_parameters_raw(seq, tol)
    classes = [psd_class(qj, tol) for qj in qs]
    if all(c == PD for c in classes):
        return SequenceClass(hankel=hankel_cls, stieltjes=PD, side=seq.side)
    if all(c in (PD, PSD) for c in classes):
        chain = [_kernel_included(qs[j], qs[j + 1], tol) for j in range(seq.kappa)]
        if all(chain):
            return SequenceClass(hankel=hankel_cls, stieltjes=NND_EXTENDABLE, side=seq.side)
        if all(chain[:-1]):
            return SequenceClass(hankel=hankel_cls, stieltjes=NND, side=seq.side)
    return SequenceClass(hankel=hankel_cls, stieltjes=STIELTJES_NO, side=seq.side)


def is_stieltjes_pd(seq: MomentSequence, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    return classify(seq, tol).stieltjes == PD


def require_stieltjes_pd(seq: MomentSequence, tol: ToleranceConfig = DEFAULT_TOL):
    if not is_stieltjes_pd(seq, tol):
        raise ValueError("sequence is not alpha-Stieltjes positive definite")


# --- Potapov fundamental matrices -------------------------------------------

def potapov_defect(seq: MomentSequence, s_value: Array, z: complex,
                   tol: ToleranceConfig = DEFAULT_TOL):
    """The two fundamental block matrices tested against a candidate S(z).

    Returns (F_base, F_shift) for the point z (Im z != 0).  A function S
    solves the moment problem iff both are PSD throughout the upper
    half-plane for a right sequence, resp. the lower half-plane for a
    left one; the caller runs psd_class / block_psd on the results.
    """
    if z.imag == 0:
        raise ValueError("defect matrices are only defined off the real axis")
    f = as_matrix(s_value)
    m = seq.kappa
    q = seq.q
    pack = HankelPack(seq, tol)

    def assemble(h_block, target, n):
        r = resolvent_R(q, n, z)
        v = first_block_column(q, n)
        col = r @ (v @ target["f"] + target["u"])
        corner = (target["f"] - target["f"].conj().T) / (z - np.conj(z))
        return np.block([[h_block, col], [col.conj().T, corner]])

    n0 = half(m)
    base = assemble(pack.h(n0), {"f": f, "u": u_vector(seq, n0)}, n0)

    n1 = half(m - 1)
    if seq.side == RIGHT:
        f_sh = (z - seq.alpha) * f
    else:
        f_sh = (seq.alpha - z) * f
    shift = assemble(pack.h_shift(n1),
                     {"f": f_sh, "u": u_shift_vector(seq, n1)}, n1)
    return base, shift


def potapov_defect_psd(seq: MomentSequence, s_value: Array, z: complex,
                       tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff both fundamental matrices at z are PSD (block criterion)."""
    base, shift = potapov_defect(seq, s_value, z, tol)

    def split_psd(mat, nq):
        return block_psd(mat[:nq, :nq], mat[:nq, nq:], mat[nq:, :nq], mat[nq:, nq:], tol)

    q = seq.q
    return split_psd(base, base.shape[0] - q) and split_psd(shift, shift.shape[0] - q)
