"""Certified eigendecomposition of dense symmetric operators.

The kernel (Householder tridiagonalization + implicit-shift QL) exists twice:
a compiled Cython extension and a pure-Python fallback with identical
recurrences.  The compiled one is preferred at import time; set
TREENODAL_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, NoConvergence

if os.environ.get("TREENODAL_PURE_PYTHON") == "1":
    from . import _eigen_py as _kernel

    BACKEND = "pure"
else:
    try:
        from . import _eigen_cy as _kernel  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _eigen_py as _kernel  # type: ignore[no-redef]

        BACKEND = "pure"

EPS_RES = 1e-12
ORTHO_TOL = 1e-12
MAX_SWEEPS = 50


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues ascending, eigenvectors as orthonormal columns.

    Construction via decompose() certifies the residual and orthogonality
    bounds; a Spectrum in hand is a proof receipt, not a best effort.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_norms: np.ndarray
    orthogonality_defect: float
    a_fro: float

    @property
    def n(self) -> int:
        return int(self.eigenvalues.shape[0])

    def eigenvector(self, n: int) -> np.ndarray:
        """n-th eigenvector, 1-based (pairs with eigenvalue index n)."""
        if not 1 <= n <= self.n:
            raise IndexError(f"eigenvector index {n} outside 1..{self.n}")
        return self.eigenvectors[:, n - 1]

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "eigenvectors": [
                [float(x) for x in self.eigenvectors[:, j]] for j in range(self.n)
            ],
            "residuals": [float(x) for x in self.residual_norms],
        }


@dataclass(frozen=True)
class MultiplicityReport:
    """Eigenvalue indices grouped by gap tolerance.

    groups holds 1-based inclusive index ranges (lo, hi); adjacent
    eigenvalues closer than tau_gap land in the same range (transitively).
    """

    groups: tuple
    tau_gap: float

    @property
    def is_simple(self) -> bool:
        return all(lo == hi for lo, hi in self.groups)

    def group_of(self, n: int) -> tuple:
        for lo, hi in self.groups:
            if lo <= n <= hi:
                return (lo, hi)
        raise IndexError(f"eigenvalue index {n} outside every group")

    def sign_graph_bound(self, n: int) -> int:
        """Largest admissible strong-sign-graph count for an eigenvector of
        the n-th eigenvalue: first group index + multiplicity - 1, i.e. the
        group's last index."""
        return self.group_of(n)[1]

    def to_json_dict(self) -> dict:
        return {
            "groups": [[int(lo), int(hi)] for lo, hi in self.groups],
            "is_simple": self.is_simple,
            "tau_gap": float(self.tau_gap),
        }


def _as_matrix(op) -> np.ndarray:
    a = np.array(getattr(op, "matrix", op), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    return a


def decompose(op, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Full eigendecomposition of a SchrodingerOperator (or raw symmetric
    matrix), sorted ascending, sign-normalized, residual-certified.

    Raises NoConvergence if any eigenvalue exceeds the QL sweep cap and
    CertificationError if the certified bounds fail after convergence.
    """
    a = _as_matrix(op)
    a_fro = float(np.linalg.norm(a))
    d, z, fail = _kernel.symmetric_eigh(a, max_sweeps)
    if fail >= 0:
        raise NoConvergence(int(fail), max_sweeps)
    order = np.argsort(d, kind="stable")
    w = np.ascontiguousarray(d[order])
    v = np.ascontiguousarray(z[:, order])
    # Flip columns so the entry of largest magnitude is positive (argmax
    # takes the first index on ties, so the flip is deterministic).
    for j in range(v.shape[1]):
        k = int(np.argmax(np.abs(v[:, j])))
        if v[k, j] < 0.0:
            v[:, j] = -v[:, j]
    res = np.linalg.norm(a @ v - v * w, axis=0)
    gram = v.T @ v
    defect = float(np.max(np.abs(gram - np.eye(v.shape[0]))))
    if np.any(res > EPS_RES * a_fro):
        worst = int(np.argmax(res))
        raise CertificationError(
            f"residual {res[worst]:.3e} for eigenpair {worst + 1} exceeds "
            f"{EPS_RES:g} * ||A||_F = {EPS_RES * a_fro:.3e}"
        )
    if defect > ORTHO_TOL:
        raise CertificationError(
            f"orthogonality defect {defect:.3e} exceeds {ORTHO_TOL:g}"
        )
    return Spectrum(
        eigenvalues=w,
        eigenvectors=v,
        residual_norms=res,
        orthogonality_defect=defect,
        a_fro=a_fro,
    )


def multiplicity_groups(spec: Spectrum, tau_gap: float | None = None) -> MultiplicityReport:
    """Partition eigenvalue indices into near-degenerate groups.

    Default tau_gap = 1e-8 * max(1, ||A||_F).  Grouping is the transitive
    closure of adjacent-gap <= tau_gap, so a chain of small gaps merges.
    """
    if tau_gap is None:
        tau_gap = 1e-8 * max(1.0, spec.a_fro)
    if tau_gap < 0.0:
        raise ValueError("tau_gap must be >= 0")
    w = spec.eigenvalues
    groups = []
    lo = 1
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > tau_gap:
            groups.append((lo, i))
            lo = i + 1
    groups.append((lo, len(w)))
    return MultiplicityReport(groups=tuple(groups), tau_gap=float(tau_gap))
