"""Small complex-matrix kernels: Pauli matrices, 2x2 (x) 2x2 tensor products,
partial traces, the two-particle exchange permutation and the contact
interaction matrix.

Composite-index convention for 4x4 matrices: C[rho nu, sigma tau] with the
row index 2*(rho-1)+nu, i.e. numpy's Kronecker product layout, so
(A (x) B)[rho nu, sigma tau] = A[rho, sigma] * B[nu, tau].
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "IDENTITY_2",
    "SIGMA_1",
    "SIGMA_3",
    "tensor",
    "partial_trace",
    "permutation_x",
    "interaction_kernel",
]

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor (Kronecker) product of two 2x2 matrices, C = a (x) b."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(c: np.ndarray, which: int) -> np.ndarray:
    """Partial trace of a 4x4 composite-index matrix over particle 1 or 2.

    For c = a (x) b: partial_trace(c, 1) = tr(a) * b and
    partial_trace(c, 2) = tr(b) * a.
    """
    t = np.asarray(c, dtype=complex).reshape(2, 2, 2, 2)
    if which == 1:
        return np.einsum("rnrt->nt", t)
    if which == 2:
        return np.einsum("rnsn->rs", t)
    raise ValueError("which must be 1 or 2")


def permutation_x() -> np.ndarray:
    """Two-particle exchange matrix: swaps rows 2 and 3 of what it multiplies."""
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        dtype=complex,
    )


def interaction_kernel(coulomb_only: bool = False) -> np.ndarray:
    """Matrix coefficient of the delta(x1-x2) contact interaction.

    Full kernel: I2 (x) I2 - sigma1 (x) sigma1, the 1D analog of the
    Coulomb-plus-Breit interaction.  With coulomb_only=True the Breit term
    is dropped (identity kernel), for decomposition studies.
    """
    w = tensor(IDENTITY_2, IDENTITY_2)
    if not coulomb_only:
        w = w - tensor(SIGMA_1, SIGMA_1)
    return w
