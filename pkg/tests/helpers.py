"""Shared random-matrix builders for the test suite."""

from __future__ import annotations

import numpy as np


def ginibre(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(n, rng))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_diagonalizable(n: int, rng: np.random.Generator,
                          min_gap: float = 0.2) -> np.ndarray:
    """Ginibre draw with well-separated eigenvalues (redrawn otherwise)."""
    while True:
        a = ginibre(n, rng)
        w = np.sort_complex(np.linalg.eigvals(a))
        gaps = [abs(w[i] - w[j]) for i in range(n) for j in range(i + 1, n)]
        if not gaps or min(gaps) > min_gap:
            return a


def jordan_conjugated(n: int, rng: np.random.Generator
                      ) -> tuple[np.ndarray, complex, np.ndarray]:
    """U (lam*1 + superdiagonal couplings) U^dagger: a dense m = n EP.

    Returns (matrix, eigenvalue, nilpotent one-block Jordan part).
    """
    lam = complex(rng.normal(), rng.normal())
    couplings = rng.uniform(0.5, 2.0, n - 1) * np.exp(2j * np.pi * rng.uniform(size=n - 1))
    jordan = lam * np.eye(n, dtype=complex) + np.diag(couplings, 1)
    u = random_unitary(n, rng)
    return u @ jordan @ u.conj().T, lam, jordan
