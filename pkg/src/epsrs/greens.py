"""Green's function of the unperturbed Hamiltonian and pseudospectra.

The resolvent G(E) = (E*1 - H0)^-1 is the object everything downstream
integrates or takes norms of. Pseudospectra are stored as log10 of the
spectral norm of G on a rectangular grid (the norm spans many decades near
poles, so the log is what survives in double precision).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .exceptions import BracketingError
from .linalg import as_matrix, invert

#: Default grid resolution per axis.
DEFAULT_RESOLUTION = 401

#: 4-connectivity structuring element for component counting.
_FOUR_CONNECTED = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def greens_function(h0, energy: complex) -> np.ndarray:
    """Resolvent (E*1 - H0)^-1 at one complex energy.

    Raises :class:`~epsrs.exceptions.SingularMatrixError` if ``energy`` hits
    the spectrum of ``h0`` to working precision.
    """
    m = as_matrix(h0, square=True)
    return invert(energy * np.eye(m.shape[0], dtype=complex) - m)


def _log10_resolvent_norms(h0: np.ndarray, energies: np.ndarray) -> np.ndarray:
    """log10 ||G(E)||_2 for a flat array of energies, via batched SVD.

    ||G||_2 = 1 / sigma_min(E*1 - H0); computing sigma_min of the shifted
    matrix avoids forming huge inverses near poles.
    """
    m = h0.shape[0]
    shifted = energies.reshape(-1, 1, 1) * np.eye(m, dtype=complex) - h0
    sigma_min = np.linalg.svd(shifted, compute_uv=False)[:, -1]
    # a grid point exactly on an eigenvalue is nudged by the caller, so
    # sigma_min is positive here
    return -np.log10(sigma_min)


@dataclass
class PseudospectrumGrid:
    """log10 ||G(E)||_2 sampled on a rectangular complex-energy grid.

    ``values[i, j]`` belongs to ``im_axis[i]`` and ``re_axis[j]``. The
    eps-pseudospectrum is the strict superlevel set ``values > -log10(eps)``.
    ``nudged`` lists grid points (i, j) that coincided with an eigenvalue and
    were displaced by one cell width times 1e-6.
    """

    re_axis: np.ndarray
    im_axis: np.ndarray
    values: np.ndarray
    nudged: list[tuple[int, int]] = field(default_factory=list)

    def write_csv(self, file) -> None:
        """Row-major CSV with header ``re,im,log10_norm``."""
        if hasattr(file, "write"):
            self._write(file)
        else:
            with open(file, "w", encoding="utf-8", newline="") as fh:
                self._write(fh)

    def _write(self, fh) -> None:
        fh.write("re,im,log10_norm\n")
        for i, im in enumerate(self.im_axis):
            for j, re in enumerate(self.re_axis):
                fh.write(f"{re:.17g},{im:.17g},{self.values[i, j]:.17g}\n")


def pseudospectrum(h0, re_range, im_range,
                   resolution: int | tuple[int, int] = DEFAULT_RESOLUTION
                   ) -> PseudospectrumGrid:
    """Evaluate log10 ||G(E)||_2 on a uniform grid.

    Parameters
    ----------
    h0 : square matrix
    re_range, im_range : (min, max)
        Nonempty ranges of the real and imaginary energy axes.
    resolution : int or (n_re, n_im)
        Samples per axis, at least 2 each.

    Grid points within 1e-14 of an eigenvalue are displaced by one
    grid-cell-width x 1e-6 and recorded in ``nudged``; every stored value is
    finite.
    """
    m = as_matrix(h0, square=True)
    if isinstance(resolution, (tuple, list)):
        n_re, n_im = (int(resolution[0]), int(resolution[1]))
    else:
        n_re = n_im = int(resolution)
    if n_re < 2 or n_im < 2:
        raise ValueError("resolution must be >= 2 per axis")
    re_lo, re_hi = float(re_range[0]), float(re_range[1])
    im_lo, im_hi = float(im_range[0]), float(im_range[1])
    if not (re_lo < re_hi and im_lo < im_hi):
        raise ValueError("ranges must be nonempty (min < max)")

    re_axis = np.linspace(re_lo, re_hi, n_re)
    im_axis = np.linspace(im_lo, im_hi, n_im)
    energies = re_axis[np.newaxis, :] + 1j * im_axis[:, np.newaxis]

    cell = np.hypot(re_axis[1] - re_axis[0], im_axis[1] - im_axis[0])
    eigs = np.linalg.eigvals(m)
    dist = np.min(np.abs(energies.reshape(-1, 1) - eigs[np.newaxis, :]), axis=1)
    hit = dist.reshape(n_im, n_re) <= 1e-14
    nudged = [(int(i), int(j)) for i, j in zip(*np.nonzero(hit))]
    if nudged:
        energies = energies.copy()
        energies[hit] += cell * 1e-6

    values = _log10_resolvent_norms(m, energies.ravel()).reshape(n_im, n_re)
    return PseudospectrumGrid(re_axis, im_axis, values, nudged)


def _poles_connected(grid: PseudospectrumGrid, pole_a: complex, pole_b: complex,
                     c: float) -> bool:
    """Whether the two poles share a 4-connected component of {values > -c}."""
    mask = grid.values > -c
    labels, _ = ndimage.label(mask, structure=_FOUR_CONNECTED)

    def pole_label(pole: complex) -> int:
        j = int(np.argmin(np.abs(grid.re_axis - pole.real)))
        i = int(np.argmin(np.abs(grid.im_axis - pole.imag)))
        return int(labels[i, j])

    la, lb = pole_label(pole_a), pole_label(pole_b)
    return la != 0 and la == lb


def separatrix_level(h0, pole_a: complex, pole_b: complex,
                     window: tuple[float, float],
                     frame=None,
                     resolution: int = DEFAULT_RESOLUTION) -> float:
    """Locate c* = log10(eps) at which the superlevel-set components around

    two poles merge, by bisection on c with 4-connected component counting.

    Parameters
    ----------
    h0 : square matrix
    pole_a, pole_b : complex
        Two distinct eigenvalues of ``h0``.
    window : (c_lo, c_hi)
        Search bracket in c; the components must be separate at ``c_lo`` and
        merged at ``c_hi``, otherwise :class:`BracketingError` is raised.
    frame : ((re_min, re_max), (im_min, im_max)), optional
        Complex-plane window; default frames both poles with a margin of
        0.75x their separation.
    resolution : int
        Initial grid resolution; refined x2 once the bracket is narrower
        than 0.05 in c.

    Absolute accuracy of the result is +-0.01 in c.
    """
    m = as_matrix(h0, square=True)
    pole_a, pole_b = complex(pole_a), complex(pole_b)
    eigs = np.linalg.eigvals(m)
    scale = max(float(np.max(np.abs(eigs))), 1.0)
    for name, pole in (("pole_a", pole_a), ("pole_b", pole_b)):
        if np.min(np.abs(eigs - pole)) > 1e-8 * scale:
            raise ValueError(f"{name} = {pole} is not an eigenvalue of h0")
    if pole_a == pole_b:
        raise ValueError("pole_a and pole_b must be distinct")

    if frame is None:
        span = abs(pole_b - pole_a)
        margin = 0.75 * span
        re_lo = min(pole_a.real, pole_b.real) - margin
        re_hi = max(pole_a.real, pole_b.real) + margin
        im_mid = 0.5 * (pole_a.imag + pole_b.imag)
        im_half = max(abs(pole_a.imag - pole_b.imag) / 2 + margin, margin)
        frame = ((re_lo, re_hi), (im_mid - im_half, im_mid + im_half))

    c_lo, c_hi = float(window[0]), float(window[1])
    if not c_lo < c_hi:
        raise ValueError("window must satisfy c_lo < c_hi")

    grid = pseudospectrum(m, frame[0], frame[1], resolution)
    if _poles_connected(grid, pole_a, pole_b, c_lo):
        raise BracketingError(
            f"components already merged at c_lo = {c_lo}; window does not bracket"
        )
    if not _poles_connected(grid, pole_a, pole_b, c_hi):
        raise BracketingError(
            f"components still separate at c_hi = {c_hi}; window does not bracket"
        )

    refined = False
    while c_hi - c_lo > 4e-3:
        if not refined and c_hi - c_lo < 0.05:
            # refine x2 and re-establish the bracket on the finer grid
            grid = pseudospectrum(m, frame[0], frame[1], 2 * (resolution - 1) + 1)
            refined = True
            step = 0.05
            while _poles_connected(grid, pole_a, pole_b, c_lo):
                c_lo -= step
                step *= 2
            step = 0.05
            while not _poles_connected(grid, pole_a, pole_b, c_hi):
                c_hi += step
                step *= 2
        c_mid = 0.5 * (c_lo + c_hi)
        if _poles_connected(grid, pole_a, pole_b, c_mid):
            c_hi = c_mid
        else:
            c_lo = c_mid
    return 0.5 * (c_lo + c_hi)
