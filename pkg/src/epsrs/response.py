"""Exceptional points and their spectral response strength.

The response strength of an EP of order n is the norm of the leading
Laurent coefficient W of the Green's function at the EP eigenvalue,

    G(E) ~ W / (E - lambda)^n,     xi = ||W||_2 = ||W||_F  (W has rank 1).

Two routes are implemented. ``xi_special`` handles the m = n case, where
H0 - lambda*1 is itself nilpotent and W is a plain matrix power.
``xi_residue`` handles the general m >= n case by integrating the resolvent
around a circle separating the EP from the rest of the spectrum,

    W = (1 / 2 pi i) \\oint_C (E - lambda)^(n-1) G(E) dE,

evaluated with the trapezoidal rule (exponentially convergent on circles for
analytic integrands). The same contour moments with powers 0 .. n-1 yield the
spectral projector and all nilpotent powers of a cluster, i.e. the full
resolvent expansion

    G(E) = sum_l [ P_l / (E - E_l) + sum_k N_l^k / (E - E_l)^(k+1) ].

All functions are pure; quadrature sums use numpy's fixed pairwise topology,
so results are bitwise reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    AmbiguousOrderError,
    ContourError,
    EpsrsError,
    NotAnEpError,
    SingularMatrixError,
)
from .linalg import as_matrix, as_vector, eigenvalues, frobenius_norm, matrix_to_json
from .parallel import thread_map
from .tables import ScanTable

#: Node cap for adaptive contour quadrature.
NODE_CAP = 4096

#: Successive xi estimates must agree to this relative tolerance.
XI_REL_TOL = 1e-13

#: Rank-1 acceptance for EP reports: second singular value of W over first.
RANK1_TOL = 1e-8


def clustering_tolerance(a: np.ndarray) -> float:
    """Default eigenvalue clustering tolerance: max(1e-10, 1e-8 ||a||_F)."""
    return max(1e-10, 1e-8 * float(np.linalg.norm(a, "fro")))


@dataclass(frozen=True)
class SpectralCluster:
    """A group of nearby eigenvalues treated as one spectral object.

    ``eigenvalue`` is the cluster centroid (the EP eigenvalue candidate),
    ``order`` the size of the largest Jordan block (1 for diagonalizable
    clusters), and ``member_indices`` point into the raw eigenvalue list of
    :func:`epsrs.linalg.eigenvalues`.
    """

    eigenvalue: complex
    algebraic_multiplicity: int
    order: int
    member_indices: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.order <= self.algebraic_multiplicity:
            raise ValueError("must have 1 <= order <= algebraic_multiplicity")
        if len(self.member_indices) != self.algebraic_multiplicity:
            raise ValueError("member count must equal algebraic multiplicity")


@dataclass(frozen=True)
class Contour:
    """Circular integration path in the complex energy plane."""

    center: complex
    radius: float
    nodes: int = 64

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError("contour radius must be positive and finite")
        if self.nodes < 16 or self.nodes & (self.nodes - 1):
            raise ValueError("node count must be a power of two >= 16")


@dataclass
class EpReport:
    """Everything computed about one EP (or isolated/degenerate state)."""

    cluster: SpectralCluster
    w_operator: np.ndarray
    strength: float
    rank1_residual: float
    quadrature_nodes_used: int
    converged: bool

    def to_json(self) -> dict:
        lam = complex(self.cluster.eigenvalue)
        return {
            "eigenvalue": [lam.real, lam.imag],
            "order": self.cluster.order,
            "xi": self.strength,
            "rank1_residual": self.rank1_residual,
            "nodes": self.quadrature_nodes_used,
            "converged": self.converged,
            "W": matrix_to_json(self.w_operator),
        }


@dataclass(frozen=True)
class PassiveBound:
    """Result of checking xi against the passive-system bound."""

    bound: float
    satisfied: bool


# ---------------------------------------------------------------------------
# spectrum clustering and order determination


def _union_find_groups(w: np.ndarray, tol: float) -> list[list[int]]:
    """Chained-proximity groups: i, j joined whenever |w_i - w_j| <= tol."""
    m = len(w)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(w[i] - w[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _order_by_rank_test(a: np.ndarray, centroid: complex, multiplicity: int,
                        cluster_index: int) -> int:
    """Largest Jordan block size at ``centroid`` from rank stabilization.

    Counts, for successive powers of M = a - centroid*1, singular values
    above 1e-8 ||a||_F. The nullity grows by the number of Jordan chains
    longer than each power and stabilizes at the algebraic multiplicity; the
    stabilization power is the order. Decisions with a singular-value gap
    below one decade across the threshold raise
    :class:`AmbiguousOrderError`, as does any mismatch between the stabilized
    nullity and the cluster multiplicity.
    """
    m = a.shape[0]
    tol_rank = 1e-8 * float(np.linalg.norm(a, "fro"))
    shifted = a - centroid * np.eye(m, dtype=complex)
    power = np.eye(m, dtype=complex)
    prev_nullity = 0
    for k in range(1, multiplicity + 1):
        power = power @ shifted
        s = np.linalg.svd(power, compute_uv=False)
        rank = int(np.sum(s > tol_rank))
        if 0 < rank < m:
            dropped = max(float(s[rank]), 1e-300)
            if float(s[rank - 1]) / dropped < 10.0:
                raise AmbiguousOrderError(
                    f"cluster {cluster_index}: rank of power {k} is ambiguous "
                    f"(singular values {s[rank - 1]:.3e} / {s[rank]:.3e} differ "
                    "by less than a decade); declare the order explicitly",
                    cluster_index=cluster_index,
                )
        nullity = m - rank
        if nullity == prev_nullity:
            raise AmbiguousOrderError(
                f"cluster {cluster_index}: generalized eigenspace stabilized at "
                f"dimension {nullity} < multiplicity {multiplicity}; the cluster "
                "tolerance groups separable eigenvalues - declare the order",
                cluster_index=cluster_index,
            )
        if nullity >= multiplicity:
            if nullity > multiplicity:
                raise AmbiguousOrderError(
                    f"cluster {cluster_index}: generalized eigenspace dimension "
                    f"{nullity} exceeds multiplicity {multiplicity} (foreign "
                    "eigenvalues leak through the rank threshold); declare the "
                    "order",
                    cluster_index=cluster_index,
                )
            return k
        prev_nullity = nullity
    raise AmbiguousOrderError(
        f"cluster {cluster_index}: rank test did not stabilize",
        cluster_index=cluster_index,
    )


def cluster_spectrum(h0, tolerance: float | None = None,
                     declared_orders: dict[int, int] | None = None
                     ) -> list[SpectralCluster]:
    """Group the spectrum of ``h0`` into isolated states and EP candidates.

    Eigenvalues are greedily chained: any two within ``tolerance`` of each
    other land in one cluster. Each multi-member cluster's order comes from
    the rank test, unless overridden through ``declared_orders``, a mapping
    from cluster index (clusters are sorted by centroid real part, then
    imaginary part) to the declared order.

    Raises :class:`AmbiguousOrderError` when a rank decision is too close to
    call; the error names the cluster index to declare.
    """
    a = as_matrix(h0, square=True)
    tol = clustering_tolerance(a) if tolerance is None else float(tolerance)
    declared = declared_orders or {}
    w = eigenvalues(a)
    groups = _union_find_groups(w, tol)
    groups.sort(key=lambda g: (np.mean(w[g]).real, np.mean(w[g]).imag))

    clusters = []
    for idx, group in enumerate(groups):
        members = tuple(sorted(group))
        centroid = complex(np.mean(w[list(members)]))
        mult = len(members)
        if idx in declared:
            order = int(declared[idx])
            if not 1 <= order <= mult:
                raise ValueError(
                    f"declared order {order} for cluster {idx} is outside "
                    f"1..{mult}"
                )
        elif mult == 1:
            order = 1
        else:
            order = _order_by_rank_test(a, centroid, mult, idx)
        clusters.append(SpectralCluster(centroid, mult, order, members))
    return clusters


# ---------------------------------------------------------------------------
# contour quadrature


def default_contour(h0, cluster: SpectralCluster, *, radius: float | None = None,
                    nodes: int = 64, spectrum: np.ndarray | None = None) -> Contour:
    """Circle around the cluster eigenvalue.

    The default radius is half the distance to the nearest foreign
    eigenvalue; with no foreign eigenvalues (m = n) it falls back to
    ||h0 - lambda*1||_F, the natural scale on which the quadrature is
    well conditioned.
    """
    a = as_matrix(h0, square=True)
    w = eigenvalues(a) if spectrum is None else spectrum
    center = complex(cluster.eigenvalue)
    if radius is None:
        members = set(cluster.member_indices)
        foreign = [w[i] for i in range(len(w)) if i not in members]
        if foreign:
            radius = 0.5 * min(abs(f - center) for f in foreign)
        else:
            radius = float(np.linalg.norm(a - center * np.eye(a.shape[0]), "fro"))
            if radius == 0.0:
                radius = 1.0
    return Contour(center, float(radius), nodes)


def _validate_contour(w: np.ndarray, cluster: SpectralCluster,
                      contour: Contour, scale: float) -> None:
    members = np.asarray(cluster.member_indices, dtype=int)
    if members.min() < 0 or members.max() >= len(w):
        raise ValueError("cluster member indices out of range for this matrix")
    member_vals = w[members]
    foreign = np.delete(w, members)
    center = complex(contour.center)
    if foreign.size and np.min(np.abs(foreign - center)) <= contour.radius:
        raise ContourError(
            f"a foreign eigenvalue lies inside the contour "
            f"(radius {contour.radius:.3e}, nearest foreign "
            f"{np.min(np.abs(foreign - center)):.3e})"
        )
    # computed members of a defective cluster scatter by ~eps^(1/n) around
    # the (O(eps)-accurate) centroid, so tiny radii stay legitimate
    centroid = complex(np.mean(member_vals))
    scatter = float(np.max(np.abs(member_vals - centroid)))
    slack = max(contour.radius, 4.0 * scatter, 64.0 * np.finfo(float).eps * scale)
    if np.max(np.abs(member_vals - center)) > slack:
        raise ContourError(
            "contour does not enclose the cluster (center is "
            f"{abs(centroid - center):.3e} from the member centroid)"
        )


def _ring_samples(a: np.ndarray, center: complex, radius: float,
                  thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Resolvent samples G(center + radius e^{i theta}) for each theta."""
    z = radius * np.exp(1j * thetas)
    energies = center + z
    eye = np.eye(a.shape[0], dtype=complex)
    shifted = energies[:, np.newaxis, np.newaxis] * eye - a
    try:
        g = np.linalg.inv(shifted)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(
            f"contour node hit the spectrum of h0: {exc}", pivot=0.0
        ) from exc
    return z, g


def _moments(z: np.ndarray, g: np.ndarray, powers) -> list[np.ndarray]:
    """(1/2 pi i) \\oint (E-c)^p G dE = mean_j z_j^(p+1) G_j for each p."""
    return [np.mean(z[:, np.newaxis, np.newaxis] ** (p + 1) * g, axis=0)
            for p in powers]


def _doubled_samples(a, center, radius, z, g):
    """Interleave the existing samples with the midpoints, theta-ordered."""
    n = len(z)
    new_thetas = (2.0 * np.arange(n) + 1.0) * np.pi / n
    z_new, g_new = _ring_samples(a, center, radius, new_thetas)
    z_all = np.empty(2 * n, dtype=complex)
    g_all = np.empty((2 * n,) + g.shape[1:], dtype=complex)
    z_all[0::2], z_all[1::2] = z, z_new
    g_all[0::2], g_all[1::2] = g, g_new
    return z_all, g_all


def _adaptive_moments(a, contour: Contour, powers, measure,
                      rel_tol: float, node_cap: int = NODE_CAP):
    """Double nodes until ``measure`` of successive moment sets stabilizes.

    ``measure(old_moments, new_moments) <= rel_tol`` defines convergence.
    Returns (moments, nodes_used, converged).
    """
    nodes = contour.nodes
    thetas = 2.0 * np.pi * np.arange(nodes) / nodes
    z, g = _ring_samples(a, contour.center, contour.radius, thetas)
    moments = _moments(z, g, powers)
    converged = False
    while nodes < node_cap:
        z, g = _doubled_samples(a, contour.center, contour.radius, z, g)
        nodes *= 2
        new_moments = _moments(z, g, powers)
        delta = measure(moments, new_moments)
        moments = new_moments
        if delta <= rel_tol:
            converged = True
            break
    return moments, nodes, converged


def _xi_measure(old, new) -> float:
    xi_old = float(np.linalg.norm(old[0], "fro"))
    xi_new = float(np.linalg.norm(new[0], "fro"))
    return abs(xi_new - xi_old) / max(xi_new, xi_old, 1e-300)


def _matrix_measure(old, new) -> float:
    worst = 0.0
    for mo, mn in zip(old, new):
        denom = max(float(np.linalg.norm(mn, "fro")), 1e-300)
        worst = max(worst, float(np.linalg.norm(mn - mo, "fro")) / denom)
    return worst


def _report_from_w(cluster: SpectralCluster, w_op: np.ndarray,
                   nodes_used: int, quad_converged: bool) -> EpReport:
    s = np.linalg.svd(w_op, compute_uv=False)
    leading = float(s[0])
    rank1_residual = float(s[1]) / leading if len(s) > 1 and leading > 0 else 0.0
    degenerate = cluster.order == 1 and cluster.algebraic_multiplicity > 1
    # W of a genuine EP (and of an isolated state) has rank 1, where the
    # spectral and Frobenius norms coincide; degenerate-but-diagonalizable
    # clusters carry a higher-rank projector, for which the spectral norm is
    # the meaningful strength
    strength = leading if degenerate else frobenius_norm(w_op)
    converged = quad_converged and (degenerate or rank1_residual <= RANK1_TOL)
    return EpReport(cluster, w_op, strength, rank1_residual, nodes_used, converged)


def xi_residue(h0, cluster: SpectralCluster, contour: Contour | None = None,
               *, node_cap: int = NODE_CAP) -> EpReport:
    """Response strength of one cluster by residue calculus.

    Integrates (E - lambda)^(n-1) G(E) around ``contour`` (default:
    :func:`default_contour`), doubling the trapezoidal node count until two
    successive xi estimates agree to 1e-13 relative or ``node_cap`` is hit,
    in which case the report comes back with ``converged=False``.

    Raises :class:`ContourError` if the contour fails to separate the
    cluster from the rest of the spectrum.
    """
    a = as_matrix(h0, square=True)
    w = eigenvalues(a)
    if contour is None:
        contour = default_contour(a, cluster, spectrum=w)
    scale = max(float(np.linalg.norm(a, "fro")), abs(contour.center), 1.0)
    _validate_contour(w, cluster, contour, scale)
    moments, nodes_used, quad_ok = _adaptive_moments(
        a, contour, [cluster.order - 1], _xi_measure, XI_REL_TOL, node_cap
    )
    return _report_from_w(cluster, moments[0], nodes_used, quad_ok)


def xi_special(h0, lambda_ep: complex, n: int) -> EpReport:
    """Response strength for the m = n case: xi = ||(h0 - lambda*1)^(n-1)||_F.

    Requires ``h0`` to be n x n with ``h0 - lambda*1`` nilpotent of index
    exactly n; otherwise :class:`NotAnEpError` is raised and the general
    :func:`xi_residue` route applies.
    """
    a = as_matrix(h0, square=True)
    n = int(n)
    if n < 1:
        raise ValueError("order n must be >= 1")
    if a.shape[0] != n:
        raise ValueError(
            f"xi_special requires an n x n matrix (n = {n}, got {a.shape[0]}); "
            "use xi_residue for m > n"
        )
    nil = a - complex(lambda_ep) * np.eye(n, dtype=complex)
    nil_norm = float(np.linalg.norm(nil, "fro"))
    w_op = np.linalg.matrix_power(nil, n - 1)
    w_norm = float(np.linalg.norm(w_op, "fro"))
    if float(np.linalg.norm(w_op @ nil, "fro")) > 1e-10 * nil_norm**n:
        raise NotAnEpError(
            f"(h0 - lambda*1)^{n} does not vanish: not an EP of order {n} "
            "in an n-dimensional space"
        )
    if w_norm <= 1e-10 * nil_norm ** (n - 1):
        raise NotAnEpError(
            f"(h0 - lambda*1)^{n - 1} vanishes: nilpotency index is below {n}"
        )
    cluster = SpectralCluster(complex(lambda_ep), n, n, tuple(range(n)))
    return _report_from_w(cluster, w_op, 0, True)


# ---------------------------------------------------------------------------
# full spectral decomposition


@dataclass
class SpectralDecomposition:
    """Projectors and nilpotent powers of every cluster (the resolvent

    expansion coefficients). ``nilpotent_powers[l]`` holds N_l^1 .. N_l^(n-1)
    and is empty for order-1 clusters.
    """

    clusters: list[SpectralCluster]
    projectors: list[np.ndarray]
    nilpotent_powers: list[list[np.ndarray]] = field(default_factory=list)

    def reconstruct_greens(self, energy: complex) -> np.ndarray:
        """Evaluate the expansion at one energy (away from the spectrum)."""
        energy = complex(energy)
        total = np.zeros_like(self.projectors[0])
        for cluster, proj, nils in zip(self.clusters, self.projectors,
                                       self.nilpotent_powers):
            de = energy - cluster.eigenvalue
            total = total + proj / de
            for k, nil in enumerate(nils, start=1):
                total = total + nil / de ** (k + 1)
        return total


def spectral_decomposition(h0, clusters: list[SpectralCluster] | None = None,
                           contours: list[Contour] | None = None,
                           *, node_cap: int = NODE_CAP) -> SpectralDecomposition:
    """Extract P_l and N_l^k for every cluster by contour moments.

    Contours must be pairwise non-overlapping and cover the clusters one to
    one (defaults satisfy this by construction).
    """
    a = as_matrix(h0, square=True)
    w = eigenvalues(a)
    if clusters is None:
        clusters = cluster_spectrum(a)
    if contours is None:
        contours = [default_contour(a, c, spectrum=w) for c in clusters]
    if len(contours) != len(clusters):
        raise ValueError("need exactly one contour per cluster")
    scale = max(float(np.linalg.norm(a, "fro")), 1.0)
    for i in range(len(contours)):
        for j in range(i + 1, len(contours)):
            sep = abs(contours[i].center - contours[j].center)
            # tangent circles (the default when two clusters are mutual
            # nearest neighbors) have disjoint interiors and are fine
            if sep < contours[i].radius + contours[j].radius:
                raise ContourError(f"contours {i} and {j} overlap")
    projectors = []
    nilpotents = []
    for cluster, contour in zip(clusters, contours):
        _validate_contour(w, cluster, contour, scale)
        moments, _, converged = _adaptive_moments(
            a, contour, list(range(cluster.order)), _matrix_measure, 1e-12,
            node_cap,
        )
        if not converged:
            raise ContourError(
                f"moments around {contour.center} did not stabilize at the "
                f"{node_cap}-node cap"
            )
        projectors.append(moments[0])
        nilpotents.append(moments[1:])
    return SpectralDecomposition(list(clusters), projectors, nilpotents)


# ---------------------------------------------------------------------------
# bounds and scans


def splitting_bound(xi: float, n: int, epsilon: float, h1_norm: float) -> float:
    """Eigenvalue-displacement radius (epsilon ||H1||_2 xi)^(1/n).

    This is also the pseudospectral radius near the EP for small epsilon.
    """
    if min(xi, epsilon, h1_norm) < 0:
        raise ValueError("xi, epsilon and h1_norm must be nonnegative")
    if n < 1:
        raise ValueError("order n must be >= 1")
    return float((epsilon * h1_norm * xi) ** (1.0 / n))


def passive_bound_check(report: EpReport, n: int | None = None) -> PassiveBound:
    """Check xi against the passive-system bound (sqrt(2n) |Im lambda|)^(n-1).

    The bound only holds for passive systems with m = n; for m > n it is
    expected to fail, which is precisely what this checker documents.
    """
    order = report.cluster.order if n is None else int(n)
    if order < 1:
        raise ValueError("order n must be >= 1")
    lam = complex(report.cluster.eigenvalue)
    bound = float((math.sqrt(2 * order) * abs(lam.imag)) ** (order - 1))
    return PassiveBound(bound, bool(report.strength <= bound))


def perturbation_coupling(w_op: np.ndarray, h1, right: np.ndarray | None = None
                          ) -> float:
    """Genericity indicator ||W H1||_F (or ||W H1 R||_2 with a vector).

    A generic perturbation has nonzero coupling; small values are flagged by
    scans but never rejected.
    """
    prod = as_matrix(w_op) @ as_matrix(h1)
    if right is None:
        return float(np.linalg.norm(prod, "fro"))
    return float(np.linalg.norm(prod @ as_vector(right)))


SCAN_COLUMNS = ["parameter", "xi", "lambda_re", "lambda_im",
                "foreign_distance", "compensated", "valid"]


def surface_scan(generator, samples, order: int, *,
                 compensate_power: int = 1,
                 tolerance: float | None = None,
                 select: int = 0,
                 nodes: int = 64,
                 radius: float | None = None) -> ScanTable:
    """Sweep a model along an exceptional surface and tabulate xi.

    ``generator`` maps one real parameter to a Hamiltonian that carries an
    EP of the declared ``order`` at every sample (``select`` picks among
    clusters of that order, in centroid order). Samples failing EP
    validation are flagged (``valid = 0``, NaN data) and the scan continues.
    The ``compensated`` column holds xi * foreign_distance^k for the
    divergence-law limit, with k = ``compensate_power``.
    """

    def one(p: float) -> tuple[float, ...]:
        p = float(p)
        try:
            a = as_matrix(generator(p), square=True)
            clusters = cluster_spectrum(a, tolerance)
            candidates = [c for c in clusters if c.order == order]
            cluster = candidates[select]
            w = eigenvalues(a)
            contour = default_contour(a, cluster, radius=radius, nodes=nodes,
                                      spectrum=w)
            report = xi_residue(a, cluster, contour)
            lam = complex(cluster.eigenvalue)
            foreign = np.delete(w, np.asarray(cluster.member_indices, dtype=int))
            fdist = float(np.min(np.abs(foreign - lam))) if foreign.size else math.inf
            return (p, report.strength, lam.real, lam.imag, fdist,
                    report.strength * fdist**compensate_power,
                    1.0 if report.converged else 0.0)
        except (IndexError, ValueError, EpsrsError):
            return (p, math.nan, math.nan, math.nan, math.nan, math.nan, 0.0)

    rows = thread_map(one, samples)
    rows.sort(key=lambda r: r[0])
    return ScanTable(list(SCAN_COLUMNS), rows)
