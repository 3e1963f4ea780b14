"""Floating-point frontend: Newton refinement, root-list filtering,
Vandermonde conditioning and well-conditioned basis selection.

Nothing here is certified by itself; every float that matters is later
re-derived or verified in exact arithmetic by the construction and
certification stages.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .linalg import RatMatrix, rank as rat_rank
from .polynomials import Monomial, MonomialBasis, MultiPoly, PolySystem, iter_monomials
from .ratrecon import exact_fraction

Point = tuple[complex, ...]


class SingularJacobianError(RuntimeError):
    """Newton step rejected: Jacobian condition estimate above 1e12."""


class DivergedError(RuntimeError):
    """Newton iteration grew the residual three times in a row."""


class NoWellConditionedBasisError(RuntimeError):
    """No connected-to-1 basis keeps the Vandermonde well conditioned."""


COND_LIMIT = 1e12
_MAX_HALVINGS = 8
_MAX_GROWTH = 3


@dataclass(frozen=True)
class ApproxRootSet:
    """Approximate roots with a shared accuracy bound E and coordinate bound M.

    Every point must satisfy max_i |z_i| <= M - E.  Optional per-point radii
    are upper bounds on the distance to the exact root each point
    approximates (used by match_and_filter).
    """

    points: tuple[Point, ...]
    accuracy: Fraction
    coord_bound: Fraction
    radii: tuple[float, ...] | None = None

    def __post_init__(self):
        pts = tuple(tuple(complex(z) for z in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "accuracy", exact_fraction(self.accuracy))
        object.__setattr__(self, "coord_bound", exact_fraction(self.coord_bound))
        if self.accuracy <= 0:
            raise ValueError("accuracy must be positive")
        if self.radii is not None:
            object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
            if len(self.radii) != len(pts):
                raise ValueError("one radius per point required")
        limit = float(self.coord_bound - self.accuracy)
        for p in pts:
            if p and max(abs(z) for z in p) > limit:
                raise ValueError(
                    f"point {p} violates the coordinate bound |z|_inf <= M - E = {limit}"
                )

    def __len__(self) -> int:
        return len(self.points)

    def arity(self) -> int:
        return len(self.points[0]) if self.points else 0


@dataclass(frozen=True)
class FloatMatrix:
    """Dense complex matrix with finite entries."""

    rows: int
    cols: int
    data: tuple[tuple[complex, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("data does not match dimensions")
        for row in self.data:
            for z in row:
                if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                    raise ValueError("non-finite matrix entry")

    def to_numpy(self) -> np.ndarray:
        return np.array(self.data, dtype=complex).reshape(self.rows, self.cols)


class RefineResult(NamedTuple):
    point: Point
    residual: float


def _residual(system: PolySystem, z: Sequence[complex]) -> float:
    return math.sqrt(sum(abs(p.eval_complex(z)) ** 2 for p in system.polys))


def _jacobian(system: PolySystem, z: Sequence[complex]) -> np.ndarray:
    n = system.arity()
    rows = []
    for p in system.polys:
        rows.append([p.partial_derivative(j).eval_complex(z) for j in range(n)])
    return np.array(rows, dtype=complex)


def newton_refine(system: PolySystem, z: Sequence[complex], iters: int) -> RefineResult:
    """Damped Newton iteration for a square system.

    Steps are halved (up to 8 times) while they increase the residual; a
    step that cannot decrease it counts as growth, and three consecutive
    growth events raise DivergedError.  Accepted steps therefore never
    increase the residual.
    """
    if len(system.polys) != system.arity():
        raise ValueError("newton_refine requires a square system")
    current = tuple(complex(c) for c in z)
    res = _residual(system, current)
    growth = 0
    for _ in range(iters):
        jac = _jacobian(system, current)
        try:
            cond = np.linalg.cond(jac)
        except np.linalg.LinAlgError:  # pragma: no cover
            raise SingularJacobianError("condition estimate failed")
        if not np.isfinite(cond) or cond > COND_LIMIT:
            raise SingularJacobianError(f"Jacobian condition estimate {cond:.3e} exceeds 1e12")
        values = np.array([p.eval_complex(current) for p in system.polys], dtype=complex)
        step = np.linalg.solve(jac, -values)
        scale = 1.0
        accepted = None
        for _ in range(_MAX_HALVINGS + 1):
            trial = tuple(c + scale * s for c, s in zip(current, step))
            trial_res = _residual(system, trial)
            if trial_res <= res:
                accepted = (trial, trial_res)
                break
            scale *= 0.5
        if accepted is None:
            growth += 1
            if growth >= _MAX_GROWTH:
                raise DivergedError("residual grew on three consecutive iterations")
            continue
        growth = 0
        current, res = accepted
    return RefineResult(current, res)


def random_square_combination(
    system: PolySystem, n: int, seed: int
) -> tuple[PolySystem, tuple[tuple[int, ...], ...]]:
    """n random integer combinations of the system, full row rank, seeded.

    The combination matrix is returned for reproducibility; the combined
    system vanishes everywhere the input system does.
    """
    m = len(system.polys)
    if m < n:
        raise ValueError(f"need at least {n} polynomials, got {m}")
    rng = random.Random(seed)
    while True:
        matrix = tuple(tuple(rng.randint(-3, 3) for _ in range(m)) for _ in range(n))
        if rat_rank(RatMatrix.from_rows(matrix)) == n:
            break
    combined = []
    for row in matrix:
        acc = MultiPoly.zero(system.variables)
        for coeff, poly in zip(row, system.polys):
            if coeff:
                acc = acc + poly.scale(coeff)
        combined.append(acc)
    return PolySystem(system.variables, combined), matrix


def _dist(a: Point, b: Point) -> float:
    return math.sqrt(sum(abs(x - y) ** 2 for x, y in zip(a, b)))


class FilterResult(NamedTuple):
    kept: tuple[tuple[Point, float], ...]
    inconclusive: bool


def match_and_filter(
    list_a: ApproxRootSet,
    list_b: ApproxRootSet,
    system_a: PolySystem,
    system_b: PolySystem,
    max_rounds: int = 6,
) -> FilterResult:
    """Filter list_a against list_b: keep only points that can approximate a
    common root of both square systems.

    For (z, eps) in list_a the match set is every (z', eps') in list_b with
    ||z - z'|| <= eps + eps'.  An empty match set discards z.  Otherwise both
    sides are refined by Newton w.r.t. their own system; after k rounds the
    radii contract to eps / 2^(2^k - 1), and a point whose match set empties
    out (separation achieved) is discarded.  Points are kept once max_rounds
    is exhausted, so the kept list is a superset of the true-root
    approximations; a match set still holding more than one candidate marks
    the result inconclusive.  Points whose refinement fails keep their
    current value and radius (conservative).
    """
    if list_a.radii is None or list_b.radii is None:
        raise ValueError("match_and_filter requires per-point radii on both lists")
    kept: list[tuple[Point, float]] = []
    inconclusive = False
    for z0, eps0 in zip(list_a.points, list_a.radii):
        z_cur, eps_cur = z0, eps0
        b_pts = list(list_b.points)
        b_rad = list(list_b.radii)
        rounds = 0
        decision = None
        while True:
            matches = [
                j
                for j in range(len(b_pts))
                if _dist(z_cur, b_pts[j]) <= eps_cur + b_rad[j]
            ]
            if not matches:
                decision = None
                break
            if rounds >= max_rounds:
                decision = (z_cur, eps_cur)
                if len(matches) > 1:
                    inconclusive = True
                break
            rounds += 1
            contraction = 2.0 ** (2**rounds - 1)
            try:
                z_cur = newton_refine(system_a, z_cur, 1).point
                eps_cur = eps0 / contraction
            except (SingularJacobianError, DivergedError):
                pass
            for j in matches:
                try:
                    b_pts[j] = newton_refine(system_b, b_pts[j], 1).point
                    b_rad[j] = list_b.radii[j] / contraction
                except (SingularJacobianError, DivergedError):
                    pass
        if decision is not None:
            kept.append(decision)
    return FilterResult(tuple(kept), inconclusive)


def vandermonde(points: Sequence[Point], monomials: Sequence[Monomial]) -> FloatMatrix:
    """Rows index points, columns index monomials, entries z_i^alpha_j."""
    rows = []
    for p in points:
        row = []
        for mono in monomials:
            v = 1 + 0j
            for z, e in zip(p, mono):
                if e:
                    v *= complex(z) ** e
            row.append(v)
        rows.append(tuple(row))
    return FloatMatrix(len(points), len(monomials), tuple(rows))


def singular_values_jacobi(a: FloatMatrix, tol: float = 1e-13, max_sweeps: int = 60) -> list[float]:
    """Singular values by one-sided Jacobi column orthogonalization.

    Small dense matrices only; converges to high relative accuracy, which
    matters because the smallest singular value is compared against
    perturbation thresholds.
    """
    if a.rows < a.cols:
        raise ValueError("one-sided Jacobi expects rows >= cols")
    m = a.to_numpy().copy()
    n = a.cols
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                cp = m[:, p]
                cq = m[:, q]
                app = float(np.real(np.vdot(cp, cp)))
                aqq = float(np.real(np.vdot(cq, cq)))
                apq = complex(np.vdot(cp, cq))
                if abs(apq) <= tol * math.sqrt(app * aqq) or abs(apq) == 0.0:
                    continue
                rotated = True
                phase = apq / abs(apq)
                zeta = (aqq - app) / (2.0 * abs(apq))
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                qcol = cq / phase
                new_p = c * cp - s * qcol
                new_q = s * cp + c * qcol
                m[:, p] = new_p
                m[:, q] = new_q
        if not rotated:
            break
    return sorted(float(np.linalg.norm(m[:, j])) for j in range(n))


def smallest_singular_value(a: FloatMatrix) -> float:
    """sigma_min via one-sided Jacobi; rows >= cols required."""
    if a.cols == 0:
        return 0.0
    return singular_values_jacobi(a)[0]


def select_basis(points: ApproxRootSet, variables: Sequence[str]) -> MonomialBasis:
    """Greedy well-conditioned monomial basis of size k = #points.

    Monomials are scanned in graded-lex order; a candidate needs all of its
    single-variable divisors already selected (so the result is an order
    ideal, in particular connected to 1) and must keep
    sigma_min(Vandermonde) above k*n*d*M^(d-1)*E, where d is the maximal
    degree selected so far.  Any order ideal of size k has degree <= k-1,
    which bounds the scan.
    """
    k = len(points)
    if k < 1:
        raise ValueError("need at least one point")
    n = len(variables)
    if points.arity() != n:
        raise ValueError("point arity does not match the variable list")
    e_val = float(points.accuracy)
    m_val = float(points.coord_bound)
    chosen: list[Monomial] = []
    chosen_set: set[Monomial] = set()
    for mono in iter_monomials(n, k - 1):
        if len(chosen) == k:
            break
        if sum(mono) > 0:
            divisors_ok = all(
                mono[:i] + (e - 1,) + mono[i + 1 :] in chosen_set
                for i, e in enumerate(mono)
                if e
            )
            if not divisors_ok:
                continue
        trial = chosen + [mono]
        d = max(sum(m) for m in trial)
        threshold = k * n * d * m_val ** (d - 1) * e_val
        sigma = smallest_singular_value(vandermonde(points.points, trial))
        if sigma > threshold:
            chosen.append(mono)
            chosen_set.add(mono)
    if len(chosen) != k:
        raise NoWellConditionedBasisError(
            f"no well-conditioned connected basis of size {k} (accuracy too large "
            "or points nearly coincident)"
        )
    return MonomialBasis(chosen)
