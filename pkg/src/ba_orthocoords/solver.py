"""Baker-Akhiezer function on a nodal curve of CP^1 components.

On component ``i`` the ansatz is

    psi_i(u, z) = E_i(u, z) * (c_{i,0} + sum_k c_{i,k} / (z - gamma_{i,k}))

where ``E_i = exp(u_j k_j(z))`` if the component carries ``P_j`` and ``E_i = 1``
otherwise.  The coefficients are fixed by one linear equation per node
(equal values at the two glued points), ``psi(r) = h`` and ``psi(r_i) = 0``.

Derivatives in ``u`` come from differentiating the linear system
``M(u) c = b``: ``M c' = -M' c`` with ``M'`` obtained analytically from the
exponential prefactors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .curve import PointOnCurve, SpectralData
from .errors import ConfigurationError, DomainError, SingularSystemError

MAX_CONDITION = 1e12


@dataclass(frozen=True, eq=False)
class Ansatz:
    """Unknown layout plus the u-independent part of the linear system.

    ``M(u) = static * exp(sum_j u_j * kparam[j])`` entrywise.
    """

    sd: SpectralData
    offsets: tuple[int, ...]
    poles: tuple[tuple[complex, ...], ...]
    # per component: (j, P at infinity?) or None when no P lies on it
    exponent: tuple[tuple[int, bool] | None, ...]
    static: np.ndarray = field(default=None, repr=False)
    kparam: np.ndarray = field(default=None, repr=False)  # (n, N, N)
    rhs: np.ndarray = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.offsets[-1] + 1 + len(self.poles[-1])

    def block(self, component: int) -> slice:
        start = self.offsets[component]
        return slice(start, start + 1 + len(self.poles[component]))

    def local_parameter(self, p: PointOnCurve) -> complex:
        """``k(z)`` of the P-point on p's component, evaluated at p (0 if none)."""
        e = self.exponent[p.component]
        if e is None:
            return 0j
        _, at_inf = e
        if at_inf:
            if p.is_infinite:
                raise DomainError(f"psi has an essential singularity at {p!r}")
            return p.z
        if p.is_infinite:
            return 0j
        if p.z == 0:
            raise DomainError(f"psi has an essential singularity at {p!r}")
        return 1.0 / p.z

    def basis(self, p: PointOnCurve) -> np.ndarray:
        """Rational basis ``[1, 1/(z - gamma_k), ...]`` on p's component."""
        poles = self.poles[p.component]
        out = np.zeros(1 + len(poles), dtype=complex)
        out[0] = 1.0
        if p.is_infinite:
            return out
        for k, g in enumerate(poles):
            d = p.z - g
            if abs(d) <= 1e-12 * max(1.0, abs(g)):
                raise DomainError(f"{p!r} is a pole of the ansatz (gamma point)")
            out[1 + k] = 1.0 / d
        return out

    def prefactor(self, p: PointOnCurve, u: np.ndarray) -> complex:
        e = self.exponent[p.component]
        if e is None:
            return 1.0 + 0j
        return np.exp(u[e[0]] * self.local_parameter(p))

    def matrix(self, u: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
        """``M(u)`` and ``dM/du_j`` for every j."""
        M = self.static * np.exp(np.tensordot(u, self.kparam, axes=1))
        return M, [M * k for k in self.kparam]


def build_ansatz(sd: SpectralData) -> Ansatz:
    poles = [[] for _ in range(sd.components)]
    for g in sd.gamma:
        if g.is_infinite:
            raise ConfigurationError("gamma points must be finite")
        poles[g.component].append(g.z)
    exponent = [None] * sd.components
    for j, p in enumerate(sd.P):
        if exponent[p.component] is not None:
            raise ConfigurationError(f"component G{p.component + 1} carries two P points")
        if not p.is_infinite and p.z != 0:
            raise ConfigurationError(f"P{j + 1} must be 0 or inf, got {p!r}")
        exponent[p.component] = (j, p.is_infinite)
    offsets, start = [], 0
    for c in range(sd.components):
        offsets.append(start)
        start += 1 + len(poles[c])
    ans = Ansatz(sd, tuple(offsets), tuple(map(tuple, poles)), tuple(exponent))
    N = ans.size
    if sd.equation_count != N:
        raise ConfigurationError(
            f"system is not square: {sd.equation_count} equations, {N} unknowns"
        )

    static = np.zeros((N, N), dtype=complex)
    kparam = np.zeros((sd.n, N, N), dtype=complex)
    rhs = np.zeros(N, dtype=complex)

    def put(row: int, p: PointOnCurve, sign: float):
        blk = ans.block(p.component)
        try:
            static[row, blk] = sign * ans.basis(p)
            e = ans.exponent[p.component]
            if e is not None:
                kparam[e[0], row, blk] = ans.local_parameter(p)
        except DomainError as exc:
            raise ConfigurationError(f"cannot impose a condition at {p!r}: {exc}") from exc

    i = 0
    for g in sd.glue:
        put(i, g.first, 1.0)
        put(i, g.second, -1.0)  # nodes join distinct components: blocks disjoint
        i += 1
    put(i, sd.r, 1.0)
    rhs[i] = sd.h
    i += 1
    for ri in sd.r_zeros:
        put(i, ri, 1.0)
        i += 1
    for arr in (static, kparam, rhs):
        arr.flags.writeable = False
    object.__setattr__(ans, "static", static)
    object.__setattr__(ans, "kparam", kparam)
    object.__setattr__(ans, "rhs", rhs)
    return ans


def _ansatz(sd: SpectralData | Ansatz) -> Ansatz:
    return sd if isinstance(sd, Ansatz) else build_ansatz(sd)


def assemble_system(sd: SpectralData | Ansatz, u) -> tuple[np.ndarray, np.ndarray]:
    """Gluing rows, the ``psi(r) = h`` row and ``psi(r_i) = 0`` rows."""
    ans = _ansatz(sd)
    M, _ = ans.matrix(np.asarray(u, dtype=float))
    return M, ans.rhs.copy()


@dataclass(frozen=True)
class BASolution:
    ansatz: Ansatz
    u: tuple[float, ...]
    coeffs: np.ndarray
    coeff_derivs: np.ndarray | None  # (n, N): d coeffs / d u_j
    condition_number: float

    @property
    def leading(self) -> np.ndarray:
        """``f_j(u)``: the rational part at ``P_j`` (constant term when P_j = inf)."""
        return np.array([self._rational(p, self.coeffs) for p in self.ansatz.sd.P])

    @property
    def leading_derivs(self) -> np.ndarray:
        """``d f_j / d u_i`` as an (n, n) array indexed ``[i, j]``."""
        self._need_derivs()
        return np.array(
            [[self._rational(p, dc) for p in self.ansatz.sd.P] for dc in self.coeff_derivs]
        )

    def _need_derivs(self):
        if self.coeff_derivs is None:
            raise ValueError("solution was computed without derivatives")

    def _rational(self, p: PointOnCurve, coeffs: np.ndarray) -> complex:
        block = coeffs[self.ansatz.block(p.component)]
        if p.is_infinite:
            return complex(block[0])
        return complex(self.ansatz.basis(p) @ block)

    def _check_domain(self, p: PointOnCurve):
        for j, P in enumerate(self.ansatz.sd.P):
            if p.same_as(P):
                raise DomainError(f"psi is not defined at P{j + 1} = {P!r}")
        if p.component >= len(self.ansatz.offsets):
            raise DomainError(f"no component G{p.component + 1}")

    def psi(self, p: PointOnCurve) -> complex:
        self._check_domain(p)
        u = np.asarray(self.u)
        return complex(self.ansatz.prefactor(p, u) * self._rational(p, self.coeffs))

    def psi_derivative(self, j: int, p: PointOnCurve) -> complex:
        self._check_domain(p)
        self._need_derivs()
        ans = self.ansatz
        u = np.asarray(self.u)
        E = ans.prefactor(p, u)
        R = self._rational(p, self.coeffs)
        dR = self._rational(p, self.coeff_derivs[j])
        e = ans.exponent[p.component]
        dE = E * ans.local_parameter(p) if e is not None and e[0] == j else 0j
        return complex(dE * R + E * dR)


def solve(sd: SpectralData | Ansatz, u, derivatives: bool = True) -> BASolution:
    """Solve for the ansatz coefficients at ``u`` (dense LU, partial pivoting).

    ``sd`` may be a prebuilt :class:`Ansatz` to skip rebuilding the static
    part of the system on every call.
    """
    ans = _ansatz(sd)
    u = np.asarray(u, dtype=float)
    if u.shape != (ans.sd.n,):
        raise ValueError(f"expected {ans.sd.n} parameters, got shape {u.shape}")
    M, dM = ans.matrix(u)
    rhs = ans.rhs
    cond = float(np.linalg.cond(M))
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularSystemError(u, cond)
    lu = scipy.linalg.lu_factor(M, check_finite=False)
    c = scipy.linalg.lu_solve(lu, rhs, check_finite=False)
    residual = np.linalg.norm(M @ c - rhs)
    if residual > 1e-10 * (1 + cond) * max(1.0, np.linalg.norm(rhs)):
        raise SingularSystemError(u, cond)
    dc = None
    if derivatives:
        dc = np.array([scipy.linalg.lu_solve(lu, -(D @ c), check_finite=False) for D in dM])
    return BASolution(ans, tuple(u.tolist()), c, dc, cond)


def eval_psi(sol: BASolution, p: PointOnCurve) -> complex:
    return sol.psi(p)


def eval_psi_derivative(sd: SpectralData, u, j: int, p: PointOnCurve) -> complex:
    return solve(sd, u).psi_derivative(j, p)
