"""Small dense linear programming: two-phase primal simplex with Bland's rule,
dual prices, an independent optimality checker, and a column-generation loop.

Dual values follow the sensitivity convention ``y_i = d(objective) / d(rhs_i)``:
for a minimisation, ``<=`` rows have ``y <= 0`` and ``>=`` rows ``y >= 0``; the
signs flip for maximisation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

RELATIONS = ("<=", ">=", "=")
TOL = 1e-9
PIVOT_TOL = 1e-11


class LpError(RuntimeError):
    pass


class PivotLimitError(LpError):
    """Simplex ran out of pivots (Bland's rule should make this unreachable)."""


class ColumnGenerationLimitError(LpError):
    pass


class LinearProgram:
    """A linear program assembled variable by variable and row by row."""

    def __init__(self, sense: str = "min"):
        if sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        self.sense = sense
        self.var_names: list[str] = []
        self.cost: list[float] = []
        self.lower: list[float] = []
        self.upper: list[float] = []
        self.rows: list[dict[int, float]] = []
        self.relations: list[str] = []
        self.rhs: list[float] = []
        self.row_names: list[str] = []

    @property
    def num_vars(self) -> int:
        return len(self.cost)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def add_variable(self, cost: float = 0.0, lower: float = 0.0, upper: float = math.inf,
                     name: str | None = None, column: dict[int, float] | None = None) -> int:
        if lower > upper:
            raise ValueError(f"variable bounds {lower} > {upper}")
        if math.isinf(lower) and lower > 0 or math.isinf(upper) and upper < 0:
            raise ValueError("bounds must not be +inf below or -inf above")
        j = self.num_vars
        self.var_names.append(name or f"x{j}")
        self.cost.append(float(cost))
        self.lower.append(float(lower))
        self.upper.append(float(upper))
        for i, a in (column or {}).items():
            if not 0 <= i < self.num_rows:
                raise ValueError(f"column refers to unknown row {i}")
            if a != 0:
                self.rows[i][j] = float(a)
        return j

    def add_constraint(self, coefs: dict[int, float], relation: str, rhs: float,
                       name: str | None = None) -> int:
        if relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}")
        for j in coefs:
            if not 0 <= j < self.num_vars:
                raise ValueError(f"constraint refers to undeclared variable {j}")
        i = self.num_rows
        self.rows.append({j: float(a) for j, a in coefs.items() if a != 0})
        self.relations.append(relation)
        self.rhs.append(float(rhs))
        self.row_names.append(name or f"r{i}")
        return i

    def matrix(self) -> np.ndarray:
        A = np.zeros((self.num_rows, self.num_vars))
        for i, row in enumerate(self.rows):
            for j, a in row.items():
                A[i, j] = a
        return A

    def to_lp_text(self) -> str:
        """CPLEX-style LP text, for debugging dumps."""
        names = [_lp_name(s) for s in self.var_names]

        def expr(coefs):
            if not coefs:
                return "0 " + names[0] if names else "0"
            out = []
            for j, a in sorted(coefs.items()):
                sign = "-" if a < 0 else "+"
                out.append(f"{sign} {abs(a):.12g} {names[j]}")
            s = " ".join(out)
            return s[2:] if s.startswith("+ ") else s

        lines = ["Minimize" if self.sense == "min" else "Maximize"]
        lines.append(" obj: " + expr({j: c for j, c in enumerate(self.cost) if c != 0}))
        lines.append("Subject To")
        for i, row in enumerate(self.rows):
            rel = {"<=": "<=", ">=": ">=", "=": "="}[self.relations[i]]
            lines.append(f" {_lp_name(self.row_names[i])}: {expr(row)} {rel} {self.rhs[i]:.12g}")
        lines.append("Bounds")
        for j, name in enumerate(names):
            lo, up = self.lower[j], self.upper[j]
            lo_s = "-inf" if math.isinf(lo) else f"{lo:.12g}"
            up_s = "+inf" if math.isinf(up) else f"{up:.12g}"
            lines.append(f" {lo_s} <= {name} <= {up_s}")
        lines.append("End")
        return "\n".join(lines) + "\n"


def _lp_name(s: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.]", "_", s)


@dataclass
class LpSolution:
    status: str
    x: np.ndarray
    duals: np.ndarray
    objective: float
    pivots: int = 0
    basis: tuple | None = field(default=None, repr=False, compare=False)
    warm: bool = field(default=False, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def solve(lp: LinearProgram, max_pivots: int | None = None,
          warm_start: LpSolution | None = None) -> LpSolution:
    """Solve ``lp`` with the two-phase dense-tableau primal simplex method.

    Entering and leaving variables are chosen by Bland's smallest-index rule.
    Raises :class:`PivotLimitError` if ``max_pivots`` is exhausted.
    ``warm_start`` is an earlier optimal solution of the same program with
    possibly fewer variables; if its basis is still primal feasible, phase I
    is skipped and phase II starts from it.
    """
    std = _Standardized(lp)
    tab = _Tableau(std)
    if max_pivots is None:
        max_pivots = 50 * (std.m + std.N) + 1000
    warm = warm_start is not None and warm_start.basis is not None and tab.load_basis(warm_start.basis)
    status = tab.run(max_pivots, skip_phase1=warm)
    nan_x = np.full(lp.num_vars, np.nan)
    nan_y = np.full(lp.num_rows, np.nan)
    if status != OPTIMAL:
        return LpSolution(status, nan_x, nan_y, math.nan, tab.pivots, warm=warm)
    y_std, duals_std = tab.primal_dual()
    x = std.recover_x(y_std)
    duals = std.recover_duals(duals_std)
    objective = float(np.dot(lp.cost, x)) if lp.num_vars else 0.0
    basis = tuple(std.key(j) for j in tab.basis)
    return LpSolution(OPTIMAL, x, duals, objective, tab.pivots, basis, warm)


class _Standardized:
    """min c'y s.t. A y (+/- slack) = b >= 0, y >= 0, built from a LinearProgram."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        sign = 1.0 if lp.sense == "min" else -1.0
        # original variable j  ->  offset + sum(s * y[k] for k, s in parts)
        self.parts: list[list[tuple[int, float]]] = []
        self.offset = np.zeros(lp.num_vars)
        ny = 0
        bound_rows = []
        for j in range(lp.num_vars):
            lo, up = lp.lower[j], lp.upper[j]
            if not math.isinf(lo):
                self.offset[j] = lo
                self.parts.append([(ny, 1.0)])
                if not math.isinf(up):
                    bound_rows.append((ny, up - lo))
                ny += 1
            elif not math.isinf(up):
                self.offset[j] = up
                self.parts.append([(ny, -1.0)])
                ny += 1
            else:
                self.parts.append([(ny, 1.0), (ny + 1, -1.0)])
                ny += 2
        self.ny = ny
        m0 = lp.num_rows
        m = m0 + len(bound_rows)
        A = np.zeros((m, ny))
        b = np.zeros(m)
        rel = list(lp.relations) + ["<="] * len(bound_rows)
        for i, row in enumerate(lp.rows):
            shift = 0.0
            for j, a in row.items():
                shift += a * self.offset[j]
                for k, s in self.parts[j]:
                    A[i, k] += a * s
            b[i] = lp.rhs[i] - shift
        for r, (k, width) in enumerate(bound_rows):
            A[m0 + r, k] = 1.0
            b[m0 + r] = width
        c = np.zeros(ny)
        for j in range(lp.num_vars):
            for k, s in self.parts[j]:
                c[k] += sign * lp.cost[j] * s
        self.m0, self.m = m0, m
        self.flip = np.where(b < 0, -1.0, 1.0)

        slack_cols = []
        art_rows = []
        extra = []
        for i in range(m):
            if rel[i] == "=":
                slack_cols.append(None)
                art_rows.append(i)
                continue
            coef = 1.0 if rel[i] == "<=" else -1.0
            slack_cols.append(ny + len(extra))
            extra.append((i, coef))
            if coef * self.flip[i] < 0:
                art_rows.append(i)
        ns = len(extra)
        na = len(art_rows)
        self.N = ny + ns + na
        full = np.zeros((m, self.N))
        full[:, :ny] = A
        for t, (i, coef) in enumerate(extra):
            full[i, ny + t] = coef
        for t, i in enumerate(art_rows):
            full[i, ny + ns + t] = 1.0
        full *= self.flip[:, None]
        # artificial columns stay +1 after the flip
        for t, i in enumerate(art_rows):
            full[i, ny + ns + t] = 1.0
        self.A = full
        self.b = b * self.flip
        self.c = np.concatenate([c, np.zeros(ns + na)])
        self.art_start = ny + ns
        self.initial_basis = []
        art_of_row = {i: ny + ns + t for t, i in enumerate(art_rows)}
        for i in range(m):
            self.initial_basis.append(art_of_row.get(i, slack_cols[i]))
        self.sign = sign
        self.ns = ns

    def key(self, j: int) -> tuple[str, int]:
        """Index-independent name of a standardized column (stable when variables are appended)."""
        if j < self.ny:
            return ("y", j)
        if j < self.art_start:
            return ("s", j - self.ny)
        return ("a", j - self.art_start)

    def index(self, key) -> int | None:
        kind, t = key
        if kind == "y":
            return t if t < self.ny else None
        if kind == "s":
            return self.ny + t if t < self.ns else None
        return None

    def recover_x(self, y: np.ndarray) -> np.ndarray:
        x = self.offset.copy()
        for j, parts in enumerate(self.parts):
            for k, s in parts:
                x[j] += s * y[k]
        return x

    def recover_duals(self, duals_std: np.ndarray) -> np.ndarray:
        d = duals_std[: self.m0] * self.flip[: self.m0]
        return self.sign * d


class _Tableau:
    def __init__(self, std: _Standardized):
        self.std = std
        m, N = std.m, std.N
        self.T = np.zeros((m, N + 1))
        self.T[:, :N] = std.A
        self.T[:, N] = std.b
        self.basis = list(std.initial_basis)
        self.pivots = 0
        self.allowed = np.ones(N, dtype=bool)

    def _reduced(self, c):
        cb = c[self.basis] if self.basis else np.zeros(0)
        d = c - cb @ self.T[:, :-1] if self.basis else c.copy()
        return d

    def _iterate(self, c, budget):
        T = self.T
        m = T.shape[0]
        while True:
            d = self._reduced(c)
            cand = np.nonzero((d < -TOL) & self.allowed)[0]
            if cand.size == 0:
                return OPTIMAL
            e = int(cand[0])
            col = T[:, e]
            rows = np.nonzero(col > PIVOT_TOL)[0]
            if rows.size == 0:
                return UNBOUNDED
            ratios = T[rows, -1] / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + TOL * max(1.0, abs(best))]
            r = int(min(ties, key=lambda i: self.basis[i]))
            if self.pivots >= budget:
                raise PivotLimitError(f"simplex exceeded {budget} pivots")
            self._pivot(r, e)

    def _pivot(self, r, e):
        T = self.T
        T[r] /= T[r, e]
        col = T[:, e].copy()
        col[r] = 0.0
        nz = np.nonzero(col)[0]  # master tableaus are sparse; skip untouched rows
        T[nz] -= np.outer(col[nz], T[r])
        self.basis[r] = e
        self.pivots += 1

    def load_basis(self, keys) -> bool:
        """Install a basis given by column keys; False (and no change) unless it is feasible."""
        std = self.std
        if len(keys) != std.m or std.m == 0:
            return False
        idx = [std.index(k) for k in keys]
        if any(i is None for i in idx) or len(set(idx)) != len(idx):
            return False
        B = std.A[:, idx]
        try:
            T = np.linalg.solve(B, np.column_stack([std.A, std.b]))
        except np.linalg.LinAlgError:
            return False
        if not np.all(np.isfinite(T)) or T[:, -1].min() < -1e-9:
            return False
        T[:, -1] = np.maximum(T[:, -1], 0.0)
        self.T = T
        self.basis = idx
        return True

    def run(self, budget, skip_phase1: bool = False):
        std = self.std
        if std.m == 0:
            return UNBOUNDED if np.any(std.c < -TOL) else OPTIMAL
        N = std.N
        art = np.arange(std.art_start, N)
        if skip_phase1:
            self.allowed[art] = False
        elif art.size:
            c1 = np.zeros(N)
            c1[art] = 1.0
            self._iterate(c1, budget)
            infeas = float(c1[self.basis] @ self.T[:, -1])
            if infeas > TOL * max(1.0, float(np.abs(std.b).max(initial=0.0))):
                return INFEASIBLE
            self.allowed[art] = False
            for i in range(std.m):
                if self.basis[i] >= std.art_start:
                    row = self.T[i, : std.art_start]
                    nz = np.nonzero(np.abs(row) > 1e-9)[0]
                    if nz.size:
                        self._pivot(i, int(nz[0]))
        return self._iterate(std.c, budget)

    def primal_dual(self):
        """Basic solution and duals, re-solved against the original basis matrix."""
        std = self.std
        y = np.zeros(std.N)
        if std.m == 0:
            return y[: std.ny], np.zeros(0)
        B = std.A[:, self.basis]
        try:
            xb = np.linalg.solve(B, std.b)
            duals = np.linalg.solve(B.T, std.c[self.basis])
        except np.linalg.LinAlgError:
            xb = self.T[:, -1].copy()
            d = self._reduced(std.c)
            duals = np.array([std.c[j] - d[j] for j in std.initial_basis])
        y[self.basis] = np.maximum(xb, 0.0)
        return y[: std.ny], duals


# ------------------------------------------------------------ verification

def check_optimality(lp: LinearProgram, sol: LpSolution) -> dict[str, float]:
    """Recompute feasibility, dual feasibility, complementary slackness and the
    duality gap of ``sol`` from scratch. Returns the worst violation of each."""
    x, y = sol.x, sol.duals
    s = 1.0 if lp.sense == "min" else -1.0
    c = s * np.asarray(lp.cost, dtype=float)
    yy = s * y
    A = lp.matrix()
    b = np.asarray(lp.rhs, dtype=float)
    ax = A @ x if lp.num_rows else np.zeros(0)
    primal = 0.0
    dual_sign = 0.0
    cs = 0.0
    for i, rel in enumerate(lp.relations):
        slack = b[i] - ax[i]
        if rel == "<=":
            primal = max(primal, -slack)
            dual_sign = max(dual_sign, yy[i])
        elif rel == ">=":
            primal = max(primal, slack)
            dual_sign = max(dual_sign, -yy[i])
        else:
            primal = max(primal, abs(slack))
            continue
        cs = max(cs, abs(yy[i] * slack))
    lo = np.asarray(lp.lower, dtype=float)
    up = np.asarray(lp.upper, dtype=float)
    if lp.num_vars:
        primal = max(primal, float(np.max(np.maximum(lo - x, x - up))))
    d = c - (A.T @ yy if lp.num_rows else 0.0)
    dual_obj = float(b @ yy) if lp.num_rows else 0.0
    for j in range(lp.num_vars):
        if d[j] > 0:
            if math.isinf(lo[j]):
                dual_sign = max(dual_sign, d[j])
            else:
                dual_obj += lo[j] * d[j]
                cs = max(cs, abs(d[j] * (x[j] - lo[j])))
        elif d[j] < 0:
            if math.isinf(up[j]):
                dual_sign = max(dual_sign, -d[j])
            else:
                dual_obj += up[j] * d[j]
                cs = max(cs, abs(d[j] * (up[j] - x[j])))
    gap = abs(float(c @ x) - dual_obj) if lp.num_vars else abs(dual_obj)
    return {"primal": float(primal), "dual": float(dual_sign), "slackness": float(cs), "gap": float(gap)}


def is_certified_optimal(lp: LinearProgram, sol: LpSolution, tol: float = TOL) -> bool:
    scale = 1.0 + abs(sol.objective)
    v = check_optimality(lp, sol)
    return all(val <= tol * scale * 10 for val in v.values())


# ------------------------------------------------------------ column generation

@dataclass
class Column:
    cost: float
    entries: dict[int, float]
    lower: float = 0.0
    upper: float = math.inf
    name: str | None = None
    payload: object = None


@dataclass
class ColumnGenerationResult:
    solution: LpSolution
    columns: list[tuple[int, Column]] = field(default_factory=list)
    iterations: int = 0


def reduced_cost(lp: LinearProgram, sol: LpSolution, column: Column) -> float:
    return column.cost - sum(a * sol.duals[i] for i, a in column.entries.items())


def solve_with_column_generation(master: LinearProgram,
                                 pricer: Callable[[LpSolution], Sequence[Column]],
                                 max_iterations: int | None = None,
                                 tol: float = TOL) -> ColumnGenerationResult:
    """Alternate restricted-master solves and pricing until the pricer has nothing to add.

    ``master`` is extended in place. Every column the pricer returns must be
    improving (negative reduced cost for ``min``, positive for ``max``);
    anything else is a pricer bug and raises.
    """
    if max_iterations is None:
        max_iterations = 10 * master.num_rows + 1000
    added: list[tuple[int, Column]] = []
    sol = None
    for it in range(1, max_iterations + 1):
        sol = solve(master, warm_start=sol)
        if not sol.optimal:
            raise LpError(f"restricted master is {sol.status}")
        new = list(pricer(sol))
        if not new:
            return ColumnGenerationResult(sol, added, it)
        scale = 1.0 + abs(sol.objective)
        for col in new:
            rc = reduced_cost(master, sol, col)
            improving = rc < -tol * scale if master.sense == "min" else rc > tol * scale
            if not improving:
                raise LpError(f"pricer returned a non-improving column (reduced cost {rc:.3g})")
            j = master.add_variable(col.cost, col.lower, col.upper, col.name, col.entries)
            added.append((j, col))
    raise ColumnGenerationLimitError(f"column generation exceeded {max_iterations} iterations")
