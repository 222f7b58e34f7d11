"""Transcendental constants, admissible exponents and the Weyl-type saving.

All scalar equations are solved by safeguarded Newton iteration: a sign
change is checked on the starting bracket and any step leaving the bracket
is replaced by bisection.
"""

import math
import os
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path

from .errors import ConvergenceError, DataError, PreconditionError

SOLVER_TOL = 1e-12
TABLE_FILE = "exponents_vw2000.csv"
TABLE_HEADER = ("k", "s", "delta", "source")
# Values in the exponent table are rounded up in their last printed place.
HALF_ULP = 5e-7


def newton_bracketed(f, df, lo, hi, x0=None, tol=SOLVER_TOL, max_iter=200):
    """Root of ``f`` in ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ConvergenceError(f"no sign change on [{lo}, {hi}]")
    x = 0.5 * (lo + hi) if x0 is None else x0
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) < tol * 1e-2:
            return x
        if (fx > 0) == (fhi > 0):
            hi = x
        else:
            lo = x
        d = df(x)
        nxt = x - fx / d if d else None
        if nxt is None or not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-17 * max(1.0, abs(x)):
            x = nxt
            break
        x = nxt
    if abs(f(x)) >= tol:
        raise ConvergenceError("Newton iteration stalled", estimate=x, error=abs(f(x)))
    return x


# -- constants -----------------------------------------------------------------

def omega_equation(w):
    return w - 2 - 1 / w - math.log(w)


def solve_omega():
    """The root ``w >= 1`` of ``w - 2 - 1/w = log w`` (it lies in (3, 4))."""
    return newton_bracketed(omega_equation, lambda w: 1 + 1 / w ** 2 - 1 / w, 3.0, 4.0)


def delta_equation(d):
    return d + math.log(d) + 1


def solve_delta_gamma1():
    """The root of ``d + log d + 1 = 0``."""
    return newton_bracketed(delta_equation, lambda d: 1 + 1 / d, 0.1, 0.5)


@dataclass(frozen=True)
class Constants:
    omega: float
    C1: float
    C2: float
    delta_at_gamma1: float
    gamma_star: float

    def residuals(self):
        return {
            "omega": abs(omega_equation(self.omega)),
            "delta": abs(delta_equation(self.delta_at_gamma1)),
        }


def constants():
    w = solve_omega()
    return Constants(
        omega=w,
        C1=2 + math.log(w * w - 3 - 2 / w),
        C2=(w * w + 3 * w - 2) / (w * w - w - 2),
        delta_at_gamma1=solve_delta_gamma1(),
        gamma_star=0.5 * (1 - 1 / w + math.log(w)),
    )


# -- formula exponents ------------------------------------------------------------

def solve_delta_formula(k, v):
    """Positive root ``D`` of ``D e^(D/k) = k e^(1 - v/k)``.

    With ``x = D/k`` this is ``x + log x = 1 - v/k``; Newton runs in
    ``y = log x`` where the equation ``e^y + y = c`` is convex and monotone.
    """
    if k < 4 or v < 0:
        raise PreconditionError(f"need k >= 4 and v >= 0, got k={k}, v={v}")
    c = 1 - v / k
    if c == 1:
        return float(k)
    # e^y > 0 puts the root strictly inside (c - e^c, c)
    y = newton_bracketed(lambda y: math.exp(y) + y - c, lambda y: math.exp(y) + 1,
                         c - math.exp(c), c)
    return k * math.exp(y)


def delta_formula_residual(k, v, delta):
    x = delta / k
    return abs(x + math.log(x) - (1 - v / k))


# -- exponent tables -------------------------------------------------------------

@dataclass(frozen=True)
class ExponentRow:
    k: int
    s: int
    delta: Decimal
    source: str


@dataclass(frozen=True)
class ExponentTable:
    rows: tuple

    def for_k(self, k):
        return [r for r in self.rows if r.k == k]

    def delta(self, k, s):
        """Smallest tabulated exponent for ``(k, s)``, or ``None``."""
        vals = [r.delta for r in self.rows if r.k == k and r.s == s]
        return min(vals) if vals else None

    def ks(self):
        return sorted({r.k for r in self.rows})


def data_dir():
    override = os.environ.get("WARING_DATA_DIR")
    if override:
        return Path(override)
    return Path(str(resources.files("waring") / "data"))


def load_exponent_table(path=None):
    """Parse a ``k,s,delta,source`` file; deltas are kept as exact decimals."""
    path = Path(path) if path is not None else data_dir() / TABLE_FILE
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from exc
    lines = text.splitlines()
    if not lines or tuple(c.strip() for c in lines[0].split(",")) != TABLE_HEADER:
        raise DataError(f"{path}:1: expected header {','.join(TABLE_HEADER)}")
    rows, seen = [], set()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 4:
            raise DataError(f"{path}:{lineno}: expected 4 fields, got {len(parts)}")
        try:
            k, s, delta = int(parts[0]), int(parts[1]), Decimal(parts[2])
        except (ValueError, InvalidOperation):
            raise DataError(f"{path}:{lineno}: malformed row {line!r}") from None
        if not delta.is_finite() or s < 1 or not (0 <= delta <= k):
            raise DataError(f"{path}:{lineno}: need s >= 1 and 0 <= delta <= k")
        key = (k, s, parts[3])
        if key in seen:
            raise DataError(f"{path}:{lineno}: duplicate row for {key}")
        seen.add(key)
        rows.append(ExponentRow(k, s, delta, parts[3]))
    return ExponentTable(tuple(rows))


# -- tau ------------------------------------------------------------------------------

@dataclass(frozen=True)
class TauEstimate:
    k: int
    tau: float
    argmax_even_order: int
    source: str

    @property
    def T(self):
        return 1 / self.tau


def _saving(k, s, delta):
    return (k - 2 * delta) / (s * s)


def tau(k, source="formula", table=None):
    """Maximum of ``(k - 2 Delta_s) / s^2`` over even orders ``s``."""
    if k < 4:
        raise PreconditionError(f"k must be >= 4, got {k}")
    if source == "table":
        if table is None:
            raise PreconditionError("table mode needs an exponent table")
        rows = [r for r in table.for_k(k) if r.s % 2 == 0]
        if not rows:
            raise DataError(f"no even-order exponents for k={k}")
        best = max(rows, key=lambda r: (k - 2 * r.delta) / (r.s * r.s))
        val = float((k - 2 * best.delta) / (best.s * best.s))
        if val <= 0:
            raise DataError(f"tabulated exponents for k={k} give no positive saving")
        return TauEstimate(k, val, best.s, "table")
    if source != "formula":
        raise PreconditionError(f"unknown source {source!r}")
    best, arg, s = -math.inf, None, 2
    # every term is at most k/s^2, so once that drops below the best we stop
    while k / (s * s) >= best:
        val = _saving(k, s, solve_delta_formula(k, s))
        if val > best:
            best, arg = val, s
        s += 2
    return TauEstimate(k, best, arg, "formula")


def exponent_at(k, order, table=None):
    """``Delta_order`` from the table when listed, else the formula value at
    the nearest even order not below ``order``."""
    if table is not None:
        d = table.delta(k, order)
        if d is not None:
            return float(d)
    return solve_delta_formula(k, order + (order % 2))


def delta_star_candidates(k, s, tau_val, table=None):
    """``(t, Delta_{s-t} - t tau)`` for each integer ``0 <= t <= s - 2``."""
    if s < 2:
        raise PreconditionError(f"s must be >= 2, got {s}")
    return [(t, exponent_at(k, s - t, table) - t * tau_val) for t in range(s - 1)]


def delta_star(k, s, tau_val, table=None):
    """Minor-arc exponent: the least candidate of :func:`delta_star_candidates`."""
    cands = delta_star_candidates(k, s, tau_val, table)
    if not cands:
        raise DataError(f"no exponent available for k={k}, s={s}")
    return min(v for _, v in cands)


# -- kappa ------------------------------------------------------------------------------

def kappa(xi, k=None):
    """``(1 - xi - log xi + 2/k)^2 / (1 - 2 xi)``; ``k=None`` drops the ``2/k``."""
    if not (0 < xi < 0.5):
        raise PreconditionError(f"xi must lie in (0, 1/2), got {xi}")
    extra = 0.0 if k is None else 2 / k
    return (1 - xi - math.log(xi) + extra) ** 2 / (1 - 2 * xi)


def kappa_stationarity(xi, k=None):
    extra = 0.0 if k is None else 2 / k
    return xi - 1 / xi + 2 + extra - math.log(xi)


def minimize_kappa(k=None):
    """``(xi*, kappa(xi*))`` at the unique stationary point in (0, 1/2)."""
    if k is not None and k < 4:
        raise PreconditionError(f"k must be >= 4, got {k}")
    xi = newton_bracketed(lambda x: kappa_stationarity(x, k),
                          lambda x: 1 + 1 / (x * x) - 1 / x, 1e-3, 0.5 - 1e-12)
    return xi, kappa(xi, k)
