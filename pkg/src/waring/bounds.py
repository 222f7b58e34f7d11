"""Upper bounds for G(k) and G+(k) assembled from exponent data."""

import math
from dataclasses import dataclass, field

from .errors import DataError, PreconditionError
from .exponents import constants, data_dir, delta_star, load_exponent_table, solve_delta_formula, tau

THM11_CONSTANT = 4.20032
LITERATURE_FILE = "literature_bounds.csv"
REPORT_HEADER = ("k", "G0", "v", "H", "thm11", "thm12", "Gplus", "best", "source")
TABLE_SOURCE = "exponent table"
FORMULA_SOURCE = "closed form"
EXCEPTIONAL_GPLUS = (4, 8, 16, 32)


def is_power_of_two(k):
    return k > 0 and k & (k - 1) == 0


def _table_for(source, table):
    if source == "table" and table is None:
        return load_exponent_table()
    return table


def g0(k, source="formula", table=None):
    """``(min_v v + Delta_v / tau(k), v)``.

    The objective is at least ``v``, so the formula scan over even ``v``
    stops once ``v`` passes the best value found.
    """
    if k < 4:
        raise PreconditionError(f"k must be >= 4, got {k}")
    table = _table_for(source, table)
    t = tau(k, source, table).tau
    if source == "table":
        rows = [r for r in table.for_k(k) if r.s >= 2]
        if not rows:
            raise DataError(f"no exponents for k={k}")
        best = min(rows, key=lambda r: r.s + float(r.delta) / t)
        return best.s + float(best.delta) / t, best.s
    best, arg, v = math.inf, None, 2
    while v <= best:
        val = v + solve_delta_formula(k, v) / t
        if val < best:
            best, arg = val, v
        v += 2
    return best, arg


def g_upper(k, source="formula", table=None):
    """``max(floor(G0) + 1, 2k + 3)``, with ``4k`` for powers of two."""
    value, _ = g0(k, source, table)
    floor_term = 4 * k if is_power_of_two(k) else 2 * k + 3
    return max(math.floor(value) + 1, floor_term)


def thm11_bound(k):
    """``ceil(k (log k + 4.20032))``."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    return math.ceil(k * (math.log(k) + THM11_CONSTANT))


def thm12_value(k):
    """``k (log k + C1) + C2``; G(k) lies strictly below this."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    c = constants()
    return k * (math.log(k) + c.C1) + c.C2


def thm12_integer_bound(k):
    """Largest integer strictly below :func:`thm12_value`."""
    value = thm12_value(k)
    return math.ceil(value) - 1


def gplus_bound(k, h):
    """``ceil((h + 1) / 2)`` from an upper bound ``h`` for G(k)."""
    if h < 1:
        raise PreconditionError(f"h must be >= 1, got {h}")
    return (h + 2) // 2


def gplus_exact(k):
    """Known exact value of G+(k) for the exceptional powers of two, else None."""
    return 4 * k if k in EXCEPTIONAL_GPLUS else None


def load_literature(path=None):
    """``{k: (bound, source)}`` from a ``k,bound,source`` file."""
    path = path if path is not None else data_dir() / LITERATURE_FILE
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from exc
    if not lines or [c.strip() for c in lines[0].split(",")] != ["k", "bound", "source"]:
        raise DataError(f"{path}:1: expected header k,bound,source")
    out = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split(",", 2)]
        try:
            k, bound = int(parts[0]), int(parts[1])
            src = parts[2]
        except (ValueError, IndexError):
            raise DataError(f"{path}:{lineno}: malformed row {line!r}") from None
        if k in out and out[k][0] <= bound:
            continue
        out[k] = (bound, src)
    return out


def best_known(k, table=None, literature=None):
    """Smallest of the literature bound, the table-mode bound and the closed form."""
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    literature = load_literature() if literature is None else literature
    table = load_exponent_table() if table is None else table
    cands = []
    if k in literature:
        cands.append(literature[k])
    if k in table.ks():
        cands.append((g_upper(k, "table", table), TABLE_SOURCE))
    cands.append((thm11_bound(k), FORMULA_SOURCE))
    return min(cands, key=lambda c: c[0])


def nu(delta_star_value, k):
    """``min(2 |Delta*| / k, 1 / (6k))``; requires ``Delta* < 0``."""
    if delta_star_value >= 0:
        raise PreconditionError(f"need a negative minor-arc exponent, got {delta_star_value}")
    return min(2 * abs(delta_star_value) / k, 1 / (6 * k))


@dataclass(frozen=True)
class BoundReport:
    k: int
    g0: float
    g0_minimizing_v: int
    tau_T: float
    thm62_bound: int
    thm11_bound: int
    thm12_value: float
    gplus_bound: int
    best_known: int
    gplus_exact: int = None
    sources: tuple = field(default_factory=tuple)

    def csv_row(self):
        return ",".join([
            str(self.k), f"{self.g0:.6f}", str(self.g0_minimizing_v), str(self.thm62_bound),
            str(self.thm11_bound), f"{self.thm12_value:.6f}", str(self.gplus_bound),
            str(self.best_known), self.sources[-1] if self.sources else "",
        ])


def bound_report(k, source="table", table=None, literature=None):
    table = _table_for(source, table)
    if table is None:
        table = load_exponent_table()
    value, v = g0(k, source, table)
    T = tau(k, source, table).T
    h = g_upper(k, source, table)
    best, best_src = best_known(k, table, literature)
    return BoundReport(
        k=k, g0=value, g0_minimizing_v=v, tau_T=T, thm62_bound=h,
        thm11_bound=thm11_bound(k), thm12_value=thm12_value(k),
        gplus_bound=gplus_bound(k, h), best_known=best, gplus_exact=gplus_exact(k),
        sources=(TABLE_SOURCE if source == "table" else FORMULA_SOURCE, best_src),
    )


def table_report(ks, source="table", table=None, literature=None):
    table = _table_for(source, table)
    ks = list(ks)
    if source == "table":
        missing = [k for k in ks if k not in table.ks()]
        if missing:
            raise DataError(f"no exponent rows for k in {missing}")
    return [bound_report(k, source, table, literature) for k in ks]


def format_report_csv(reports):
    lines = [",".join(REPORT_HEADER)]
    lines.extend(r.csv_row() for r in reports)
    return "\n".join(lines) + "\n"


def minor_arc_exponent_at_bound(k, table=None):
    """``(s, Delta*_s)`` at ``s = H(k)`` with table-mode tau."""
    table = load_exponent_table() if table is None else table
    s = g_upper(k, "table", table)
    return s, delta_star(k, s, tau(k, "table", table).tau, table)
