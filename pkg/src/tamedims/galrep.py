"""Explicit tame representations and exact checks of their properties.

For m >= 1 and q coprime to m, the model acts on functions
f : (Z/mZ)^x -> Q(zeta_m), with basis the delta functions delta_x
(x a unit, in increasing order):

    tau:  (tau f)(x) = zeta_m**x * f(x)      so tau = diag(zeta_m**x)
    phi:  (phi f)(x) = f(q**-1 * x)          so phi delta_y = delta_{q y}

With these conventions phi**-1 @ tau @ phi == tau**q, the relation
Frobenius satisfies against tame inertia.  The opposite permutation
(phi delta_y = delta_{q**-1 y}) satisfies phi @ tau @ phi**-1 == tau**q
instead; ``verify_frobenius_relation`` distinguishes the two.

No prime l appears: everything lives in Q(zeta_m), which embeds into
any algebraic closure of Q_l, and every identity checked here is
independent of that embedding.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclo import CycloElt, field, is_rational, zeta_power
from .cyclomat import (
    CycloMatrix,
    charpoly,
    mat_inverse_permutation,
    mat_mul,
    mat_pow,
    mat_trace,
    solve_nullspace,
)
from .errors import ConsistencyError, DimensionError, NotCoprimeError
from .ntcore import divisors, euler_phi, multiplicative_order, ramanujan_sum

COMMUTANT_MAX_DIM = 48
WORD_TOKENS = ("tau", "tau^-1", "phi", "phi^-1")


@dataclass(frozen=True)
class TameRepModel:
    m: int
    q: int
    dim: int
    basis_index: tuple[int, ...]
    tau: CycloMatrix
    phi: CycloMatrix

    def to_json(self) -> dict:
        """Exact JSON form: each matrix entry is its list of power-basis coefficients as strings."""
        return {
            "m": self.m,
            "q": self.q,
            "dim": self.dim,
            "basis_index": list(self.basis_index),
            "convention": "phi*delta_y = delta_{q*y}; tau*delta_y = zeta_m^y * delta_y",
            "tau": _matrix_json(self.tau),
            "phi": _matrix_json(self.phi),
        }

    @classmethod
    def from_json(cls, doc: dict) -> TameRepModel:
        m = doc["m"]
        return cls(
            m=m,
            q=doc["q"],
            dim=doc["dim"],
            basis_index=tuple(doc["basis_index"]),
            tau=_matrix_from_json(m, doc["tau"]),
            phi=_matrix_from_json(m, doc["phi"]),
        )


@dataclass(frozen=True)
class IrreducibilityReport:
    commutant_dim: int
    is_abs_irreducible: bool
    q_order: int
    orbit_count: int

    def to_json(self) -> dict:
        return {
            "commutant_dim": self.commutant_dim,
            "is_abs_irreducible": self.is_abs_irreducible,
            "q_order": self.q_order,
            "orbit_count": self.orbit_count,
        }


def _matrix_json(a: CycloMatrix) -> list:
    return [[[str(c) for c in x.coeffs] for x in row] for row in a.to_rows()]


def _matrix_from_json(m: int, grid: list) -> CycloMatrix:
    return CycloMatrix.from_rows(m, [[CycloElt(m, [Fraction(c) for c in x]) for x in row] for row in grid])


def _units(m: int) -> tuple[int, ...]:
    return field(m).units


def build_tame_rep(m: int, q: int) -> TameRepModel:
    if m < 1:
        raise ValueError("m must be >= 1")
    if q < 2:
        raise ValueError("q must be a residue field size >= 2")
    if gcd(q, m) != 1:
        raise NotCoprimeError(f"gcd({q}, {m}) != 1")
    units = _units(m)
    pos = {x: i for i, x in enumerate(units)}
    tau = CycloMatrix.diagonal(m, [zeta_power(m, x) for x in units])
    phi = CycloMatrix.permutation(m, [pos[(q * y) % m] for y in units])
    return TameRepModel(m, q, len(units), units, tau, phi)


def verify_frobenius_relation(rep: TameRepModel) -> bool:
    """Exact check of phi**-1 @ tau @ phi == tau**q."""
    lhs = mat_mul(mat_mul(mat_inverse_permutation(rep.phi), rep.tau), rep.phi)
    return lhs == _tau_power(rep.tau, rep.q)


@lru_cache(maxsize=1 << 15)
def _tau_power(tau: CycloMatrix, k: int) -> CycloMatrix:
    return mat_pow(tau, k)


def inertia_trace(rep: TameRepModel, k: int) -> Fraction:
    """Trace of tau**k; raises ConsistencyError unless it is the integer c_m(k)."""
    tr = mat_trace(_tau_power(rep.tau, k))
    value = is_rational(tr)
    if value is None:
        raise ConsistencyError(f"trace of tau^{k} for m={rep.m} is not rational: {tr!r}")
    if value != ramanujan_sum(rep.m, k):
        raise ConsistencyError(f"trace of tau^{k} for m={rep.m} is {value}, not c_m(k)")
    return value


def charpoly_tau(rep: TameRepModel) -> tuple[int, ...]:
    """Characteristic polynomial of tau as integers, constant term first."""
    out = []
    for c in charpoly(rep.tau):
        value = is_rational(c)
        if value is None or value.denominator != 1:
            raise ConsistencyError(f"charpoly coefficient {c!r} is not a rational integer")
        out.append(int(value))
    return tuple(out)


def commutant_system(gens: Sequence[CycloMatrix]) -> CycloMatrix:
    """Linear system whose nullspace is {M : M g == g M for every g in gens}.

    Unknown M[i, j] is column i*n + j; each generator contributes n*n rows.
    """
    n = gens[0].rows
    m = gens[0].m
    entries: dict[tuple[int, int], CycloElt] = {}
    row = 0
    for g in gens:
        cols_of: list[dict[int, CycloElt]] = [{} for _ in range(n)]
        for i, k, x in g.nonzero():
            cols_of[k][i] = x
        for i in range(n):
            g_row = g.row_entries(i)
            for j in range(n):
                eq: dict[int, CycloElt] = {}
                # (M g)[i, j] = sum_k M[i, k] g[k, j]
                for k, x in cols_of[j].items():
                    eq[i * n + k] = x
                # (g M)[i, j] = sum_k g[i, k] M[k, j]
                for k, x in g_row.items():
                    col = k * n + j
                    eq[col] = eq[col] - x if col in eq else -x
                for col, x in eq.items():
                    if not x.is_zero():
                        entries[row, col] = x
                row += 1
    return CycloMatrix(m, row, n * n, entries)


def _orbit_count(m: int, q: int) -> int:
    seen: set[int] = set()
    count = 0
    for x in _units(m):
        if x in seen:
            continue
        count += 1
        y = x
        while y not in seen:
            seen.add(y)
            y = (q * y) % m
    return count


def commutant_report(rep: TameRepModel, max_dim: int = COMMUTANT_MAX_DIM) -> IrreducibilityReport:
    """Dimension of the commutant of <tau, phi> from an exact nullspace solve."""
    if rep.dim > max_dim:
        raise DimensionError(f"dimension {rep.dim} exceeds the commutant bound {max_dim}")
    system = commutant_system([rep.tau, rep.phi])
    dim = len(solve_nullspace(system, max_cols=max_dim * max_dim))
    return IrreducibilityReport(
        commutant_dim=dim,
        is_abs_irreducible=dim == 1,
        q_order=multiplicative_order(rep.q, rep.m),
        orbit_count=_orbit_count(rep.m, rep.q),
    )


def eigenvalue_orders(rep: TameRepModel) -> list[int | None]:
    """Exact multiplicative order of each diagonal entry of tau.

    None marks an entry that is not an m-th root of unity.
    """
    orders: list[int | None] = []
    for i in range(rep.dim):
        x = rep.tau[i, i]
        orders.append(next((r for r in divisors(rep.m) if x**r == 1), None))
    return orders


def word_matrix(rep: TameRepModel, word: Sequence[str]) -> CycloMatrix:
    """Product of the generators named in word, left to right."""
    gens = {
        "tau": rep.tau,
        "tau^-1": lambda: mat_inverse_permutation(rep.tau),
        "phi": rep.phi,
        "phi^-1": lambda: mat_inverse_permutation(rep.phi),
    }
    result = CycloMatrix.identity(rep.m, rep.dim)
    for token in word:
        if token not in gens:
            raise ValueError(f"unknown word token {token!r}; expected one of {WORD_TOKENS}")
        g = gens[token]
        if callable(g):
            g = gens[token] = g()
        result = mat_mul(result, g)
    return result


def word_trace(rep: TameRepModel, word: Sequence[str]) -> CycloElt:
    return mat_trace(word_matrix(rep, word))


def check_suite(rep: TameRepModel, max_commutant_dim: int = COMMUTANT_MAX_DIM) -> dict:
    """Run every identity check on rep; returns {check name: result dict}.

    Checks that cannot run within the size bounds are reported as skipped.
    """
    from .ntcore import cyclotomic_poly

    results: dict[str, dict] = {}
    results["frobenius_relation"] = {"passed": verify_frobenius_relation(rep)}

    orders = eigenvalue_orders(rep)
    results["tau_primitive_eigenvalues"] = {
        "passed": rep.tau.is_diagonal() and all(o == rep.m for o in orders)
    }

    try:
        traces = [int(inertia_trace(rep, k)) for k in range(rep.m)]
        results["inertia_traces"] = {"passed": True, "values": traces}
    except ConsistencyError as exc:
        results["inertia_traces"] = {"passed": False, "error": str(exc)}

    try:
        cp = charpoly_tau(rep)
        results["charpoly"] = {
            "passed": cp == cyclotomic_poly(rep.m).coeffs,
            "coeffs": list(cp),
        }
    except DimensionError as exc:
        results["charpoly"] = {"passed": None, "skipped": str(exc)}

    if rep.dim <= max_commutant_dim:
        report = commutant_report(rep, max_commutant_dim)
        expected = euler_phi(rep.m) // report.q_order
        results["commutant"] = {
            "passed": report.commutant_dim == expected == report.orbit_count,
            **report.to_json(),
        }
    else:
        results["commutant"] = {"passed": None, "skipped": f"dim {rep.dim} > {max_commutant_dim}"}
    return results
