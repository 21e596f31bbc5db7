"""Checkers for D-matrix duality (D), the initial-seed recursion (R), the
M-from-D formula (M), the row-replacement law, and the source-sink variants.

Every checker returns a :class:`PropertyReport` carrying both sides of the
identity, so a failing instance can be replayed and inspected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .matrices import ExchangeMatrix, _check_index, _freeze, guard_product, is_source_sink, mutate, mutate_word
from .seeds import Path, clear_cache, path_from_neighbor, paths_up_to, reduce_path, rooted_paths, seed_at
from .vectors import d_after_initial_mutation, d_after_initial_mutation_direct, d_matrix_direct, m_matrix_direct

log = logging.getLogger(__name__)

PROPERTY_IDS = ("D", "R", "M", "R-source-sink", "sigma", "MDinit")


class SourceSinkError(ValueError):
    """Direction ``k`` is not a source or sink of the initial exchange matrix."""


@dataclass
class PropertyReport:
    property: str
    B0: ExchangeMatrix
    path: Path
    holds: bool
    lhs: np.ndarray
    rhs: np.ndarray
    k: int | None = None
    extra: dict = field(default_factory=dict)

    def first_difference(self) -> tuple[int, int] | None:
        diff = np.argwhere(self.lhs != self.rhs)
        return None if len(diff) == 0 else (int(diff[0][0]) + 1, int(diff[0][1]) + 1)

    def replay(self) -> PropertyReport:
        """Recompute this instance from scratch, bypassing the seed cache."""
        clear_cache()
        return run_check(self.property, self.B0, self.path, self.k)

    def to_json(self) -> dict:
        out = {
            "property": self.property,
            "B0": self.B0.tolist(),
            "path": list(self.path),
            "k": self.k,
            "holds": self.holds,
            "lhs": self.lhs.tolist(),
            "rhs": self.rhs.tolist(),
        }
        if not self.holds:
            out["first_difference"] = self.first_difference()
        for key, value in self.extra.items():
            out[key] = value.tolist() if isinstance(value, np.ndarray) else value
        return out


def has_signed_columns(D) -> bool:
    D = np.asarray(D)
    return bool(np.all((D >= 0).all(axis=0) | (D <= 0).all(axis=0)))


def has_signed_rows(D) -> bool:
    return has_signed_columns(np.asarray(D).T)


def sigma_k(B0: ExchangeMatrix, k: int, v: Sequence[int]) -> tuple[int, ...]:
    """Piecewise-linear modification of the simple reflection ``s_k`` on root coordinates."""
    col = np.asarray(v, dtype=np.int64).reshape(-1, 1)
    if col.shape[0] != B0.n:
        raise ValueError(f"vector length {col.shape[0]} does not match rank {B0.n}")
    return tuple(int(x) for x in sigma_matrix(B0, k, col)[:, 0])


def sigma_matrix(B0: ExchangeMatrix, k: int, V) -> np.ndarray:
    """Apply ``sigma_k`` to every column of ``V``."""
    i = _check_index(k, B0.n)
    V = np.ascontiguousarray(V, dtype=np.int64)
    guard_product(B0.entries, V)
    return _freeze(_kernels.sigma(B0.entries, i, V))


def initial_recursion_rhs(B0: ExchangeMatrix, k: int, D) -> np.ndarray:
    """``J_k D + max([B0^{k.}]_+ D, [-B0^{k.}]_+ D)``."""
    i = _check_index(k, B0.n)
    D = np.ascontiguousarray(D, dtype=np.int64)
    guard_product(B0.entries, D)
    return _freeze(_kernels.initial_row_step(D, B0.entries, i))


def m_from_d(B0: ExchangeMatrix, D) -> np.ndarray:
    """``-D + max([B0]_+ D, [-B0]_+ D)``."""
    D = np.ascontiguousarray(D, dtype=np.int64)
    guard_product(B0.entries, D)
    return _freeze(_kernels.md_rhs(D, B0.entries))


def source_sink_rhs(B0: ExchangeMatrix, k: int, D) -> np.ndarray:
    """``J_k D + [|B0^{k.}| D]_+``."""
    i = _check_index(k, B0.n)
    D = np.ascontiguousarray(D, dtype=np.int64)
    guard_product(B0.entries, D)
    return _freeze(_kernels.source_sink_rhs(D, B0.entries, i))


# ---------------------------------------------------------------------------
# single-instance checks


def check_property_D(B0: ExchangeMatrix, path: Sequence[int]) -> PropertyReport:
    path = reduce_path(path)
    seed = seed_at(B0, path)
    lhs = d_matrix_direct(seed).T
    # walk back from t to t0 in the pattern whose matrix at t is (-B_t)^T
    rhs = d_matrix_direct(seed_at(seed.B.transpose_negated(), path[::-1]))
    return PropertyReport("D", B0, path, bool(np.array_equal(lhs, rhs)), _freeze(lhs), rhs)


def check_property_R(B0: ExchangeMatrix, path: Sequence[int], k: int) -> PropertyReport:
    path = reduce_path(path)
    lhs = d_after_initial_mutation_direct(B0, k, path)
    rhs = initial_recursion_rhs(B0, k, d_matrix_direct(seed_at(B0, path)))
    return PropertyReport("R", B0, path, bool(np.array_equal(lhs, rhs)), lhs, rhs, k=k)


def check_property_M(B0: ExchangeMatrix, path: Sequence[int]) -> PropertyReport:
    path = reduce_path(path)
    seed = seed_at(B0, path)
    lhs = m_matrix_direct(seed)
    rhs = m_from_d(B0, d_matrix_direct(seed))
    rows = [i + 1 for i in range(B0.n) if np.array_equal(lhs[i], rhs[i])]
    return PropertyReport("M", B0, path, len(rows) == B0.n, lhs, rhs, extra={"rows_holding": rows})


def check_md_init(B0: ExchangeMatrix, path: Sequence[int], k: int) -> PropertyReport:
    """Row-replacement law: formula side against re-expansion from ``mu_k`` of the initial seed."""
    path = reduce_path(path)
    lhs = d_after_initial_mutation_direct(B0, k, path)
    rhs = d_after_initial_mutation(B0, k, path)
    return PropertyReport("MDinit", B0, path, bool(np.array_equal(lhs, rhs)), lhs, rhs, k=k)


def check_source_sink(B0: ExchangeMatrix, k: int, path: Sequence[int]) -> PropertyReport:
    """Both source-sink right-hand sides against direct re-expansion.

    ``holds`` requires both forms to match.  ``forms_agree`` records whether
    the two right-hand sides coincide; they must whenever ``D_t`` has signed
    columns.
    """
    if not is_source_sink(B0, k):
        raise SourceSinkError(f"row {k} of B0 has entries of both signs")
    path = reduce_path(path)
    D = d_matrix_direct(seed_at(B0, path))
    lhs = d_after_initial_mutation_direct(B0, k, path)
    rhs = source_sink_rhs(B0, k, D)
    rhs_sigma = sigma_matrix(B0, k, D)
    abs_ok = bool(np.array_equal(lhs, rhs))
    sigma_ok = bool(np.array_equal(lhs, rhs_sigma))
    signed = has_signed_columns(D)
    agree = bool(np.array_equal(rhs, rhs_sigma))
    if signed and not agree:
        log.error("source-sink forms disagree on signed-column D at B0=%s k=%s path=%s", B0.tolist(), k, path)
    return PropertyReport(
        "R-source-sink",
        B0,
        path,
        abs_ok and sigma_ok,
        lhs,
        rhs,
        k=k,
        extra={
            "rhs_sigma": rhs_sigma,
            "absolute_form_holds": abs_ok,
            "sigma_form_holds": sigma_ok,
            "signed_columns": signed,
            "forms_agree": agree,
        },
    )


def check_sigma(B0: ExchangeMatrix, k: int, path: Sequence[int]) -> PropertyReport:
    rep = check_source_sink(B0, k, path)
    return PropertyReport("sigma", B0, rep.path, rep.extra["sigma_form_holds"], rep.lhs, rep.extra["rhs_sigma"], k=k)


def run_check(prop: str, B0: ExchangeMatrix, path: Sequence[int], k: int | None = None) -> PropertyReport:
    if prop == "D":
        return check_property_D(B0, path)
    if prop == "M":
        return check_property_M(B0, path)
    if k is None:
        raise ValueError(f"property {prop} needs a direction k")
    if prop == "R":
        return check_property_R(B0, path, k)
    if prop == "MDinit":
        return check_md_init(B0, path, k)
    if prop == "R-source-sink":
        return check_source_sink(B0, k, path)
    if prop == "sigma":
        return check_sigma(B0, k, path)
    raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTY_IDS}")


def needs_direction(prop: str) -> bool:
    return prop not in ("D", "M")


# ---------------------------------------------------------------------------
# sweeps


def r_holds_along_path(B0: ExchangeMatrix, path: Sequence[int]) -> list[bool]:
    """Property R for each edge ``t_{i-1} -k_i- t_i`` of ``path``, all aimed at its endpoint.

    If every entry is true, Property D must hold at the endpoint.
    """
    path = reduce_path(path)
    out = []
    B = B0
    for i, k in enumerate(path):
        out.append(check_property_R(B, path[i:], k).holds)
        B = mutate(B, k)
    return out


@dataclass
class DRMSummary:
    B0: ExchangeMatrix
    depth: int
    root_depth: int
    instances: int = 0
    d_total: int = 0
    d_pass: int = 0
    r_total: int = 0
    r_pass: int = 0
    m_total: int = 0
    m_pass: int = 0
    violations: dict[str, list[dict]] = field(default_factory=lambda: {"D": [], "R": [], "M": []})
    r_iff_m_exceptions: list[dict] = field(default_factory=list)
    d_implies_r_exceptions: list[dict] = field(default_factory=list)
    r_implies_d_exceptions: list[dict] = field(default_factory=list)

    @property
    def all_total(self) -> bool:
        return self.d_pass == self.d_total and self.r_pass == self.r_total and self.m_pass == self.m_total

    @property
    def all_violated(self) -> bool:
        return self.d_pass < self.d_total and self.r_pass < self.r_total and self.m_pass < self.m_total

    @property
    def laws_hold(self) -> bool:
        """Every per-instance implication between D, R and M held."""
        return not (self.r_iff_m_exceptions or self.d_implies_r_exceptions or self.r_implies_d_exceptions)

    @property
    def consistent(self) -> bool:
        return (self.all_total or self.all_violated) and self.laws_hold

    def to_json(self) -> dict:
        return {
            "B0": self.B0.tolist(),
            "depth": self.depth,
            "root_depth": self.root_depth,
            "instances": self.instances,
            "D": {"pass": self.d_pass, "total": self.d_total},
            "R": {"pass": self.r_pass, "total": self.r_total},
            "M": {"pass": self.m_pass, "total": self.m_total},
            "all_total": self.all_total,
            "all_violated": self.all_violated,
            "laws_hold": self.laws_hold,
            "consistent": self.consistent,
            "first_violations": {p: v[:5] for p, v in self.violations.items()},
            "r_iff_m_exceptions": self.r_iff_m_exceptions,
            "d_implies_r_exceptions": self.d_implies_r_exceptions,
            "r_implies_d_exceptions": self.r_implies_d_exceptions,
        }


def check_drm_equivalence(B0: ExchangeMatrix, depth: int, root_depth: int = 1) -> DRMSummary:
    """Sweep D, R (every direction) and M over paths up to ``depth``.

    The initial vertex is also moved along every root path of length up to
    ``root_depth``, since the three properties are only equivalent when all
    initial vertices are considered.  On every instance the harness checks
    that R at ``k`` holds iff M holds in row ``k``, that D at both ends of
    the initial edge implies R, and that R along every edge of a path
    implies D at its end.
    """
    s = DRMSummary(B0, depth, root_depth)
    n = B0.n
    roots = [r for r in paths_up_to(n, root_depth)]
    for root in roots:
        Br = mutate_word(B0, root)
        for path in paths_up_to(n, depth):
            where = {"root": list(root), "path": list(path)}
            s.instances += 1
            dd = check_property_D(Br, path)
            mm = check_property_M(Br, path)
            s.d_total += 1
            s.d_pass += dd.holds
            s.m_total += 1
            s.m_pass += mm.holds
            if not dd.holds:
                s.violations["D"].append(where)
                if all(r_holds_along_path(Br, path)):
                    s.r_implies_d_exceptions.append(where)
            if not mm.holds:
                s.violations["M"].append(where)
            for k in range(1, n + 1):
                rr = check_property_R(Br, path, k)
                s.r_total += 1
                s.r_pass += rr.holds
                if not rr.holds:
                    s.violations["R"].append({**where, "k": k})
                m_row = k in mm.extra["rows_holding"]
                if rr.holds != m_row:
                    s.r_iff_m_exceptions.append({**where, "k": k, "R": rr.holds, "M_row": m_row})
                if not rr.holds and dd.holds:
                    if check_property_D(mutate(Br, k), path_from_neighbor(k, path)).holds:
                        s.d_implies_r_exceptions.append({**where, "k": k})
    return s


@dataclass
class SearchResult:
    property: str
    B0: ExchangeMatrix
    depth: int
    budget: int
    checked: int
    witness: PropertyReport | None
    budget_exhausted: bool
    root: Path = ()

    def replay(self) -> PropertyReport:
        """Rebuild the witness from the original matrix and root path, with a cold cache."""
        if self.witness is None:
            raise ValueError("no witness to replay")
        clear_cache()
        return run_check(self.property, mutate_word(self.B0, self.root), self.witness.path, self.witness.k)

    def to_json(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {"root": list(self.root), **self.witness.to_json()}
        return {
            "property": self.property,
            "B0": self.B0.tolist(),
            "depth": self.depth,
            "budget": self.budget,
            "checked": self.checked,
            "found": self.witness is not None,
            "budget_exhausted": self.budget_exhausted,
            "status": "violation found" if self.witness else "none found up to bounds",
            "witness": witness,
        }


def search_counterexample(
    B0: ExchangeMatrix,
    prop: str,
    depth: int,
    budget: int = 100_000,
    root_depth: int | None = None,
) -> SearchResult:
    """First violation in a fixed order, or none within the bounds.

    Instances ``(root, path, k)`` are visited by total length ``|root| + |path|``
    (at most ``depth``), then root, then path, then ascending ``k``.  The
    check runs with the initial seed moved along ``root``.  ``root_depth``
    defaults to ``depth`` for D, R and M, which quantify over every initial
    vertex, and to 0 for the source-sink and row-replacement checks.
    """
    if prop not in PROPERTY_IDS:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTY_IDS}")
    if depth < 0 or budget < 1:
        raise ValueError("bounds must be positive")
    if root_depth is None:
        root_depth = depth if prop in ("D", "R", "M") else 0
    n = B0.n
    checked = 0
    rooted: dict[Path, tuple[ExchangeMatrix, list]] = {}
    for root, path in rooted_paths(n, depth, root_depth):
        if root not in rooted:
            Br = mutate_word(B0, root)
            if prop in ("R-source-sink", "sigma"):
                ks = [k for k in range(1, n + 1) if is_source_sink(Br, k)]
            elif needs_direction(prop):
                ks = list(range(1, n + 1))
            else:
                ks = [None]
            rooted[root] = (Br, ks)
        Br, ks = rooted[root]
        for k in ks:
            if checked >= budget:
                return SearchResult(prop, B0, depth, budget, checked, None, True)
            rep = run_check(prop, Br, path, k)
            checked += 1
            if not rep.holds:
                return SearchResult(prop, B0, depth, budget, checked, rep, False, root)
    return SearchResult(prop, B0, depth, budget, checked, None, False)
