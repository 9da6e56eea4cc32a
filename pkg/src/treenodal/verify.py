"""Executable verdicts: summation-by-parts identity, nodal counts, zero
interlacing, first-eigenvector positivity, and the zero-vertex dichotomy.

Every checker reports pass / fail / inapplicable rather than raising on a
false statement; exceptions are reserved for malformed inputs.  The batch
harness fans the whole suite over a seeded corpus and merges deterministic
summaries.
"""

from __future__ import annotations

import multiprocessing
import random
from dataclasses import dataclass

import numpy as np

from .charpoly import charpoly_oracle
from .eigensolve import (
    BACKEND,
    EPS_RES,
    MultiplicityReport,
    Spectrum,
    decompose,
    multiplicity_groups,
)
from .errors import (
    CertificationError,
    DimensionMismatch,
    IndexMismatch,
    NoConvergence,
    NotASignGraph,
    NotSimple,
    RootIsolationFailure,
)
from .nodal import (
    AT_CHILD_VERTEX,
    EPS_Z_DEFAULT,
    INTERIOR,
    NodalDecomposition,
    SignGraph,
    effective_signs,
    nodal_domains,
    sign_graphs,
    zero_parameter,
)
from .operator import SchrodingerOperator, assemble
from .tree import WeightedTree, generate, random_potential

GREENS_EPS = 1e-8
ORACLE_EPS = 1e-9
SLACK_REL = 1e-12

CHECK_NAMES = ("spectrum", "greens", "courant", "interlacing", "perron", "zero_dichotomy")


# ---------------------------------------------------------------------------
# summation-by-parts identity on a sign graph


@dataclass(frozen=True)
class GreensCheckReport:
    lhs: float
    rhs: float
    abs_residual: float
    rel_residual: float
    domain_id: int
    eigenpair: dict | None
    verdict: str

    def to_report(self) -> dict:
        details = {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_residual": self.abs_residual,
            "rel_residual": self.rel_residual,
            "domain_id": self.domain_id,
        }
        if self.eigenpair is not None:
            details["eigenpair"] = self.eigenpair
        return {"check": "greens", "verdict": self.verdict, "details": details}


def _validate_sign_graph(tree: WeightedTree, u, g: SignGraph, eps_z: float) -> None:
    signs, _ = effective_signs(u, eps_z)
    if len(g.vertices) == 0:
        raise NotASignGraph("empty vertex set")
    inside = set(g.vertices)
    if len(inside) != len(g.vertices):
        raise NotASignGraph("duplicate vertices")
    for x in g.vertices:
        if not 0 <= x < tree.n:
            raise NotASignGraph(f"vertex {x} out of range")
        if signs[x] != g.sign:
            raise NotASignGraph(
                f"vertex {x} carries sign {int(signs[x])}, expected {g.sign}"
            )
    seen = {g.vertices[0]}
    queue = [g.vertices[0]]
    while queue:
        x = queue.pop()
        for y in tree.neighbors(x):
            if y in inside and y not in seen:
                seen.add(y)
                queue.append(y)
    if seen != inside:
        raise NotASignGraph("vertex set is not connected")
    for x in g.vertices:
        for y in tree.neighbors(x):
            if y not in inside and signs[y] == g.sign:
                raise NotASignGraph(f"not maximal: vertex {y} adjoins with the same sign")


def greens_check(
    op: SchrodingerOperator,
    u,
    v,
    g: SignGraph,
    eps: float = GREENS_EPS,
    eps_z: float = EPS_Z_DEFAULT,
    lam: float | None = None,
    mu: float | None = None,
) -> GreensCheckReport:
    """Check sum_G (Au)v - sum_G u(Av) against -sum_{boundary} grad(u~) v~.

    The boundary runs over the zeros bounding the nodal domain of g, each
    evaluated on its outward edge.  When lam and mu are given the eigenpair
    form lhs = (lam - mu) * sum_G u v is checked as well.  Raises
    NotASignGraph if g is not a maximal strict-sign component of u.
    """
    tree = op.tree
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (tree.n,) or v.shape != (tree.n,):
        raise DimensionMismatch("u and v must both have one value per vertex")
    _validate_sign_graph(tree, u, g, eps_z)
    au = op.apply(u)
    av = op.apply(v)
    sel = list(g.vertices)
    lhs = float(np.dot(au[sel], v[sel]) - np.dot(u[sel], av[sel]))
    signs, ueff = effective_signs(u, eps_z)
    inside = set(g.vertices)
    rhs = 0.0
    for x in g.vertices:
        for y in tree.neighbors(x):
            if y in inside:
                continue
            length = tree.length(x, y)
            if signs[y] == 0:
                t = length
            else:
                t = zero_parameter(ueff[x], ueff[y], length)
            grad = (u[y] - u[x]) / length
            v_t = v[x] + (v[y] - v[x]) * (t / length)
            rhs -= grad * v_t
    rhs = float(rhs)
    abs_res = abs(lhs - rhs)
    rel_res = abs_res / max(1.0, abs(lhs), abs(rhs))
    eigen = None
    ok = rel_res <= eps
    if lam is not None and mu is not None:
        value = (float(lam) - float(mu)) * float(np.dot(u[sel], v[sel]))
        e_abs = abs(value - lhs)
        e_rel = e_abs / max(1.0, abs(value), abs(lhs))
        eigen = {
            "lam": float(lam),
            "mu": float(mu),
            "value": value,
            "abs_residual": e_abs,
            "rel_residual": e_rel,
        }
        ok = ok and e_rel <= eps
    return GreensCheckReport(
        lhs=lhs,
        rhs=rhs,
        abs_residual=abs_res,
        rel_residual=rel_res,
        domain_id=int(g.vertices[0]),
        eigenpair=eigen,
        verdict="pass" if ok else "fail",
    )


# ---------------------------------------------------------------------------
# nodal counts


@dataclass(frozen=True)
class CourantReport:
    rows: tuple
    remix_rows: tuple
    spectrum_simple: bool
    verdict: str

    def to_report(self) -> dict:
        return {
            "check": "courant",
            "verdict": self.verdict,
            "details": {
                "spectrum_simple": self.spectrum_simple,
                "rows": [dict(r) for r in self.rows],
                "remix_rows": [dict(r) for r in self.remix_rows],
            },
        }


def courant_check(
    tree: WeightedTree,
    op: SchrodingerOperator,
    spec: Spectrum,
    eps_z: float = EPS_Z_DEFAULT,
    tau_gap: float | None = None,
    remixes: int = 0,
    remix_seed: int = 0,
) -> CourantReport:
    """Count sign graphs and zeros of every eigenvector.

    Simple spectrum: the n-th eigenvector must have exactly n strong sign
    graphs and n-1 zeros (verdict per row).  Non-simple spectrum: the exact
    count is not asserted (rows become inapplicable) and only the
    sign-graph bound through each multiplicity group's last index is
    enforced.  remixes > 0 additionally stresses the bound with seeded
    random orthonormal combinations inside each degenerate group.
    """
    mult = multiplicity_groups(spec, tau_gap)
    rows = []
    any_fail = False
    for n in range(1, spec.n + 1):
        u = spec.eigenvector(n)
        dec = nodal_domains(tree, u, eps_z, index=n)
        sg = len(dec.sign_graphs)
        zc = dec.zero_count
        bound = mult.sign_graph_bound(n)
        davies_ok = sg <= bound
        if mult.is_simple:
            verdict = "pass" if (sg == n and zc == n - 1 and davies_ok) else "fail"
        else:
            verdict = "inapplicable" if davies_ok else "fail"
        any_fail = any_fail or verdict == "fail"
        rows.append(
            {
                "n": n,
                "sign_graph_count": sg,
                "expected": n if mult.is_simple else None,
                "zero_count": zc,
                "expected_zeros": n - 1 if mult.is_simple else None,
                "davies_bound": bound,
                "davies_ok": davies_ok,
                "verdict": verdict,
            }
        )
    remix_rows = []
    if remixes > 0:
        rng = random.Random(remix_seed)
        for lo, hi in mult.groups:
            if hi == lo:
                continue
            basis = spec.eigenvectors[:, lo - 1 : hi]
            for j in range(remixes):
                coef = np.array([rng.gauss(0.0, 1.0) for _ in range(hi - lo + 1)])
                norm = float(np.linalg.norm(coef))
                if norm == 0.0:
                    continue
                w = basis @ (coef / norm)
                sg = len(sign_graphs(tree, w, eps_z)[0])
                ok = sg <= hi
                any_fail = any_fail or not ok
                remix_rows.append(
                    {
                        "group": [lo, hi],
                        "remix": j,
                        "sign_graph_count": sg,
                        "davies_bound": hi,
                        "davies_ok": ok,
                    }
                )
    if any_fail:
        verdict = "fail"
    elif mult.is_simple:
        verdict = "pass"
    else:
        verdict = "inapplicable"
    return CourantReport(
        rows=tuple(rows),
        remix_rows=tuple(remix_rows),
        spectrum_simple=mult.is_simple,
        verdict=verdict,
    )


# ---------------------------------------------------------------------------
# interlacing


@dataclass(frozen=True)
class InterlacingReport:
    pair: tuple
    counts: tuple
    coincidences: tuple
    converse_counts: tuple
    verdict: str

    def to_report(self) -> dict:
        return {
            "check": "interlacing",
            "verdict": self.verdict,
            "details": {
                "pair": list(self.pair),
                "counts": [dict(c) for c in self.counts],
                "coincidences": [dict(c) for c in self.coincidences],
                "converse_counts": [dict(c) for c in self.converse_counts],
            },
        }


def eigenvector_decomposition(
    tree: WeightedTree, spec: Spectrum, n: int, eps_z: float = EPS_Z_DEFAULT
) -> NodalDecomposition:
    """Nodal decomposition of the n-th (1-based) eigenvector, index recorded."""
    return nodal_domains(tree, spec.eigenvector(n), eps_z, index=n)


def _zero_units(dec: NodalDecomposition) -> list:
    # countable zeros: interior edge zeros plus whole zero graphs (the
    # at_child_vertex entries are shadows of the latter)
    units = [("edge", (z.x, z.y, z.t)) for z in dec.edge_zeros if z.kind == INTERIOR]
    units += [("vertices", zg) for zg in dec.zero_graphs]
    return units


def _membership(tree: WeightedTree, domain, unit, slack_rel: float) -> str:
    """Locate one zero unit relative to one nodal domain.

    Returns "inside", "outside", or "coincident" (within slack of the
    domain's own boundary parameter — exposed, never counted).
    """
    inside = set(domain.sign_graph.vertices)
    kind, payload = unit
    if kind == "vertices":
        overlap = inside.intersection(payload)
        if not overlap:
            return "outside"
        if set(payload) <= inside:
            return "inside"
        return "coincident"
    x, y, t = payload
    if x in inside and y in inside:
        return "inside"
    for px, py, pt in domain.partial_edges:
        if {px, py} == {x, y}:
            length = tree.length(x, y)
            pos = t if x == px else length - t
            slack = slack_rel * length
            if pos < pt - slack:
                return "inside"
            if pos <= pt + slack:
                return "coincident"
            return "outside"
    return "outside"


def interlacing_check(
    tree: WeightedTree,
    dec_low: NodalDecomposition,
    dec_high: NodalDecomposition,
    mult: MultiplicityReport | None = None,
    slack_rel: float = SLACK_REL,
) -> InterlacingReport:
    """Does every nodal domain of the lower eigenvector hold exactly one
    zero of the higher one?

    The two decompositions must carry consecutive eigenvector indices
    (IndexMismatch otherwise); pass a MultiplicityReport to insist the
    spectrum is simple (NotSimple otherwise).  Zeros sitting within
    slack_rel * edge length of a domain boundary are reported as
    coincidences and excluded from the count.  The converse direction
    (zeros of the lower inside domains of the higher) is not part of the
    verdict; its counts are logged as an exploratory statistic.
    """
    if dec_low.index is not None and dec_high.index is not None:
        if dec_high.index != dec_low.index + 1:
            raise IndexMismatch(
                f"expected consecutive eigenvector indices, got "
                f"{dec_low.index} and {dec_high.index}"
            )
    if mult is not None and not mult.is_simple:
        raise NotSimple("interlacing is asserted only for simple spectra")
    units = _zero_units(dec_high)
    counts = []
    coincidences = []
    ok = True
    for d in dec_low.domains:
        did = int(d.sign_graph.vertices[0])
        k = 0
        for unit in units:
            where = _membership(tree, d, unit, slack_rel)
            if where == "inside":
                k += 1
            elif where == "coincident":
                coincidences.append(
                    {"domain": did, "zero": _unit_json(unit), "flag": "BoundaryCoincidence"}
                )
        counts.append({"domain": did, "zeros_inside": k})
        ok = ok and k == 1
    converse = []
    low_units = _zero_units(dec_low)
    for d in dec_high.domains:
        did = int(d.sign_graph.vertices[0])
        k = sum(1 for unit in low_units if _membership(tree, d, unit, slack_rel) == "inside")
        converse.append({"domain": did, "zeros_inside": k})
    return InterlacingReport(
        pair=(dec_low.index, dec_high.index),
        counts=tuple(counts),
        coincidences=tuple(coincidences),
        converse_counts=tuple(converse),
        verdict="pass" if ok else "fail",
    )


def _unit_json(unit) -> dict:
    kind, payload = unit
    if kind == "edge":
        x, y, t = payload
        return {"edge": [x, y], "t": t}
    return {"vertices": list(payload)}


# ---------------------------------------------------------------------------
# first eigenvector and zero-vertex structure


def perron_check(spec: Spectrum, tau_gap: float | None = None) -> dict:
    """First eigenvalue simple, first eigenvector strictly positive, every
    later eigenvector attaining both strict signs."""
    mult = multiplicity_groups(spec, tau_gap)
    u1 = spec.eigenvector(1)
    first_simple = mult.groups[0] == (1, 1)
    positive = bool(np.all(u1 > 0.0))
    missing = []
    for n in range(2, spec.n + 1):
        u = spec.eigenvector(n)
        if not (np.any(u > 0.0) and np.any(u < 0.0)):
            missing.append(n)
    ok = first_simple and positive and not missing
    details = {
        "first_group": list(mult.groups[0]),
        "min_entry_u1": float(np.min(u1)) if spec.n else None,
        "sign_change_missing": missing,
    }
    if spec.n >= 2:
        details["first_gap"] = float(spec.eigenvalues[1] - spec.eigenvalues[0])
    return {"check": "perron", "verdict": "pass" if ok else "fail", "details": details}


def zero_dichotomy_check(
    op: SchrodingerOperator, u, lam: float, eps_z: float = EPS_Z_DEFAULT
) -> dict:
    """Every zero vertex of an eigenvector has either all-zero neighbours or
    neighbours of both strict signs; a vacuous pass when no vertex is zero."""
    tree = op.tree
    u = np.asarray(u, dtype=float)
    if u.shape != (tree.n,):
        raise DimensionMismatch("eigenvector must have one value per vertex")
    residual = float(np.linalg.norm(op.apply(u) - float(lam) * u))
    signs, _ = effective_signs(u, eps_z)
    zero_vertices = [int(v) for v in np.nonzero(signs == 0)[0]]
    violations = []
    for v in zero_vertices:
        neigh = {int(signs[y]) for y in tree.neighbors(v)}
        if neigh == {0}:
            continue
        if not {-1, 1} <= neigh:
            violations.append(
                {
                    "vertex": v,
                    "neighbor_signs": sorted(int(signs[y]) for y in tree.neighbors(v)),
                }
            )
    return {
        "check": "zero_dichotomy",
        "verdict": "pass" if not violations else "fail",
        "details": {
            "eigen_residual": residual,
            "zero_vertices": zero_vertices,
            "violations": violations,
            "vacuous": not zero_vertices,
        },
    }


# ---------------------------------------------------------------------------
# one-instance suite and the batch harness


def run_all(
    tree: WeightedTree,
    potential=None,
    eps_z: float = EPS_Z_DEFAULT,
    tau_gap: float | None = None,
    greens_eps: float = GREENS_EPS,
    oracle_eps: float = ORACLE_EPS,
) -> list:
    """All checkers on one instance; a list of {check, verdict, details}."""
    op = assemble(tree, potential)
    try:
        spec = decompose(op)
    except (NoConvergence, CertificationError) as exc:
        return [
            {
                "check": "spectrum",
                "verdict": "fail",
                "details": {"error": type(exc).__name__, "message": str(exc)},
            }
        ]
    mult = multiplicity_groups(spec, tau_gap)
    reports = []

    spectrum_details = {
        "backend": BACKEND,
        "eigenvalues": [float(x) for x in spec.eigenvalues],
        "max_residual": float(np.max(spec.residual_norms)) if spec.n else 0.0,
        "residual_bound": EPS_RES * spec.a_fro,
        "orthogonality_defect": spec.orthogonality_defect,
        "groups": [list(g) for g in mult.groups],
        "is_simple": mult.is_simple,
        "tau_gap": mult.tau_gap,
    }
    spectrum_verdict = "pass"
    if spec.n <= 12:
        try:
            roots = charpoly_oracle(op)
            deviation = float(np.max(np.abs(roots - spec.eigenvalues)))
            spectrum_details["oracle_deviation"] = deviation
            if deviation > oracle_eps:
                spectrum_verdict = "fail"
        except RootIsolationFailure as exc:
            spectrum_details["oracle_error"] = str(exc)
            spectrum_verdict = "fail"
    reports.append(
        {"check": "spectrum", "verdict": spectrum_verdict, "details": spectrum_details}
    )

    decs = [eigenvector_decomposition(tree, spec, n, eps_z) for n in range(1, spec.n + 1)]

    max_rel = 0.0
    max_eig_rel = 0.0
    combos = 0
    worst = None
    greens_fail = False
    for n in range(1, spec.n + 1):
        u = spec.eigenvector(n)
        lam = float(spec.eigenvalues[n - 1])
        for m in range(n + 1, spec.n + 1):
            v = spec.eigenvector(m)
            mu = float(spec.eigenvalues[m - 1])
            for g in decs[n - 1].sign_graphs:
                rep = greens_check(op, u, v, g, eps=greens_eps, eps_z=eps_z, lam=lam, mu=mu)
                combos += 1
                if rep.rel_residual > max_rel:
                    max_rel = rep.rel_residual
                    worst = {"n": n, "m": m, "domain": rep.domain_id}
                if rep.eigenpair is not None:
                    max_eig_rel = max(max_eig_rel, rep.eigenpair["rel_residual"])
                greens_fail = greens_fail or rep.verdict == "fail"
    reports.append(
        {
            "check": "greens",
            "verdict": "fail" if greens_fail else "pass",
            "details": {
                "combos": combos,
                "max_rel_residual": max_rel,
                "max_eigenpair_residual": max_eig_rel,
                "worst": worst,
            },
        }
    )

    reports.append(
        courant_check(tree, op, spec, eps_z=eps_z, tau_gap=tau_gap).to_report()
    )

    if mult.is_simple:
        pair_reports = []
        inter_fail = False
        coincidences = 0
        for n in range(1, spec.n):
            rep = interlacing_check(tree, decs[n - 1], decs[n], mult=mult)
            pair_reports.append(rep.to_report()["details"])
            inter_fail = inter_fail or rep.verdict == "fail"
            coincidences += len(rep.coincidences)
        reports.append(
            {
                "check": "interlacing",
                "verdict": "fail" if inter_fail else "pass",
                "details": {"pairs": pair_reports, "coincidence_count": coincidences},
            }
        )
    else:
        reports.append(
            {
                "check": "interlacing",
                "verdict": "inapplicable",
                "details": {"reason": "spectrum is not simple at this tau_gap"},
            }
        )

    reports.append(perron_check(spec, tau_gap))

    dich_rows = []
    dich_fail = False
    for n in range(1, spec.n + 1):
        rep = zero_dichotomy_check(op, spec.eigenvector(n), float(spec.eigenvalues[n - 1]), eps_z)
        dich_fail = dich_fail or rep["verdict"] == "fail"
        dich_rows.append(
            {
                "n": n,
                "zero_vertices": len(rep["details"]["zero_vertices"]),
                "violations": len(rep["details"]["violations"]),
            }
        )
    reports.append(
        {
            "check": "zero_dichotomy",
            "verdict": "fail" if dich_fail else "pass",
            "details": {"rows": dich_rows},
        }
    )
    return reports


def _batch_instance(task):
    (i, n, tree_seed, pot_seed, kind, weights, potential,
     eps_z, tau_gap, greens_eps, oracle_eps) = task
    tree = generate(kind, n, weight_law=weights, seed=tree_seed)
    r = random_potential(n, law=potential, seed=pot_seed)
    reports = run_all(
        tree, r, eps_z=eps_z, tau_gap=tau_gap,
        greens_eps=greens_eps, oracle_eps=oracle_eps,
    )
    return i, reports


def batch(
    count: int = 100,
    n_min: int = 4,
    n_max: int = 12,
    seed: int = 7,
    kind: str = "random_pruefer",
    weights: str = "uniform:0.5:2",
    potential: str = "uniform:-1:1",
    eps_z: float = EPS_Z_DEFAULT,
    tau_gap: float | None = None,
    greens_eps: float = GREENS_EPS,
    oracle_eps: float = ORACLE_EPS,
    jobs: int = 1,
) -> dict:
    """Verify a seeded corpus and aggregate verdict counts and maxima.

    One master generator drawn from `seed` fixes every instance's size and
    sub-seeds up front, so results are independent of worker scheduling;
    reports are merged by instance index.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if n_min < 2 or n_max < n_min:
        raise ValueError("need 2 <= n_min <= n_max")
    master = random.Random(seed)
    tasks = []
    for i in range(count):
        n = master.randrange(n_min, n_max + 1)
        tree_seed = master.randrange(2**63)
        pot_seed = master.randrange(2**63)
        tasks.append(
            (i, n, tree_seed, pot_seed, kind, weights, potential,
             eps_z, tau_gap, greens_eps, oracle_eps)
        )
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_batch_instance, tasks)
        results.sort(key=lambda r: r[0])
    else:
        results = [_batch_instance(t) for t in tasks]

    checks: dict = {}
    maxima = {
        "greens_rel_residual": 0.0,
        "greens_eigenpair_residual": 0.0,
        "oracle_deviation": 0.0,
        "eigen_residual": 0.0,
        "orthogonality_defect": 0.0,
    }
    failures = []
    simple_count = 0
    for i, reports in results:
        failed = False
        for rep in reports:
            name = rep["check"]
            slot = checks.setdefault(name, {"pass": 0, "fail": 0, "inapplicable": 0})
            slot[rep["verdict"]] += 1
            failed = failed or rep["verdict"] == "fail"
            det = rep["details"]
            if name == "greens":
                maxima["greens_rel_residual"] = max(
                    maxima["greens_rel_residual"], det.get("max_rel_residual", 0.0)
                )
                maxima["greens_eigenpair_residual"] = max(
                    maxima["greens_eigenpair_residual"],
                    det.get("max_eigenpair_residual", 0.0),
                )
            elif name == "spectrum":
                maxima["oracle_deviation"] = max(
                    maxima["oracle_deviation"], det.get("oracle_deviation", 0.0)
                )
                maxima["eigen_residual"] = max(
                    maxima["eigen_residual"], det.get("max_residual", 0.0)
                )
                maxima["orthogonality_defect"] = max(
                    maxima["orthogonality_defect"], det.get("orthogonality_defect", 0.0)
                )
                if det.get("is_simple"):
                    simple_count += 1
        if failed:
            failures.append(i)
    return {
        "config": {
            "count": count,
            "n_min": n_min,
            "n_max": n_max,
            "seed": seed,
            "kind": kind,
            "weights": weights,
            "potential": potential,
            "eps_z": eps_z,
            "tau_gap": tau_gap,
            "greens_eps": greens_eps,
            "oracle_eps": oracle_eps,
        },
        "count": count,
        "simple_spectra": simple_count,
        "checks": {name: checks[name] for name in sorted(checks)},
        "maxima": maxima,
        "failures": failures,
    }
