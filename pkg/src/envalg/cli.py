"""Declarative configuration, suite orchestration and report emission.

A workbench configuration is a single JSON document holding one Lie algebra
block, named functional tables, named matrix representations, and a list of
suite descriptors.  Value encodings: rationals are ``"a/b"`` strings,
complex scalars two-element arrays ``["a/b", "c/d"]``, multi-indices
comma-joined integers ``"a,b,c"``.  Unknown keys are rejected by name, and
the algebra is validated (Jacobi + submultiplicativity) at load.

Reports come in two shapes: human text, and machine records with one JSON
object per check.  Machine records carry no timing, so exact-mode runs are
byte-identical across repetitions and across ``--parallel``.
"""

from __future__ import annotations

import argparse
import io
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import List, Optional

import numpy as np

from . import free_algebra as fa
from .errors import ConfigError, UnknownSuiteError, WorkbenchError
from .functionals import (
    FunctionalTable,
    growth_diagnostics,
    radius_estimate,
    recursion_check,
)
from .gns import (
    MatrixRep,
    analytic_diagnostics,
    functional_from_rep,
    gns_build,
    moment_matrix,
    orbit_gram,
    psd_check,
)
from .group_integration import (
    cauchy_estimate_check,
    extension_demo,
    extension_demo_table,
    local_hom_check,
    pd_kernel_check,
    sample_group,
)
from .lie_structure import (
    GVector,
    LieAlgebraSpec,
    jacobi_validate,
    pbw_mul,
    pbw_reduce,
    submult_check,
)
from .sampling import random_skew_rep, random_vector, random_word
from .scalars import format_fraction, format_scalar, parse_fraction, parse_scalar

__all__ = [
    "WorkbenchConfig",
    "SuiteSpec",
    "Check",
    "Report",
    "parse_config",
    "serialize_config",
    "run_suite",
    "run_all",
    "SUITE_NAMES",
    "main",
    "main_entry",
]

MAX_DIM = 4
MAX_DEGREE = 10
MAX_TABLE_DEGREE = 20
MAX_TOL = 1e-6


# ---------------------------------------------------------------------------
# configuration model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    params: dict


@dataclass
class WorkbenchConfig:
    algebra: LieAlgebraSpec
    functionals: dict
    representations: dict
    suites: List[SuiteSpec]

    def canonical(self):
        return _config_to_dict(self)

    def __eq__(self, other):
        if not isinstance(other, WorkbenchConfig):
            return NotImplemented
        return self.canonical() == other.canonical()


def _expect_keys(mapping, context, required, optional=()):
    if not isinstance(mapping, dict):
        raise ConfigError(f"{context} must be an object")
    for key in mapping:
        if key not in required and key not in optional:
            raise ConfigError(
                f"unknown key {key!r} in {context} "
                f"(allowed: {', '.join(sorted(set(required) | set(optional)))})"
            )
    for key in required:
        if key not in mapping:
            raise ConfigError(f"missing key {key!r} in {context}")


def _parse_multi_index(text, dim, context):
    if not isinstance(text, str):
        raise ConfigError(f"{context}: multi-index must be a string like '0,1,0'")
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ConfigError(f"{context}: malformed multi-index {text!r}") from None
    if len(parts) != dim or any(p < 0 for p in parts):
        raise ConfigError(
            f"{context}: multi-index {text!r} needs {dim} nonnegative entries"
        )
    return parts


def _parse_algebra(block):
    _expect_keys(block, "lie_algebra", ("dim", "basis_names", "structure", "weights"))
    dim = block["dim"]
    if not isinstance(dim, int) or not (1 <= dim <= MAX_DIM):
        raise ConfigError(f"lie_algebra.dim must be an integer in [1, {MAX_DIM}]")
    structure = {}
    if not isinstance(block["structure"], dict):
        raise ConfigError("lie_algebra.structure must be an object")
    for key, row in block["structure"].items():
        try:
            i, j = (int(p) for p in key.split(","))
        except ValueError:
            raise ConfigError(f"malformed structure key {key!r}") from None
        if not (0 <= i < j < dim):
            raise ConfigError(f"structure key {key!r} must name a pair i < j < dim")
        if not isinstance(row, dict):
            raise ConfigError(f"structure row {key!r} must be an object")
        parsed = {}
        for k, c in row.items():
            kk = int(k)
            if not (0 <= kk < dim):
                raise ConfigError(f"structure target {k!r} out of range in row {key!r}")
            try:
                parsed[kk] = parse_scalar(c)
            except ValueError as exc:
                raise ConfigError(f"structure row {key!r}: {exc}") from None
        structure[(i, j)] = parsed
    try:
        weights = [parse_fraction(w) for w in block["weights"]]
        spec = LieAlgebraSpec(dim, block["basis_names"], structure, weights)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"lie_algebra: {exc}") from None
    jac = jacobi_validate(spec)
    if not jac.ok:
        raise ConfigError(f"lie_algebra violates the Jacobi identity at triple {jac.witness}")
    sub = submult_check(spec)
    if not sub.ok:
        raise ConfigError(
            f"weights are not submultiplicative at pair {sub.witness}: "
            f"{sub.lhs} > {sub.rhs}"
        )
    return spec


def _parse_functional(name, block, spec):
    _expect_keys(block, f"functionals.{name}", ("max_degree", "values"))
    degree = block["max_degree"]
    if not isinstance(degree, int) or not (0 <= degree <= MAX_TABLE_DEGREE):
        raise ConfigError(
            f"functionals.{name}.max_degree must be an integer in [0, {MAX_TABLE_DEGREE}]"
        )
    values = {}
    if not isinstance(block["values"], dict):
        raise ConfigError(f"functionals.{name}.values must be an object")
    for key, raw in block["values"].items():
        alpha = _parse_multi_index(key, spec.dim, f"functionals.{name}")
        if sum(alpha) > degree:
            raise ConfigError(
                f"functionals.{name}: index {key!r} exceeds max_degree {degree}"
            )
        try:
            values[alpha] = parse_scalar(raw)
        except ValueError as exc:
            raise ConfigError(f"functionals.{name}[{key}]: {exc}") from None
    return FunctionalTable(spec, degree, values)


def _parse_representation(name, block, spec):
    _expect_keys(
        block,
        f"representations.{name}",
        ("dim_V", "generators", "cyclic_vector", "skew_hermitian"),
        ("mode",),
    )
    dim_V = block["dim_V"]
    if not isinstance(dim_V, int) or not (1 <= dim_V <= 16):
        raise ConfigError(f"representations.{name}.dim_V must be an integer in [1, 16]")
    mode = block.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise ConfigError(f"representations.{name}.mode must be 'exact' or 'float'")
    gens = block["generators"]
    if not isinstance(gens, list) or len(gens) != spec.dim:
        raise ConfigError(
            f"representations.{name}.generators must list {spec.dim} matrices"
        )
    try:
        if mode == "exact":
            parsed_gens = [
                [[parse_scalar(c) for c in row] for row in g] for g in gens
            ]
            vec = [parse_scalar(c) for c in block["cyclic_vector"]]
        else:
            parsed_gens = [np.asarray(g, dtype=complex) for g in gens]
            vec = np.asarray(block["cyclic_vector"], dtype=complex)
        rep = MatrixRep(
            spec, dim_V, parsed_gens, vec,
            skew_hermitian=bool(block["skew_hermitian"]),
            exact=(mode == "exact"), name=name,
        )
        rep.validate()
    except (ValueError, TypeError, WorkbenchError) as exc:
        raise ConfigError(f"representations.{name}: {exc}") from None
    return rep


_SUITE_SCHEMAS = {
    "bch-identity": {"degree": 6},
    "pbw-confluence": {"count": 200, "max_length": 5},
    "radius": {"functional": None, "expected": None, "tolerance": 1e-9},
    "recursion": {"functional": None, "n_max": 3},
    "positivity": {"representations": None, "d_max": 2, "power_max": 3,
                   "directions": 10},
    "gns": {"representation": None, "d_max": 2, "expected_rank": None},
    "local-hom": {"representation": None, "degree": 4, "scales": None,
                  "x": None, "y": None, "min_slope": None,
                  "max_residual": None},
    "kernel": {"representation": None, "count": 20, "repetitions": 10,
               "tolerance": 1e-10},
    "cauchy": {"representation": None, "x": None, "r": 1.0, "n_max": 12,
               "random_reps": 0, "random_size": 4},
    "extension": {"representation": None, "functional": None, "truth": None,
                  "degrees": None, "probes": 8, "probe_norm": "1/2",
                  "times": None, "tolerance": 1e-6},
}

SUITE_NAMES = tuple(_SUITE_SCHEMAS)

_DEGREE_KNOB = {
    "bch-identity": "degree",
    "pbw-confluence": "max_length",
    "recursion": "n_max",
    "positivity": "d_max",
    "gns": "d_max",
    "local-hom": "degree",
    "cauchy": "n_max",
}

_TOL_KNOB = {
    "radius": "tolerance",
    "kernel": "tolerance",
    "extension": "tolerance",
}


def _parse_suite(index, block, config):
    if not isinstance(block, dict) or "name" not in block:
        raise ConfigError(f"suites[{index}] must be an object with a 'name'")
    name = block["name"]
    if name not in _SUITE_SCHEMAS:
        raise ConfigError(
            f"suites[{index}]: unknown suite {name!r} "
            f"(known: {', '.join(SUITE_NAMES)})"
        )
    schema = _SUITE_SCHEMAS[name]
    params = {}
    for key, value in block.items():
        if key == "name":
            continue
        if key not in schema:
            raise ConfigError(
                f"suites[{index}] ({name}): unknown parameter {key!r} "
                f"(allowed: {', '.join(sorted(schema))})"
            )
        params[key] = value
    for key, default in schema.items():
        params.setdefault(key, default)
    # range checks on degree-like and tolerance-like parameters; the cauchy
    # n_max is a derivative order rather than a truncation degree, so it gets
    # a looser cap
    for key in ("degree", "n_max", "d_max", "max_length", "power_max"):
        if params.get(key) is not None:
            v = params[key]
            cap = 16 if (name == "cauchy" and key == "n_max") else MAX_DEGREE
            if not isinstance(v, int) or not (0 <= v <= cap):
                raise ConfigError(
                    f"suites[{index}] ({name}): {key} must be an integer in "
                    f"[0, {cap}]"
                )
    if params.get("degrees") is not None:
        if not isinstance(params["degrees"], list) or not all(
            isinstance(d, int) and 1 <= d <= MAX_DEGREE for d in params["degrees"]
        ):
            raise ConfigError(
                f"suites[{index}] ({name}): degrees must be integers in [1, {MAX_DEGREE}]"
            )
    for key in ("tolerance",):
        if params.get(key) is not None:
            v = float(params[key])
            if not (0 <= v <= MAX_TOL):
                raise ConfigError(
                    f"suites[{index}] ({name}): {key} must be in [0, {MAX_TOL}]"
                )
    # reference resolution
    for key in ("functional",):
        ref = params.get(key)
        if ref is not None and ref not in config.functionals:
            raise ConfigError(f"suites[{index}] ({name}): unknown functional {ref!r}")
    rep_refs = []
    if params.get("representation") is not None:
        rep_refs.append(params["representation"])
    if params.get("representations") is not None:
        rep_refs.extend(params["representations"])
    for ref in rep_refs:
        if ref not in config.representations:
            raise ConfigError(f"suites[{index}] ({name}): unknown representation {ref!r}")
    return SuiteSpec(name, params)


def parse_config(text):
    """Parse and fully validate a workbench configuration."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    _expect_keys(doc, "config", ("lie_algebra",),
                 ("functionals", "representations", "suites"))
    spec = _parse_algebra(doc["lie_algebra"])
    config = WorkbenchConfig(spec, {}, {}, [])
    for name, block in (doc.get("functionals") or {}).items():
        config.functionals[name] = _parse_functional(name, block, spec)
    for name, block in (doc.get("representations") or {}).items():
        config.representations[name] = _parse_representation(name, block, spec)
    for index, block in enumerate(doc.get("suites") or []):
        config.suites.append(_parse_suite(index, block, config))
    return config


def _algebra_to_dict(spec):
    return {
        "dim": spec.dim,
        "basis_names": list(spec.basis_names),
        "structure": {
            f"{i},{j}": {str(k): format_scalar(c) for k, c in sorted(row.items())}
            for (i, j), row in sorted(spec.bracket_rows())
        },
        "weights": [format_fraction(w) for w in spec.weights],
    }


def _functional_to_dict(lam):
    values = {}
    for alpha in sorted(lam.values, key=lambda a: (sum(a), a)):
        values[",".join(str(a) for a in alpha)] = format_scalar(lam.values[alpha])
    return {"max_degree": lam.max_degree, "values": values}


def _representation_to_dict(rep):
    if not rep.exact:
        raise ConfigError("float representations cannot be serialized exactly")
    return {
        "dim_V": rep.dim_V,
        "mode": "exact",
        "skew_hermitian": rep.skew_hermitian,
        "generators": [
            [[format_scalar(c) for c in row] for row in gen]
            for gen in rep.generators
        ],
        "cyclic_vector": [format_scalar(c) for c in rep.cyclic_vector],
    }


def _config_to_dict(config):
    doc = {"lie_algebra": _algebra_to_dict(config.algebra)}
    if config.functionals:
        doc["functionals"] = {
            name: _functional_to_dict(lam)
            for name, lam in sorted(config.functionals.items())
        }
    if config.representations:
        doc["representations"] = {
            name: _representation_to_dict(rep)
            for name, rep in sorted(config.representations.items())
        }
    if config.suites:
        doc["suites"] = [
            {"name": s.name, **{k: v for k, v in s.params.items() if v is not None}}
            for s in config.suites
        ]
    return doc


def serialize_config(config):
    return json.dumps(_config_to_dict(config), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    identifier: str
    ok: bool
    expected: str
    actual: str
    residual: Optional[float] = None

    @property
    def status(self):
        return "PASS" if self.ok else "FAIL"


@dataclass
class Report:
    suite: str
    checks: List[Check]
    duration: float = 0.0

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def status(self):
        return "PASS" if self.ok else "FAIL"


def render_human(reports, out):
    for report in reports:
        out.write(f"== suite {report.suite}: {report.status} ({report.duration:.2f} s)\n")
        for c in report.checks:
            line = f"   {c.identifier}: {c.status}  expected {c.expected}; actual {c.actual}"
            if c.residual is not None:
                line += f"; residual {c.residual:.6e}"
            out.write(line + "\n")
    total = "PASS" if all(r.ok for r in reports) else "FAIL"
    out.write(f"== overall: {total} ({len(reports)} suites)\n")


def render_machine(reports, out):
    # no timing fields: machine reports must be byte-identical across runs
    for report in reports:
        for c in report.checks:
            rec = {
                "kind": "check",
                "suite": report.suite,
                "id": c.identifier,
                "status": c.status,
                "expected": c.expected,
                "actual": c.actual,
                "residual": c.residual,
            }
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        out.write(
            json.dumps(
                {
                    "kind": "suite",
                    "suite": report.suite,
                    "status": report.status,
                    "checks": len(report.checks),
                },
                sort_keys=True,
            )
            + "\n"
        )
    out.write(
        json.dumps(
            {
                "kind": "summary",
                "status": "PASS" if all(r.ok for r in reports) else "FAIL",
                "suites": len(reports),
            },
            sort_keys=True,
        )
        + "\n"
    )


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _suite_bch_identity(config, params, seed):
    N = params["degree"]
    checks = []
    z = fa.fa_bch(max(2, N))
    t11 = fa.fa_bidegree_project(z, 1, 1)
    expected = fa.FreeSeries(2, z.trunc_degree,
                             {(0, 1): Fraction(1, 2), (1, 0): Fraction(-1, 2)})
    checks.append(
        Check("degree-2-coefficient", t11 == expected,
              "T_{1,1}(Z) = (XY - YX)/2", "equal" if t11 == expected else "mismatch")
    )
    for total in range(1, N + 1):
        for m in range(total + 1):
            n = total - m
            report = fa.fa_check_exp_identity(m, n)
            checks.append(
                Check(
                    f"(m,n)=({m},{n})",
                    report.ok,
                    "exact bidegree and product identities",
                    "exact" if report.ok else "mismatch",
                )
            )
    return checks


def _suite_pbw_confluence(config, params, seed):
    rng = random.Random(seed)
    spec = config.algebra
    count = params["count"]
    max_len = params["max_length"]
    failures = 0
    for _ in range(count):
        w1 = random_word(spec, rng, max_len)
        w2 = random_word(spec, rng, max_len)
        direct = pbw_reduce(spec, w1 + w2)
        split = pbw_mul(pbw_reduce(spec, w1), pbw_reduce(spec, w2))
        if direct != split:
            failures += 1
    checks = [
        Check(
            "random-words",
            failures == 0,
            f"{count} word pairs reduce confluently",
            f"{count - failures}/{count} exact",
        )
    ]
    return checks


def _suite_radius(config, params, seed):
    lam = config.functionals[params["functional"]]
    est = radius_estimate(lam)
    checks = []
    if params["expected"] is not None:
        expected = parse_fraction(params["expected"])
        tol = float(params["tolerance"])
        resid = abs(est.value - float(expected)) if not est.is_infinite else float("inf")
        checks.append(
            Check(
                "estimate",
                est.equals_rational(expected) or resid <= tol,
                f"radius estimate = {expected}",
                f"{est.value:.15g}",
                resid,
            )
        )
    else:
        checks.append(
            Check("estimate", True, "computed", f"{est.value:.15g}")
        )
    sym, raw = growth_diagnostics(lam, t=1.0)
    checks.append(
        Check(
            "growth-diagnostics",
            True,
            "partial sums reported (nothing asserted)",
            f"symmetrized {sym[-1]:.6g}, raw {raw[-1]:.6g}",
        )
    )
    return checks


def _suite_recursion(config, params, seed):
    lam = config.functionals[params["functional"]]
    report = recursion_check(lam, params["n_max"])
    checks = []
    for row in report.rows:
        checks.append(
            Check(
                f"n={row.n}",
                row.ok,
                f"c_n <= ||beta_(n+1)^s|| + n c_(n-1) and action bounds",
                f"c_{row.n} = {row.c_n.to_float():.15g}"
                + ("" if row.ok else " (violated)"),
            )
        )
    return checks


def _suite_positivity(config, params, seed):
    rng = random.Random(seed)
    checks = []
    d_max = params["d_max"]
    power_max = params["power_max"]
    directions = params["directions"]
    degree = max(2 * d_max, 2 * power_max)
    for name in params["representations"]:
        rep = config.representations[name]
        lam = functional_from_rep(rep, degree)
        M = moment_matrix(lam, d_max)
        psd = psd_check(M)
        pivot_note = (
            f"min pivot {format_fraction(min(psd.pivots))}" if psd.pivots else "rank 0"
        )
        checks.append(
            Check(
                f"{name}-moment-psd",
                psd.ok and M.hermitian,
                f"hermitian PSD moment matrix at degree {d_max}",
                f"rank {psd.rank}, {pivot_note}",
            )
        )
        bad = 0
        for _ in range(directions):
            x = random_vector(rep.spec, rng, span=4, denominator=4)
            diag = analytic_diagnostics(lam, x, power_max)
            if not diag.positive_so_far:
                bad += 1
        checks.append(
            Check(
                f"{name}-squares",
                bad == 0,
                f"(-1)^n lam(x^(2n)) >= 0 for n <= {power_max}, {directions} directions",
                f"{directions - bad}/{directions} nonnegative",
            )
        )
    return checks


def _suite_gns(config, params, seed):
    rep = config.representations[params["representation"]]
    d_max = params["d_max"]
    lam = functional_from_rep(rep, 2 * d_max)
    model = gns_build(lam, d_max)
    checks = []
    if params["expected_rank"] is not None:
        checks.append(
            Check(
                "quotient-rank",
                model.quotient_rank == params["expected_rank"],
                f"rank {params['expected_rank']}",
                str(model.quotient_rank),
            )
        )
    if rep.exact:
        orbit = orbit_gram(rep, d_max)
        same = orbit == model.gram.rows
        checks.append(
            Check(
                "orbit-gram",
                same,
                "GNS Gram equals orbit Gram exactly",
                "equal" if same else "mismatch",
            )
        )
    checks.append(
        Check(
            "skew-symmetry",
            bool(model.skew_exact),
            "exact skewness on the modeled domain",
            "exact" if model.skew_exact else f"residual {model.skew_residual:.3e}",
        )
    )
    return checks


def _parse_vector(spec, raw, context):
    if raw is None:
        raise ConfigError(f"{context}: missing vector")
    if len(raw) != spec.dim:
        raise ConfigError(f"{context}: vector needs {spec.dim} entries")
    return GVector(spec, [parse_scalar(c) for c in raw])


def _suite_local_hom(config, params, seed):
    rep = config.representations[params["representation"]]
    spec = rep.spec
    x = _parse_vector(spec, params["x"], "local-hom.x")
    y = _parse_vector(spec, params["y"], "local-hom.y")
    scales = [parse_fraction(s) for s in (params["scales"] or ["1/5", "1/10", "1/20", "1/40"])]
    report = local_hom_check(rep, x, y, params["degree"], scales,
                             min_slope=params["min_slope"])
    checks = []
    if report.exact:
        worst = max(report.residuals)
        bound = params["max_residual"]
        ok = report.ok and (bound is None or worst <= float(bound))
        checks.append(
            Check("order", ok, "defect below noise floor",
                  f"max residual {worst:.3e}", worst)
        )
    else:
        checks.append(
            Check(
                "order",
                report.ok,
                f"fitted slope >= {params['min_slope'] or params['degree'] + 0.5}",
                f"slope {report.slope:.3f}",
            )
        )
    return checks


def _suite_kernel(config, params, seed):
    rep = config.representations[params["representation"]]
    checks = []
    for repetition in range(params["repetitions"]):
        sample = sample_group(rep, params["count"], seed=seed + repetition)
        rep_report = pd_kernel_check(sample, tol=float(params["tolerance"]))
        checks.append(
            Check(
                f"repetition-{repetition}",
                rep_report.ok,
                f"min eigenvalue >= -{float(params['tolerance']):.1e}",
                f"{rep_report.min_eigenvalue:.3e}",
                rep_report.min_eigenvalue,
            )
        )
    return checks


def _suite_cauchy(config, params, seed):
    rep = config.representations[params["representation"]]
    spec = rep.spec
    if params["x"] is not None:
        x = _parse_vector(spec, params["x"], "cauchy.x")
    else:
        x = spec.basis_vector(spec.dim - 1)
    checks = []
    report = cauchy_estimate_check(rep, x, r=float(params["r"]), n_max=params["n_max"])
    checks.append(
        Check(
            "shipped-rep",
            report.ok,
            f"||R(x)^n v|| <= sqrt(C) n! r^-n for n <= {params['n_max']}",
            f"C = {report.C:.6g}",
        )
    )
    for k in range(params["random_reps"]):
        rrep = random_skew_rep(params["random_size"], seed + k)
        rreport = cauchy_estimate_check(
            rrep, rrep.spec.basis_vector(0), r=float(params["r"]), n_max=params["n_max"]
        )
        checks.append(
            Check(
                f"random-{k}",
                rreport.ok,
                "factorial bounds hold",
                f"C = {rreport.C:.6g}",
            )
        )
    return checks


_TRUTH_FUNCTIONS = {}


def _truth_gaussian(t):
    import math

    return math.exp(-t * t / 2.0)


_TRUTH_FUNCTIONS["gaussian-char"] = _truth_gaussian


def _suite_extension(config, params, seed):
    checks = []
    tol = float(params["tolerance"])
    degrees = params["degrees"] or [2, 3]
    if params.get("representation"):
        rep = config.representations[params["representation"]]
        rng = np.random.default_rng(seed)
        from .group_integration import _quantized_vector

        norm = parse_fraction(params["probe_norm"])
        probes = [
            _quantized_vector(rep.spec, rng, norm) for _ in range(params["probes"])
        ]
        report = extension_demo(rep, degrees, probes)
    else:
        lam = config.functionals[params["functional"]]
        truth_name = params["truth"]
        if truth_name not in _TRUTH_FUNCTIONS:
            raise ConfigError(
                f"extension: unknown truth function {truth_name!r} "
                f"(known: {', '.join(sorted(_TRUTH_FUNCTIONS))})"
            )
        times = [Fraction(t) if isinstance(t, int) else parse_fraction(t)
                 for t in (params["times"] or ["-1", "-1/2", "0", "1/2", "1"])]
        report = extension_demo_table(lam, degrees, times, _TRUTH_FUNCTIONS[truth_name])
    for d, dev in zip(report.degrees, report.deviations):
        checks.append(
            Check(f"degree-{d}", True, "deviation reported", f"{dev:.6e}", dev)
        )
    checks.append(
        Check(
            "trend",
            report.non_increasing,
            "deviation non-increasing in degree",
            "non-increasing" if report.non_increasing else "increasing",
        )
    )
    checks.append(
        Check(
            "final",
            report.final_deviation <= tol,
            f"final deviation <= {tol:.1e}",
            f"{report.final_deviation:.6e}",
            report.final_deviation,
        )
    )
    return checks


_SUITE_RUNNERS = {
    "bch-identity": _suite_bch_identity,
    "pbw-confluence": _suite_pbw_confluence,
    "radius": _suite_radius,
    "recursion": _suite_recursion,
    "positivity": _suite_positivity,
    "gns": _suite_gns,
    "local-hom": _suite_local_hom,
    "kernel": _suite_kernel,
    "cauchy": _suite_cauchy,
    "extension": _suite_extension,
}


def _find_suite(config, name):
    for suite in config.suites:
        if suite.name == name:
            return suite
    if name in _SUITE_SCHEMAS:
        # suite known but not configured: run with defaults when possible
        return SuiteSpec(name, {k: v for k, v in _SUITE_SCHEMAS[name].items()})
    raise UnknownSuiteError(
        f"unknown suite {name!r}; known suites: {', '.join(SUITE_NAMES)}"
    )


_REQUIRED_PARAMS = {
    "radius": ("functional",),
    "recursion": ("functional",),
    "positivity": ("representations",),
    "gns": ("representation",),
    "local-hom": ("representation", "x", "y"),
    "kernel": ("representation",),
    "cauchy": ("representation",),
}


def _check_required(name, params):
    missing = [k for k in _REQUIRED_PARAMS.get(name, ()) if params.get(k) is None]
    if name == "extension":
        if params.get("representation") is None and params.get("functional") is None:
            missing.append("representation or functional")
        if params.get("functional") is not None and params.get("truth") is None:
            missing.append("truth")
    if missing:
        raise ConfigError(
            f"suite {name!r} needs parameters: {', '.join(missing)}"
        )


def run_suite(config, name, seed=0, degree=None, tolerance=None):
    """Run one verification suite and return its report."""
    suite = _find_suite(config, name)
    params = dict(suite.params)
    if degree is not None and suite.name in _DEGREE_KNOB:
        params[_DEGREE_KNOB[suite.name]] = degree
    if tolerance is not None and suite.name in _TOL_KNOB:
        params[_TOL_KNOB[suite.name]] = tolerance
    _check_required(suite.name, params)
    runner = _SUITE_RUNNERS[suite.name]
    start = time.perf_counter()
    checks = runner(config, params, seed)
    duration = time.perf_counter() - start
    return Report(suite.name, checks, duration)


def run_all(config, seed=0, degree=None, tolerance=None, parallel=False):
    """Run every configured suite, in order; reports are order-stable."""
    names = [s.name for s in config.suites]
    if not parallel:
        return [run_suite(config, n, seed, degree, tolerance) for n in names]
    with ThreadPoolExecutor(max_workers=min(4, max(1, len(names)))) as pool:
        futures = [
            pool.submit(run_suite, config, n, seed, degree, tolerance) for n in names
        ]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# command line front end
# ---------------------------------------------------------------------------


def default_config_path():
    return resources.files("envalg").joinpath("data", "su2.json")


def _load_config(path):
    if path is None:
        text = default_config_path().read_text(encoding="utf-8")
    else:
        with open(path, "rb") as fh:
            text = fh.read()
    return parse_config(text)


def _emit(reports, fmt, out_path):
    buffer = io.StringIO()
    if fmt == "machine":
        render_machine(reports, buffer)
    else:
        render_human(reports, buffer)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(buffer.getvalue())
    else:
        sys.stdout.write(buffer.getvalue())


def _cmd_validate(config, args):
    summary = (
        f"config OK: algebra dim {config.algebra.dim}, "
        f"{len(config.functionals)} functionals, "
        f"{len(config.representations)} representations, "
        f"{len(config.suites)} suites"
    )
    print(summary)
    return 0


def _cmd_dump(config, args):
    target = args.object
    if target == "config":
        sys.stdout.write(serialize_config(config))
        return 0
    if target == "lie_algebra":
        doc = _algebra_to_dict(config.algebra)
    elif target == "suites":
        doc = _config_to_dict(config).get("suites", [])
    elif "/" in target:
        kind, _, name = target.partition("/")
        if kind == "functional":
            if name not in config.functionals:
                raise ConfigError(f"unknown functional {name!r}")
            doc = _functional_to_dict(config.functionals[name])
        elif kind == "representation":
            if name not in config.representations:
                raise ConfigError(f"unknown representation {name!r}")
            doc = _representation_to_dict(config.representations[name])
        else:
            raise ConfigError(
                f"unknown dump target {target!r} "
                "(use config, lie_algebra, suites, functional/<name>, representation/<name>)"
            )
    else:
        raise ConfigError(
            f"unknown dump target {target!r} "
            "(use config, lie_algebra, suites, functional/<name>, representation/<name>)"
        )
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="envalg",
        description="Exact enveloping-algebra workbench: validation suites and reports.",
    )
    parser.add_argument("--config", help="path to a workbench config (JSON)")
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    parser.add_argument("--out", help="write the report to a file instead of stdout")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized suites (default 0)")
    parser.add_argument("--degree", type=int, help="override the suite degree knob")
    parser.add_argument("--tolerance", type=float,
                        help="override the suite tolerance knob")
    parser.add_argument("--parallel", action="store_true",
                        help="run independent suites concurrently")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", help="parse and validate the configuration")
    run = sub.add_parser("run", help="run a single suite")
    run.add_argument("suite", help=f"one of: {', '.join(SUITE_NAMES)}")
    sub.add_parser("run-all", help="run every configured suite")
    dump = sub.add_parser("dump", help="serialize a configured object")
    dump.add_argument("object",
                      help="config | lie_algebra | suites | functional/<name> | representation/<name>")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "validate":
            return _cmd_validate(config, args)
        if args.command == "dump":
            return _cmd_dump(config, args)
        if args.command == "run":
            reports = [
                run_suite(config, args.suite, args.seed, args.degree, args.tolerance)
            ]
        else:  # run-all
            reports = run_all(
                config, args.seed, args.degree, args.tolerance, parallel=args.parallel
            )
    except UnknownSuiteError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, WorkbenchError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    _emit(reports, args.format, args.out)
    return 0 if all(r.ok for r in reports) else 1


def main_entry():
    raise SystemExit(main())
