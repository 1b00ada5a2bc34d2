"""Command-line driver: structured run configs in, deterministic reports out.

Config documents are JSON.  Exact scalars travel as strings ("-3/4",
"1/2+5i") so round-trips stay lossless.  Reports are canonical: given the
same config, seed, and tool version the serialized report is
byte-identical across runs (wall-clock timing is only included on
request, since it would break that guarantee).

Exit codes: 0 all checks passed, 1 at least one violation or mismatch,
2 configuration or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .algebras import (
    AFK,
    A_OMEGA_DELTA,
    OMEGA_FORM,
    a_omega_delta,
    afk,
    algebra_a,
    family_swap,
    functional,
    index_scaling,
    omega_form,
    scaled_l_shift,
)
from .checks import (
    check_commutative_associative,
    check_derivation,
    check_fundamental_identity,
    check_involutive_morphism,
    check_poisson_compatibility,
    check_relabel_intertwining,
    check_skew_symmetry,
    check_tp_compatibility,
    generator_closure,
    window,
)
from .elements import BasisSymbol, Element
from .errors import (
    BudgetExceededError,
    ConfigParseError,
    ConfigSchemaError,
    DomainError,
    EmptySystemError,
    IndexOverflowError,
    TransLieError,
    UnknownNotFoundError,
)
from .linalg import nullspace
from .scalars import Scalar
from .solver import (
    full_window_ansatz,
    graded_ansatz,
    solve_and_classify,
    tp_triviality_system,
)
from .tp import (
    POISSON_AND_TRANSPOSED,
    TPParams,
    build_example_family,
    classify_poisson,
    poisson_violation_witness,
    support_closure_window,
    tp_product,
    validate_params,
)

COMMANDS = (
    "check-laws",
    "solve-derivations",
    "tp-triviality",
    "build-tp",
    "verify-tp",
    "generators",
)

LAW_ANCHORS = {
    "skew-symmetry": "bracket changes sign under every transposition of its arguments",
    "fundamental-identity": "[x,y,[u,v,w]] = [[x,y,u],v,w] + [u,[x,y,v],w] + [u,v,[x,y,w]]",
    "one-third-derivation": "3 D([x,y,z]) = [D(x),y,z] + [x,D(y),z] + [x,y,D(z)]",
    "product-derivation-rule": "D(x*y) = D(x)*y + x*D(y)",
    "involutive-morphism": "W(W(x)) = x and W(x*y) = W(x)*W(y)",
    "relabel-intertwining": "relabel([x,y,z]) = [relabel(x),relabel(y),relabel(z)]",
    "transposed-leibniz": "3 u*[x,y,z] = [x*u,y,z] + [x,y*u,z] + [x,y,z*u]",
    "poisson-leibniz": "[x,y,u*v] = u*[x,y,v] + [x,y,u]*v",
    "commutative-associative": "x*y = y*x and (x*y)*z = x*(y*z)",
    "derivation-classification": "core solution space matches the closed-form derivation family",
    "tp-triviality": "commutativity forces every induced-product coefficient to vanish",
    "tp-params-valid": "symmetry, weighted-sum, and exchange constraints all hold",
    "tp-params-built": "rank-one array construction satisfies its constraints",
    "poisson-dichotomy": "classical Leibniz law holds exactly when alpha = 0 and c = 0",
    "generator-closure": "every window basis symbol lies in the bracket closure of the generators",
}


@dataclass
class RunConfig:
    command: str
    algebra: object = None  # BracketDef
    windows: dict = field(default_factory=dict)
    mode: str = "exhaustive"
    budget: int | None = None
    seed: int = 0
    degree: int = 0
    tp_params: TPParams | None = None
    generators: list = field(default_factory=list)
    max_rounds: int = 16
    echo: dict = field(default_factory=dict)


@dataclass
class RunReport:
    command: str
    config: dict
    entries: list
    timing_ms: int | None = None
    version: str = __version__

    @property
    def verdict(self):
        return "pass" if all(e["passed"] for e in self.entries) else "fail"

    def to_dict(self, include_timing=False):
        return {
            "command": self.command,
            "config": self.config,
            "entries": self.entries,
            "timing_ms": self.timing_ms if include_timing else None,
            "verdict": self.verdict,
            "version": self.version,
        }

    def to_json(self, include_timing=False):
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# config parsing


def _require(cond, message):
    if not cond:
        raise ConfigSchemaError(message)


def _parse_scalar(value, where):
    try:
        if isinstance(value, str):
            return Scalar.parse(value)
        if isinstance(value, int):
            return Scalar(value)
    except ValueError as exc:
        raise ConfigSchemaError(f"{where}: {exc}") from None
    raise ConfigSchemaError(f"{where}: scalars must be strings like '3/4' or '1+2i'")


def _parse_scalar_map(obj, where):
    _require(isinstance(obj, dict), f"{where}: expected an object of index -> scalar")
    out = {}
    for key, val in obj.items():
        try:
            idx = int(key)
        except ValueError:
            raise ConfigSchemaError(f"{where}: bad integer index {key!r}") from None
        out[idx] = _parse_scalar(val, f"{where}[{key}]")
    return out


def _parse_window(value, where):
    _require(
        isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) for v in value),
        f"{where}: a window is a two-element list [lo, hi]",
    )
    lo, hi = value
    _require(lo <= hi, f"{where}: window lower bound {lo} exceeds upper bound {hi}")
    return window(lo, hi)


def _parse_algebra(obj):
    _require(isinstance(obj, dict), "algebra: expected an object")
    kind = obj.get("kind")
    _require(
        kind in (A_OMEGA_DELTA, OMEGA_FORM, AFK),
        f"algebra.kind must be one of '{A_OMEGA_DELTA}', '{OMEGA_FORM}', '{AFK}'",
    )
    if kind == A_OMEGA_DELTA:
        return a_omega_delta()
    if kind == OMEGA_FORM:
        return omega_form()
    k = obj.get("k", 0)
    _require(isinstance(k, int), "algebra.k must be an integer")
    f = functional(_parse_scalar_map(obj.get("f", {}), "algebra.f"))
    _require(not f.is_zero(), "algebra.f must be nonzero for the functional bracket")
    return afk(k, f)


def _parse_tp_params(obj, bdef):
    _require(isinstance(obj, dict), "tp_params: expected an object")
    _require(bdef is not None and bdef.kind == AFK, "tp_params requires an a-f-k algebra")
    if "example_family" in obj:
        fam = obj["example_family"]
        _require(isinstance(fam, dict), "tp_params.example_family: expected an object")
        d_seq = _parse_scalar_map(fam.get("d_seq", {}), "tp_params.example_family.d_seq")
        c = _parse_scalar_map(fam.get("c", {}), "tp_params.example_family.c")
        return build_example_family(bdef.f, d_seq, c, bdef.k)
    alpha = _parse_scalar(obj.get("alpha", "0"), "tp_params.alpha")
    c = _parse_scalar_map(obj.get("c", {}), "tp_params.c")
    d_list = obj.get("d", [])
    _require(isinstance(d_list, list), "tp_params.d: expected a list of [i, j, q, scalar]")
    d = {}
    for pos, item in enumerate(d_list):
        _require(
            isinstance(item, list)
            and len(item) == 4
            and all(isinstance(v, int) for v in item[:3]),
            f"tp_params.d[{pos}]: expected [i, j, q, scalar]",
        )
        d[(item[0], item[1], item[2])] = _parse_scalar(item[3], f"tp_params.d[{pos}]")
    return TPParams(alpha=alpha, c=c, d=d, f=bdef.f, k=bdef.k)


def parse_config(text, command=None):
    """Parse and validate a JSON run configuration.

    `command` (from the command line) wins; a `command` key in the
    document, when present, must agree with it.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(
            f"config is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from None
    _require(isinstance(data, dict), "config root must be a JSON object")

    doc_command = data.get("command")
    if command is None:
        command = doc_command
    _require(command in COMMANDS, f"command must be one of {', '.join(COMMANDS)}")
    _require(
        doc_command is None or doc_command == command,
        f"config command {doc_command!r} does not match requested {command!r}",
    )

    known = {
        "command", "algebra", "windows", "mode", "budget", "seed",
        "degree", "tp_params", "generators", "max_rounds",
    }
    for key in data:
        _require(key in known, f"unknown config key {key!r}")

    cfg = RunConfig(command=command)

    if "algebra" in data:
        cfg.algebra = _parse_algebra(data["algebra"])
    _require(
        cfg.algebra is not None or command == "tp-triviality",
        f"{command} requires an 'algebra' section",
    )

    windows_obj = data.get("windows", {})
    _require(isinstance(windows_obj, dict), "windows: expected an object")
    for name, value in windows_obj.items():
        _require(
            name in ("domain", "equation", "core", "image", "index", "basis"),
            f"windows.{name}: unknown window name",
        )
        cfg.windows[name] = _parse_window(value, f"windows.{name}")

    cfg.mode = data.get("mode", "exhaustive")
    _require(cfg.mode in ("exhaustive", "randomized"), "mode must be exhaustive or randomized")
    if "budget" in data:
        _require(
            isinstance(data["budget"], int) and data["budget"] > 0,
            "budget must be a positive integer",
        )
        cfg.budget = data["budget"]
    cfg.seed = data.get("seed", 0)
    _require(isinstance(cfg.seed, int), "seed must be an integer")
    cfg.degree = data.get("degree", 0)
    _require(isinstance(cfg.degree, int), "degree must be an integer")
    cfg.max_rounds = data.get("max_rounds", 16)
    _require(
        isinstance(cfg.max_rounds, int) and cfg.max_rounds >= 0,
        "max_rounds must be a non-negative integer",
    )

    if "tp_params" in data:
        cfg.tp_params = _parse_tp_params(data["tp_params"], cfg.algebra)
    _require(
        cfg.tp_params is not None or command not in ("verify-tp", "build-tp"),
        f"{command} requires a 'tp_params' section",
    )

    gens = data.get("generators")
    if gens is not None:
        _require(isinstance(gens, list) and gens, "generators: expected a non-empty list")
        for pos, item in enumerate(gens):
            _require(
                isinstance(item, list)
                and len(item) == 2
                and item[0] in ("L", "M")
                and isinstance(item[1], int),
                f"generators[{pos}]: expected [\"L\"|\"M\", index]",
            )
            cfg.generators.append(BasisSymbol(item[0], item[1]))

    cfg.echo = _normalize_echo(cfg, data)
    return cfg


def _normalize_echo(cfg, data):
    echo = {"command": cfg.command, "mode": cfg.mode, "seed": cfg.seed}
    if cfg.budget is not None:
        echo["budget"] = cfg.budget
    if cfg.algebra is not None:
        alg = {"kind": cfg.algebra.kind}
        if cfg.algebra.kind == AFK:
            alg["k"] = cfg.algebra.k
            alg["f"] = {str(i): str(v) for i, v in cfg.algebra.f.values}
        echo["algebra"] = alg
    if cfg.windows:
        echo["windows"] = {k: [w.lo, w.hi] for k, w in sorted(cfg.windows.items())}
    if cfg.command == "solve-derivations":
        echo["degree"] = cfg.degree
    if cfg.tp_params is not None:
        echo["tp_params"] = _tp_params_json(cfg.tp_params)
    if cfg.generators:
        echo["generators"] = [[s.family, s.index] for s in cfg.generators]
    if "max_rounds" in data:
        echo["max_rounds"] = cfg.max_rounds
    return echo


def _tp_params_json(p):
    return {
        "alpha": str(p.alpha),
        "c": {str(i): str(v) for i, v in sorted(p.c.items())},
        "d": [[i, j, q, str(v)] for (i, j, q), v in sorted(p.d.items())],
        "f": {str(i): str(v) for i, v in p.f.values},
        "k": p.k,
    }


# ---------------------------------------------------------------------------
# report assembly


def _element_json(element):
    return {str(sym): str(coeff) for sym, coeff in element.sorted_terms()}


def _violation_json(v):
    return {
        "inputs": [str(s) for s in v.inputs],
        "lhs": _element_json(v.lhs),
        "rhs": _element_json(v.rhs),
        "residual": _element_json(v.residual),
    }


def _entry(report, law=None, details=None):
    law = law or report.law
    out = {
        "law": law,
        "anchor": LAW_ANCHORS[law],
        "mode": report.mode,
        "cases_run": report.cases_run,
        "passed": report.passed,
        "violations": [_violation_json(v) for v in report.violations],
    }
    if report.seed is not None:
        out["seed"] = report.seed
    if details:
        out["details"] = details
    return out


def _plain_entry(law, passed, details=None, mode=None, cases_run=None):
    out = {
        "law": law,
        "anchor": LAW_ANCHORS[law],
        "passed": passed,
        "violations": [],
    }
    if mode is not None:
        out["mode"] = mode
    if cases_run is not None:
        out["cases_run"] = cases_run
    if details:
        out["details"] = details
    return out


# ---------------------------------------------------------------------------
# command implementations


def _run_check_laws(cfg):
    domain = cfg.windows.get("domain", window(-4, 4))
    equation = cfg.windows.get("equation", window(-2, 2))
    entries = [
        _entry(check_skew_symmetry(cfg.algebra, domain)),
        _entry(check_fundamental_identity(cfg.algebra, equation)),
    ]
    if cfg.mode == "randomized":
        entries.append(
            _entry(
                check_fundamental_identity(
                    cfg.algebra,
                    equation,
                    mode="randomized",
                    budget=cfg.budget,
                    seed=cfg.seed,
                )
            )
        )
    if cfg.algebra.kind == A_OMEGA_DELTA:
        entries.append(_entry(check_relabel_intertwining(domain)))
        entries.append(_entry(check_commutative_associative(algebra_a(), domain)))
        entries.append(
            _entry(check_derivation(index_scaling(), domain), details={"operator": "index-scaling"})
        )
        for k in range(-3, 4):
            entries.append(
                _entry(
                    check_derivation(scaled_l_shift(k), domain),
                    details={"operator": f"scaled-l-shift({k})"},
                )
            )
        entries.append(_entry(check_involutive_morphism(family_swap(), domain)))
    return entries


def _run_solve_derivations(cfg):
    domain = cfg.windows.get("domain", window(-10, 10))
    equation = cfg.windows.get("equation", domain)
    core = cfg.windows.get("core", window(-(domain.size // 4), domain.size // 4))
    if cfg.algebra.kind == A_OMEGA_DELTA:
        ansatz = graded_ansatz(cfg.degree, domain)
    elif cfg.algebra.kind == AFK:
        ansatz = full_window_ansatz(domain, cfg.windows.get("image", domain))
    else:
        raise ConfigSchemaError(
            "solve-derivations supports the a-omega-delta and a-f-k algebras"
        )
    verdict = solve_and_classify(cfg.algebra, ansatz, equation, core)
    details = {
        "expected_description": verdict.expected_description,
        "core_dimension": verdict.core_dimension,
        "expected_core_dimension": verdict.expected_core_dimension,
        "full_dimension": verdict.full_dimension,
        "offending_vectors": verdict.offending_vectors,
    }
    return [_plain_entry("derivation-classification", verdict.matches, details)]


def _run_tp_triviality(cfg):
    w_index = cfg.windows.get("index", cfg.windows.get("domain", window(-3, 3)))
    w_basis = cfg.windows.get("basis", cfg.windows.get("domain", window(-3, 3)))
    system = tp_triviality_system(w_index, w_basis)
    space = nullspace(system)
    details = {
        "dimension": space.dimension,
        "num_unknowns": system.num_unknowns,
        "num_rows": len(system.rows),
        "nonzero_solutions": [
            {str(uid): str(v) for uid, v in space.vector_as_dict(i).items()}
            for i in range(space.dimension)
        ],
    }
    return [_plain_entry("tp-triviality", space.dimension == 0, details)]


def _run_build_tp(cfg):
    report = validate_params(cfg.tp_params)
    details = {
        "params": _tp_params_json(cfg.tp_params),
        "classification": classify_poisson(cfg.tp_params) if report.is_valid else None,
    }
    return [_plain_entry("tp-params-built", report.is_valid, details)]


def _run_verify_tp(cfg):
    params = cfg.tp_params
    report = validate_params(params)
    details = {
        "params": _tp_params_json(params),
        "symmetry_violations": [[list(t), str(r)] for t, r in report.eq_symmetry_violations],
        "weighted_sum_violations": [
            [list(t), str(r)] for t, r in report.eq_weighted_sum_violations
        ],
        "exchange_violations": [[list(t), str(r)] for t, r in report.eq_exchange_violations],
    }
    entries = [_plain_entry("tp-params-valid", report.is_valid, details)]
    if not report.is_valid:
        return entries

    prod = tp_product(params)
    bdef = cfg.algebra
    closure = support_closure_window(params)
    entries.append(
        _entry(
            check_commutative_associative(prod, closure),
            details={"window": [closure.lo, closure.hi]},
        )
    )
    entries.append(
        _entry(
            check_tp_compatibility(bdef, prod, closure),
            details={"window": [closure.lo, closure.hi]},
        )
    )
    if cfg.mode == "randomized":
        entries.append(
            _entry(
                check_tp_compatibility(
                    bdef, prod, closure, mode="randomized", budget=cfg.budget, seed=cfg.seed
                )
            )
        )

    classification = classify_poisson(params)
    if classification == POISSON_AND_TRANSPOSED:
        poisson = check_poisson_compatibility(bdef, prod, closure)
        entries.append(
            _plain_entry(
                "poisson-dichotomy",
                poisson.passed,
                details={
                    "classification": classification,
                    "poisson_law_passed": poisson.passed,
                    "witness": None,
                },
                mode="exhaustive",
                cases_run=poisson.cases_run,
            )
        )
    else:
        witness = poisson_violation_witness(bdef, prod, closure)
        entries.append(
            _plain_entry(
                "poisson-dichotomy",
                witness is not None,
                details={
                    "classification": classification,
                    "poisson_law_passed": witness is None,
                    "witness": _violation_json(witness) if witness else None,
                },
                mode="exhaustive",
            )
        )
    return entries


def _run_generators(cfg):
    domain = cfg.windows.get("domain", window(-6, 6))
    gens = cfg.generators or [
        BasisSymbol(fam, i) for fam in ("L", "M") for i in (-1, 0, 1)
    ]
    result = generator_closure(
        cfg.algebra,
        [Element.basis(s) for s in gens],
        domain,
        max_rounds=cfg.max_rounds,
    )
    details = {
        "spanned": result.spanned,
        "rounds_used": result.rounds_used,
        "missing": [str(s) for s in result.missing],
        "generators": [str(s) for s in gens],
    }
    return [_plain_entry("generator-closure", result.spanned, details)]


_RUNNERS = {
    "check-laws": _run_check_laws,
    "solve-derivations": _run_solve_derivations,
    "tp-triviality": _run_tp_triviality,
    "build-tp": _run_build_tp,
    "verify-tp": _run_verify_tp,
    "generators": _run_generators,
}


def run(config):
    """Execute a parsed RunConfig and return its RunReport."""
    start = time.monotonic()
    entries = _RUNNERS[config.command](config)
    elapsed_ms = int((time.monotonic() - start) * 1000)
    return RunReport(
        command=config.command,
        config=config.echo,
        entries=entries,
        timing_ms=elapsed_ms,
    )


# ---------------------------------------------------------------------------
# entry point


def _print_summary(report, stream):
    print(f"translie {report.version} — {report.command}: {report.verdict}", file=stream)
    for entry in report.entries:
        status = "pass" if entry["passed"] else "FAIL"
        cases = entry.get("cases_run")
        suffix = f" ({cases} cases)" if cases is not None else ""
        print(f"  [{status}] {entry['law']}{suffix}", file=stream)
        if not entry["passed"] and entry["violations"]:
            first = entry["violations"][0]
            print(f"         first witness: {first['inputs']}", file=stream)
    if report.timing_ms is not None:
        print(f"  elapsed: {report.timing_ms} ms", file=stream)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="translie",
        description="Exact verification workbench for two ternary bracket algebras.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="path to a JSON run configuration")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", default=None, help="write the JSON report here")
    parser.add_argument("--quiet", action="store_true", help="suppress the console summary")
    parser.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock timing in the JSON report (breaks byte-for-byte reproducibility)",
    )
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2

    try:
        config = parse_config(text, command=args.command)
        if args.seed is not None:
            config.seed = args.seed
            config.echo["seed"] = args.seed
        report = run(config)
    except (ConfigParseError, ConfigSchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (
        BudgetExceededError,
        DomainError,
        EmptySystemError,
        IndexOverflowError,
        UnknownNotFoundError,
        TransLieError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(include_timing=args.timing))
    if not args.quiet:
        _print_summary(report, sys.stdout)
    return 0 if report.verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
