"""``hopfwb`` command line: every command prints one JSON report.

Exit status is 0 on success, 1 when a checked invariant fails and 2 on
usage, input or resource errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import platform
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy
import sympy

from . import __version__, aut, hopf
from . import coeffs as C
from .algebra import cesaro, element_from_json, free_element_from_json
from .congruence import abelianization_check, close, oracle_close
from .errors import (DegenerateGeneratorsError, LevelOverflowError, PresentationError,
                     ResourceLimitError)
from .fock import SemigroupSpace, evaluate, left_regular, operator_norm
from .predual import (CoefficientFunctional, character_convolution_check, convolve,
                      phi_lambda, word_value)
from .schur import (MultiplierSymbol, constant_family, factorization_verify, geometric_family,
                    identity_indicator_family, multiplier_norm_estimate)
from .verify import verify_all
from .words import (ZERO, Presentation, commutator_presentation, format_word,
                    free_presentation, parse_word, presentation_from_json)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

PRESETS = {"commutator": commutator_presentation, "free": free_presentation}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    level: int | None = None
    presentation_path: str | None = None
    preset: str = "commutator"
    d: int | None = None
    out: str | None = None
    seed: int = 0
    force: bool = False
    verbose: bool = False
    matrix_tol: float = 1e-10
    unitary_tol: float = 1e-12
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.level is not None and self.level < 0:
            raise UsageError("--level must be nonnegative")
        if self.matrix_tol <= 0 or self.unitary_tol <= 0:
            raise UsageError("tolerances must be positive")


# -- helpers ----------------------------------------------------------------

def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def load_presentation(cfg: RunConfig) -> Presentation:
    if cfg.presentation_path:
        p = presentation_from_json(_read_json(cfg.presentation_path))
        if cfg.d is not None and cfg.d != p.d:
            raise UsageError(f"--d {cfg.d} disagrees with the presentation (d={p.d})")
        return p
    if cfg.preset not in PRESETS:
        raise UsageError(f"unknown preset {cfg.preset!r}")
    return PRESETS[cfg.preset](cfg.d if cfg.d is not None else 2)


def _level(cfg: RunConfig, default: int = 4) -> int:
    return default if cfg.level is None else cfg.level


def _meta(cfg: RunConfig, p: Presentation | None, N) -> dict:
    return {
        "command": cfg.command,
        "presentation_sha256": hashlib.sha256(p.serialize().encode()).hexdigest() if p else None,
        "presentation": p.to_json() if p else None,
        "level": N,
        "seed": cfg.seed,
        "versions": {"hopfwb": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
                     "sympy": sympy.__version__, "python": platform.python_version()},
    }


def _class_arg(table, raw: str):
    w = parse_word(raw, table.d) if raw not in ("", "e", "empty") else ()
    return table.class_of(w)


def _word_out(table, cid):
    return None if cid is ZERO else format_word(table.rep(cid), table.d)


def _complex_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# -- commands ---------------------------------------------------------------

def cmd_classes(cfg, p):
    N = _level(cfg)
    return EXIT_OK, close(p, N, cfg.force).to_json(cfg.verbose), N


def cmd_multiply(cfg, p):
    N = _level(cfg)
    t = close(p, N, cfg.force)
    s, u = _class_arg(t, cfg.options["s"]), _class_arg(t, cfg.options["t"])
    st = t.multiply(s, u)
    return EXIT_OK, {"s": _word_out(t, s), "t": _word_out(t, u), "product": _word_out(t, st),
                     "size": None if st is ZERO else t.size(st)}, N


def cmd_matrix(cfg, p):
    N = _level(cfg)
    t = close(p, N, cfg.force)
    s = _class_arg(t, cfg.options["cls"])
    space = SemigroupSpace(t, N)
    M = left_regular(t, s, space=space)
    return EXIT_OK, {"class": _word_out(t, s), "dim": space.dim,
                     "basis": [format_word(t.rep(b), t.d) for b in space.basis],
                     "rows": [[_complex_json(x) for x in row] for row in M],
                     "norm": operator_norm(M)}, N


def cmd_norm(cfg, p):
    N = _level(cfg)
    t = close(p, N, cfg.force)
    e = element_from_json(_read_json(cfg.options["element"]), t)
    return EXIT_OK, {"norm": operator_norm(evaluate(e, N))}, N


def cmd_check_oracle(cfg, p):
    N = _level(cfg)
    same = [close(p, N, cfg.force).partition(n) == oracle_close(p, N).partition(n)
            for n in range(N + 1)]
    return (EXIT_OK if all(same) else EXIT_FAILED), {"equal": all(same), "per_level": same}, N


def cmd_spectrum_scan(cfg, p):
    m = cfg.options["max_degree"]
    N = max(_level(cfg, m), m)
    t = close(p, N, cfg.force)
    found = hopf.spectrum_scan(t, m)
    classes = t.nonzero_classes(m)
    singles = sorted(next(iter(e.coeffs)) for e in found if e.coeffs)
    ok = singles == sorted(classes) and len(found) == len(classes) + 1
    return (EXIT_OK if ok else EXIT_FAILED), {
        "semigroup_like": [e.to_json() for e in found],
        "matches_class_list": ok, "class_count": len(classes)}, N


def _ideal_generators(data):
    if "generators" in data:
        d = int(data["d"])
        return d, [free_element_from_json(g, d) for g in data["generators"]], None
    p = presentation_from_json(data)
    return p.d, hopf.ideal_generators(p), p


def cmd_hopf_test(cfg, p):
    n = cfg.options["degree"]
    if cfg.options.get("ideal"):
        d, gens, p = _ideal_generators(_read_json(cfg.options["ideal"]))
    else:
        d, gens = p.d, hopf.ideal_generators(p)
    try:
        report = hopf.hopf_ideal_test(gens, n, d, cfg.force)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return EXIT_OK, report.to_json(d), n, p


def cmd_autos(cfg, p):
    N = _level(cfg, max(p.max_relation_length, 1))
    t = close(p, N, cfg.force)
    perms = aut.enumerate_automorphisms(t, cfg.options.get("check_level"))
    return EXIT_OK, {"automorphisms": [list(s) for s in perms],
                     "group_table": aut.group_table(perms),
                     "is_group": aut.is_group(perms),
                     "restriction": "only automorphisms induced by generator permutations are searched"}, N


def cmd_cesaro(cfg, p):
    N = _level(cfg)
    t = close(p, N, cfg.force)
    e = element_from_json(_read_json(cfg.options["element"]), t)
    k = cfg.options["k"]
    ce = cesaro(e, k)
    diff = operator_norm(evaluate(ce, N) - evaluate(e, N))
    m = max(e.degree, 0) if e.coeffs else 0
    bound = m / k * sum(C.abs_value(v) for v in e.coeffs.values())
    return (EXIT_OK if diff <= bound + cfg.matrix_tol else EXIT_FAILED), {
        "k": k, "cesaro": ce.to_json(), "distance": diff, "bound": bound}, N


def _symbol(text: str, table, N):
    kind, _, arg = text.partition(":")
    if kind == "geometric":
        lam = complex(arg)
        lam_exact = lam.real if lam.imag == 0 and float(lam.real).is_integer() else lam
        phi = MultiplierSymbol.geometric(table, N, lam_exact)
        family = geometric_family(table, lam, N) if abs(lam) <= 1 else None
    elif kind == "constant":
        c = complex(arg or 1)
        phi = MultiplierSymbol.constant(table, N, c)
        f, g = constant_family(table, N)
        family = ({k: c * v for k, v in f.items()}, g)
    elif kind == "indicator":
        s = _class_arg(table, arg)
        if s is ZERO:
            raise UsageError(f"{arg!r} lies in the zero class")
        phi = MultiplierSymbol.indicator(table, N, s)
        family = identity_indicator_family(table, N) if s == table.identity else None
    else:
        raise UsageError(f"unknown multiplier {text!r}; use geometric:<lam>, constant:<c> or indicator:<rep>")
    return phi, family


def cmd_schur(cfg, p):
    N = _level(cfg)
    t = close(p, N, cfg.force)
    phi, family = _symbol(cfg.options["phi"], t, N)
    est = multiplier_norm_estimate(phi, cfg.options["samples"], cfg.seed)
    cert = factorization_verify(*family, phi, t, N) if family else None
    upper = cert.bound if cert and cert.ok else None
    ok = upper is None or est.lower_bound <= upper + 1e-6
    return (EXIT_OK if ok else EXIT_FAILED), {
        "phi": cfg.options["phi"], "lower_bound": est.lower_bound, "samples": est.samples,
        "certified_upper": upper,
        "factorization": cert.to_json() if cert else None,
        "note": "lower_bound is a sampled estimate at this truncation"}, N


def _point(raw: str) -> list:
    try:
        return [complex(x) for x in raw.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse point {raw!r}") from exc


def cmd_char(cfg, p):
    N = _level(cfg, 14)
    lam = _point(cfg.options["lam"])
    w = parse_word(cfg.options["op"], len(lam)) if cfg.options["op"] not in ("", "e") else ()
    try:
        value, bound = phi_lambda(lam, w, N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    exact = word_value(w, lam)
    report = {"value": _complex_json(value), "bound": bound, "exact": _complex_json(exact),
              "error": abs(value - exact)}
    if cfg.options.get("mu"):
        mu = _point(cfg.options["mu"])
        residual, eps = character_convolution_check(lam, mu, N)
        report["convolution"] = {"residual": residual, "bound": eps}
    ok = report["error"] <= bound
    if "convolution" in report:
        ok = ok and report["convolution"]["residual"] <= report["convolution"]["bound"]
    return (EXIT_OK if ok else EXIT_FAILED), report, N


def cmd_convolve(cfg, p):
    N = _level(cfg)
    t = close(p, N, cfg.force)
    s, u = _class_arg(t, cfg.options["s"]), _class_arg(t, cfg.options["t"])
    if s is ZERO or u is ZERO:
        raise UsageError("coefficient functionals live on nonzero classes")
    out = convolve(CoefficientFunctional.phi(t, s), CoefficientFunctional.phi(t, u))
    return EXIT_OK, {"s": _word_out(t, s), "t": _word_out(t, u), "result": out.to_json()}, N


def cmd_drury(cfg, p):
    N = _level(cfg, 6)
    d = cfg.d if cfg.d is not None else (p.d if p else 2)
    q = commutator_presentation(d)
    report = abelianization_check(close(q, N, cfg.force))
    return (EXIT_OK if report["passed"] else EXIT_FAILED), report, N, q


def cmd_verify_all(cfg, p):
    N = _level(cfg, 5)
    close(p, N, cfg.force)  # resource guard
    report = verify_all(p, N, seed=cfg.seed)
    return (EXIT_OK if report["passed"] else EXIT_FAILED), report, N


COMMANDS = {
    "classes": cmd_classes, "multiply": cmd_multiply, "matrix": cmd_matrix, "norm": cmd_norm,
    "check-oracle": cmd_check_oracle, "spectrum-scan": cmd_spectrum_scan,
    "hopf-test": cmd_hopf_test, "autos": cmd_autos, "cesaro": cmd_cesaro, "schur": cmd_schur,
    "char": cmd_char, "convolve": cmd_convolve, "drury": cmd_drury, "verify-all": cmd_verify_all,
}


def run(cfg: RunConfig) -> tuple:
    """Dispatch one command; returns ``(exit_status, report)``."""
    if cfg.command not in COMMANDS:
        return EXIT_USAGE, {"error": f"unknown command {cfg.command!r}"}
    try:
        p = load_presentation(cfg)
        result = COMMANDS[cfg.command](cfg, p)
    except (UsageError, PresentationError, ResourceLimitError, LevelOverflowError,
            DegenerateGeneratorsError) as exc:
        return EXIT_USAGE, {"error": f"{type(exc).__name__}: {exc}"}
    status, body, N = result[:3]
    if len(result) > 3:
        p = result[3]
    report = {"meta": _meta(cfg, p, N), "result": body}
    return status, report


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--presentation", dest="presentation_path", help="presentation JSON file")
    common.add_argument("--preset", choices=sorted(PRESETS), default="commutator",
                        help="built-in presentation when no file is given")
    common.add_argument("--d", type=int, help="generator count for presets")
    common.add_argument("--level", "-N", type=int, help="truncation level N")
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--force", action="store_true", help="ignore the resource guard")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hopfwb", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)

    add("classes", help="class table per level")
    for name in ("multiply", "convolve"):
        sp = add(name, help="product of two classes" if name == "multiply" else "phi_s * phi_t")
        sp.add_argument("--s", required=True)
        sp.add_argument("--t", required=True)
    sp = add("matrix", help="matrix of L_s on H[S]")
    sp.add_argument("--class", dest="cls", required=True)
    sp = add("norm", help="operator norm of a polynomial element")
    sp.add_argument("--element", required=True)
    add("check-oracle", help="compare the closure with the saturation oracle")
    sp = add("spectrum-scan", help="semigroup-like 0/1 elements")
    sp.add_argument("--max-degree", type=int, default=3)
    sp = add("hopf-test", help="coideal test for a homogeneous ideal slice")
    sp.add_argument("--ideal", help="presentation file or {'d', 'generators'} file")
    sp.add_argument("--degree", type=int, required=True)
    sp = add("autos", help="automorphisms induced by generator permutations")
    sp.add_argument("--check-level", type=int)
    sp = add("cesaro", help="Cesaro mean of a polynomial element")
    sp.add_argument("--element", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = add("schur", help="Schur multiplier norm estimate")
    sp.add_argument("--phi", default="geometric:0.5")
    sp.add_argument("--samples", type=int, default=200)
    sp = add("char", help="phi_lambda on a monomial")
    sp.add_argument("--lambda", dest="lam", required=True, help="comma separated coordinates")
    sp.add_argument("--mu", help="second point for the convolution identity")
    sp.add_argument("--op", default="1", help="word u in L_u")
    add("drury", help="class sizes of the commutator quotient")
    add("verify-all", help="run the full invariant suite")
    return parser


_GLOBAL = {"command", "presentation_path", "preset", "d", "level", "out", "seed", "force", "verbose"}


def parse_config(argv=None) -> RunConfig:
    ns = vars(_parser().parse_args(argv))
    opts = {k: v for k, v in ns.items() if k not in _GLOBAL}
    return RunConfig(**{k: ns[k] for k in _GLOBAL}, options=opts)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"hopfwb: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status, report = run(cfg)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if status == EXIT_USAGE:
        print(f"hopfwb: {report.get('error')}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
