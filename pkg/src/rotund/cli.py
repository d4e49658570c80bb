"""Command-line entry point.

Every subcommand writes one JSON document that embeds the tool version and
the sha256 digest of each input file.  Exit status is 0 on success, 1 when
an invariant fails and 2 on unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path


from . import __version__
from ._rng import stream
from .families import FamilyError, index_report
from .functions import NORM_KINDS, NormSpec
from .intersection import DEFAULT_MAX_LEN, verify_duality
from .io import (InputError, digest, dumps, families_from_json, family_from_json, load_json,
                 martingale_from_json, martingale_to_json, measure_from_json,
                 vector_from_json)
from .martingales import (CertificationError, MartingaleError, a_upper_bound,
                          build_lemma_martingale, check_norm_square_monotone,
                          compose_proposition_martingale, lemma_report, proposition_report,
                          validate_martingale)
from .modulus import ModulusQuery, pur_chain_check, ured_modulus_estimate

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT = 0, 1, 2


class InvariantFailure(Exception):
    """A check ran to completion and found a violated invariant."""

    def __init__(self, name: str, report: dict):
        super().__init__(name)
        self.name, self.report = name, report


def _load(path: str):
    if not Path(path).is_file():
        raise InputError(f"{path}: no such file")
    return load_json(path)


def _wrap(command: str, inputs: dict, result: dict) -> dict:
    return {"tool": "rotund", "version": __version__, "command": command,
            "inputs": {role: digest(p) for role, p in inputs.items() if p is not None},
            "result": result}


# -- subcommands -------------------------------------------------------------

def cmd_indices(a) -> dict:
    fam = family_from_json(_load(a.family))
    return _wrap("indices", {"family": a.family}, index_report(fam).to_dict())


def cmd_duality(a) -> dict:
    fam = family_from_json(_load(a.family))
    rep = verify_duality(fam, a.max_len)
    if not rep.ok:
        raise InvariantFailure("lp strong duality and Kelley number above the LP value",
                               rep.to_dict())
    return _wrap("duality", {"family": a.family}, rep.to_dict())


def _g(path):
    return None if path is None else vector_from_json(_load(path))


def cmd_build(a) -> dict:
    g = _g(a.g)
    if a.family is not None:
        fam = family_from_json(_load(a.family))
        if g is None:
            g = [1] * fam.n
        mart = build_lemma_martingale(fam, g, check=False)
        rep = lemma_report(mart, fam, g)
        inputs = {"family": a.family, "g": a.g}
    else:
        fams = families_from_json(_load(a.families))
        mart = compose_proposition_martingale(fams, g, check=False)
        rep = proposition_report(mart, fams)
        inputs = {"families": a.families, "g": a.g}
    if not rep.ok:
        raise InvariantFailure("construction certificate", rep.to_dict())
    return _wrap("martingale build", inputs,
                 {"certificate": rep.to_dict(), "martingale": martingale_to_json(mart)})


def _spec(kind, measure_path, n) -> NormSpec:
    if kind in ("l2", "triple"):
        if measure_path is None:
            raise InputError(f"--measure is required for the {kind} norm")
        mu = measure_from_json(_load(measure_path))
        if mu.n != n:
            raise InputError(f"measure has {mu.n} points, expected {n}")
        return NormSpec(kind, mu)
    return NormSpec(kind)


def cmd_check(a) -> dict:
    mart = martingale_from_json(_load(a.martingale))
    val = validate_martingale(mart)
    result = {"validation": val.to_dict()}
    if not val.ok:
        raise InvariantFailure("martingale law", result)
    spec = _spec(a.norm, a.measure, mart.ground)
    mono = check_norm_square_monotone(mart, spec)
    result["norm_square_monotone"] = mono.to_dict()
    if not mono.ok:
        raise InvariantFailure("norm-square monotonicity", result)
    return _wrap("martingale check", {"martingale": a.martingale, "measure": a.measure}, result)


def cmd_bound(a) -> dict:
    fams = families_from_json(_load(a.families))
    res = a_upper_bound(fams, _g(a.g))
    if not res.verified:
        raise InvariantFailure("a-index bound certificate", res.to_dict())
    return _wrap("martingale bound", {"families": a.families, "g": a.g}, res.to_dict())


def cmd_modulus(a) -> dict:
    z = vector_from_json(_load(a.direction))
    spec = _spec(a.norm, a.measure, len(z))
    rep = ured_modulus_estimate(ModulusQuery(spec, tuple(float(v) for v in z), a.epsilon,
                                             a.starts, a.iters, a.seed))
    out = rep.to_dict()
    out.update({"norm": a.norm, "epsilon": a.epsilon, "seed": a.seed})
    return _wrap("modulus", {"direction": a.direction, "measure": a.measure}, out)


def cmd_pur(a) -> dict:
    mu = measure_from_json(_load(a.measure))
    if not mu.strictly_positive:
        raise InputError("the measure must be strictly positive")
    failures = []
    for trial in range(a.trials):
        rng = stream(a.seed, "pur-check", trial)
        f, x, y = (rng.uniform(-3, 3, mu.n) for _ in range(3))
        rep = pur_chain_check(mu, f, x, y)
        if not rep.ok:
            failures.append({"trial": trial, "report": rep.to_dict()})
    result = {"trials": a.trials, "seed": a.seed, "violations": len(failures),
              "failures": failures[:10]}
    if failures:
        raise InvariantFailure("p-UR inequality chain", result)
    return _wrap("pur-check", {"measure": a.measure}, result)


def cmd_acceptance(a) -> dict:
    from .acceptance import run_all
    rep = run_all(a.seed)
    if not rep["passed"]:
        failed = [c["id"] for c in rep["criteria"] if not c["passed"]]
        raise InvariantFailure(f"acceptance criteria {failed}", rep)
    return rep


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rotund", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"rotund {__version__}")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("indices", help="l, gamma_k, win and win_tilde of a family")
    s.add_argument("--family", required=True, help="family JSON file")
    s.set_defaults(func=cmd_indices)

    s = sub.add_parser("duality", help="max-min measure LP certificate and Kelley number")
    s.add_argument("--family", required=True, help="family JSON file")
    s.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN,
                   help="longest sequence tried for the Kelley number (default %(default)s)")
    s.set_defaults(func=cmd_duality)

    m = sub.add_parser("martingale", help="build, check or bound explicit martingales")
    msub = m.add_subparsers(dest="action", required=True)
    s = msub.add_parser("build", help="two-step (--family) or composed (--families) martingale")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--family", help="family JSON file: two-step construction")
    grp.add_argument("--families", help="families JSON file: composed construction")
    s.add_argument("--g", help="starting function JSON file (default: constant 1)")
    s.set_defaults(func=cmd_build)
    s = msub.add_parser("check", help="martingale law and norm-square monotonicity")
    s.add_argument("--martingale", required=True, help="martingale JSON file")
    s.add_argument("--norm", choices=NORM_KINDS, default="sup")
    s.add_argument("--measure", help="measure JSON file (l2 and triple norms)")
    s.set_defaults(func=cmd_check)
    s = msub.add_parser("bound", help="certified upper bound on the a-index")
    s.add_argument("--families", required=True, help="families JSON file")
    s.add_argument("--g", help="starting function JSON file (default: constant 1)")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("modulus", help="directional rotundity modulus estimate")
    s.add_argument("--norm", choices=NORM_KINDS, required=True)
    s.add_argument("--measure", help="measure JSON file (l2 and triple norms)")
    s.add_argument("--direction", required=True, help="direction vector JSON file")
    s.add_argument("--epsilon", type=float, required=True, help="chord length in (0, 2]")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--starts", type=int, default=ModulusQuery.starts)
    s.add_argument("--iters", type=int, default=ModulusQuery.iters)
    s.set_defaults(func=cmd_modulus)

    s = sub.add_parser("pur-check", help="random trials of the p-UR inequality chain")
    s.add_argument("--measure", required=True, help="strictly positive measure JSON file")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_pur)

    s = sub.add_parser("acceptance", help="run the full acceptance suite")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_acceptance)
    return p


def _emit(doc: dict, output: str | None) -> None:
    text = dumps(doc)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except InvariantFailure as e:
        print(f"rotund: invariant violated: {e.name}", file=sys.stderr)
        _emit({"tool": "rotund", "version": __version__, "error": "invariant",
               "invariant": e.name, "report": e.report}, args.output)
        return EXIT_INVARIANT
    except CertificationError as e:
        print(f"rotund: invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, FamilyError, MartingaleError, ValueError, OSError) as e:
        print(f"rotund: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
