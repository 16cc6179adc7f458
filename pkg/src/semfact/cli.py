"""Command-line entry point: ``semfact <command> [paths] [flags]``."""

import argparse
import shutil
import sys
import time
from pathlib import Path

from . import serialize
from .config import DEFAULT_MAX_CANDIDATES, candidate_limit
from .corpus import corpus
from .descent import descent_factorize
from .errors import BoundExceeded, CertificationFailure, InvalidInput, SemfactError
from .fincat.core import FinFunctor
from .fincat.search import is_equivalence
from .monad import build_em_category, check_preservation, codensity_monad, monad_law_failures, semantic_factorize
from .opcomma import build_cokernel_diagram, build_opcomma
from .randomized import random_functors
from .theorems import (
    compare_factorizations,
    has_left_adjoint,
    is_comonadic,
    is_effective_faithful,
    is_monadic,
    monadicity_crosscheck,
)

EXIT_OK, EXIT_FALSE, EXIT_INVALID, EXIT_BOUND = 0, 1, 2, 3


class Run:
    """Collects what a command produced."""

    def __init__(self, args):
        self.args = args
        self.certify = not args.skip_certify
        self.verdicts = {}
        self.counts = {}
        self.details = {}
        self.files = {}

    def size(self, label, C):
        self.counts[label] = {"objects": len(C.objects), "morphisms": len(C.morphisms)}

    def write(self, name, doc):
        self.files[name] = doc


def _functor(path):
    return serialize.load_functor(path)


def _one_path(args):
    if len(args.paths) != 1:
        raise InvalidInput(f"{args.command} expects exactly one input file")
    return args.paths[0]


def cmd_validate(run, args):
    if not args.paths:
        raise InvalidInput("validate expects at least one file")
    for path in args.paths:
        kind, obj = serialize.load_any(path)
        label = Path(path).name
        if kind == "category":
            run.size(label, obj)
        elif kind == "functor":
            run.size(label + " source", obj.source)
            run.size(label + " target", obj.target)
        else:
            bad = monad_law_failures(obj)
            run.verdicts[f"{label} monad_laws"] = not bad
            if bad:
                run.details[label] = bad
        run.verdicts.setdefault(f"{label} valid", True)


def cmd_opcomma(run, args):
    if len(args.paths) not in (1, 2):
        raise InvalidInput("opcomma expects one or two functor files")
    p0 = _functor(args.paths[0])
    p1 = _functor(args.paths[-1])
    opc = build_opcomma(p0, p1, certify=run.certify)
    run.size("opcomma", opc.category)
    run.verdicts["constructed"] = True
    run.details["certificate"] = opc.certificate
    run.write("opcomma.json", serialize.category_document(opc.category, "opcomma of p0 along p1"))


def cmd_cokernel(run, args):
    p = _functor(_one_path(args))
    cok = build_cokernel_diagram(p, certify=run.certify)
    run.size("b", cok.b)
    run.size("bb", cok.bb)
    run.size("bbb", cok.bbb)
    run.verdicts["equations"] = True
    run.details["certificate"] = cok.certificate
    run.write("b.json", serialize.category_document(cok.b, "base of p"))
    run.write("bb.json", serialize.category_document(cok.bb, "opcomma of p along p"))
    run.write("bbb.json", serialize.category_document(cok.bbb, "pushout of d0 along d1"))
    for name, F, s, t in (
        ("d0", cok.d0, "b.json", "bb.json"), ("d1", cok.d1, "b.json", "bb.json"),
        ("s0", cok.s0, "bb.json", "b.json"), ("D0", cok.D0, "bb.json", "bbb.json"),
        ("D1", cok.D1, "bb.json", "bbb.json"), ("D2", cok.D2, "bb.json", "bbb.json"),
    ):
        run.write(f"{name}.json", serialize.functor_document(F, s, t))


def cmd_descent(run, args):
    p = _functor(_one_path(args))
    pH, dp, cok, dc = descent_factorize(p, certify=run.certify)
    run.size("descent", dc.category)
    run.verdicts["constructed"] = True
    run.details["pH_equivalence"] = is_equivalence(pH).holds
    run.details["certificate"] = dc.certificate
    run.write("descent.json", serialize.category_document(dc.category, "lax descent category of H_p"))


def cmd_em(run, args):
    T = serialize.load_monad(_one_path(args))
    bad = monad_law_failures(T)
    run.verdicts["monad_laws"] = not bad
    if bad:
        run.details["failures"] = bad
        return
    em = build_em_category(T, certify=run.certify)
    run.size("algebras", em.algebras)
    run.details["certificate"] = em.certificate
    run.write("algebras.json", serialize.category_document(em.algebras, "Eilenberg-Moore category"))


def cmd_codensity(run, args):
    p = _functor(_one_path(args))
    try:
        T, gamma = codensity_monad(p)
    except SemfactError as exc:
        if isinstance(exc, BoundExceeded):
            raise
        run.verdicts["codensity_exists"] = False
        run.details["reason"] = str(exc)
        return
    run.verdicts["codensity_exists"] = True
    run.details["t"] = dict(T.t.object_map)
    run.write("base.json", serialize.category_document(T.base))
    run.write("codensity.json", serialize.monad_document(T, "base.json"))


def cmd_factorize(run, args):
    p = _functor(_one_path(args))
    pH, dp, cok, dc = descent_factorize(p, certify=run.certify)
    run.size("descent", dc.category)
    run.verdicts["descent_factorization"] = True
    try:
        pt, em = semantic_factorize(p, certify=run.certify)
        run.size("algebras", em.algebras)
        run.verdicts["semantic_factorization"] = True
    except SemfactError as exc:
        if isinstance(exc, BoundExceeded):
            raise
        run.verdicts["semantic_factorization"] = False
        run.details["semantic_reason"] = str(exc)


def cmd_compare(run, args):
    p = _functor(_one_path(args))
    rep = compare_factorizations(p, certify=run.certify)
    run.verdicts["preservation"] = rep.preservation.verdict
    run.verdicts["isomorphic"] = rep.isomorphic
    run.details.update({
        "iso_verified": rep.iso_verified,
        "commutation_verified": rep.commutation_verified,
        "constrained_isomorphism_found": rep.constrained_iso is not None,
        "descent_error": rep.descent_error,
        "em_error": rep.em_error,
    })
    if rep.descent_side:
        run.size("descent", rep.descent_side[3].category)
    if rep.em_side:
        run.size("algebras", rep.em_side[1].algebras)


def cmd_monadicity(run, args):
    p = _functor(_one_path(args))
    v = is_monadic(p, certify=run.certify)
    run.verdicts["monadic"] = v.holds
    run.details["has_left_adjoint"] = has_left_adjoint(p)
    run.details["effective_faithful"] = is_effective_faithful(p, certify=run.certify).holds


def cmd_comonadicity(run, args):
    p = _functor(_one_path(args))
    run.verdicts["comonadic"] = is_comonadic(p, certify=run.certify).holds


def cmd_crosscheck(run, args):
    if args.paths:
        functors = [(path, _functor(path)) for path in args.paths]
    else:
        functors = [(f"random[{i}]", p) for i, p in enumerate(random_functors(args.seed, args.count))]
    violations, skipped, tally = [], 0, {}
    for label, p in functors:
        try:
            rep = monadicity_crosscheck(p, certify=run.certify)
            pres = check_preservation(p)
        except BoundExceeded:
            skipped += 1
            continue
        key = "".join("T" if b else "F" for b in rep.bits())
        tally[key] = tally.get(key, 0) + 1
        if not rep.consistent or not pres.agree:
            violations.append(label)
    run.verdicts["consistent"] = not violations
    run.counts["instances"] = len(functors)
    run.counts["skipped_bound"] = skipped
    run.details["bits(left_adjoint,effective_faithful,monadic)"] = tally
    run.details["violations"] = violations


def corpus_verdicts(e, certify=True):
    """Recompute the manifest's expected fields for one entry."""
    obj = e.load()
    got = {}
    if e.kind == "category":
        got = {"objects": len(obj.objects), "morphisms": len(obj.morphisms)}
    elif e.kind == "monad":
        got["monad_laws"] = not monad_law_failures(obj)
        em = build_em_category(obj, certify=certify)
        got["algebras"] = [len(em.algebras.objects), len(em.algebras.morphisms)]
    else:
        p: FinFunctor = obj
        got["has_left_adjoint"] = has_left_adjoint(p)
        got["preservation"] = check_preservation(p).verdict
        got["effective_faithful"] = is_effective_faithful(p, certify=certify).holds
        got["monadic"] = is_monadic(p, certify=certify).holds
        got["comonadic"] = is_comonadic(p, certify=certify).holds
        if "bb" in e.expected:
            cok = build_cokernel_diagram(p, certify=certify)
            got["bb"] = [len(cok.bb.objects), len(cok.bb.morphisms)]
            got["bbb"] = [len(cok.bbb.objects), len(cok.bbb.morphisms)]
    return {k: got.get(k) for k in e.expected}


def cmd_corpus(run, args):
    mismatches = {}
    for e in corpus():
        got = corpus_verdicts(e, run.certify)
        if got != e.expected:
            mismatches[e.name] = {"expected": e.expected, "got": got}
        run.counts[e.name] = e.kind
    run.verdicts["matches_expected"] = not mismatches
    run.details["mismatches"] = mismatches
    if args.out:
        out = Path(args.out) / "corpus"
        out.mkdir(parents=True, exist_ok=True)
        for e in corpus():
            shutil.copy(e.path, out / e.path.name)


COMMANDS = {
    "validate": cmd_validate, "opcomma": cmd_opcomma, "cokernel": cmd_cokernel,
    "descent": cmd_descent, "em": cmd_em, "codensity": cmd_codensity,
    "factorize": cmd_factorize, "compare": cmd_compare, "monadicity": cmd_monadicity,
    "comonadicity": cmd_comonadicity, "crosscheck": cmd_crosscheck, "corpus": cmd_corpus,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    common.add_argument("--skip-certify", action="store_true",
                        help="skip exhaustive universal-property certification")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="directory for constructed JSON files")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized crosscheck")
    common.add_argument("--count", type=int, default=100, help="random instances for crosscheck")
    parser = argparse.ArgumentParser(prog="semfact", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("paths", nargs="*")
    return parser


def _render_text(report):
    lines = [f"command: {report['command']}"]
    for k, v in report["verdicts"].items():
        lines.append(f"verdict {k}: {str(v).lower()}")
    for k, v in report["counts"].items():
        lines.append(f"count {k}: {v}")
    for k, v in report["details"].items():
        lines.append(f"{k}: {v}")
    for k, v in report["inputs"].items():
        lines.append(f"input {k}: sha256 {v}")
    lines.append(f"bounds: {report['bounds']}")
    lines.append(f"time: {report['timing_s']:.3f}s")
    if report.get("error"):
        lines.append(f"error: {report['error']}")
    return "\n".join(lines) + "\n"


def exit_code(report) -> int:
    if report.get("error_kind") == "invalid":
        return EXIT_INVALID
    if report.get("error_kind") == "bound":
        return EXIT_BOUND
    return EXIT_OK if all(report["verdicts"].values()) else EXIT_FALSE


def run_command(argv):
    """Returns (exit code, report dict)."""
    return execute(build_parser().parse_args(argv))


def execute(args):
    run = Run(args)
    report = {"command": args.command, "inputs": {}, "verdicts": run.verdicts, "counts": run.counts,
              "details": run.details,
              "bounds": {"max_candidates": args.max_candidates,
                         "certification_skipped": args.skip_certify}}
    start = time.perf_counter()
    try:
        for path in args.paths:
            if Path(path).is_file():
                report["inputs"][path] = serialize.file_hash(path)
        with candidate_limit(args.max_candidates):
            COMMANDS[args.command](run, args)
    except BoundExceeded as exc:
        report["error"], report["error_kind"] = str(exc), "bound"
    except CertificationFailure as exc:
        report["error"] = f"certification failure: {exc}"
        run.verdicts["certification"] = False
    except SemfactError as exc:
        report["error"], report["error_kind"] = f"{type(exc).__name__}: {exc}", "invalid"
    report["timing_s"] = time.perf_counter() - start
    code = exit_code(report)
    report["exit_code"] = code
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, doc in run.files.items():
            (out / name).write_text(serialize.dumps(doc), encoding="utf-8")
        (out / "report.json").write_text(serialize.dumps(_jsonable(report)), encoding="utf-8")
    return code, report


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return repr(x)


def main(argv=None):
    args = build_parser().parse_args(argv)
    code, report = execute(args)
    if args.format == "json":
        sys.stdout.write(serialize.dumps(_jsonable(report)))
    else:
        sys.stdout.write(_render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
