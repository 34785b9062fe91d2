"""fiax check <spec.toml> [--suite ...] [--field ...] [--seed N] [--json PATH] [--verbose]"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from . import kernels
from .algebra import Algebra, DegenerateTraceForm, ParseError
from .fields import Field, FieldError
from .report import Report
from .suites import SUITES, parse_selection, run_suites

BUILTINS = ("dual_numbers", "kx3", "fp_cp", "brauer_line_n2", "a2_path")


def builtin_text(name):
    return resources.files("fiax").joinpath("data", name + ".toml").read_text()


def resolve_spec(spec):
    """(display name, toml text) for a path or a builtin name."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return os.path.basename(spec), fh.read()
    stem = spec[:-5] if spec.endswith(".toml") else spec
    stem = os.path.basename(stem)
    if stem in BUILTINS:
        return stem + ".toml", builtin_text(stem)
    raise FileNotFoundError("no such spec file or builtin: %s" % spec)


def load_algebra(text, field=None):
    return Algebra.parse(text, field=Field.parse(field) if field else None)


def _worker(args):
    text, field, suite, seed = args
    return run_suites(load_algebra(text, field), [suite], seed=seed).records


def run(spec, suites="all", field=None, seed=0, jobs=1):
    """Build D_A for `spec` and run the selected suites; returns (Report, meta)."""
    name, text = resolve_spec(spec)
    names = parse_selection(suites)
    alg = load_algebra(text, field)
    meta = {"spec": name, "algebra": alg.name, "field": "rational" if alg.field.p == 0 else "p=%d" % alg.field.p,
            "seed": seed, "suites": names}
    alg.dual_basis()        # reject degenerate trace forms before any suite runs
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_worker, [(text, field, n, seed) for n in names]))
        rep = Report()
        for p in parts:
            rep.extend(p)
    else:
        rep = run_suites(alg, names, seed=seed)
    return rep, meta


def exit_code(rep):
    """Nonzero iff a check that is not a negative control failed."""
    return 1 if any(r.status == "fail" and not r.negative_control for r in rep) else 0


def build_parser():
    p = argparse.ArgumentParser(prog="fiax", description="Exact checks for bilax-unital D_A.")
    sub = p.add_subparsers(dest="cmd", required=True)
    c = sub.add_parser("check", help="run verification suites on an algebra spec")
    c.add_argument("spec", help="path to a spec .toml or a builtin name (%s)" % ", ".join(BUILTINS))
    c.add_argument("--suite", default="all",
                   help="comma-separated suites: %s, all" % ", ".join(SUITES))
    c.add_argument("--field", default=None, help="rational or p=<prime>")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", dest="json_path", default=None, metavar="PATH")
    c.add_argument("--verbose", action="store_true")
    c.add_argument("--jobs", type=int, default=1, help="run suites in N worker processes")
    sub.add_parser("builtins", help="list builtin specs")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.cmd == "builtins":
        print("\n".join(BUILTINS))
        return 0
    try:
        rep, meta = run(args.spec, args.suite, args.field, args.seed, args.jobs)
    except (ParseError, FieldError, DegenerateTraceForm, FileNotFoundError, ValueError) as e:
        print("fiax: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 2
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(rep.to_json(meta))
    print(rep.to_text(verbose=args.verbose))
    if args.verbose:
        print("kernels: %s" % kernels.BACKEND)
    return exit_code(rep)


if __name__ == "__main__":
    sys.exit(main())
