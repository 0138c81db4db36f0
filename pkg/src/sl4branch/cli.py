"""Command-line entry point: ``sl4branch {info,series,molien,verify}``.

Every stage failure maps to its own exit code (see ``EXIT_CODES``); a run
exits 0 only when every enabled check passed.  Output bytes depend only on
the arguments, never on timing or ``--threads``.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
import json
import logging
import os
import sys

from . import __version__
from .branching import (BranchingError, PIPELINE_VERSION, T_, U_, W_, compute_series,
                        extract_multiplicities, molien_series)
from .chartab import CharacterTableError, dixon_character_table, load_table
from .exactnum import ScalarParseError, format_scalar, parse_scalar
from .matgroup import (BUILTIN_GROUPS, GroupError, GroupInputError, builtin_group, load_group,
                       natural_character)
from .oracle import (MultiplicityTable, OracleError, cg_dimension_identity, cg_table,
                     key_relation_check, schur_table, triples, weyl_dim)
from .polyrat import VARS, equal, format_poly, simplify_scalar
from .tensorrep import TensorMatrixError, build_tensor_matrices, structural_checks

log = logging.getLogger("sl4branch")

SCHEMA = "sl4branch-report/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_GROUP = 4
EXIT_TABLE = 5
EXIT_TENSOR = 6
EXIT_SERIES = 7
EXIT_ORACLE = 8
EXIT_IO = 9

EXIT_CODES = {
    EXIT_OK: "all enabled checks passed",
    EXIT_CHECK_FAILED: "a verification check failed",
    EXIT_USAGE: "bad command-line arguments",
    EXIT_INPUT: "unreadable or malformed group file or scalar",
    EXIT_GROUP: "invalid generators or group enumeration failure",
    EXIT_TABLE: "character table invalid or inconsistent with the group",
    EXIT_TENSOR: "tensor matrices violate a structural property",
    EXIT_SERIES: "series pipeline produced a non-rational or negative coefficient",
    EXIT_ORACLE: "an oracle produced an impossible multiplicity",
    EXIT_IO: "output could not be written",
}


class UsageError(Exception):
    pass


def _error_code(exc):
    # order matters: GroupInputError is a GroupError, ScalarParseError a ValueError
    for cls, code in ((GroupInputError, EXIT_INPUT), (ScalarParseError, EXIT_INPUT),
                      (GroupError, EXIT_GROUP), (CharacterTableError, EXIT_TABLE),
                      (TensorMatrixError, EXIT_TENSOR), (BranchingError, EXIT_SERIES),
                      (OracleError, EXIT_ORACLE), (OSError, EXIT_IO)):
        if isinstance(exc, cls):
            return code
    return None


class StageFailure(Exception):
    def __init__(self, stage, exc):
        super().__init__(f"{stage}: {exc}")
        self.stage = stage
        self.code = _error_code(exc)
        self.cause = exc


# -- report assembly ----------------------------------------------------------

class Report:
    def __init__(self, command):
        self.command = command
        self.doc = {"schema": SCHEMA, "version": __version__,
                    "pipeline_version": PIPELINE_VERSION, "command": command}
        self.checks = []
        self.error = None

    def check(self, name, passed, detail=""):
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})
        return passed

    @property
    def passed(self):
        return self.error is None and all(c["passed"] for c in self.checks)

    def exit_code(self):
        if self.error is not None:
            return self.error.code or EXIT_CHECK_FAILED
        return EXIT_OK if self.passed else EXIT_CHECK_FAILED

    def finish(self):
        self.doc["checks"] = self.checks
        if self.error is not None:
            self.doc["error"] = {"stage": self.error.stage, "exit_code": self.exit_code(),
                                 "message": str(self.error.cause)}
        self.doc["passed"] = self.passed
        self.doc["exit_code"] = self.exit_code()
        return self.doc


def _stage(stage, fn, /, *args, **kwargs):
    log.info("running %s", stage)
    try:
        return fn(*args, **kwargs)
    except (GroupError, ScalarParseError, CharacterTableError, TensorMatrixError,
            BranchingError, OracleError, OSError) as exc:
        raise StageFailure(stage, exc) from exc


def _group_doc(G):
    return {
        "name": G.name,
        "order": G.order,
        "num_classes": G.num_classes,
        "class_sizes": list(G.class_sizes),
        "element_orders": [G.class_order(j) for j in range(G.num_classes)],
        "exponent": G.exponent,
        "natural_character": [format_scalar(x) for x in natural_character(G)],
    }


def _table_doc(T):
    return {
        "degrees": list(T.degrees),
        "rows": [[format_scalar(x) for x in row] for row in T.table],
    }


def _matrices_doc(M):
    return {
        "A1": [list(r) for r in M.A1],
        "A2": [list(r) for r in M.A2],
        "A3": [list(r) for r in M.A3],
        "eigenvalues": {
            "A1": [format_scalar(x) for x in M.L1],
            "A2": [format_scalar(x) for x in M.L2],
            "A3": [format_scalar(x) for x in M.L3],
        },
    }


def _ratfun_doc(R):
    return {
        "numerator": format_poly(R.num),
        "denominator": str(R.den),
        "denominator_factors": [{"factor": str(f), "multiplicity": m}
                                for f, m in R.den.sorted_items()],
    }


# -- pipeline -----------------------------------------------------------------

def _load_group(source):
    if source in BUILTIN_GROUPS:
        return _stage("group", builtin_group, source)
    if os.path.exists(source):
        return _stage("group", load_group, source)
    raise UsageError(f"--group {source!r} is neither a built-in group "
                     f"({', '.join(BUILTIN_GROUPS)}) nor an existing file")


def _load_table(args, G, report):
    if args.table:
        T = _stage("character table", load_table, args.table, G)
        source = args.table
    else:
        T = _stage("character table", dixon_character_table, G)
        source = "dixon"
    report.check("character table orthogonality and degrees", True, f"source: {source}")
    return T


def _parse_assignment(text):
    out = {}
    for part in text.split(","):
        name, sep, value = part.partition("=")
        name = name.strip()
        if not sep or name not in VARS:
            raise UsageError(f"bad --specialize entry {part!r}; expected t|u|w=value")
        try:
            out[VARS.index(name)] = simplify_scalar(parse_scalar(value))
        except ScalarParseError as exc:
            raise UsageError(f"bad --specialize value {value!r}: {exc}") from None
    return out


def _oracle_tables(T, G, M, N, threads):
    """(cg_table, schur_table), computed concurrently when threads > 1."""
    if threads > 1:
        with ProcessPoolExecutor(max_workers=min(threads, 2)) as pool:
            schur = pool.submit(schur_table, T, G, N)
            cg = pool.submit(cg_table, M, N)
            return cg.result(), schur.result()
    return cg_table(M, N), schur_table(T, G, N)


def _verify_tables(report, ext, cg, schur, degrees, N):
    keys = list(triples(N))
    if cg is not None:
        bad = [k for k in keys if cg[k] != ext[k]]
        report.check(f"cg_recurrence agrees with series up to degree {N}", not bad,
                     f"first mismatch at {bad[0]}" if bad else f"{len(keys)} triples")
    if schur is not None:
        bad = [k for k in keys if schur[k] != ext[k]]
        report.check(f"schur_character agrees with series up to degree {N}", not bad,
                     f"first mismatch at {bad[0]}" if bad else f"{len(keys)} triples")
    bad = [k for k in keys if sum(m * d for m, d in zip(ext[k], degrees)) != weyl_dim(*k)]
    report.check(f"dimension conservation up to degree {N}", not bad,
                 f"fails at {bad[0]}" if bad else f"{len(keys)} triples")


def _run_series(args, report, full_verify=False):
    N = args.check_degree
    G = _load_group(args.group)
    report.doc["group"] = _group_doc(G)
    T = _load_table(args, G, report)
    report.doc["character_table"] = _table_doc(T)
    M = _stage("tensor matrices", build_tensor_matrices, T, G)
    report.check("tensor matrix structure (transpose, symmetry, commutation, eigenvectors)",
                 not structural_checks(M, T))
    report.doc["tensor_matrices"] = _matrices_doc(M)

    S = _stage("series", compute_series, T, M, G, check_degree=N, name=G.name)
    report.check(f"series coefficients are nonnegative integers up to degree {N}", True)
    report.doc["series"] = {
        "variables": list(VARS),
        "checked_degree": N,
        "common_denominator": str(S.common_denominator),
        "coordinates": [dict(irrep=lab, degree=d, **_ratfun_doc(c))
                        for lab, d, c in zip(S.irrep_order, S.degrees, S.coords)],
    }
    ext = extract_multiplicities(S, N)

    if not args.no_oracles:
        cg, schur = _stage("oracles", _oracle_tables, T, G, M, N, args.threads)
        _verify_tables(report, ext, cg, schur, T.degrees, N)
    if not args.no_key_relation:
        table = MultiplicityTable(N, ext, "series")
        kr = _stage("key relation", key_relation_check, M, table)
        report.check(f"key relation up to degree {N}", kr.passed,
                     "; ".join(line.strip() for line in kr.lines()[1:]) or f"{kr.checked} monomials")

    if args.specialize:
        assignment = _parse_assignment(args.specialize)
        special = [c.subs(assignment) for c in S.coords]
        report.doc["specialization"] = {
            "assignment": {VARS[k]: str(v) for k, v in sorted(assignment.items())},
            "coordinates": [dict(irrep=lab, **_ratfun_doc(c))
                            for lab, c in zip(S.irrep_order, special)],
        }
        zeros = [k for k, v in assignment.items() if v == 0]
        if len(assignment) == 2 and len(zeros) == 2:
            free = ({T_, U_, W_} - set(zeros)).pop()
            if free != U_:
                mol = molien_series(G)
                report.check("invariant coordinate equals the Molien series",
                             equal(special[0].rename({free: T_}), mol))

    if full_verify:
        mol = molien_series(G)
        p_t = S.coords[0].subs({U_: 0, W_: 0})
        p_w = S.coords[0].subs({T_: 0, U_: 0}).rename({W_: T_})
        report.check("P(t,0,0)_0 equals the Molien series", equal(p_t, mol))
        report.check("P(0,0,t)_0 equals P(t,0,0)_0", equal(p_w, p_t))
        bad = [(p, q, r) for p in range(7) for q in range(7) for r in range(7)
               if not cg_dimension_identity(p, q, r)]
        report.check("Clebsch-Gordan dimension identity for p,q,r <= 6", not bad,
                     f"fails at {bad[0]}" if bad else "")
    return G, T, M, S


def cmd_info(args, report):
    G = _load_group(args.group)
    report.doc["group"] = _group_doc(G)
    if args.table:
        T = _stage("character table", load_table, args.table, G)
        report.check("character table consistent with group", True)
        report.doc["character_table"] = _table_doc(T)


def cmd_series(args, report):
    _run_series(args, report)


def cmd_molien(args, report):
    G = _load_group(args.group)
    report.doc["group"] = _group_doc(G)
    mol = _stage("molien", molien_series, G)
    report.doc["molien"] = _ratfun_doc(mol)
    if args.compare:
        args.no_oracles = args.no_key_relation = True
        args.specialize = None
        _, _, _, S = _run_series(args, report)
        report.check("Molien series equals P(t,0,0)_0",
                     equal(mol, S.coords[0].subs({U_: 0, W_: 0})))


def cmd_verify(args, report):
    _run_series(args, report, full_verify=True)


COMMANDS = {"info": cmd_info, "series": cmd_series, "molien": cmd_molien, "verify": cmd_verify}


# -- rendering ----------------------------------------------------------------

def render_text(doc):
    lines = [f"sl4branch {doc['version']} {doc['command']}"]
    g = doc.get("group")
    if g:
        lines += [
            f"group {g['name']}: order {g['order']}, {g['num_classes']} classes, "
            f"exponent {g['exponent']}",
            "class sizes: " + " ".join(map(str, g["class_sizes"])),
            "element orders: " + " ".join(map(str, g["element_orders"])),
            "natural character: " + " ; ".join(g["natural_character"]),
        ]
    t = doc.get("character_table")
    if t:
        lines.append("character table (degrees " + " ".join(map(str, t["degrees"])) + "):")
        lines += ["  " + " ; ".join(row) for row in t["rows"]]
    m = doc.get("tensor_matrices")
    if m:
        for name in ("A1", "A2", "A3"):
            lines.append(f"{name}:")
            width = max(len(str(x)) for row in m[name] for x in row)
            lines += ["  " + " ".join(str(x).rjust(width) for x in row) for row in m[name]]
            lines.append("  eigenvalues: " + " ; ".join(m["eigenvalues"][name]))
    s = doc.get("series")
    if s:
        lines.append(f"common denominator: {s['common_denominator']}")
        for c in s["coordinates"]:
            lines.append(f"P[{c['irrep']}] (degree {c['degree']}) = "
                         f"({c['numerator']}) / ({c['denominator']})")
    sp = doc.get("specialization")
    if sp:
        assign = ", ".join(f"{k}={v}" for k, v in sp["assignment"].items())
        for c in sp["coordinates"]:
            lines.append(f"P[{c['irrep']}]({assign}) = "
                         f"({c['numerator']}) / ({c['denominator']})")
    mol = doc.get("molien")
    if mol:
        lines.append(f"Molien series: ({mol['numerator']}) / ({mol['denominator']})")
    if doc["checks"]:
        lines.append("checks:")
        for c in doc["checks"]:
            tag = "PASS" if c["passed"] else "FAIL"
            lines.append(f"  [{tag}] {c['name']}" + (f": {c['detail']}" if c["detail"] else ""))
    if "error" in doc:
        e = doc["error"]
        lines.append(f"error in {e['stage']} (exit {e['exit_code']}): {e['message']}")
    lines.append("result: " + ("PASS" if doc["passed"] else "FAIL"))
    return "\n".join(lines) + "\n"


def render(doc, fmt):
    if fmt == "json-like":
        return json.dumps(doc, indent=2) + "\n"
    return render_text(doc)


# -- argument parsing ---------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="sl4branch",
        description="Branching multiplicity series of SL_4 irreducibles over finite subgroups.",
        epilog="exit codes: " + "; ".join(f"{k} {v}" for k, v in EXIT_CODES.items()))
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pipeline=True):
        p.add_argument("--group", required=True,
                       help=f"built-in name ({', '.join(BUILTIN_GROUPS)}) or generator file")
        p.add_argument("--table", help="character-table file replacing the Dixon computation")
        p.add_argument("--format", choices=("text", "json-like"), default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
        if pipeline:
            p.add_argument("--check-degree", type=int, default=5, metavar="N",
                           help="verify multiplicities for p+q+r <= N (default 5)")
            p.add_argument("--no-oracles", action="store_true",
                           help="skip the recurrence and Schur oracles")
            p.add_argument("--no-key-relation", action="store_true",
                           help="skip the key-relation check")
            p.add_argument("--threads", type=int, default=1, metavar="K",
                           help="worker processes for the oracles (output is identical)")

    p = sub.add_parser("info", help="group summary")
    common(p, pipeline=False)
    p = sub.add_parser("series", help="full branching series with verification")
    common(p)
    p.add_argument("--specialize", metavar="ASSIGN",
                   help="substitute values, e.g. u=0,w=0")
    p = sub.add_parser("molien", help="Molien series of the natural representation")
    common(p)
    p.add_argument("--compare", action="store_true",
                   help="also run the series pipeline and compare at u=w=0")
    p = sub.add_parser("verify", help="run every check and report")
    common(p)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "check_degree", 0) < 0:
        parser.error("--check-degree must be >= 0")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    if not hasattr(args, "specialize"):
        args.specialize = None

    report = Report(args.command)
    try:
        COMMANDS[args.command](args, report)
    except UsageError as exc:
        parser.error(str(exc))
    except StageFailure as exc:
        report.error = exc
        print(f"sl4branch: error: {exc}", file=sys.stderr)
    text = render(report.finish(), args.format)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"sl4branch: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
