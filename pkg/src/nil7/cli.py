"""Command-line interface.

Subcommands: classify, betti, iso, enumerate, table, selftest.  Reports
go to standard output (JSON by default, aligned text with --format
text); all errors go to standard error.  Generator indices are 1-based
throughout, matching the x1..x7 notation of the reference tables.

Exit codes: 0 success, 1 validation error (bad JSON, bad flags, bad
field), 2 classification error state (not flat, wrong dimension or
filtration length, exhausted point search), 3 internal assertion
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import (
    DEFAULT_HEIGHT_BOUND,
    classify,
    enumerate_classes,
    is_isomorphic,
)
from .cohomology import betti_numbers, verify_real_table
from .errors import (
    AlgebraError,
    CertificateError,
    ClassificationError,
    FieldError,
    FormError,
    InputError,
    LinAlgError,
    Nil7Error,
    NotFlatError,
    NotMinimalError,
    PointSearchExceeded,
    WrongDimension,
)
from .fields import field_from_name
from .liealg import presentation_from_json
from .models import REAL_TABLE, SHAPES, shape_label, shape_signature

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CLASSIFICATION = 2
EXIT_INTERNAL = 3

_STATE_ERRORS = (
    NotFlatError,
    NotMinimalError,
    WrongDimension,
    PointSearchExceeded,
)
_VALIDATION_ERRORS = (InputError, FieldError, FormError, AlgebraError)


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, _STATE_ERRORS):
        return EXIT_CLASSIFICATION
    if isinstance(exc, _VALIDATION_ERRORS):
        return EXIT_VALIDATION
    if isinstance(exc, (ClassificationError, CertificateError, LinAlgError)):
        return EXIT_INTERNAL
    if isinstance(exc, Nil7Error):
        return EXIT_INTERNAL
    return EXIT_INTERNAL


def _emit(data: dict, fmt: str, text_renderer) -> None:
    if fmt == "json":
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        text_renderer(data)


def _load_presentation(args, json_attr="json", input_attr="input"):
    raw = getattr(args, json_attr, None)
    path = getattr(args, input_attr, None)
    if (raw is None) == (path is None):
        raise InputError("provide exactly one of --input FILE or --json STR")
    if path is not None:
        try:
            with open(path) as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError("cannot read %s: %s" % (path, exc)) from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(
            "invalid JSON at line %d column %d: %s"
            % (exc.lineno, exc.colno, exc.msg)
        ) from exc
    if getattr(args, "field", None):
        if not isinstance(data, dict):
            raise InputError("input must be a JSON object")
        data = dict(data)
        data["field"] = args.field
        if args.p is not None:
            data["p"] = args.p
        else:
            data.pop("p", None)
    return presentation_from_json(data)


# -- classify --------------------------------------------------------

def _cmd_classify(args) -> int:
    alg = _load_presentation(args)
    report = classify(
        alg, with_certificate=not args.no_certificate,
        height_bound=args.height_bound,
    )
    _emit(report.to_json(), args.format, _render_classify)
    return EXIT_OK


def _render_classify(data: dict) -> None:
    canon = data["canonical"]
    print("signature : (%d,%d)" % tuple(data["signature"]))
    print("row       : %s" % canon["tag"])
    print("label     : %s" % canon["label"])
    if canon["params"]:
        print("params    : %s" % ", ".join(
            "%s = %s" % (k, v) for k, v in sorted(canon["params"].items())
        ))
    if canon["quaternion"]:
        q = canon["quaternion"]
        print("quaternion: %s" % (
            "split" if q["split"] else "ramified at " + ", ".join(q["ramified"])
        ))
    for k in sorted(canon["differentials"], key=int):
        print("  dx%s = %s" % (k, canon["differentials"][k]))
    cert = data.get("certificate")
    if cert is None:
        print("certificate: skipped")
    elif cert["status"] == "base":
        print("certificate: verified basis change over the ground field")
        if "extension" in cert:
            print("extension witness: split model %s over k(sqrt(%s))" % (
                cert["extension"]["split_tag"], cert["extension"]["a"]
            ))
    else:
        print("certificate: omitted (%s)" % cert["reason"])
    for step in data["trace"]:
        print("trace: %s %s" % (step["branch"], step["witness"]))


# -- betti -----------------------------------------------------------

def _cmd_betti(args) -> int:
    alg = _load_presentation(args)
    b = betti_numbers(alg)
    out: dict = {
        "betti": b,
        "euler": sum((-1) ** k * x for k, x in enumerate(b)),
        "duality_ok": all(b[k] == b[alg.n - k] for k in range(alg.n + 1)),
    }
    row = None
    try:
        tag = classify(alg, with_certificate=False,
                       height_bound=args.height_bound).canonical.tag
        for r in REAL_TABLE:
            if r["tag"] == tag:
                row = {
                    "tag": tag,
                    "label": shape_label(tag),
                    "table_b123": list(r["betti"]),
                    "match": tuple(b[1:4]) == r["betti"],
                }
                break
    except Nil7Error:
        pass
    out["table_row"] = row
    _emit(out, args.format, _render_betti)
    return EXIT_OK


def _render_betti(data: dict) -> None:
    print("betti   : " + " ".join(str(x) for x in data["betti"]))
    print("euler   : %d" % data["euler"])
    print("duality : %s" % ("ok" if data["duality_ok"] else "BROKEN"))
    row = data["table_row"]
    if row:
        print("row     : %s (%s), table b1..b3 = %s, %s" % (
            row["tag"], row["label"],
            " ".join(str(x) for x in row["table_b123"]),
            "match" if row["match"] else "MISMATCH",
        ))


# -- iso -------------------------------------------------------------

def _cmd_iso(args) -> int:
    a = _load_presentation(args, "json", "input")
    b = _load_presentation(args, "json2", "input2")
    ra = classify(a, with_certificate=False, height_bound=args.height_bound)
    rb = classify(b, with_certificate=False, height_bound=args.height_bound)
    out = {
        "isomorphic": ra.canonical == rb.canonical,
        "first": ra.canonical.to_json(),
        "second": rb.canonical.to_json(),
    }
    _emit(out, args.format, _render_iso)
    return EXIT_OK


def _render_iso(data: dict) -> None:
    print("isomorphic: %s" % ("yes" if data["isomorphic"] else "no"))
    for key in ("first", "second"):
        c = data[key]
        print("%-6s: %s (%s)" % (key, c["tag"], c["label"]))


# -- enumerate -------------------------------------------------------

def _cmd_enumerate(args) -> int:
    field = field_from_name(args.field or "Q", args.p)
    classes = enumerate_classes(
        field, samples=args.samples, seed=args.seed,
        height_bound=args.height_bound,
    )
    items = sorted(
        (c.to_json() for c in classes),
        key=lambda d: (d["tag"], json.dumps(d["params"], sort_keys=True)),
    )
    out = {
        "field": field.descriptor(),
        "samples": args.samples,
        "seed": args.seed,
        "count": len(items),
        "classes": items,
    }
    _emit(out, args.format, _render_enumerate)
    return EXIT_OK


def _render_enumerate(data: dict) -> None:
    print("field  : %s" % json.dumps(data["field"], sort_keys=True))
    print("count  : %d" % data["count"])
    for c in data["classes"]:
        extra = ""
        if c["params"]:
            extra = "  [%s]" % ", ".join(
                "%s=%s" % (k, v) for k, v in sorted(c["params"].items())
            )
        print("  %-26s %s%s" % (c["tag"], c["label"], extra))


# -- table -----------------------------------------------------------

def _cmd_table(args) -> int:
    rows = []
    report = {r["tag"]: r for r in verify_real_table()}
    for tag in SHAPES:
        sig = shape_signature(tag)
        _, templates, label = SHAPES[tag]
        r = report[tag]
        rows.append({
            "tag": tag,
            "signature": list(sig),
            "dx5": templates[0],
            "dx6": templates[1],
            "dx7": templates[2],
            "label": label,
            "betti_b123": list(r["computed"]),
            "betti_expected": list(r["expected"]),
            "betti_match": r["ok"],
            "sum_computed": r["sum_computed"],
            "sum_printed": r["sum_printed"],
        })
    out = {"rows": rows, "all_match": all(r["betti_match"] for r in rows)}
    _emit(out, args.format, _render_table)
    return EXIT_OK


def _render_table(data: dict) -> None:
    hdr = "%-5s %-22s %-22s %-22s %-9s %-9s %-8s %s"
    print(hdr % ("(f0,f1)", "dx5", "dx6", "dx7", "b1 b2 b3", "table", "sum/ref", "label"))
    for r in data["rows"]:
        print(hdr % (
            "(%d,%d)" % tuple(r["signature"]),
            r["dx5"], r["dx6"], r["dx7"],
            " ".join(str(x) for x in r["betti_b123"]),
            " ".join(str(x) for x in r["betti_expected"])
            + ("" if r["betti_match"] else " !!"),
            "%d/%d" % (r["sum_computed"], r["sum_printed"]),
            r["label"],
        ))
    print("betti columns match: %s" % data["all_match"])


# -- selftest --------------------------------------------------------

def _cmd_selftest(args) -> int:
    import random as _random
    import time

    from .fields import PrimeField, Rationals, RealsModel, AlgClosedModel
    from .liealg import apply_basis_change, check_flatness, random_presentation
    from .linalg import Matrix
    from .models import canonical_presentation, PARAMETRIC_A, PARAMETRIC_AB
    from .quadform import hilbert_symbol, INF

    failures = []

    def check(name, ok, detail=""):
        print("[%s] %s%s" % ("pass" if ok else "FAIL", name,
                             " (%s)" % detail if detail else ""))
        if not ok:
            failures.append(name)

    t0 = time.time()
    report = verify_real_table()
    check("table-2 betti rows", all(r["ok"] for r in report),
          "%d/16 in %.2fs" % (sum(r["ok"] for r in report), time.time() - t0))

    counts = {"Qbar": (AlgClosedModel(), 13), "R": (RealsModel(), 16),
              "F3": (PrimeField(3), 15), "F5": (PrimeField(5), 15)}
    for name, (field, want) in counts.items():
        t0 = time.time()
        got = len(enumerate_classes(field, samples=args.samples, seed=args.seed))
        check("class count %s" % name, got == want,
              "%d classes in %.2fs" % (got, time.time() - t0))

    rng = _random.Random(args.seed)
    t0 = time.time()
    trials = bad = 0
    for fname, field in (("Q", Rationals()), ("F5", PrimeField(5)),
                         ("R", RealsModel())):
        for tag in SHAPES:
            if tag in PARAMETRIC_A:
                params = {"a": 2 if fname == "F5" else -1}
            elif tag in PARAMETRIC_AB:
                if fname == "F5":
                    continue
                params = {"a": -1, "b": -1}
            else:
                params = {}
            base = canonical_presentation(tag, field, params)
            want = classify(base, with_certificate=False).canonical
            for _ in range(3):
                while True:
                    P = Matrix(field, [
                        [field.coerce(rng.randint(-3, 3)) for _ in range(7)]
                        for _ in range(7)
                    ])
                    try:
                        P.inverse()
                        break
                    except LinAlgError:
                        continue
                trials += 1
                rep = classify(apply_basis_change(base, P))
                if rep.canonical != want:
                    bad += 1
    check("basis-change invariance", bad == 0,
          "%d trials in %.2fs" % (trials, time.time() - t0))

    t0 = time.time()
    n_flat = 0
    for i in range(50):
        alg = random_presentation((6, 1, 5, 2, 4, 3)[2 * (i % 3)],
                                  (6, 1, 5, 2, 4, 3)[2 * (i % 3) + 1],
                                  args.seed + i, Rationals())
        b = betti_numbers(alg)
        if all(b[k] == b[7 - k] for k in range(8)) and check_flatness(alg):
            n_flat += 1
    check("duality on random presentations", n_flat == 50,
          "%.2fs" % (time.time() - t0))

    check("hilbert anchors",
          hilbert_symbol(-1, -1, INF) == -1
          and hilbert_symbol(3, 49, 7) == 1
          and hilbert_symbol(5, 4, 5) == 1)

    print("selftest: %s" % ("all passed" if not failures
                            else "%d failures" % len(failures)))
    return EXIT_OK if not failures else EXIT_INTERNAL


# -- argument plumbing ------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nil7",
        description="Classification of 7-dimensional 2-step nilpotent "
                    "Lie algebras over Q, F_p, R, and the algebraic closure.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        p.add_argument("--field", choices=["Q", "Fp", "R", "Qbar"],
                       help="ground field (overrides the input descriptor)")
        p.add_argument("--p", type=int, default=None,
                       help="odd prime for --field Fp")
        if with_input:
            p.add_argument("--input", help="path to a presentation JSON file")
            p.add_argument("--json", help="inline presentation JSON")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=10000)
        p.add_argument("--height-bound", type=int, default=DEFAULT_HEIGHT_BOUND)
        p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("classify", help="canonical model of a presentation")
    common(p)
    p.add_argument("--no-certificate", action="store_true",
                   help="skip the isomorphism certificate")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("betti", help="Betti numbers of a presentation")
    common(p)
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("iso", help="decide isomorphism of two presentations")
    common(p)
    p.add_argument("--input2", help="path to the second presentation")
    p.add_argument("--json2", help="inline second presentation JSON")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("enumerate", help="isomorphism classes over a field")
    common(p, with_input=False)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("table", help="reproduce the model and Betti tables")
    common(p, with_input=False)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    common(p, with_input=False)
    p.set_defaults(func=_cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code else EXIT_OK
    try:
        return args.func(args)
    except Exception as exc:  # map to documented exit codes
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return _exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
