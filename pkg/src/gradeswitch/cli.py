"""Command-line front end: identity suites, coefficient-table experiments,
grading switches on built-in or JSON-supplied algebras, and the toral
comparison demo.

Reports are text (default) or JSON.  The JSON document carries a
versioned ``schema`` field and no timestamps, so repeating a command with
the same seed produces byte-identical output.  Exit codes: 0 when every
check passes, 1 when a mathematical hypothesis or verification fails, 2
for usage and configuration errors.
"""

import argparse
import json
import random
import sys
from multiprocessing import Pool

from .fields import GF, is_prime
from .galg import GradedAlgebra, LinearMap, _coeff_parse, direct_sum, \
    truncated_poly, truncated_poly_derivation, witt
from .laguerre import c_coefficients, check_all_identities, \
    check_lemma_forms, check_lemma_product_identity, in_prime_star, \
    strade_operator_form_check, zero_pair_closed_form
from .switch import HypothesisError, VerificationError, switch_grading
from .toral import RestrictedLie, compare_switch_to_toral

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


def _digits(x):
    return list(x.coeffs)


def _check_prime(p, cap):
    if not is_prime(p):
        raise ValueError("p = %d is not prime" % p)
    if p > cap:
        raise ValueError("p = %d exceeds the cap %d (raise --p-cap)"
                         % (p, cap))


# ---------------------------------------------------------------------------
# identities


def cmd_identities(args):
    ps = [args.p] if args.p else [q for q in DEFAULT_PRIMES if q <= args.p_cap]
    results = []
    for p in ps:
        _check_prime(p, args.p_cap)
        reports = list(check_all_identities(p))
        reports.append(check_lemma_forms(p))
        reports.append(check_lemma_product_identity(p))
        results.extend({"p": p, **rep.to_dict()} for rep in reports)
    verdict = "pass" if all(r["passed"] for r in results) else "fail"
    return {"results": results, "verdict": verdict}


# ---------------------------------------------------------------------------
# coefficient tables


def _draw_pairs(field, trials, seed):
    """`trials` admissible (a, b), deterministically from the seed."""
    rng = random.Random(seed)
    q = field.p ** field.n
    out = []
    while len(out) < trials:
        a = field.from_int(rng.randrange(q))
        b = field.from_int(rng.randrange(q))
        if in_prime_star(a + b):
            continue
        out.append((a, b))
    return out


def _coeffs_trial(task):
    # module-level so worker processes can unpickle it
    p, n, modulus, ea, eb = task
    field = GF(p, n, tuple(modulus))
    a, b = field.from_int(ea), field.from_int(eb)
    tab = c_coefficients(p, a, b)
    return {"a": _digits(a), "b": _digits(b),
            "c_values": [_digits(v) for v in tab.values()],
            "passed": True}


def cmd_coeffs(args):
    p = args.p
    _check_prime(p, args.p_cap)
    if args.trials < 1:
        raise ValueError("trials must be >= 1")
    if args.field_degree < 1:
        raise ValueError("field degree must be >= 1")
    if args.jobs < 1:
        raise ValueError("jobs must be >= 1")
    field = GF(p, args.field_degree)
    pairs = _draw_pairs(field, args.trials, args.seed)
    tasks = [(p, field.n, list(field.modulus), int(a), int(b))
             for a, b in pairs]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            rows = pool.map(_coeffs_trial, tasks)
    else:
        rows = [_coeffs_trial(t) for t in tasks]
    results = [{"trial": i, **row} for i, row in enumerate(rows)]

    zero_tab = c_coefficients(p, field.zero, field.zero)
    closed = zero_pair_closed_form(p, field)
    results.append({
        "trial": "zero_pair",
        "c_values": [_digits(v) for v in zero_tab.values()],
        "closed_form": [_digits(v) for v in closed],
        "passed": zero_tab.values() == closed,
    })
    verdict = "pass" if all(r["passed"] for r in results) else "fail"
    return {"results": results, "verdict": verdict}


# ---------------------------------------------------------------------------
# algebra and derivation plumbing


def _parse_builtin(spec):
    algs = []
    for part in spec.split("+"):
        bits = part.split(":")
        if bits[0] == "witt" and len(bits) == 2:
            algs.append(witt(int(bits[1])))
        elif bits[0] == "tpoly" and len(bits) == 4:
            algs.append(truncated_poly(int(bits[1]), int(bits[2]),
                                       int(bits[3])))
        else:
            raise ValueError("unknown builtin %r (use witt:P or "
                             "tpoly:P:LEN:M, joined with +)" % part)
    acc = algs[0]
    for other in algs[1:]:
        acc = direct_sum(acc, other)
    return acc


def _load_algebra(args):
    if args.builtin and args.input:
        raise ValueError("give either --builtin or --input, not both")
    if args.builtin:
        return _parse_builtin(args.builtin), None
    if args.input:
        with open(args.input) as fh:
            obj = json.load(fh)
        if not isinstance(obj, dict):
            raise ValueError("algebra JSON must be an object")
        alg = GradedAlgebra.from_json(obj.get("algebra", obj))
        return alg, obj.get("derivation")
    raise ValueError("an algebra is required: --builtin or --input")


def _parse_derivation(A, spec, json_rows):
    if spec is None:
        spec = "json" if json_rows is not None else None
    if spec is None:
        raise ValueError("a derivation is required: --derivation")
    if spec == "json":
        if json_rows is None:
            raise ValueError("input file carries no derivation matrix")
        rows = [[_coeff_parse(A.field, e) for e in row] for row in json_rows]
        if len(rows) != A.dim or any(len(r) != A.dim for r in rows):
            raise ValueError("derivation matrix of wrong shape")
        return LinearMap(A.field, rows)
    if spec.startswith("ad:"):
        i = int(spec[3:])
        if not 0 <= i < A.dim:
            raise ValueError("basis slot out of range")
        return A.left_multiplication(A.basis_vector(i))
    if spec in ("ddx", "xddx"):
        return truncated_poly_derivation(A, spec)
    raise ValueError("unknown derivation %r (use ad:I, ddx, xddx, or json)"
                     % spec)


def cmd_switch(args):
    A, dmat = _load_algebra(args)
    D = _parse_derivation(A, args.derivation, dmat)
    res = switch_grading(A, D, r=args.r)
    verdict = "pass" if res.grading_ok else "fail"
    return {"results": [res.to_json()], "verdict": verdict}


# ---------------------------------------------------------------------------
# toral demo


def _default_torus(spec, lie):
    """e_0 of every Witt summand of the builtin."""
    vecs, off = [], 0
    for part in spec.split("+"):
        bits = part.split(":")
        if bits[0] != "witt":
            raise ValueError("the toral demo needs witt summands")
        vecs.append(lie.basis_vector(off + 1))
        off += int(bits[1])
    return vecs


def _parse_x(lie, spec):
    bits = spec.split(":")
    if len(bits) == 2 and bits[0] == "e":
        slot = int(bits[1]) + 1
    elif len(bits) == 2 and bits[0] == "slot":
        slot = int(bits[1])
    else:
        raise ValueError("x must look like e:-1 (witt label) or slot:0")
    if not 0 <= slot < lie.dim:
        raise ValueError("x slot out of range")
    return lie.basis_vector(slot)


def cmd_toral(args):
    if not args.builtin:
        raise ValueError("the toral demo runs on builtin algebras")
    A = _parse_builtin(args.builtin)
    lie = RestrictedLie(A)
    tvecs = _default_torus(args.builtin, lie)
    x = _parse_x(lie, args.x)
    out = compare_switch_to_toral(lie, tvecs, x, r=args.r)
    main_row = {
        "beta": [_digits(c) for c in out.beta],
        "w": [_digits(c) for c in out.w],
        "r": out.r,
        "old_roots": [[_digits(c) for c in root] for root, _ in out.old_roots],
        "new_roots": [[_digits(c) for c in root] for root, _ in out.new_roots],
        "old_dims": [s.dim for _, s in out.old_roots],
        "new_dims": [s.dim for _, s in out.new_roots],
        "strade_agrees": out.strade_agrees,
        "spaces_match": out.spaces_match,
        "torus_x_toral": out.torus_x_toral,
        "passed": out.strade_agrees and out.spaces_match,
    }
    oprep = strade_operator_form_check(lie.p)
    results = [main_row, {"p": lie.p, **oprep.to_dict()}]
    verdict = "pass" if all(r["passed"] for r in results) else "fail"
    return {"results": results, "verdict": verdict}


# ---------------------------------------------------------------------------
# report emission


def _emit_text(doc, out):
    print("command: %s" % doc["command"], file=out)
    for row in doc["results"]:
        if "name" in row:
            tag = "p=%s " % row["p"] if "p" in row and \
                "[p=" not in row["name"] else ""
            detail = " (%s)" % row["detail"] if row.get("detail") else ""
            print("  %s%s: %s%s" % (tag, row["name"],
                                    "pass" if row["passed"] else "FAIL",
                                    detail), file=out)
        elif "trial" in row:
            print("  trial %s: %s" % (row["trial"],
                                      "pass" if row["passed"] else "FAIL"),
                  file=out)
        elif "switch_map" in row:
            print("  field: GF(%d^%d) -> GF(%d^%d)"
                  % (row["field_start"]["p"], row["field_start"]["n"],
                     row["field_final"]["p"], row["field_final"]["n"]),
                  file=out)
            print("  r: %d (raw %d)" % (row["r"], row["r_raw"]), file=out)
            print("  blocks: %d, dims %s" % (len(row["block_dims"]),
                                             row["block_dims"]), file=out)
            print("  grading: %s" % ("pass" if row["grading_ok"] else "FAIL"),
                  file=out)
            if row.get("product_rule_pairs") is not None:
                print("  product rule: %d basis pairs"
                      % row["product_rule_pairs"], file=out)
        elif "spaces_match" in row:
            print("  beta: %s, r: %d" % (row["beta"], row["r"]), file=out)
            print("  old root dims: %s" % row["old_dims"], file=out)
            print("  new root dims: %s" % row["new_dims"], file=out)
            print("  operator product form agrees: %s"
                  % row["strade_agrees"], file=out)
            print("  switched spaces match new root spaces: %s"
                  % row["spaces_match"], file=out)
            print("  replacement torus toral: %s" % row["torus_x_toral"],
                  file=out)
    print("verdict: %s" % doc["verdict"], file=out)


def _emit(doc, args, out):
    if args.output == "json":
        print(json.dumps(doc, sort_keys=True, indent=2), file=out)
    else:
        _emit_text(doc, out)


def _config(args):
    keys = ("p", "field_degree", "trials", "seed", "builtin", "input",
            "derivation", "x", "r", "jobs", "p_cap", "output")
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


# ---------------------------------------------------------------------------
# parser and entry point


def build_parser():
    ap = argparse.ArgumentParser(
        prog="gradeswitch",
        description="exact-arithmetic grading switches via Laguerre "
                    "polynomials of derivations")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", choices=("text", "json"), default="text")
        sp.add_argument("--p-cap", dest="p_cap", type=int, default=13,
                        help="largest prime accepted (runtime guard)")

    sp = sub.add_parser("identities",
                        help="symbolic identity suite for the Laguerre "
                             "values and their factored forms")
    sp.add_argument("--p", type=int, default=None,
                    help="one prime; default runs the whole suite")
    common(sp)

    sp = sub.add_parser("coeffs",
                        help="coefficient tables over random admissible "
                             "argument pairs")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--field-degree", dest="field_degree", type=int,
                    default=2)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1,
                    help="worker processes for the trial sweep")
    common(sp)

    sp = sub.add_parser("switch",
                        help="switch a grading along a derivation")
    sp.add_argument("--builtin",
                    help="witt:P | tpoly:P:LEN:M, joined with +")
    sp.add_argument("--input", help="algebra JSON file")
    sp.add_argument("--derivation",
                    help="ad:I | ddx | xddx | json (matrix from --input)")
    sp.add_argument("--r", type=int, default=None,
                    help="semisimplicity exponent override")
    common(sp)

    sp = sub.add_parser("toral",
                        help="torus replacement along a root vector")
    sp.add_argument("--builtin", required=True,
                    help="witt:P, or witt sums joined with +")
    sp.add_argument("--x", default="e:-1",
                    help="root vector: e:K (witt label) or slot:I")
    sp.add_argument("--r", type=int, default=None)
    common(sp)
    return ap


COMMANDS = {
    "identities": cmd_identities,
    "coeffs": cmd_coeffs,
    "switch": cmd_switch,
    "toral": cmd_toral,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    doc = {"schema": 1, "command": args.command, "config": _config(args)}
    try:
        doc.update(COMMANDS[args.command](args))
    except (HypothesisError, VerificationError) as exc:
        print("hypothesis/verification failure: %s" % exc, file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print("configuration error: %s" % exc, file=sys.stderr)
        return 2
    _emit(doc, args, sys.stdout)
    return 0 if doc["verdict"] == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
