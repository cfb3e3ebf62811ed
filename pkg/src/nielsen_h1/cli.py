"""Command-line entry point: ``nielsen-h1 <command> --n N [--ring z|mod:p] [--json]``.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""

import argparse
import json
import sys

from . import cohomology
from .automorphisms import (Automorphism, GenWord, NotAnAutomorphism, evaluate_genword, inner_automorphism,
                            magnus_ia_generator, relator_catalog, relator_check)
from .cocycles import NAMED, CertificationError, named_cocycle
from .coefficients import RingSpec
from .factorization import factorize
from .verification import run_all_checks

OK, FAILED, INVALID = 0, 1, 2


class InvalidInput(ValueError):
    pass


def _ring(text):
    try:
        ring = RingSpec.parse(text)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    if not ring.is_integers and not ring.is_prime_field:
        raise InvalidInput(f"{ring}: only Z and Z/p with p prime are supported")
    return ring


def _labels(n, ring):
    out = []
    if n < 5:
        out.append("no ground truth")
    if not ring.in_hypothesis:
        out.append("outside theorem hypothesis")
    return out


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _automorphism(args):
    """The automorphism selected by --word / --images / --ia / --inner."""
    n = args.n
    given = [x for x in (args.word, args.images, args.ia, args.inner) if x is not None]
    if len(given) != 1:
        raise InvalidInput("give exactly one of --word, --images, --ia, --inner")
    try:
        if args.word is not None:
            return evaluate_genword(GenWord.parse(args.word), n), GenWord.parse(args.word)
        if args.images is not None:
            return Automorphism.parse(n, [t.strip() for t in args.images.split(",")]), None
        if args.ia is not None:
            idx = [int(t) for t in args.ia.split(",")]
            if len(idx) not in (2, 3):
                raise InvalidInput("--ia takes i,j or i,j,k")
            return magnus_ia_generator(n, *idx), None
        return inner_automorphism(n, int(args.inner)), None
    except (ValueError, NotAnAutomorphism) as exc:
        raise InvalidInput(str(exc)) from None


def _combo(coeffs, names):
    """'[fM] - 2[fK]' style linear combination."""
    parts = []
    for c, name in zip(coeffs, names):
        if not c:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}[{name}]"))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])


# --- commands ---------------------------------------------------------------


def cmd_verify_presentation(args):
    n = args.n
    good, bad = relator_check(n)
    rows = [{"relator": label, "word": str(w), "identity": label in good} for label, w in relator_catalog(n)]
    lines = [f"{r['relator']:8s} {'ok' if r['identity'] else 'FAIL'}  {r['word']}" for r in rows]
    lines.append(f"n={n}: {len(good)}/{len(rows)} relators evaluate to the identity")
    _emit(args, {"n": n, "relators": rows, "all_identity": not bad}, lines)
    return OK if not bad else FAILED


def cmd_h1(args):
    ring = _ring(args.ring)
    if args.dump_matrix:
        A, _ = cohomology.constraint_matrix(args.n)
        cohomology.dump_matrix(A, args.dump_matrix)
    res = cohomology.h1(args.n, ring)
    payload = res.to_json()
    payload["labels"] = _labels(args.n, ring)
    if not args.basis:
        payload.pop("basis_cocycles")
    lines = [
        f"H^1(Aut F_{args.n}, V) over {ring}: free rank {res.free_rank}, torsion {res.torsion or 'none'}",
        f"  Z^1 rank {res.z1_rank}, B^1 rank {res.b1_rank}, {res.relator_count} relators",
        f"  {res.label}",
    ]
    lines += [f"  [{k}] = {v['free']}" + (f" torsion {v['torsion']}" if v["torsion"] else "")
              for k, v in res.coordinates.items()]
    lines += [f"  note: {t}" for t in res.notes]
    if args.basis:
        lines += [f"  {f!r}" for f in res.basis_cocycles]
    _emit(args, payload, lines)
    return OK


def cmd_h1_out(args):
    ring = _ring(args.ring)
    o = cohomology.restriction_to_inner(args.n, ring)
    payload = o.to_json()
    payload["labels"] = _labels(args.n, ring)
    lines = [
        f"H^1(Out F_{args.n}, V) over {ring}: free rank {o.out_free_rank}, torsion {o.out_torsion or 'none'}",
        f"  H^1(Inn F_{args.n}, V) rank {o.inn_rank}",
        f"  alpha(fM) = {o.alpha_named.get('fM')} g, alpha(fK) = {o.alpha_named.get('fK')} g"
        f"  (g = sum_i iota_i^* (x) embed(e_i))",
    ]
    for pair in o.out_in_named or []:
        if pair:
            lines.append(f"  generator: {_combo(pair, ('fM', 'fK'))}")
    lines += [f"  note: {t}" for t in payload["labels"]]
    _emit(args, payload, lines)
    return OK


def cmd_classes(args):
    ring = _ring(args.ring)
    res = cohomology.cached_h1(args.n, ring)
    ok, index = cohomology.generation_check(args.n, ring, result=res)
    payload = {"n": args.n, "ring": str(ring), "coordinates": res.coordinates,
               "generates": ok, "index": index, "labels": _labels(args.n, ring)}
    lines = [f"[{k}] = {v['free']}" for k, v in res.coordinates.items()]
    lines.append(f"[fM], [fK] generate H^1: {ok} (index {'infinite' if index is None else index})")
    _emit(args, payload, lines)
    return OK


def cmd_johnson_extension(args):
    ring = _ring(args.ring)
    r = cohomology.johnson_extension_feasible(args.n, ring)
    payload = r.to_json()
    payload["labels"] = _labels(args.n, ring)
    lines = [f"tau_1 extends to a crossed homomorphism on Aut F_{args.n} over {ring}: "
             f"{'feasible' if r.feasible else 'infeasible'} ({r.constraints} constraints)",
             f"  2 tau_1 extends: {r.doubled_feasible}"]
    _emit(args, payload, lines)
    return OK


def cmd_evaluate(args):
    ring = _ring(args.ring)
    sigma, word = _automorphism(args)
    try:
        f = named_cocycle(args.cocycle, args.n, ring)
    except CertificationError as exc:
        raise InvalidInput(str(exc)) from None
    value = f.evaluate(word) if word is not None else f.evaluate_on_automorphism(sigma)
    payload = {"n": args.n, "ring": str(ring), "cocycle": args.cocycle,
               "automorphism": sigma.to_json(), "value": value.to_json()}
    _emit(args, payload, [f"{args.cocycle}({sigma}) = {value}"])
    return OK


def cmd_factorize(args):
    sigma, _ = _automorphism(args)
    w = factorize(sigma)
    ok = evaluate_genword(w, args.n) == sigma
    payload = {"n": args.n, "automorphism": sigma.to_json(), "word": str(w), "length": len(w), "verified": ok}
    _emit(args, payload, [str(w), f"length {len(w)}, re-evaluated: {'ok' if ok else 'MISMATCH'}"])
    return OK if ok else FAILED


def cmd_verify_paper(args):
    if args.n < 5:
        raise InvalidInput(f"verify-paper covers n >= 5 only; n={args.n} is outside the theorem's range")
    results = run_all_checks(args.n, seed=args.seed, scale=args.scale)
    payload = {"n": args.n, "seed": args.seed,
               "checks": {k: {"pass": ok, "detail": d} for k, (ok, d) in results.items()}}
    lines = [f"{'PASS' if ok else 'FAIL'} {k}: {d}" for k, (ok, d) in results.items()]
    _emit(args, payload, lines)
    return OK if all(ok for ok, _ in results.values()) else FAILED


# --- parser -----------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="nielsen-h1",
                                description="H^1(Aut F_n, H^* (x) Lambda^2 H) from Nielsen's presentation")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, ring=True, help=None):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--n", type=int, required=True)
        if ring:
            sp.add_argument("--ring", default="z", help="z or mod:<p>")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)
        return sp

    def target(sp):
        sp.add_argument("--word", help="generator word, e.g. 'P Q^-1 U'")
        sp.add_argument("--images", help="comma-separated images of x1..xn, e.g. 'x2,x1,x3'")
        sp.add_argument("--ia", help="Magnus generator K_ij or K_ijk as i,j or i,j,k")
        sp.add_argument("--inner", help="inner automorphism iota_i")

    add("verify-presentation", cmd_verify_presentation, ring=False, help="evaluate every catalog relator")
    sp = add("h1", cmd_h1, help="compute H^1(Aut F_n, V_L)")
    sp.add_argument("--dump-matrix", metavar="PATH", help="write the relator constraint matrix")
    sp.add_argument("--basis", action="store_true", help="include lifted basis cocycles")
    add("h1-out", cmd_h1_out, help="restriction to Inn F_n and H^1(Out F_n, V_L)")
    add("classes", cmd_classes, help="coordinates of [fM], [fK], [fN] and the generation check")
    add("johnson-extension", cmd_johnson_extension, help="does tau_1 extend to Aut F_n?")
    sp = add("evaluate", cmd_evaluate, help="evaluate a named cocycle")
    sp.add_argument("--cocycle", choices=NAMED, required=True)
    target(sp)
    sp = add("factorize", cmd_factorize, ring=False, help="write an automorphism as a word in P, Q, S, U")
    target(sp)
    sp = add("verify-paper", cmd_verify_paper, ring=False, help="run the full verification suite")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=float, default=0.2, help="fraction of the full random-check counts")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 2:
        print(f"error: n must be at least 2 (got {args.n})", file=sys.stderr)
        return INVALID
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
