"""Command-line front end: ``degenlab <subcommand> ...``.

Exit codes: 0 for valid/consistent/exact/yes, 2 for invalid/obstructed/
not_exact/no, 3 for inconclusive, 1 for usage, parse and file errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import (
    CMClass, build_poset, catalog_matrix, dim1_ring, identify_dim1_ideal,
    iterated_knoerrer_module, prop56_image, thm31_witness,
)
from .degeneration import (
    DegenerationWitness, PreconditionError, ZwaraSequence, corollary45_family,
    fitting_screen, lift_witness_doublesharp, screen_necessary,
    sequence_nilpotency, verify_exactness, verify_witness, zwara_construct,
)
from .ideal import DEFAULT_SPAIR_BUDGET, ResourceLimitError, Submodule
from .matfac import MatrixRepresentation, double_sharp, sharp, syzygy_mr, validate_mr
from .matrix import Matrix
from .poly import GF, QQ, QQI, PolyRing, PolySyntaxError, QuotientRing

EXIT = {"valid": 0, "consistent": 0, "exact": 0, "yes": 0,
        "invalid": 2, "obstructed": 2, "not_exact": 2, "no": 2,
        "inconclusive": 3}

PROFILES = {"small": 0.5, "default": 1.0, "large": 4.0}


class UsageError(Exception):
    pass


def budgets():
    name = os.environ.get("DEGENLAB_BUDGET_PROFILE", "default")
    if name not in PROFILES:
        raise UsageError(f"DEGENLAB_BUDGET_PROFILE must be one of {sorted(PROFILES)}, got {name!r}")
    s = PROFILES[name]
    return {"profile": name, "l_max": max(1, int(8 * s)), "i_max": max(1, int(4 * s)),
            "spairs": int(DEFAULT_SPAIR_BUDGET * s)}


def field_from(text):
    t = text.strip().lower()
    if t in ("qq", "q", "rationals"):
        return QQ
    if t in ("qqi", "q(i)", "gaussian", "gaussian-rationals"):
        return QQI
    if t.startswith("gf"):
        return GF(int(t.strip("gf()")))
    raise UsageError(f"unknown field {text!r} (use QQ, QQI or GF(p))")


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})")


def emit(args, payload, text=None):
    out = text if text is not None else dumps(payload)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def load_mr(args):
    if getattr(args, "catalog", None):
        return catalog_matrix(CMClass.parse(args.catalog, args.dim), field_from(args.field))
    if not args.input:
        raise UsageError("give an input file or --catalog")
    return MatrixRepresentation.from_json(load_json(args.input))


def load_matrix_any(path, key):
    d = load_json(path)
    if key in d and isinstance(d[key], dict):
        return Matrix.from_json(d[key]), d
    if "entries" in d:
        return Matrix.from_json(d), d
    raise UsageError(f"{path}: expected a matrix or an object with key {key!r}")


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, verdict or None)

def cmd_mf_validate(args):
    mr = load_mr(args)
    if args.dry_run:
        return None, None
    rep = validate_mr(mr.mu, mr.ring, mr.tag)
    return rep.to_json() | {"verdict": rep.verdict}, rep.verdict


def _mr_out(mr):
    rep = validate_mr(mr.mu, mr.ring, mr.tag)
    return mr.to_json() | {"report": rep.to_json()}, rep.verdict


def cmd_mf_sharp(args):
    mr = load_mr(args)
    return (None, None) if args.dry_run else _mr_out(sharp(mr, args.u))


def cmd_mf_double_sharp(args):
    mr = load_mr(args)
    return (None, None) if args.dry_run else _mr_out(double_sharp(mr, args.u, args.v))


def cmd_mf_syzygy(args):
    mr = load_mr(args)
    return (None, None) if args.dry_run else _mr_out(syzygy_mr(mr))


def cmd_witness_build(args):
    fam = args.family
    if fam in ("thm31", "knoerrer-lift"):
        if args.a is None or args.b is None:
            raise UsageError(f"--family {fam} needs --a and --b")
        a, b = args.a, args.b
        if a > b or (b - a) % 2 or a < 0:
            raise UsageError(f"no such witness: need 0 <= a <= b with a = b mod 2 (got {a}, {b})")
    else:
        if args.i is None or args.j is None:
            raise UsageError("--family cor45 needs --i and --j")
        if not args.i >= args.j >= 0:
            raise UsageError("--family cor45 needs i >= j >= 0")
    if args.dry_run:
        return None, None
    if fam == "thm31":
        w = thm31_witness(a, b, field_from(args.field))
    elif fam == "knoerrer-lift":
        w = lift_witness_doublesharp(thm31_witness(a, b, QQI, x="x1", y="x0"), "x2", "x3")
        w.metadata = dict(w.metadata) | {"z": "x0", "family": "iterated Knoerrer, dimension 3"}
    else:
        R = dim1_ring(field_from(args.field))
        P = R.base
        res = corollary45_family(R, Matrix(P, [[P.gen("x")]]), P.gen("y"), args.i, args.j)
        rep = verify_exactness(res.sequence)
        if not rep.ok:
            return {"verdict": rep.verdict, "exactness": rep.to_json()}, rep.verdict
        src, tgt = identify_dim1_ideal(res.M), identify_dim1_ideal(res.N)
        w = thm31_witness(src.exponent, tgt.exponent, field_from(args.field))
        w.provenance = "cor45"
        w.metadata = dict(w.metadata) | {"i": args.i, "j": args.j, "sequence": rep.verdict}
    return w.to_json(), None


def cmd_witness_verify(args):
    w = DegenerationWitness.from_json(load_json(args.input))
    if args.dry_run:
        return None, None
    samples = tuple(int(s) for s in args.samples.split(","))
    rep = verify_witness(w, samples)
    return rep.to_json(), rep.verdict


def _read_presentation(path):
    d = load_json(path)
    if "ring" not in d or "presentation" not in d:
        raise UsageError(f"{path}: expected keys 'ring' and 'presentation'")
    R = QuotientRing.from_descriptor(d["ring"])
    return R, Matrix.from_json(d["presentation"], R.base)


def cmd_screen(args):
    b = budgets()
    if args.m_pres or args.n_pres:
        if not (args.m_pres and args.n_pres):
            raise UsageError("fitting screen needs both --m-pres and --n-pres")
        R, MP = _read_presentation(args.m_pres)
        R2, NP = _read_presentation(args.n_pres)
        if R != R2:
            raise UsageError("presentations live over different rings")
        if args.dry_run:
            return None, None
        rep = fitting_screen(MP, NP, R, args.i_max or b["i_max"], b["spairs"])
        return rep.to_json(), rep.verdict
    if not (args.xi and args.mu):
        raise UsageError("screen needs --xi and --mu (or --m-pres and --n-pres)")
    xi, xd = load_matrix_any(args.xi, "xi")
    mu, _ = load_matrix_any(args.mu, "mu")
    t = xd.get("t_var", args.t)
    if t not in xi.ring.vars:
        raise UsageError(f"variable {t!r} does not occur in the ring of xi")
    mu = mu.lift(xi.ring)
    if args.dry_run:
        return None, None
    rep = screen_necessary(xi, mu, t, args.j_max, args.l_max or b["l_max"], b["spairs"])
    return rep.to_json(), rep.verdict


def _zwara_input(d):
    R = QuotientRing.from_descriptor(d["ring"])
    P = R.base
    alpha = Matrix.from_json(d["alpha"], P)
    beta = Matrix.from_json(d.get("beta", d["alpha"]), P)
    M = [[P(a) for a in g] for g in d["M"]]
    return R, alpha, beta, P(d["x"]), M


def cmd_zwara_build(args):
    if args.example:
        R = dim1_ring()
        P = R.base
        x, y = P.gens()
        inp = (R, Matrix(P, [[x]]), Matrix(P, [[x]]), y, [[x], [y]])
    elif args.input:
        try:
            inp = _zwara_input(load_json(args.input))
        except KeyError as exc:
            raise UsageError(f"{args.input}: missing key {exc}")
    else:
        raise UsageError("zwara-build needs an input file or --example")
    if args.dry_run:
        return None, None
    try:
        seq = zwara_construct(*inp)
    except PreconditionError as exc:
        vec = None if exc.vector is None else [str(a) for a in exc.vector]
        return {"verdict": "not_exact", "precondition": str(exc), "counterexample": vec}, "not_exact"
    return seq.to_json(), None


def cmd_zwara_verify(args):
    seq = ZwaraSequence.from_json(load_json(args.input))
    if args.dry_run:
        return None, None
    rep = verify_exactness(seq, budget=budgets()["spairs"])
    out = rep.to_json()
    if rep.ok:
        nil, idx = sequence_nilpotency(seq)
        out["nilpotent"], out["nilpotency_index"] = nil, idx
        if not nil:
            out["verdict"] = "inconclusive"
    return out, out["verdict"]


def cmd_poset(args):
    if args.max_n < 1:
        raise UsageError("--max-n must be at least 1")
    if args.dry_run:
        return None, None
    g = build_poset(args.dim, args.max_n, jobs=args.jobs)
    if args.format == "dot":
        return g.to_dot(), None
    return g.to_json(), None


def cmd_knoerrer_module(args):
    if args.dim < 1 or args.dim % 2 == 0:
        raise UsageError("--dim must be odd and positive")
    if args.dry_run:
        return None, None
    mr = iterated_knoerrer_module(args.h, args.dim, QQI)
    out, verdict = _mr_out(mr)
    out["metadata"] = {"z": "x0", "h": args.h, "dim": args.dim}
    return out, verdict


def cmd_prop56(args):
    if args.h < 0:
        raise UsageError("--h must be non-negative")
    if args.dry_run:
        return None, None
    S = PolyRing(("x0", "z"), "grevlex", QQI)
    d = prop56_image(Matrix(S, [[S.gen("x0")]]), S.gen("x0") ** 2, S.gen("z"), args.h)
    verdict = "valid" if d.matches else "invalid"
    return {"verdict": verdict, "h": args.h,
            "image_generators": [[str(a) for a in g] for g in d.image.gens],
            "knoerrer_image": d.knoerrer_image.to_json(),
            "presentation": d.presentation.to_json(),
            "knoerrer_presentation": d.knoerrer_presentation.to_json(),
            "operations": [list(op) for op in d.ops],
            "transformed": d.transformed.to_json(), "metadata": d.metadata}, verdict


# ---------------------------------------------------------------------------

def _mr_inputs(p):
    p.add_argument("input", nargs="?", help="matrix representation JSON {ring, mu}")
    p.add_argument("--catalog", help="catalog class label instead of a file, e.g. '(x,y^3)'")
    p.add_argument("--dim", type=int, default=1, help="dimension of the catalog ring")
    p.add_argument("--field", default="QQ")


def build_parser():
    ap = argparse.ArgumentParser(prog="degenlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        p.add_argument("--dry-run", action="store_true", help="validate inputs only")
        return p

    _mr_inputs(add("mf-validate", cmd_mf_validate, "check F(mu) = 0"))
    p = add("mf-sharp", cmd_mf_sharp, "(mu u; -u -mu)")
    _mr_inputs(p)
    p.add_argument("--u", default="u")
    p = add("mf-double-sharp", cmd_mf_double_sharp, "(mu zeta; -eta_bar -mu)")
    _mr_inputs(p)
    p.add_argument("--u", default="u")
    p.add_argument("--v", default="v")
    _mr_inputs(add("mf-syzygy", cmd_mf_syzygy, "matrix representation of the syzygy"))

    p = add("witness-build", cmd_witness_build, "build a degeneration witness")
    p.add_argument("--family", choices=("thm31", "cor45", "knoerrer-lift"), required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--field", default="QQ")

    p = add("witness-verify", cmd_witness_verify, "verify a witness JSON")
    p.add_argument("input")
    p.add_argument("--samples", default="1,2,3")

    p = add("screen", cmd_screen, "necessary-condition screens")
    p.add_argument("--xi")
    p.add_argument("--mu")
    p.add_argument("--t", default="t")
    p.add_argument("--j-max", type=int)
    p.add_argument("--l-max", type=int)
    p.add_argument("--m-pres")
    p.add_argument("--n-pres")
    p.add_argument("--i-max", type=int)

    p = add("zwara-build", cmd_zwara_build, "build 0 -> Z -> M+Z -> N -> 0")
    p.add_argument("input", nargs="?")
    p.add_argument("--example", action="store_true", help="alpha = beta = (x) on k[x,y]/(x^2), M = (x, y)")
    p = add("zwara-verify", cmd_zwara_verify, "check exactness and nilpotency")
    p.add_argument("input")

    p = add("poset", cmd_poset, "degeneration poset of the catalog")
    p.add_argument("--dim", type=int, choices=(1, 2), required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--jobs", type=int, default=1)

    p = add("knoerrer-module", cmd_knoerrer_module, "iterated Knoerrer module M(h)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--dim", type=int, default=3)

    p = add("prop56", cmd_prop56, "Knoerrer image of Im(alpha z^h) and its presentation")
    p.add_argument("--h", type=int, required=True)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        budgets()
        payload, verdict = args.fn(args)
    except (UsageError, PolySyntaxError, ValueError, KeyError) as exc:
        sys.stderr.write(f"degenlab {args.command}: {exc}\n")
        return 1
    except ResourceLimitError as exc:
        emit(args, {"verdict": "inconclusive", "reason": str(exc)})
        return 3
    if args.dry_run:
        emit(args, {"dry_run": True, "inputs_ok": True, "subcommand": args.command})
        return 0
    if isinstance(payload, str):
        emit(args, None, payload)
    else:
        emit(args, payload)
    return EXIT.get(verdict, 0) if verdict else 0


if __name__ == "__main__":
    sys.exit(main())
