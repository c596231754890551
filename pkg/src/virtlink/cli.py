"""``virtlink`` command-line interface.

Exit status: 0 on success (a ``check`` that reports FAIL still exits 0),
1 on a domain error (the exception class name is printed on stderr) or a
failing ``selftest``, 2 on a usage error.  ``--json`` prints one JSON object instead of text.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from math import gcd
from typing import Callable, Sequence

from . import braid, gauss, io, milnor, poly, seifert, selftest
from .errors import ParseError, VirtlinkError

Result = tuple[list[str], dict]


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _csv(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def _matrix_str(m) -> list[str]:
    return [" ".join(str(x) for x in row) for row in m]


def _sign(s: int) -> str:
    return "+1" if s > 0 else "-1"


# ---------------------------------------------------------------------------
# poly

def _substitution(text: str):
    text = text.strip()
    if text in ("t", "t^-1"):
        return text
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"substitution must be an integer, t or t^-1, got {text!r}") from None


def cmd_poly_normalize(a) -> Result:
    p = poly.parse_poly(a.poly)
    nf = poly.normalize(p)
    unit = nf.unit
    return (
        [f"normal = {nf.normal}", f"unit = {unit}"],
        {"normal": str(nf.normal), "unit": str(unit)},
    )


def cmd_poly_specialize(a) -> Result:
    p = poly.parse_poly(a.poly, ("t1", "t2"))
    q = poly.specialize(p, _substitution(a.t1), _substitution(a.t2))
    return [f"result = {q}"], {"result": str(q)}


def cmd_poly_magnus(a) -> Result:
    w = milnor.parse_word(a.word)
    s = poly.magnus_expand(w, a.degree)
    return [f"magnus = {s}"], {"magnus": str(s)}


# ---------------------------------------------------------------------------
# gauss

def cmd_gauss_index(a) -> Result:
    d = gauss.parse_gauss(a.code)
    rep = gauss.index_report(d)
    return rep.lines(), {
        "chords": [
            {"chord": c, "sign": rep.signs[c], "index": rep.indices[c]}
            for c in sorted(rep.indices)
        ],
        "writhe": rep.writhe,
    }


def cmd_gauss_ac(a) -> Result:
    d = gauss.parse_gauss(a.code)
    ac = gauss.is_almost_classical(d)
    num = gauss.alexander_numbering(d)
    lines = [f"almost classical: {'yes' if ac else 'no'}",
             "numbering: " + ("infeasible" if num is None else " ".join(map(str, num)))]
    return lines, {"almost_classical": ac, "numbering": None if num is None else list(num)}


def cmd_gauss_writhe(a) -> Result:
    d = gauss.parse_gauss(a.code)
    w = gauss.writhe_index_polynomial(d)
    text = w.to_str(("q",))
    return [f"writhe polynomial = {text}"], {"writhe_polynomial": text}


def cmd_gauss_smooth(a) -> Result:
    d = gauss.parse_gauss(a.code)
    sm = gauss.smooth(d, a.chord)
    data = {"arc_a": sorted(sm.arc_a), "arc_b": sorted(sm.arc_b), "linked": sorted(sm.linked)}
    return [f"{k} = {' '.join(map(str, v))}".rstrip() for k, v in data.items()], data


# ---------------------------------------------------------------------------
# seifert

def cmd_alex_classical(a) -> Result:
    m = io.parse_matrix(_read(a.matrix))
    p = seifert.alexander_classical(m)
    nf = poly.normalize(p).normal
    return [f"alexander = {p}", f"normalized = {nf}"], {"alexander": str(p), "normalized": str(nf)}


def cmd_alex_ac(a) -> Result:
    if a.block:
        if a.vminus or a.vplus:
            raise _Usage("--block cannot be combined with --vminus/--vplus")
        pair = seifert.vpm_from_block(io.parse_block(_read(a.block)))
    elif a.vminus and a.vplus:
        pair = seifert.ACSeifertPair(io.parse_matrix(_read(a.vminus)),
                                     io.parse_matrix(_read(a.vplus)))
    else:
        raise _Usage("give --block, or both --vminus and --vplus")
    p = seifert.alexander_ac(pair)
    nf = poly.normalize(p).normal
    return (
        ["V- =", *_matrix_str(pair.v_minus), "V+ =", *_matrix_str(pair.v_plus),
         f"alexander = {p}", f"normalized = {nf}"],
        {"v_minus": [list(r) for r in pair.v_minus], "v_plus": [list(r) for r in pair.v_plus],
         "alexander": str(p), "normalized": str(nf)},
    )


def cmd_mvap(a) -> Result:
    p = seifert.mvap(io.parse_block(_read(a.block)))
    return [f"nabla = {p}"], {"nabla": str(p)}


def cmd_check_thm31(a) -> Result:
    rep = seifert.thm31_check(io.parse_block(_read(a.block)))
    verdict = "PASS" if rep.passed else "FAIL"
    return (
        [f"lhs = {rep.lhs}", f"rhs = {rep.rhs}", f"sign = {_sign(rep.sign)}", verdict],
        {"lhs": str(rep.lhs), "rhs": str(rep.rhs), "sign": rep.sign, "pass": rep.passed},
    )


def cmd_check_thm41(a) -> Result:
    rep = milnor.thm41_check(_csv(a.k2), _csv(a.k3), a.g, a.lk23)
    verdict = "PASS" if rep.passed else "FAIL"
    return (
        [f"index = {rep.index}", f"t123 = {rep.t123}", f"mu123 = {rep.mu123}", verdict],
        {"index": rep.index, "t123": rep.t123, "mu123": rep.mu123.value,
         "modulus": rep.mu123.modulus, "pass": rep.passed},
    )


# ---------------------------------------------------------------------------
# milnor

def _residue_data(r: milnor.Residue) -> dict:
    return {"mu123": r.value, "modulus": r.modulus}


def cmd_milnor_braid(a) -> Result:
    beta = braid.parse_braid(a.word, a.strands)
    mu = milnor.mu123_of_closure(beta)
    cs = braid.closure_summary(beta)
    lks = {f"lk{i + 1}{j + 1}": cs.lk[i][j] for i in range(3) for j in range(i + 1, 3)}
    return [f"mu123 = {mu}"] + [f"{k} = {v}" for k, v in lks.items()], {**_residue_data(mu), **lks}


def cmd_milnor_longitudes(a) -> Result:
    ls = io.parse_longitudes(_read(a.file))
    if a.delta is None:
        delta = 0
        for i in range(ls.k):
            for j in range(ls.k):
                if i != j:
                    delta = gcd(delta, milnor.exponent_sum(ls.words[i], j + 1))
    else:
        delta = a.delta
    mu = milnor.mu123_from_longitudes(ls, delta)
    return [f"mu123 = {mu}"], _residue_data(mu)


def cmd_milnor_mm(a) -> Result:
    d = io.parse_mm(_read(a.file))
    m = milnor.m123_from_words(d.w1, d.w2, d.w3)
    mu = milnor.mellor_melvin(d)
    return ([f"m123 = {m}", f"t123 = {d.t123}", f"mu123 = {mu}"],
            {"m123": m, "t123": d.t123, **_residue_data(mu)})


def cmd_milnor_artin(a) -> Result:
    beta = braid.parse_braid(a.braid, a.strands)
    w = milnor.artin_apply(beta, milnor.parse_word(a.word))
    text = milnor.format_word(w, "x")
    return [f"image = {text}"], {"image": text}


def cmd_milnor_pure(a) -> Result:
    ls = milnor.longitudes_from_pure_braid(braid.parse_braid(a.word, a.strands))
    text = io.format_longitudes(ls).splitlines()
    return text, {"longitudes": [milnor.format_word(w) for w in ls.words]}


# ---------------------------------------------------------------------------
# braid

def cmd_braid_summary(a) -> Result:
    b = braid.parse_braid(a.word, a.strands)
    cs = braid.closure_summary(b)
    lines = [f"permutation = {' '.join(str(p + 1) for p in cs.permutation)}",
             f"components = {cs.count}"]
    for i in range(cs.count):
        for j in range(i + 1, cs.count):
            lines.append(f"lk {i + 1} {j + 1} = {cs.lk[i][j]}")
    lines.append(f"homogeneous = {'yes' if braid.is_homogeneous(b) else 'no'}")
    return lines, {
        "permutation": [p + 1 for p in cs.permutation],
        "components": [[s + 1 for s in c] for c in cs.components],
        "lk": [list(r) for r in cs.lk],
        "homogeneous": braid.is_homogeneous(b),
    }


def cmd_braid_homogenize(a) -> Result:
    st = braid.stallings_homogenize(braid.parse_braid(a.word, a.strands))
    return (
        [f"result = {st.result}", f"strands = {st.result.n}", f"k = {st.k}",
         f"epsilon = {_sign(st.epsilon)}"],
        {"result": str(st.result), "strands": st.result.n, "k": st.k, "epsilon": st.epsilon},
    )


def cmd_braid_fiber(a) -> Result:
    f = braid.fiber_euler(braid.parse_braid(a.word, a.strands))
    return ([f"chi = {f.chi}", f"components = {f.components}", f"genus = {f.genus}"],
            {"chi": f.chi, "components": f.components, "genus": f.genus})


def cmd_braid_stabilize(a) -> Result:
    mb = io.parse_mixed(_read(a.file))
    before = braid.total_intersection(mb)
    out = braid.fiber_stabilize(mb)
    data = out.to_json()
    return (
        [f"total intersection before = {before}",
         f"total intersection after = {braid.total_intersection(out)}",
         json.dumps(data)],
        {"before": before, "after": braid.total_intersection(out), "mixed_braid": data},
    )


# ---------------------------------------------------------------------------

def cmd_selftest(a) -> Result:
    results = selftest.run_all(a.seed)
    lines = [r.line() for r in results]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} suites passed (seed {a.seed})")
    return lines, {
        "seed": a.seed,
        "suites": [{"number": r.number, "name": r.name, "pass": r.passed, "detail": r.detail}
                   for r in results],
    }


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    # the global flags are accepted before or after the subcommand; below the
    # top level they default to SUPPRESS so they never overwrite a value
    # given earlier on the command line
    def flags(default_json, default_seed):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--json", action="store_true", default=default_json,
                       help="print one JSON object")
        p.add_argument("--seed", type=int, default=default_seed,
                       help=f"random seed (default {selftest.DEFAULT_SEED})")
        return p

    common = flags(argparse.SUPPRESS, argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="virtlink", parents=[flags(False, selftest.DEFAULT_SEED)],
        description="Exact invariants of virtual knots and classical links.",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    def group(name, help_text):
        g = sub.add_parser(name, help=help_text)
        return g.add_subparsers(dest="command", required=True)

    def leaf(parent, name, fn: Callable, help_text):
        p = parent.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=fn)
        return p

    pg = group("poly", "Laurent polynomials")
    p = leaf(pg, "normalize", cmd_poly_normalize, "unit normal form")
    p.add_argument("poly")
    p = leaf(pg, "specialize", cmd_poly_specialize, "substitute into a t1,t2 polynomial")
    p.add_argument("poly")
    p.add_argument("--t1", required=True, help="integer, t or t^-1")
    p.add_argument("--t2", required=True, help="integer, t or t^-1")
    p = leaf(pg, "magnus", cmd_poly_magnus, "Magnus expansion of a word like 'm1 m2^-1'")
    p.add_argument("word")
    p.add_argument("--degree", type=int, default=2)

    gg = group("gauss", "Gauss diagrams (codes like O1+,O2+,U1+,U2+)")
    for name, fn, text in (
        ("index", cmd_gauss_index, "per-chord index and writhe"),
        ("ac", cmd_gauss_ac, "almost-classical test and Alexander numbering"),
        ("writhe", cmd_gauss_writhe, "writhe polynomial in q"),
    ):
        leaf(gg, name, fn, text).add_argument("code")
    p = leaf(gg, "smooth", cmd_gauss_smooth, "oriented smoothing at a chord")
    p.add_argument("code")
    p.add_argument("chord", type=int)

    ag = group("alex", "Alexander polynomials from Seifert matrices")
    p = leaf(ag, "classical", cmd_alex_classical, "det(tV - V^T)")
    p.add_argument("--matrix", required=True)
    p = leaf(ag, "ac", cmd_alex_ac, "det(tV- - V+) from a block file or a V-/V+ pair")
    p.add_argument("--block")
    p.add_argument("--vminus")
    p.add_argument("--vplus")

    p = sub.add_parser("mvap", help="two-variable polynomial det(AT - A^T)", parents=[common])
    p.add_argument("--block", required=True)
    p.set_defaults(func=cmd_mvap)

    cg = group("check", "verify identities on user data")
    p = leaf(cg, "thm31", cmd_check_thm31, "compare det(tV- - V+) with the specialized MVAP")
    p.add_argument("--block", required=True)
    p = leaf(cg, "thm41", cmd_check_thm41, "index vs triple intersection on a trefoil-sum fiber")
    p.add_argument("--k2", required=True)
    p.add_argument("--k3", required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--lk23", type=int, default=0)

    mg = group("milnor", "triple linking numbers")
    p = leaf(mg, "braid", cmd_milnor_braid, "mu123 of a 3-strand pure braid closure")
    p.add_argument("word")
    p.add_argument("--strands", type=int, default=3)
    p = leaf(mg, "longitudes", cmd_milnor_longitudes, "mu123 from a longitude file")
    p.add_argument("file")
    p.add_argument("--delta", type=int, default=None,
                   help="modulus (default: gcd of the pairwise exponent sums)")
    p = leaf(mg, "mm", cmd_milnor_mm, "mu123 from intersection words (JSON)")
    p.add_argument("file")
    p = leaf(mg, "artin", cmd_milnor_artin, "apply a braid to a free-group word")
    p.add_argument("braid")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", required=True, help="word like 'x1 x2^-1'")
    p = leaf(mg, "pure", cmd_milnor_pure, "framed longitudes of a pure braid closure")
    p.add_argument("word")
    p.add_argument("--strands", type=int, required=True)

    bg = group("braid", "braid words")
    for name, fn, text in (
        ("summary", cmd_braid_summary, "closure permutation, components, linking"),
        ("homogenize", cmd_braid_homogenize, "Stallings homogenization"),
        ("fiber", cmd_braid_fiber, "fiber Euler characteristic and genus"),
    ):
        p = leaf(bg, name, fn, text)
        p.add_argument("word")
        p.add_argument("--strands", type=int, required=True)
    p = leaf(bg, "stabilize", cmd_braid_stabilize, "fiber-stabilize a mixed braid (JSON)")
    p.add_argument("file")

    p = sub.add_parser("selftest", help="run the randomized identity suites", parents=[common])
    p.set_defaults(func=cmd_selftest)
    return parser


_NEGATIVE_WORD = re.compile(r"^-\d+(\s+-?\d+)*$")


def _protect_words(argv: Sequence[str]) -> list[str]:
    # braid words such as "-1 2" would otherwise be taken for options
    return [" " + x if _NEGATIVE_WORD.match(x) and " " in x else x for x in argv]


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args_in = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(_protect_words(args_in))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines, data = args.func(args)
    except _Usage as exc:
        parser.print_usage(stderr)
        print(f"virtlink: error: {exc}", file=stderr)
        return 2
    except (VirtlinkError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.json:
        print(json.dumps(data, sort_keys=True), file=stdout)
    else:
        for line in lines:
            print(line, file=stdout)
    if args.group == "selftest" and not all(s["pass"] for s in data["suites"]):
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
