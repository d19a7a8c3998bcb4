"""Command-line front end.

Exit codes: 0 on success, 1 when a verification identity fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path
from typing import Any, Sequence

from . import __version__, fusion, group, hecke, induced, traces, verify
from .central import GammaFunctional
from .hecke import AlgebraSignature, HElement
from .scalars import LaurentPoly, PoleError, Scalar, ScalarParseError, ScalarValue, parse_scalar, substitute

DESK_LIMIT = 10**4
AFFINE_DESK_N = 4


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    m: int | None
    n: int
    command: str
    D: Scalar | None = None
    mu: dict[int, Scalar] = field(default_factory=dict)
    gamma: GammaFunctional | None = None
    q_special: int | None = None
    e: int | None = None
    seed: int = 0
    json: bool = False
    force: bool = False
    output: Path | None = None

    @property
    def sig(self) -> AlgebraSignature:
        return AlgebraSignature(self.m, self.n)


# -- parsing of option values -------------------------------------------------


def _scalar(text: str) -> Scalar:
    try:
        v = parse_scalar(text)
    except ScalarParseError as exc:
        raise UsageError(str(exc)) from None
    r = v.reduce()
    return r.num if r.den.is_one() else r


_BINDING = re.compile(r"\s*([A-Za-z]*)(-?\d+)\s*=\s*(.+)")


def parse_bindings(text: str, prefix: str) -> dict[int, Scalar]:
    """``g0=1,g1=q`` (or ``1=q`` without the letter) -> {0: 1, 1: q}."""
    out: dict[int, Scalar] = {}
    for i, item in enumerate(text.split(",")):
        mt = _BINDING.fullmatch(item)
        if not mt or mt.group(1) not in ("", prefix):
            raise UsageError(f"binding {i + 1} ({item.strip()!r}) should look like {prefix}<index>=<expression>")
        out[int(mt.group(2))] = _scalar(mt.group(3))
    return out


def parse_gamma(text: str | None, m: int | None) -> GammaFunctional:
    if text in (None, "generic"):
        return GammaFunctional.symbolic(m)
    if text == "circ":
        return GammaFunctional.circ(m)
    return GammaFunctional(m, parse_bindings(text, "g"))


def _dump_scalar(c: Scalar, cfg: JobConfig) -> Any:
    if cfg.q_special is not None:
        try:
            c = substitute(c, "q", LaurentPoly.const(cfg.q_special))
        except PoleError:
            return {"pole": True}
    return ScalarValue.coerce(c).to_json()


def _dump_element(x: HElement, cfg: JobConfig) -> dict:
    if cfg.q_special is not None:
        out = HElement.zero(x.sig).to_json()
        out["terms"] = [{"layers": [list(p) for p in w], "coeff": _dump_scalar(c, cfg)} for w, c in x]
        out["terms"] = [t for t in out["terms"] if t["coeff"] != {"num": "0", "den": "1"}]
        return out
    return x.to_json()


def _text_scalar(c: Any) -> str:
    if isinstance(c, dict) and "num" in c:
        return c["num"] if c["den"] == "1" else f"({c['num']})/({c['den']})"
    return json.dumps(c)


def _read_element(token: str, cfg: JobConfig) -> HElement:
    """A word, or ``@path`` to an HElement JSON file."""
    if token.startswith("@"):
        try:
            x = HElement.from_json(json.loads(Path(token[1:]).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read element from {token[1:]}: {exc}") from None
        if x.sig != cfg.sig:
            raise UsageError(f"element lives in H({x.sig.label()}), expected H({cfg.sig.label()})")
        return x
    try:
        return hecke.from_word(hecke.parse_hecke_word(token, cfg.n), cfg.sig)
    except hecke.HeckeParseError as exc:
        raise UsageError(f"parse error: {exc}") from None


# -- commands -------------------------------------------------------------------


def cmd_reduce(args, cfg: JobConfig) -> tuple[Any, int]:
    x = _read_element(args.word, cfg)
    return _dump_element(x, cfg), 0


def cmd_mul(args, cfg: JobConfig) -> tuple[Any, int]:
    acc = HElement.one(cfg.sig)
    for token in args.factors:
        acc = hecke.multiply(acc, _read_element(token, cfg))
    return _dump_element(acc, cfg), 0


def cmd_trace(args, cfg: JobConfig) -> tuple[Any, int]:
    x = _read_element(args.word, cfg)
    params = traces.TraceParams(cfg.m, D=cfg.D if cfg.D is not None else LaurentPoly.var("D"), mu=cfg.mu)
    out = {"word": args.word, "markov_trace": _dump_scalar(traces.markov_trace(x, params), cfg)}
    if args.relative and cfg.n >= 1:
        out["relative_trace"] = _dump_element(traces.tr_k(x, params), cfg)
    return out, 0


def _finite(cfg: JobConfig, what: str) -> int:
    if cfg.m is None:
        raise UsageError(f"{what} needs a finite m")
    return cfg.m


def cmd_weights(args, cfg: JobConfig) -> tuple[Any, int]:
    m = _finite(cfg, "weights")
    gamma = cfg.gamma or GammaFunctional.symbolic(m)
    rows = []
    for lam in fusion.multipartitions(m, cfg.n):
        wt = fusion.weights(lam, gamma)
        schur: Any = None if wt.w.is_zero() else _dump_scalar(wt.schur, cfg)
        rows.append(
            {
                "lambda": lam.to_json(),
                "w": _dump_scalar(wt.w, cfg),
                "wtilde": _dump_scalar(wt.wtilde, cfg),
                "schur": schur,
                "tableaux": len(fusion.standard_tableaux(lam)),
            }
        )
    return {"signature": {"m": m, "n": cfg.n}, "weights": rows}, 0


def cmd_fusion(args, cfg: JobConfig) -> tuple[Any, int]:
    if args.tableau is None:
        m = _finite(cfg, "fusion")
        return {"signature": {"m": m, "n": cfg.n}, "tableaux": [t.to_json() for t in fusion.all_tableaux(m, cfg.n)]}, 0
    try:
        T = fusion.MTableau.from_json(json.loads(args.tableau))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad tableau: {exc}") from None
    if (cfg.m, cfg.n) != (T.shape.m, T.n):
        raise UsageError(f"tableau has m={T.shape.m}, n={T.n}; the signature says m={cfg.m}, n={cfg.n}")
    return {"tableau": T.to_json(), "idempotent": _dump_element(fusion.fusion_idempotent(T), cfg)}, 0


def cmd_induce(args, cfg: JobConfig) -> tuple[Any, int]:
    _finite(cfg, "induce")
    rep = induced.regular_rep(cfg.sig)
    return rep.to_json(), 0


def cmd_burau(args, cfg: JobConfig) -> tuple[Any, int]:
    m = _finite(cfg, "burau")
    e = cfg.e if cfg.e is not None else 1
    if not 1 <= e <= m:
        raise UsageError(f"--e must lie in 1..{m}")
    if cfg.n < 1:
        raise UsageError("burau needs n >= 1")
    return induced.burau(cfg.sig, e).to_json(), 0


def cmd_cosets(args, cfg: JobConfig) -> tuple[Any, int]:
    return group.coxeter_todd(group.GroupSignature(cfg.m, cfg.n)).to_json(), 0


def cmd_normal_form(args, cfg: JobConfig) -> tuple[Any, int]:
    gsig = group.GroupSignature(cfg.m, cfg.n)
    try:
        word = group.parse_group_word(args.word)
        g = group.word_to_element(word, gsig)
    except ValueError as exc:
        raise UsageError(f"parse error: {exc}") from None
    nf = group.normal_form(g)
    out = {
        "element": g.to_json(),
        "normal_form": nf.to_json(),
        "word": group.format_group_word(group.normal_form_word(nf)),
    }
    if cfg.m is not None:
        out["reduced_word"] = group.format_group_word(group.reduced_word(nf))
    return out, 0


def cmd_verify(args, cfg: JobConfig) -> tuple[Any, int]:
    if args.inject_fault:
        hecke.set_fault_injection(True)
    try:
        reports = verify.run_suite(args.suite, cfg.m, cfg.n, seed=cfg.seed)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    finally:
        if args.inject_fault:
            hecke.set_fault_injection(False)
    ok = all(r.ok for r in reports)
    out = {"ok": ok, "suites": [r.to_json() for r in reports]}
    return out, 0 if ok else 1


COMMANDS = {
    "reduce": cmd_reduce,
    "mul": cmd_mul,
    "trace": cmd_trace,
    "weights": cmd_weights,
    "fusion": cmd_fusion,
    "induce": cmd_induce,
    "burau": cmd_burau,
    "cosets": cmd_cosets,
    "normal-form": cmd_normal_form,
    "verify": cmd_verify,
}


# -- argument handling -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="cyclotomic order m >= 1")
    common.add_argument("--n", type=int, help="rank n >= 0 (default 2)")
    common.add_argument("--affine", action="store_true", help="use m = infinity (affine Hecke algebra)")
    common.add_argument("--q-special", type=int, choices=(1, -1), help="substitute q = +1 or -1 in every emitted scalar")
    common.add_argument("--gamma", help="generic | circ | g0=<expr>,g1=<expr>,...")
    common.add_argument("--D", help="Markov parameter D: generic or an expression")
    common.add_argument("--mu", help="trace parameters: generic or 1=<expr>,2=<expr>,...")
    common.add_argument("--e", type=int, help="colour index of the Burau module")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised sweeps")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--output", type=Path, help="write the result to a file")
    common.add_argument("--force", action="store_true", help="skip the desk-scale guard")

    p = argparse.ArgumentParser(prog="cyclohecke", description="Exact computations in Ariki-Koike and affine Hecke algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("reduce", parents=[common], help="normal form of a word in G_i, T")
    s.add_argument("word")
    s = sub.add_parser("mul", parents=[common], help="product of words or @element.json files")
    s.add_argument("factors", nargs="+")
    s = sub.add_parser("trace", parents=[common], help="Markov trace of an element")
    s.add_argument("word")
    s.add_argument("--relative", action="store_true", help="also emit the top relative trace")
    sub.add_parser("weights", parents=[common], help="weights and Schur elements of L^gamma")
    s = sub.add_parser("fusion", parents=[common], help="fusion idempotent of a standard m-tableau")
    s.add_argument("--tableau", help="nested JSON filling, e.g. '[[[1,2]],[]]'")
    sub.add_parser("induce", parents=[common], help="regular representation built by induction")
    sub.add_parser("burau", parents=[common], help="Burau-type module")
    sub.add_parser("cosets", parents=[common], help="coset table of G(m,1,n-1) in G(m,1,n)")
    s = sub.add_parser("normal-form", parents=[common], help="normal form of a group word in t, s_i")
    s.add_argument("word")
    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("suite", help=", ".join(verify.SUITES + ("all",)))
    s.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return p


def make_config(args) -> JobConfig:
    if args.affine and args.m is not None:
        raise UsageError("--m and --affine are exclusive")
    if args.command == "fusion" and args.tableau and args.m is None and args.n is None:
        # signature read off the tableau
        try:
            T = fusion.MTableau.from_json(json.loads(args.tableau))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad tableau: {exc}") from None
        args.m, args.n = T.shape.m, T.n
    m = None if args.affine else (args.m if args.m is not None else 1)
    n = args.n if args.n is not None else 2
    if m is not None and m < 1:
        raise UsageError("--m must be at least 1")
    if n < 0:
        raise UsageError("--n must be non-negative")
    cfg = JobConfig(m, n, args.command, q_special=args.q_special, e=args.e, seed=args.seed, json=args.json, force=args.force)
    cfg.output = args.output
    if args.D not in (None, "generic"):
        cfg.D = _scalar(args.D)
    if args.mu not in (None, "generic"):
        cfg.mu = parse_bindings(args.mu, "mu")
    if args.gamma is not None or args.command == "weights":
        cfg.gamma = parse_gamma(args.gamma, m)
    return cfg


def desk_guard(cfg: JobConfig, err) -> None:
    if cfg.m is None:
        print(f"signature H(inf,1,{cfg.n}): infinite dimension, desk limit n <= {AFFINE_DESK_N}", file=err)
        if cfg.n > AFFINE_DESK_N and not cfg.force:
            raise UsageError(f"n = {cfg.n} exceeds the affine desk limit; pass --force to run anyway")
        return
    dim = cfg.m**cfg.n * factorial(cfg.n)
    print(f"signature H({cfg.m},1,{cfg.n}): dimension m^n n! = {dim}", file=err)
    if dim > DESK_LIMIT and not cfg.force:
        raise UsageError(f"dimension {dim} exceeds {DESK_LIMIT}; pass --force to run anyway")


def render_text(command: str, result: Any) -> str:
    if command in ("reduce", "mul"):
        terms = result["terms"]
        if not terms:
            return "0"
        return "\n".join(f"{_text_scalar(t['coeff'])}  *  {t['layers']}" for t in terms)
    if command == "trace":
        return _text_scalar(result["markov_trace"])
    if command == "weights":
        lines = []
        for r in result["weights"]:
            lines.append(f"{r['lambda']}: w = {_text_scalar(r['w'])}; wtilde = {_text_scalar(r['wtilde'])}")
        return "\n".join(lines)
    if command == "verify":
        lines = []
        for s in result["suites"]:
            for c in s["checks"]:
                lines.append(f"[{'PASS' if c['ok'] else 'FAIL'}] {s['suite']}: {c['identity']}  ({c['anchor']})")
            for note in s.get("skipped", []):
                lines.append(f"[SKIP] {s['suite']}: {note}")
        lines.append("all identities hold" if result["ok"] else "some identities FAILED")
        return "\n".join(lines)
    if command == "normal-form":
        return f"{result['normal_form']}  word: {result.get('reduced_word', result['word'])}"
    return json.dumps(result, sort_keys=True, indent=2)


def main(argv: Sequence[str] | None = None, *, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        desk_guard(cfg, err)
        result, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (ValueError, PoleError, ZeroDivisionError, KeyError) as exc:
        print(f"error in {args.command}: {exc}", file=err)
        return 2
    text = json.dumps(result, sort_keys=True, indent=2) if cfg.json else render_text(args.command, result)
    if cfg.output is not None:
        cfg.output.write_text(text + "\n")
    else:
        print(text, file=out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
