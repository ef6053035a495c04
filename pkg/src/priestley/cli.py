"""Command-line front end.

Exit codes: 0 every check passed, 1 a counterexample was found (swapped with 0
by ``--expect-fail``), 2 invalid input, 3 engine bug or theorem-suite
disagreement.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import docs
from .compactify import (
    builtin_corpus, check_lift_properties, classify_pair, compactify_from_basis,
    compare_compactifications, eta0_finite, esakia_lemma_check, lift,
    random_down_directed_family, theorem_suite,
)
from .corpus import BUILTIN_PAIRS, random_poset
from .duality import is_p_morphism
from .pair import CompactificationPair
from .render import pair_to_dot, to_dot
from .rings import (
    DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_SUPPORT_BOUND, LEVELS, check_level, check_priestley_basis,
)
from .space import classify_report
from .verdict import EngineBug, InvalidInput, Verdict

OK, FOUND, INVALID, BUG = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    timings: dict | None = None
    dot: str | None = None

    def failed(self) -> bool:
        return any(not v for v in self.checks.values())

    def to_doc(self) -> dict:
        doc = {"format": docs.FORMAT, "command": self.command, "inputs": self.inputs,
               "settings": self.settings, "checks": docs.jsonable(self.checks),
               "result": docs.jsonable(self.result)}
        if self.timings is not None:
            doc["timings"] = self.timings
        return doc


# inputs

class Inputs:
    """Loads documents and records the sha256 of everything read."""

    def __init__(self, report: Report):
        self.report = report

    def load(self, ref: str) -> dict:
        if ref.startswith("builtin:"):
            name = ref.split(":", 1)[1]
            if name not in BUILTIN_PAIRS:
                raise InvalidInput(f"unknown builtin pair {name!r}; have {sorted(BUILTIN_PAIRS)}")
            doc = docs.pair_to(BUILTIN_PAIRS[name]())
            raw = json.dumps(doc, sort_keys=True).encode()
            self.report.inputs[ref] = hashlib.sha256(raw).hexdigest()
            return doc
        try:
            doc, digest = docs.load_json(ref)
        except OSError as exc:
            raise InvalidInput(f"{ref}: {exc.strerror}") from None
        self.report.inputs[ref] = digest
        return doc

    def pair(self, ref: str) -> CompactificationPair:
        return docs.pair_from(self.load(ref))

    def resolver(self, base: str):
        def resolve(name: str) -> CompactificationPair:
            if name in BUILTIN_PAIRS:
                return self.pair("builtin:" + name)
            return self.pair(str(Path(base).parent / name))
        return resolve


def _sweep(args) -> dict:
    return dict(support_bound=args.support_bound, samples=args.samples, seed=args.seed)


# subcommands

def cmd_classify(args, rep: Report, inp: Inputs):
    x = docs.space_from(inp.load(args.space))
    r = classify_report(x)
    rep.result["flags"] = r["flags"]
    rep.checks["separation"] = r["separation"]
    for k, v in sorted(r["continuity"].items()):
        rep.checks[f"continuity.{k}"] = v
    rep.checks["image_compact"] = r["image_compact"]
    rep.checks["clopen_upset_basis"] = r["basis"]
    rep.checks["order_closed"] = r["order_closed"]


def cmd_ring_check(args, rep: Report, inp: Inputs):
    ring = docs.ring_from(inp.load(args.ring), inp.resolver(args.ring))
    kw = _sweep(args) if args.level in ("heyting", "esakia", "nbasis") else {}
    rep.checks[args.level] = check_level(ring, args.level, **kw)


def cmd_pair_classify(args, rep: Report, inp: Inputs):
    p = inp.pair(args.pair)
    c = classify_pair(p, **_sweep(args))
    rep.result["flags"] = c["flags"]
    rep.checks.update(c["verdicts"])


def cmd_compactify(args, rep: Report, inp: Inputs):
    x = docs.space_from(inp.load(args.space))
    ring = docs.ring_from(inp.load(args.basis), inp.resolver(args.basis))
    if ring.base != x:
        raise InvalidInput("basis ring lives on a different space")
    v = check_priestley_basis(ring)
    rep.checks["priestley_basis"] = v
    if v:
        p = compactify_from_basis(x, ring)
        rep.result["pair"] = docs.pair_to(p)
        rep.result["flags"] = classify_pair(p, **_sweep(args))["flags"]


def cmd_eta0(args, rep: Report, inp: Inputs):
    x = docs.space_from(inp.load(args.space))
    p = eta0_finite(x)
    rep.result["pair"] = docs.pair_to(p)
    rep.result["flags"] = classify_pair(p, **_sweep(args))["flags"]


def cmd_compare(args, rep: Report, inp: Inputs):
    p1, p2 = inp.pair(args.smaller), inp.pair(args.larger)
    f = compare_compactifications(p1, p2)
    rep.checks["connected"] = Verdict.ok(1) if f is not None else Verdict.fail("no connecting map")
    if f is not None:
        rep.result["map"] = docs.map_to(f)
        rep.result["p_morphism"] = bool(is_p_morphism(f))


def cmd_lift(args, rep: Report, inp: Inputs):
    f = docs.map_doc_from(inp.load(args.map))
    res = lift(f)
    rep.result["eta0"] = docs.pair_to(res.eta0)
    rep.result["lift"] = docs.map_to(res.map)
    rep.checks.update(check_lift_properties(f, res))


def cmd_lemma_check(args, rep: Report, inp: Inputs):
    if args.doc:
        doc = inp.load(args.doc)
        x = docs.space_from(docs.need(doc, "space", "lemma"))
        fam = [docs.rset_from(x.carrier, s) for s in docs.need(doc, "family", "lemma")]
        rep.checks["esakia_lemma"] = esakia_lemma_check(x, fam)
        return
    if args.random is None:
        raise InvalidInput("lemma-check needs a document or --random N")
    rng = random.Random(args.seed)
    for i in range(args.random):
        x = random_poset(rng.randint(1, args.max_points), rng)
        fam = random_down_directed_family(x, rng)
        v = esakia_lemma_check(x, fam)
        if not v:
            rep.checks["esakia_lemma"] = Verdict.fail({"space": docs.space_to(x), "family": fam}, i + 1)
            return
    rep.checks["esakia_lemma"] = Verdict.ok(args.random)


def _corpus(args, inp: Inputs) -> list[CompactificationPair]:
    if args.corpus == "builtin":
        return builtin_corpus()
    doc = inp.load(args.corpus)
    if "pairs" in doc:
        return [docs.pair_from(d) for d in doc["pairs"]]
    return [docs.pair_from(doc)]


def cmd_suite(args, rep: Report, inp: Inputs):
    s = theorem_suite(_corpus(args, inp), **_sweep(args))
    rep.result = s
    rep.checks["rows_agree"] = (Verdict.ok(len(s["instances"])) if not s["disagreements"]
                                else Verdict.fail(s["disagreements"]))


def cmd_render(args, rep: Report, inp: Inputs):
    doc = inp.load(args.doc)
    if "X" in doc:
        p = docs.pair_from(doc)
        rep.dot = pair_to_dot(p)
    else:
        x = docs.space_from(doc)
        rep.dot = to_dot(x)


COMMANDS = {
    "classify": cmd_classify, "ring-check": cmd_ring_check, "pair-classify": cmd_pair_classify,
    "compactify": cmd_compactify, "eta0": cmd_eta0, "compare": cmd_compare, "lift": cmd_lift,
    "lemma-check": cmd_lemma_check, "suite": cmd_suite, "render": cmd_render,
}


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--expect-fail", action="store_true",
                        help="exit 0 when a counterexample is found and 1 when none is")
    common.add_argument("--support-bound", type=_nonneg, default=DEFAULT_SUPPORT_BOUND)
    common.add_argument("--samples", type=_nonneg, default=DEFAULT_SAMPLES)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--timings", action="store_true", help="add wall-clock times to the report")

    ap = argparse.ArgumentParser(prog="priestley", description="Ordered spaces, upset rings and compactifications.")
    sub = ap.add_subparsers(dest="command", required=True)
    s = sub.add_parser("classify", parents=[common], help="flags of a space document")
    s.add_argument("space")
    s = sub.add_parser("ring-check", parents=[common], help="check a ring at one level")
    s.add_argument("ring")
    s.add_argument("--level", choices=LEVELS, default="ring")
    s = sub.add_parser("pair-classify", parents=[common], help="classify a compactification pair")
    s.add_argument("pair", help="pair document or builtin:NAME")
    s = sub.add_parser("compactify", parents=[common], help="compactification from a finite Priestley basis")
    s.add_argument("space")
    s.add_argument("--basis", required=True)
    s = sub.add_parser("eta0", parents=[common], help="largest Priestley compactification of a finite space")
    s.add_argument("space")
    s = sub.add_parser("compare", parents=[common], help="connecting map Y2 -> Y1")
    s.add_argument("smaller")
    s.add_argument("larger")
    s = sub.add_parser("lift", parents=[common], help="lift a map to the largest compactification")
    s.add_argument("map")
    s = sub.add_parser("lemma-check", parents=[common], help="down-directed families of closed sets")
    s.add_argument("doc", nargs="?")
    s.add_argument("--random", type=_nonneg)
    s.add_argument("--max-points", type=int, default=7)
    s = sub.add_parser("suite", parents=[common], help="theorem suite over a corpus")
    s.add_argument("--corpus", default="builtin")
    s = sub.add_parser("render", parents=[common], help="DOT drawing of a space or pair")
    s.add_argument("doc")
    return ap


def _settings(args) -> dict:
    return {"support_bound": args.support_bound, "samples": args.samples, "seed": args.seed}


def format_text(rep: Report) -> str:
    lines = [f"command: {rep.command}"]
    for ref, digest in sorted(rep.inputs.items()):
        lines.append(f"input {ref} sha256={digest}")
    for k, v in rep.settings.items():
        lines.append(f"{k}: {v}")
    flags = rep.result.get("flags")
    if flags:
        for k, v in flags.items():
            lines.append(f"flag {k}: {str(v).lower()}")
    for k, v in rep.checks.items():
        line = f"check {k}: {v.label}"
        if v.witness is not None:
            line += " witness=" + json.dumps(docs.jsonable(v.witness), sort_keys=True)
        lines.append(line)
    rest = {k: v for k, v in rep.result.items() if k != "flags"}
    if rest:
        lines.append("result: " + json.dumps(docs.jsonable(rest), sort_keys=True))
    if rep.timings is not None:
        lines.append(f"elapsed_s: {rep.timings['elapsed_s']}")
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    rep = Report(args.command, settings=_settings(args))
    inp = Inputs(rep)
    start = time.perf_counter()
    try:
        if args.format == "dot" and args.command != "render":
            raise InvalidInput("--format dot is only for render")
        COMMANDS[args.command](args, rep, inp)
    except InvalidInput as exc:
        print(f"error: {exc}", file=err)
        return INVALID
    except EngineBug as exc:
        print(f"engine bug: {exc}", file=err)
        return BUG
    if args.timings:
        rep.timings = {"elapsed_s": round(time.perf_counter() - start, 3)}
    if args.command == "render" and args.format != "json":
        out.write(rep.dot)
        return OK
    if args.command == "render":
        rep.result["dot"] = rep.dot
    if args.format == "json":
        out.write(json.dumps(rep.to_doc(), sort_keys=True, indent=2) + "\n")
    else:
        out.write(format_text(rep))
    if args.command == "suite" and rep.failed():
        return BUG
    found = rep.failed()
    if args.expect_fail:
        return OK if found else FOUND
    return FOUND if found else OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
