"""Command-line entry point: ``hcagen <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import ca, prng_eval
from .bits import format_bits, pack, parse_bits, read_sequence, unpack
from .boolfunc import (
    ExponentFamily,
    TraceMonomial,
    exponent,
    parity_check_poly,
    power_sequence,
    realize_as_lhca,
    truth_table,
)
from .gf2 import FieldElement, Gf2Poly, first_primitive, minimal_polynomial
from .lfsr import LfsrMachine, cycle_structure, lfsr_sequence
from .lhca import LhcaMachine, RuleVector, canonical_realization, char_poly, lhca_sequence, synthesize

DEFAULT_RNG_SEED = 0


class CliError(Exception):
    pass


def _poly(text: str) -> Gf2Poly:
    return Gf2Poly.parse(text)


def _hex_int(text: str) -> int:
    return int(text, 16)


def _emit_poly(p: Gf2Poly, args) -> str:
    return p.format(hex_form=getattr(args, "hex", False))


def _random_state(args, width: int) -> tuple[int, ...]:
    rng = random.Random(args.rng_seed)
    value = 0
    while value == 0:
        value = rng.getrandbits(width)
    return unpack(value, width)


def cmd_charpoly(args) -> str:
    return _emit_poly(char_poly(RuleVector.parse(args.rules)), args)


def cmd_synth(args) -> str:
    p = _poly(args.poly)
    vectors = synthesize(p)
    if args.verify:
        for v in vectors:
            got = char_poly(v)
            if got != p:
                raise CliError(f"verification failed: {v} has characteristic polynomial {got}")
    if args.json:
        return json.dumps({"poly": str(p), "realizations": [str(v) for v in vectors],
                           "canonical": str(vectors[0]), "verified": bool(args.verify)})
    lines = [str(v) for v in vectors]
    lines.append(f"canonical {vectors[0]}")
    if args.verify:
        lines.append(f"verified {p}")
    return "\n".join(lines)


def cmd_evolve(args) -> str:
    config = ca.Configuration.parse(args.seed, args.size, args.boundary)
    rows = ca.evolve(config, ca.Rule(args.rule), args.steps)
    if args.format == "pbm":
        return ca.diagram_pbm(rows).rstrip("\n")
    if args.format == "json":
        return json.dumps([str(r) for r in rows])
    return ca.diagram_text(rows).rstrip("\n")


def _gen_bits(args) -> tuple[int, ...]:
    sources = [s for s in ("rule", "lhca", "lfsr", "boolfunc") if getattr(args, s) is not None]
    if len(sources) != 1:
        raise CliError("choose exactly one of --rule, --lhca, --lfsr, --boolfunc")
    n = args.bits
    if args.rule is not None:
        if args.size is None:
            raise CliError("--rule needs --size")
        seed = (ca.Configuration.parse(args.seed, args.size).cells if args.seed
                else ca.Configuration.single(args.size).cells)
        cell = args.size // 2 if args.cell is None else args.cell
        return ca.cell_sequence(ca.Configuration(seed, args.boundary), ca.Rule(args.rule), cell, n)
    if args.lhca is not None:
        vector = RuleVector.parse(args.lhca)
        state = parse_bits(args.seed, len(vector)) if args.seed else _random_state(args, len(vector))
        return lhca_sequence(LhcaMachine.from_rules(vector, state), n, args.cell or 0)
    if args.lfsr is not None:
        p = _poly(args.lfsr)
        seed = _hex_int(args.seed) if args.seed else pack(_random_state(args, p.degree))
        return lfsr_sequence(LfsrMachine.from_seed(p, seed, args.form), n)
    f = _trace_monomial(args.boolfunc, args)
    return power_sequence(f, n)


def cmd_gen(args) -> str:
    return format_bits(_gen_bits(args))


def cmd_cycles(args) -> str:
    p = _poly(args.poly)
    if args.machine == "lfsr":
        machine = LfsrMachine(p, form=args.form)
    else:
        machine = LhcaMachine.from_rules(canonical_realization(p))
    structure = cycle_structure(machine, args.max_bits)
    return json.dumps({"machine": args.machine, "poly": str(p),
                       "cycles": [[length, count] for length, count in structure.items()]})


def cmd_scan_rules(args) -> str:
    report = prng_eval.scan_elementary_rules()
    rows = [{k: r[k] for k in ("rule", "linear", "nonlinear", "balanced", "ci1", "resilient1", "walsh")}
            for r in report.statistics["rows"]]
    if args.json:
        return json.dumps(rows)
    s = report.statistics
    return "\n".join([
        f"affine rules ({s['affine_count']}): {s['affine_rules']}",
        f"nonlinear and CI(1): {s['nonlinear_ci1']}",
        f"nonlinear and balanced CI(1): {s['nonlinear_resilient1']}",
    ])


def cmd_test(args) -> str:
    if args.infile == "-":
        data = sys.stdin.buffer.read()
    else:
        with open(args.infile, "rb") as fh:
            data = fh.read()
    seq = read_sequence(data)
    reports = prng_eval.battery(seq, args.battery.split(","))
    if args.json:
        return json.dumps([r.to_dict() for r in reports], sort_keys=True)
    lines = []
    for r in reports:
        verdict = "ERROR" if r.error else ("PASS" if r.passed else "FAIL")
        lines.append(f"{r.test:<10} {verdict}  {r.error or r.statistics}")
    return "\n".join(lines)


def cmd_minpoly(args) -> str:
    modulus = _poly(args.modulus)
    if args.power is not None:
        element = FieldElement(0b10, modulus) ** args.power
    else:
        element = FieldElement(_poly(args.element).bits, modulus)
    return _emit_poly(minimal_polynomial(element), args)


def _trace_monomial(family: str, args) -> TraceMonomial:
    if args.n is None:
        raise CliError("--n is required")
    s = exponent(ExponentFamily(family, args.n, args.i))
    modulus = _poly(args.modulus) if args.modulus else first_primitive(args.n)
    return TraceMonomial(FieldElement(_hex_int(args.a), modulus),
                         FieldElement(_hex_int(args.b), modulus), s)


def cmd_boolfunc(args) -> str:
    f = _trace_monomial(args.family, args)
    if args.table:
        return format_bits(truth_table(f).truth_table)
    if args.stream is not None:
        return format_bits(power_sequence(f, args.stream))
    if args.parity:
        return _emit_poly(parity_check_poly(f.s, f.modulus), args)
    if args.lhca:
        m = realize_as_lhca(f.s, f.modulus)
        return json.dumps({"blocks": [str(b) for b in m.blocks],
                           "char_poly": str(m.char_poly())})
    return json.dumps({"family": args.family, "n": f.n, "s": f.s, "modulus": str(f.modulus)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcagen", description=__doc__)
    parser.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED,
                        help="seed for any randomly chosen state (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a 90/150 rule vector")
    p.add_argument("--rules", required=True)
    p.add_argument("--hex", action="store_true")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("synth", help="90/150 realizations of an irreducible polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("evolve", help="time-space diagram of an elementary CA")
    p.add_argument("--rule", type=int, required=True)
    p.add_argument("--seed", required=True, help="0/1 string, or hex with --size")
    p.add_argument("--size", type=int)
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--boundary", choices=ca.BOUNDARIES, default="cyclic")
    p.add_argument("--format", choices=("text", "pbm", "json"), default="text")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("gen", help="emit a generator's output bits")
    src = p.add_argument_group("source")
    src.add_argument("--rule", type=int)
    src.add_argument("--lhca", help="rule vector")
    src.add_argument("--lfsr", help="connection polynomial")
    src.add_argument("--boolfunc", choices=("gold", "kasami", "welch", "niho"))
    p.add_argument("--seed", help="initial state; hex for --lfsr, 0/1 string otherwise")
    p.add_argument("--size", type=int, help="ring size for --rule")
    p.add_argument("--cell", type=int)
    p.add_argument("--boundary", choices=ca.BOUNDARIES, default="cyclic")
    p.add_argument("--form", choices=("fibonacci", "galois"), default="fibonacci")
    p.add_argument("--bits", type=int, required=True)
    _add_field_args(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cycles", help="cycle structure of a linear machine (JSON)")
    p.add_argument("--machine", choices=("lfsr", "lhca"), required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--form", choices=("fibonacci", "galois"), default="fibonacci")
    p.add_argument("--max-bits", type=int, default=20)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("scan-rules", help="linearity and correlation immunity of all 256 rules")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan_rules)

    p = sub.add_parser("test", help="run statistical tests on a bit sequence")
    p.add_argument("--in", dest="infile", required=True, help="file with raw bytes or ASCII 0/1; - for stdin")
    p.add_argument("--battery", default="fips", help="comma list of fips, chi2, serial, entropy, montecarlo")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("minpoly", help="minimal polynomial of a field element")
    p.add_argument("--modulus", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--element", help="element as a polynomial in x")
    g.add_argument("--power", type=int, help="use alpha^k, alpha = x mod the modulus")
    p.add_argument("--hex", action="store_true")
    p.set_defaults(func=cmd_minpoly)

    p = sub.add_parser("boolfunc", help="trace monomial Tr(a x + b x^s)")
    p.add_argument("--family", choices=("gold", "kasami", "welch", "niho"), required=True)
    _add_field_args(p)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--table", action="store_true")
    out.add_argument("--stream", type=int, metavar="N")
    out.add_argument("--parity", action="store_true")
    out.add_argument("--lhca", action="store_true")
    p.add_argument("--hex", action="store_true")
    p.set_defaults(func=cmd_boolfunc)
    return parser


def _add_field_args(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, help="field degree")
    p.add_argument("--i", type=int, help="family parameter (i, or r for niho)")
    p.add_argument("--a", default="1", help="hex coefficient a")
    p.add_argument("--b", default="1", help="hex coefficient b")
    p.add_argument("--modulus", help="primitive modulus (default: smallest of degree n)")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except (CliError, ValueError, ZeroDivisionError, IndexError, RuntimeError, OSError) as exc:
        print(f"hcagen {args.command}: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
