"""Command-line front end.

Exit codes: 0 relation holds / success, 1 relation fails (a certificate is
reported), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .channel import ChannelMatrix, chan_majorizes, chan_payoff
from .conditional import JointDistribution, cond_majorizes, cond_payoff
from .decomp import hlp_transfer
from .entropy import channel_entropy
from .errors import UncertaintyGamesError
from .formats import (
    dump_proof, load_proof, parse_object, read_json, verify_proof, write_json,
)
from .majorization import first_violation, game_payoff, ky_fan
from .numerics import GameMatrix, ProbVector, SubDistribution
from .sim import SimConfig, chan_win_probability, simulate_chan_game, simulate_cond_game, \
    simulate_dice_game

EXIT_OK, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


class UsageError(UncertaintyGamesError):
    pass


def _expect(obj, cls, path):
    if not isinstance(obj, cls):
        raise UsageError(f"{path}: expected {cls.__name__}, got {type(obj).__name__}")
    return obj


def _emit(args, doc, text):
    if args.json:
        sys.stdout.write(write_json(doc))
    else:
        print(text)


def cmd_check_maj(args):
    p = _expect(parse_object(args.a), ProbVector, args.a)
    q = _expect(parse_object(args.b), ProbVector, args.b)
    w = first_violation(p, q)
    if w is None:
        d = hlp_transfer(p, q)
        _emit(args, {"relation": "majorization", "holds": True,
                     "transfer": [[str(v) for v in row] for row in d]},
              f"{args.a} majorizes {args.b}")
        return EXIT_OK
    kp, kq = ky_fan(p, w), ky_fan(q, w)
    _emit(args, {"relation": "majorization", "holds": False, "w": w,
                 "payoff_a": str(kp), "payoff_b": str(kq)},
          f"{args.a} does not majorize {args.b}: w={w} game pays {kq} to {args.b} "
          f"but only {kp} to {args.a}")
    return EXIT_FAILS


def _check_pair(args, cls, decide, label):
    A = _expect(parse_object(args.a), cls, args.a)
    B = _expect(parse_object(args.b), cls, args.b)
    verdict, proof = decide(A, B)
    doc = dump_proof(proof, verified=True)
    if args.proof:
        write_json(doc, args.proof)
    if verdict:
        text = f"{label}: holds ({len(proof.terms)}-term witness)"
    else:
        pa, pb = proof.payoffs(A, B)
        text = f"{label}: fails; distinguishing game pays {pa} vs {pb}"
        doc = dict(doc, payoffs=[str(pa), str(pb)])
    _emit(args, dict(doc, holds=verdict), text)
    return EXIT_OK if verdict else EXIT_FAILS


def cmd_check_cmaj(args):
    return _check_pair(args, JointDistribution, cond_majorizes,
                       f"{args.b} <=_c {args.a}")


def cmd_check_chmaj(args):
    return _check_pair(args, ChannelMatrix, chan_majorizes, f"{args.a} <= {args.b}")


def cmd_entropy(args):
    N = _expect(parse_object(args.channel), ChannelMatrix, args.channel)
    bits, x = channel_entropy(N)
    _emit(args, {"bits": bits, "minimizing_input": x},
          f"{bits!r} bits, minimizing input {x}")
    return EXIT_OK


def _load_game(path, as_matrix):
    g = parse_object(path)
    if isinstance(g, SubDistribution):
        return GameMatrix.from_vector(g) if as_matrix else g
    if isinstance(g, GameMatrix):
        if not as_matrix:
            if g.cols != 1:
                raise UsageError(f"{path}: a dice game needs a single column")
            return SubDistribution(g.col(0))
        return g
    raise UsageError(f"{path}: expected a game, got {type(g).__name__}")


def _object_and_game(args):
    if args.dice:
        return "dice", _expect(parse_object(args.dice), ProbVector, args.dice), \
            _load_game(args.game, False)
    if args.joint:
        return "joint", _expect(parse_object(args.joint), JointDistribution, args.joint), \
            _load_game(args.game, True)
    return "channel", _expect(parse_object(args.channel), ChannelMatrix, args.channel), \
        _load_game(args.game, True)


def cmd_payoff(args):
    kind, obj, game = _object_and_game(args)
    value = {"dice": game_payoff, "joint": cond_payoff, "channel": chan_payoff}[kind](obj, game)
    _emit(args, {"kind": kind, "payoff": str(value), "float": float(value)},
          f"{value} (~{float(value):.12g})")
    return EXIT_OK


def cmd_simulate(args):
    kind, obj, game = _object_and_game(args)
    cfg = SimConfig(args.trials, args.seed)
    if kind == "dice":
        res, exact = simulate_dice_game(obj, game, cfg), game_payoff(obj, game)
    elif kind == "joint":
        res, exact = simulate_cond_game(obj, game, cfg), cond_payoff(obj, game)
    else:
        res, exact = simulate_chan_game(obj, game, cfg), chan_win_probability(obj, game)
    doc = {"kind": kind, "trials": res.trials, "wins": res.wins, "seed": cfg.seed,
           "estimate": res.estimate, "std_error": res.std_error,
           "analytic": str(exact), "z": res.z_score(float(exact))}
    _emit(args, doc, f"{res.estimate:.6f} +/- {res.std_error:.6f} over {res.trials} trials "
                     f"(analytic {exact} ~ {float(exact):.6f})")
    return EXIT_OK


def cmd_verify_proof(args):
    proof = load_proof(read_json(args.proof))
    A, B = parse_object(args.a), parse_object(args.b)
    ok = verify_proof(proof, A, B)
    _emit(args, {"verified": ok}, "proof verified" if ok else "proof REJECTED")
    return EXIT_OK if ok else EXIT_FAILS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncertainty-games",
        description="Decide majorization pre-orders exactly and play the matching games.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-maj", parents=[common], help="does A majorize B?")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_check_maj)

    for name, func, helptext in (
            ("check-cmaj", cmd_check_cmaj, "does joint P conditionally majorize Q?"),
            ("check-chmaj", cmd_check_chmaj, "is channel M majorized by channel N?")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--proof", help="write the witness or distinguishing game here")
        p.set_defaults(func=func)

    p = sub.add_parser("entropy", parents=[common], help="channel entropy in bits")
    p.add_argument("channel")
    p.set_defaults(func=cmd_entropy)

    for name, func in (("payoff", cmd_payoff), ("simulate", cmd_simulate)):
        p = sub.add_parser(name, parents=[common])
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--dice", metavar="FILE")
        group.add_argument("--joint", metavar="FILE")
        group.add_argument("--channel", metavar="FILE")
        p.add_argument("--game", required=True, metavar="FILE")
        if name == "simulate":
            p.add_argument("--trials", type=int, default=100_000)
            p.add_argument("--seed", default="0", help="decimal or 0x-prefixed hex")
        p.set_defaults(func=func)

    p = sub.add_parser("verify-proof", parents=[common], help="re-check a proof file")
    p.add_argument("proof")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_verify_proof)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except UncertaintyGamesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
