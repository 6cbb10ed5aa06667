"""Command-line interface: ``orchardnet <command> ...``.

Exit status is 0 for success or a positive answer, 1 for a negative answer
(not valid, not orchard, not isomorphic) and 2 for errors.  Errors go to
standard error as ``orchardnet: error[<category>]: <message>``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures
from .cherries import is_orchard
from .enewick import parse_enewick, parse_enewick_digraph, write_dot, write_enewick
from .errors import ENewickError, InvalidNetwork, NetworkError, NotOrchardInput, UnknownLabel
from .exhibit import exhibit, trinet_key, trinet_set
from .generator import random_orchard
from .isomorphism import are_isomorphic, trinet_sets_equal
from .network import is_recoverable, validate
from .reconstruct import construct_orchard

TRINET_SUFFIX = ".enwk"


class CliError(Exception):
    def __init__(self, category: str, message: str):
        self.category = category
        super().__init__(message)


class _Out:
    def __init__(self, args):
        self.fmt = args.format
        self.quiet = args.quiet

    def say(self, text: str) -> None:
        """Informational line; suppressed by ``--quiet``."""
        if not self.quiet:
            sys.stdout.write(text.rstrip("\n") + "\n")

    def network(self, net, name: str = "network") -> None:
        sys.stdout.write(render(net, self.fmt, name))


def render(net, fmt: str, name: str = "network") -> str:
    if fmt == "dot":
        return write_dot(net, name)
    return write_enewick(net) + "\n"


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return parse_enewick(_read_text(path))


def _labels(spec: str) -> list[str]:
    return [x.strip() for x in spec.split(",") if x.strip()]


def cmd_validate(args, out: _Out) -> int:
    g = parse_enewick_digraph(_read_text(args.file))
    report = validate(g)
    if not report.ok:
        for v in report.violations:
            out.say(f"violation: {v}")
        return 1
    net = parse_enewick(_read_text(args.file))
    out.say(f"valid: {net.n_leaves} leaves, {net.n_reticulations} reticulations, "
            f"{len(net.vertices)} vertices, recoverable={is_recoverable(net)}")
    return 0


def cmd_check_orchard(args, out: _Out) -> int:
    ok, sequence = is_orchard(_load(args.file))
    if not ok:
        out.say("not orchard")
        return 1
    out.say("orchard")
    for i, step in enumerate(sequence, 1):
        out.say(f"{i}. {step}")
    return 0


def cmd_exhibit(args, out: _Out) -> int:
    net = _load(args.file)
    labels = _labels(args.leaves)
    missing = sorted(set(labels) - net.leaf_labels)
    if missing or not labels:
        raise CliError("usage", f"unknown or empty leaf set: {missing or labels}")
    out.network(exhibit(net, labels))
    return 0


def cmd_trinets(args, out: _Out) -> int:
    net = _load(args.file)
    if net.n_leaves < 3:
        raise CliError("usage", "a trinet set needs at least three leaves")
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    ts = trinet_set(net)
    for key, trinet in ts.items():
        (target / (",".join(key) + TRINET_SUFFIX)).write_text(write_enewick(trinet) + "\n",
                                                               encoding="utf-8", newline="\n")
    out.say(f"wrote {len(ts)} trinets to {target}")
    return 0


def read_trinet_dir(directory: str) -> dict:
    """Load every ``*.enwk`` file in ``directory``, keyed by its leaf triple."""
    base = Path(directory)
    if not base.is_dir():
        raise CliError("io", f"{directory} is not a directory")
    ts = {}
    for path in sorted(base.glob("*" + TRINET_SUFFIX)):
        trinet = parse_enewick(path.read_text(encoding="utf-8"))
        try:
            key = trinet_key(trinet.leaf_labels)
        except ValueError:
            raise CliError("semantic", f"{path.name} does not hold a trinet") from None
        if key in ts:
            raise CliError("semantic", f"two files hold trinets on {key}")
        ts[key] = trinet
    return ts


def cmd_reconstruct(args, out: _Out) -> int:
    ts = read_trinet_dir(args.dir)
    if args.leaves_file:
        labels = [ln.strip() for ln in _read_text(args.leaves_file).splitlines() if ln.strip()]
    else:
        labels = sorted({x for key in ts for x in key})
    trace = (lambda msg: sys.stderr.write(msg + "\n")) if args.trace else None
    out.network(construct_orchard(labels, ts, trace=trace))
    return 0


def cmd_iso(args, out: _Out) -> int:
    same = are_isomorphic(_load(args.file1), _load(args.file2))
    out.say("isomorphic" if same else "not isomorphic")
    return 0 if same else 1


def cmd_gen(args, out: _Out) -> int:
    try:
        net = random_orchard(args.leaves, args.retics, args.seed)
    except ValueError as exc:
        raise CliError("usage", str(exc)) from None
    out.network(net)
    return 0


def cmd_counterexample(args, out: _Out) -> int:
    n1, n2 = fixtures.load("fig3_n1"), fixtures.load("fig3_n2")
    out.network(n1, "n1")
    out.network(n2, "n2")
    checks = {
        "both recoverable": is_recoverable(n1) and is_recoverable(n2),
        "not isomorphic": not are_isomorphic(n1, n2),
        "equal trinet sets": trinet_sets_equal(trinet_set(n1), trinet_set(n2)),
        "neither orchard": not is_orchard(n1)[0] and not is_orchard(n2)[0],
    }
    for name, held in checks.items():
        out.say(f"{name}: {'yes' if held else 'no'}")
    return 0 if all(checks.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("enewick", "dot"), default=argparse.SUPPRESS,
                        help="output format for networks (default enewick)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only networks, no informational lines")
    common.add_argument("--trace", action="store_true", default=argparse.SUPPRESS,
                        help="log reconstruction steps to standard error")

    parser = argparse.ArgumentParser(prog="orchardnet", parents=[common],
                                     description="Phylogenetic networks, trinets and orchard reconstruction.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the network axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check-orchard", parents=[common], help="decide orchard and print a picking sequence")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_orchard)

    p = sub.add_parser("exhibit", parents=[common], help="network exhibited on a leaf subset")
    p.add_argument("file")
    p.add_argument("--leaves", required=True, help="comma-separated leaf labels")
    p.set_defaults(func=cmd_exhibit)

    p = sub.add_parser("trinets", parents=[common], help="write every trinet to a directory")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_trinets)

    p = sub.add_parser("reconstruct", parents=[common], help="rebuild an orchard network from trinet files")
    p.add_argument("dir")
    p.add_argument("--leaves-file", help="one leaf label per line (default: labels found in the trinets)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("iso", parents=[common], help="test two networks for isomorphism")
    p.add_argument("file1")
    p.add_argument("file2")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("gen", parents=[common], help="generate a random orchard network")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--retics", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("counterexample", parents=[common],
                       help="two non-isomorphic networks with the same trinets")
    p.set_defaults(func=cmd_counterexample)
    return parser


def _category(exc: Exception) -> str:
    if isinstance(exc, CliError):
        return exc.category
    if isinstance(exc, ENewickError):
        return exc.category
    if isinstance(exc, InvalidNetwork):
        return "semantic"
    if isinstance(exc, NotOrchardInput):
        return "not-orchard-input"
    if isinstance(exc, UnknownLabel):
        return "usage"
    return "network"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("format", "enewick"), ("quiet", False), ("trace", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args, _Out(args))
    except (CliError, NetworkError) as exc:
        sys.stderr.write(f"orchardnet: error[{_category(exc)}]: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
