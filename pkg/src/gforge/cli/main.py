"""Command-line entry point: ``gforge`` (REPL) and ``gforge run SCRIPT`` (batch)."""

from __future__ import annotations

import argparse
import signal
import sys

from .parser import is_complete
from .session import Session

PROMPT = "gforge> "
CONTINUE = "   ...> "


def _common(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--verbosity", type=int, default=default, metavar="N", help="initial verbosity level")
    parser.add_argument("--seed", type=int, default=default, metavar="N", help="seed for every randomized method")
    parser.add_argument("--timeout", type=float, default=default, metavar="S", help="per-command time limit in seconds")


def build_parser():
    ap = argparse.ArgumentParser(prog="gforge", description="Groebner basis toolkit with a small command language.")
    _common(ap, False)
    sub = ap.add_subparsers(dest="command")
    run = sub.add_parser("run", help="execute a script ('-' reads standard input)")
    _common(run, True)
    run.add_argument("script")
    return ap


def _install_sigint(session):
    """Ctrl-C cancels the running command; when idle it interrupts input as usual."""

    def handler(signum, frame):
        if session.busy:
            session.cancel()
        else:
            raise KeyboardInterrupt

    try:
        signal.signal(signal.SIGINT, handler)
    except ValueError:  # not the main thread
        pass


def run_script(path, session):
    if path == "-":
        text = sys.stdin.read()
        source = "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"gforge: cannot read {path}: {exc.strerror}", file=sys.stderr)
            return 2
        source = path
    session.execute(text, source)
    return 1 if session.errors else 0


def repl(session, stdin=None):
    stdin = stdin or sys.stdin
    interactive = stdin.isatty()
    if interactive:
        try:
            import readline  # noqa: F401  (line editing when available)
        except ImportError:
            pass
    buf = []
    lineno = 0
    start = 1
    while True:
        prompt = (CONTINUE if buf else PROMPT) if interactive else ""
        try:
            if interactive:
                line = input(prompt)
            else:
                line = stdin.readline()
                if not line:
                    break
                line = line.rstrip("\n")
        except EOFError:
            break
        except KeyboardInterrupt:
            print("\n(input discarded)", file=sys.stderr)
            buf = []
            continue
        lineno += 1
        if not buf:
            start = lineno
        buf.append(line)
        text = "\n".join(buf)
        if not is_complete(text):
            continue
        buf = []
        if text.strip():
            session.execute(text, "<input>", start)
    if buf:
        session.execute("\n".join(buf), "<input>", start)
    if interactive:
        print()
        return 0
    return 1 if session.errors else 0


def main(argv=None):
    ns = build_parser().parse_args(argv)
    session = Session(
        verbosity=ns.verbosity or 0,
        seed=ns.seed,
        timeout=ns.timeout,
    )
    _install_sigint(session)
    if ns.command == "run":
        return run_script(ns.script, session)
    return repl(session)


if __name__ == "__main__":
    sys.exit(main())
