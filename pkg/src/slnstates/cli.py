"""Command-line front end.

Every command prints one JSON document (or a TSV table for ``states --tsv``).
Exit status: 0 on success, 1 on domain errors, 2 on parse errors; errors are
printed as ``{"error": {"type": ..., "message": ...}}``.

Environment: ``SLN_STATES_N`` supplies a default ``--N`` and
``SLN_STATES_SIGMA`` a default ``--sigma`` (comma-separated rationals).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from . import checks
from .circlering import CircleRing, change_of_basis_matrix, zeta_pairing_matrix
from .diagrams import (ColoredBraid, DiagramError, KnottedMoyGraph, ParseError, braid_closure_to_knotted,
                       parse_braid, parse_braid_file, parse_pd, parse_word)
from .invariants import chirality_certificate, cobordism_constant_state_transport, s_invariant
from .statecalc.core import State, StateError, enumerate_quasi_states, enumerate_states, h_grading, \
    mask_indices
from .statecalc import transport as tr
from .symkit import RootSet, frac_str

ENV_N = "SLN_STATES_N"
ENV_SIGMA = "SLN_STATES_SIGMA"


class DomainError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def _matrix(rows) -> List[List[str]]:
    return [[frac_str(x) for x in row] for row in rows]


# -- inputs -------------------------------------------------------------------------

def _int_list(text: str, what: str) -> List[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"{what} must be a comma-separated list of integers: {text!r}") from None


def _check_N(N: Optional[int]) -> Optional[int]:
    if N is not None and N < 2:
        raise ParseError(f"N must be at least 2, got {N}")
    return N


def _default_N(args) -> Optional[int]:
    if getattr(args, "N", None) is not None:
        return _check_N(args.N)
    env = os.environ.get(ENV_N)
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ParseError(f"{ENV_N} must be an integer, got {env!r}") from None
        return _check_N(n)
    return None


def _sigma(args, N: int) -> RootSet:
    text = getattr(args, "sigma", None) or os.environ.get(ENV_SIGMA)
    if not text:
        return RootSet.default(N)
    try:
        sigma = RootSet.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        if "distinct" in str(exc):
            raise DomainError(str(exc)) from None
        raise ParseError(f"--sigma must list rationals such as 0,1/2,-3: {text!r}") from None
    if sigma.N != N:
        raise DomainError(f"--sigma lists {sigma.N} roots but N = {N}")
    return sigma


def _read_text(args) -> str:
    if args.file == "-" or (args.file is None and not sys.stdin.isatty()):
        return sys.stdin.read()
    with open(args.file, encoding="utf-8") as fh:
        return fh.read()


def _braid_from_args(args, N: Optional[int]) -> ColoredBraid:
    if N is None:
        raise ParseError("--N (or SLN_STATES_N) is required with --braid")
    word = parse_word(args.braid)
    colors = _int_list(args.colors, "--colors") if args.colors else None
    b = args.b if args.b is not None else max((abs(g) for g in word), default=0) + 1
    if colors is None:
        raise ParseError("--colors is required with --braid")
    if len(colors) == 1:
        # a single color applies to every component
        from .diagrams import braid_cycles
        colors = colors * len(braid_cycles(b, word))
    return parse_braid(args.braid, colors, N, b)


def load_diagram(args) -> KnottedMoyGraph:
    """Exactly one of ``--braid``, ``--pd``, ``--file`` (``-`` or piped stdin)."""
    sources = [s for s in (args.braid is not None, args.pd is not None, args.file is not None) if s]
    if len(sources) > 1:
        raise ParseError("give exactly one input source (--braid, --pd or --file)")
    N = _default_N(args)
    if args.braid is not None:
        return braid_closure_to_knotted(_braid_from_args(args, N))
    if args.pd is not None:
        d = parse_pd(args.pd)
    else:
        if args.file is None and sys.stdin.isatty():
            raise ParseError("no input: use --braid, --pd, --file or pipe a diagram on stdin")
        text = _read_text(args)
        d = parse_pd(text) if text.lstrip().startswith("{") else braid_closure_to_knotted(parse_braid_file(text))
    _check_N(d.N)
    if N is not None and N != d.N:
        raise DomainError(f"--N {N} disagrees with the diagram's N = {d.N}")
    return d


def _input_flags(p: argparse.ArgumentParser, braid_colors: bool = True) -> None:
    p.add_argument("--braid", help="signed braid word, e.g. \"-1 -1 -1\"")
    p.add_argument("--b", type=int, help="strand count (default: largest generator + 1)")
    if braid_colors:
        p.add_argument("--colors", help="component colors, comma-separated (one value colors every component)")
    p.add_argument("--pd", help="colored PD JSON, inline")
    p.add_argument("--file", help="braid text file or PD JSON file ('-' for stdin)")
    p.add_argument("--N", type=int)
    p.add_argument("--sigma", help="root set, comma-separated rationals")


# -- commands -----------------------------------------------------------------------

def cmd_states(args) -> str:
    d = load_diagram(args)
    sigma = _sigma(args, d.N)
    if args.quasi:
        states = enumerate_quasi_states(d, sigma, jobs=args.jobs)
        h = [h_grading(d, s) for s in states]
        hist = {}
        for x in sorted(h):
            hist[x] = hist.get(x, 0) + 1
    else:
        res = enumerate_states(d, sigma, jobs=args.jobs)
        states, hist = res.states, res.histogram
    if args.tsv:
        return "h\tcount\n" + "".join(f"{k}\t{v}\n" for k, v in hist.items())
    out = {"count": len(states), "histogram": {str(k): v for k, v in hist.items()}}
    if not args.histogram:
        out["arcs"] = list(d.arc_ids)
        out["states"] = [s.root_indices() for s in states]
    if args.emit_pd:
        out["pd"] = d.to_pd()
    return _dump(out)


def cmd_circle_ring(args) -> str:
    N = _default_N(args)
    if N is None:
        raise ParseError("--N (or SLN_STATES_N) is required")
    ring = CircleRing.create(N, args.m, _sigma(args, N))
    out = {
        "N": N, "m": args.m, "sigma": ring.sigma.to_json(), "dimension": ring.dimension,
        "grading_shift": ring.grading_shift,
        "idempotents": [mask_indices(o) for o in ring.idempotent_index],
        "schur_basis": [list(p) for p in ring.schur_basis],
        "schur_values": _matrix(change_of_basis_matrix(ring, False)),
        "difference_schur_values": _matrix(change_of_basis_matrix(ring, True)),
        "zeta_pairing": _matrix(zeta_pairing_matrix(ring)),
    }
    return _dump(out)


def _uniform_braid(args, N: int, m: int) -> ColoredBraid:
    word = parse_word(args.braid)
    b = args.b if args.b is not None else max((abs(g) for g in word), default=0) + 1
    from .diagrams import braid_cycles
    return ColoredBraid(b, word, (m,) * len(braid_cycles(b, word)), N)


def cmd_sinv(args) -> str:
    N = _default_N(args)
    if N is None:
        raise ParseError("--N (or SLN_STATES_N) is required")
    res = s_invariant(_uniform_braid(args, N, args.m), args.m, N, args.genus_hint)
    return _dump(res.to_json())


def cmd_chirality(args) -> str:
    N = _default_N(args) or 2
    return _dump(chirality_certificate(_uniform_braid(args, N, 1)))


def cmd_verify(args) -> str:
    report = checks.run_suite(args.suite, args.seed)
    args._failed = not report.passed
    return _dump(report.to_json())


def _parse_state(d: KnottedMoyGraph, sigma: RootSet, args) -> State:
    states = enumerate_states(d, sigma).states
    if args.state_index is not None:
        if not 0 <= args.state_index < len(states):
            raise DomainError(f"state index {args.state_index} out of range 0..{len(states) - 1}")
        return states[args.state_index]
    if args.state is None:
        raise ParseError("give --state or --state-index")
    try:
        obj = json.loads(args.state)
        assignment = {int(k): sum(1 << int(i) for i in v) for k, v in obj.items()}
    except (ValueError, TypeError, AttributeError) as exc:
        raise ParseError(f"--state must be a JSON object arc -> root indices: {exc}") from None
    if set(assignment) != set(d.arc_ids):
        raise DomainError("--state must assign every arc")
    return State.from_dict(d, assignment)


def cmd_transport(args) -> str:
    if args.move == "cobordism":
        N = _default_N(args)
        if N is None or args.m is None or args.psi is None:
            raise ParseError("cobordism transport needs --N, --m and --psi")
        moves = [mv for mv in (args.moves or "").split(";") if mv.strip()]
        psi = [sum(1 << i for i in _int_list(part, "--psi")) for part in args.psi.split("|")]
        return _dump(cobordism_constant_state_transport(moves, psi, args.m, N).to_json())
    d = load_diagram(args)
    sigma = _sigma(args, d.N)
    psi = _parse_state(d, sigma, args)
    try:
        site = json.loads(args.site) if args.site else {}
        if not isinstance(site, dict):
            raise ValueError("not an object")
    except ValueError as exc:
        raise ParseError(f"--site must be a JSON object: {exc}") from None
    if args.move in ("chi0", "chi1"):
        site["sigma"] = sigma
    res = tr.transport(args.move, d, psi, **site)
    out = {"move": res.move, "count": res.count, "arcs": list(res.target.arc_ids),
           "states": [t.state.root_indices() for t in res.states],
           "certificates": [None if t.certificate is None else frac_str(t.certificate) for t in res.states],
           "target": res.target.to_pd()}
    return _dump(out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sln-states", description="State calculus for colored sl(N) link homology.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("states", help="enumerate states with their homological gradings")
    _input_flags(s)
    s.add_argument("--quasi", action="store_true", help="enumerate quasi-states instead")
    s.add_argument("--histogram", action="store_true", help="omit the state list")
    s.add_argument("--tsv", action="store_true", help="print the histogram as TSV")
    s.add_argument("--emit-pd", action="store_true", help="include the diagram as PD JSON")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_states)

    c = sub.add_parser("circle-ring", help="bases and pairing of the circle ring")
    c.add_argument("--N", type=int)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--sigma")
    c.set_defaults(func=cmd_circle_ring)

    r = sub.add_parser("sinv", help="colored Rasmussen invariant: exact value or bounds")
    r.add_argument("--braid", required=True)
    r.add_argument("--b", type=int)
    r.add_argument("--m", type=int, required=True)
    r.add_argument("--N", type=int)
    r.add_argument("--genus-hint", type=int)
    r.set_defaults(func=cmd_sinv)

    h = sub.add_parser("chirality", help="chirality certificate from a braid representative")
    h.add_argument("--braid", required=True)
    h.add_argument("--b", type=int)
    h.add_argument("--N", type=int)
    h.set_defaults(func=cmd_chirality)

    v = sub.add_parser("verify", help="run a property suite")
    v.add_argument("suite", choices=checks.SUITES)
    v.add_argument("--seed", type=int)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transport", help="states hit by a local move")
    t.add_argument("--move", required=True, choices=tr.MOVES + ("cobordism",))
    _input_flags(t)
    t.add_argument("--state", help="JSON object arc -> list of root indices")
    t.add_argument("--state-index", type=int, help="index into the sorted state list")
    t.add_argument("--site", help="JSON object naming the site arcs, e.g. {\"e\": 2, \"m\": 1}")
    t.add_argument("--moves", help="cobordism moves separated by ';', e.g. \"saddle_split 0; birth\"")
    t.add_argument("--psi", help="constant source subset per component, root indices joined by '|'")
    t.add_argument("--m", type=int)
    t.set_defaults(func=cmd_transport)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        text = args.func(args)
    except ParseError as exc:
        out.write(_dump({"error": {"type": "parse_error", "message": str(exc)}}) + "\n")
        return 2
    except (DomainError, DiagramError, StateError, ValueError, ArithmeticError, OSError) as exc:
        out.write(_dump({"error": {"type": "domain_error", "message": str(exc)}}) + "\n")
        return 1
    out.write(text if text.endswith("\n") else text + "\n")
    return 1 if getattr(args, "_failed", False) else 0


def main() -> None:
    sys.exit(run())
