"""Command line front-end.

Exit codes: 0 success, 2 invalid input (including malformed decks), 3 a failed
exact identity or assertion, 4 a deck that is not realizable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .decks import MultiVector, build_lift_matrix, build_operator_matrix, edge_deck, modified_deck, perturbed_deck
from .errors import (
    EdgeDeckError,
    Graph6ParseError,
    IdentityMismatchError,
    InvalidParametersError,
    MalformedDeckError,
    NotRealizableDeckError,
)
from .graph_core import ALLOW_LARGE_ENV, check_vertex_count, enumerate_classes, graph6_decode, graph6_encode, pair_count
from .johnson import minus_m_criterion, scan_vanishing, verify_spectrum
from .operator_algebra import (
    verify_deck_sum,
    verify_delta_polynomial,
    verify_inversion,
    verify_lk,
    verify_recursion,
)
from .reconstruction import kernel_report, reconstruct_edge_deck

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IDENTITY = 3
EXIT_NOT_REALIZABLE = 4

IDENTITIES = ("deck-sum", "recursion", "inversion", "delta-polynomial", "lk-polynomial")


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_enumerate(args) -> int:
    catalog = enumerate_classes(args.n, args.m, allow_large=args.allow_n7)
    codes = [graph6_encode(g) for g in catalog.graphs()]
    if args.format == "json":
        doc = catalog.to_json()
        doc["graph6"] = codes
        _emit(_dumps(doc), args.output)
    else:
        _emit("".join(c + "\n" for c in codes), args.output)
    return EXIT_OK


_DECKS = {"edge": edge_deck, "perturbed": perturbed_deck, "modified": modified_deck}


def cmd_deck(args) -> int:
    g = graph6_decode(args.graph6)
    check_vertex_count(g.n)
    vector = _DECKS[args.kind](g, args.i)
    if args.format == "json":
        n, m = vector.catalog.key
        _emit(_dumps({"n": n, "m": m, "r": 1, "multiset": vector.to_multiset()}), args.output)
    else:
        lines = [f"{code} ×{count}\n" for code, count in vector.items()]
        _emit("".join(lines) or "(empty multiset)\n", args.output)
    return EXIT_OK


def cmd_matrix(args) -> int:
    if args.kind == "lift":
        matrix = build_lift_matrix(args.n, args.m, args.i)
    else:
        matrix = build_operator_matrix(args.kind, args.n, args.m, args.i)
    _emit(_dumps(matrix.to_json()), args.output)
    return EXIT_OK


def _identity_runs(identity: str, n: int, m_values, k_value):
    for m in m_values:
        if identity == "recursion":
            ks = [k_value] if k_value is not None else [1, 2, 3]
            for i in ks:
                yield lambda m=m, i=i: verify_recursion(n, m, i)
        elif identity == "delta-polynomial":
            ks = [k_value] if k_value is not None else range(1, min(m, 4) + 1)
            for i in ks:
                yield lambda m=m, i=i: verify_delta_polynomial(n, m, i)
        else:
            fn = {"deck-sum": verify_deck_sum, "inversion": verify_inversion, "lk-polynomial": verify_lk}[identity]
            ks = [k_value] if k_value is not None else range(0, min(m, 4) + 1)
            for k in ks:
                yield lambda fn=fn, m=m, k=k: fn(n, m, k)


def cmd_verify(args) -> int:
    check_vertex_count(args.n)
    N = pair_count(args.n)
    m_values = [args.m] if args.m is not None else range(N + 1)
    identities = IDENTITIES if args.identity == "all" else (args.identity,)
    reports = [run() for identity in identities for run in _identity_runs(identity, args.n, m_values, args.k)]
    if args.format == "json":
        _emit(_dumps([r.to_json() for r in reports]), args.output)
    else:
        rows = [f"{'identity':<18} {'parameters':<22} verdict"]
        for r in reports:
            params = " ".join(f"{key}={value}" for key, value in r.params.items())
            rows.append(f"{r.identity:<18} {params:<22} {r.verdict}")
        _emit("\n".join(rows) + "\n", args.output)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_IDENTITY


def _read_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDeckError(f"deck file is not valid JSON: {exc}") from exc


def load_deck(doc) -> tuple[MultiVector, int | None]:
    """Validate ``{"n", "m", "r", "multiset"}`` and return the vector and r."""
    if not isinstance(doc, dict):
        raise MalformedDeckError("deck JSON must be an object")
    missing = [key for key in ("n", "m", "multiset") if key not in doc]
    if missing:
        raise MalformedDeckError(f"deck JSON lacks {', '.join(missing)}")
    n, m, r = doc["n"], doc["m"], doc.get("r")
    for name, value in (("n", n), ("m", m)) + ((("r", r),) if r is not None else ()):
        if not isinstance(value, int) or isinstance(value, bool):
            raise MalformedDeckError(f"{name} must be an integer, got {value!r}")
    if not isinstance(doc["multiset"], dict):
        raise MalformedDeckError("multiset must map graph6 strings to counts")
    try:
        vector = MultiVector.from_multiset(n, m, doc["multiset"])
    except Graph6ParseError as exc:
        raise MalformedDeckError(str(exc)) from exc
    except InvalidParametersError as exc:
        raise MalformedDeckError(str(exc)) from exc
    return vector, r


def cmd_reconstruct(args) -> int:
    vector, r = load_deck(_read_json(args.input))
    result = reconstruct_edge_deck(vector, r)
    n, m = vector.catalog.key
    N = pair_count(n)
    per = m * (N - m + 1)
    doc = {
        "n": n,
        "m": m - 1 if m else None,
        "r": r if r is not None else (vector.total // per if per else 0),
        "multiset": result.recovered.to_multiset(),
        "route": result.route,
    }
    _emit(_dumps(doc), args.output)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    report = verify_spectrum(args.N, args.m, args.k, allow_large=args.allow_large)
    doc = report.to_json()
    if args.k == 1:
        crit = minus_m_criterion(args.N, args.m)
        doc["minus_m_eigenvalue_of_J"] = {"holds": crit.holds, "witness_j": crit.witness_j}
    _emit(_dumps(doc), args.output)
    return EXIT_OK


def cmd_kernel(args) -> int:
    _emit(_dumps(kernel_report(args.n, args.m).to_json()), args.output)
    return EXIT_OK


def cmd_scan(args) -> int:
    summary = scan_vanishing(args.Nmax, args.kmax, args.Nmin)
    header = {"tool": "edgedeck", "version": __version__, "command": "scan",
              "N_min": args.Nmin, "N_max": args.Nmax, "k_max": args.kmax}
    _emit(summary.jsonl(header), args.output)
    k1 = summary.hits_for(1)
    return EXIT_IDENTITY if k1 else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgedeck",
        description="Exact edge-deck operators, reconstruction and Johnson spectra for small graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, formats=True):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        if formats:
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("enumerate", help="list the isomorphism classes of (n, m)-graphs as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--allow-n7", action="store_true", help="permit n = 7 (slow)")
    add_output(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("deck", help="edge, perturbed or modified deck of one graph")
    p.add_argument("--graph6", "-g", required=True)
    p.add_argument("--kind", choices=tuple(_DECKS), required=True)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--allow-n7", action="store_true")
    add_output(p)
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("matrix", help="operator matrix as JSON")
    p.add_argument("--kind", choices=("delta", "perturbed", "edgedeck", "lift"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, default=1)
    add_output(p, formats=False)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", help="check operator identities exactly; exit 3 on any mismatch")
    p.add_argument("--identity", choices=IDENTITIES + ("all",), default="all")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, help="single edge count (default: every m)")
    p.add_argument("--k", "--i", dest="k", type=int, help="single depth (default: the standard range)")
    add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reconstruct", help="1-edge deck from a modified 1-deck JSON")
    p.add_argument("--input", "-i", default="-", help="deck JSON file ('-' for stdin)")
    add_output(p, formats=False)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("spectrum", help="certify the closed-form spectrum of B by annihilation")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--allow-large", action="store_true", help="lift the C(N, m) <= 20000 guard")
    add_output(p, formats=False)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("kernel", help="exact ranks of Delta_1 and d_1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    add_output(p, formats=False)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("scan", help="search closed-form eigenvalues for zeros when 2m - k + 1 > N (JSON lines)")
    p.add_argument("--Nmax", type=int, default=30)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--Nmin", type=int, default=1)
    add_output(p, formats=False)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "allow_n7", False) or getattr(args, "allow_large", False):
        os.environ[ALLOW_LARGE_ENV] = "1"
    try:
        return args.func(args)
    except MalformedDeckError as exc:
        print(f"edgedeck: malformed deck: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotRealizableDeckError as exc:
        print(f"edgedeck: not a realizable deck: {exc}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except IdentityMismatchError as exc:
        print(f"edgedeck: identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except (InvalidParametersError, Graph6ParseError, OSError) as exc:
        print(f"edgedeck: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except EdgeDeckError as exc:
        print(f"edgedeck: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
