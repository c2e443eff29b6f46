"""Command-line interface.

Plain text by default, ``--json`` for structured output.  Floats print with
12 significant digits.  Exit codes: 0 success, 1 domain errors, 2 failed
numerical certificates or invariant violations, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors
from .adele import Adele, FiniteAdele, LatticeScale, adele_metric, crt_decompose
from .adelic_maps import adelic_character, adelic_winding, winding_field
from .circle import lift, phase_turns, winding_number
from .gallery import (
    ADELIC_KIND,
    CIRCLE_KIND,
    UNITIZATION_KIND,
    gallery_entry,
    gallery_names,
    ramp_rows,
)
from .klimit import check_chains, check_multiplication_law
from .numeric import format_rational, parse_rational

_CERTIFICATE_ERRORS = (
    errors.PrecisionError,
    errors.LiftError,
    errors.ProximityError,
    errors.PeriodCertificateError,
    errors.WindingError,
    errors.TailError,
    errors.HomotopyError,
    errors.ScaleError,
    errors.NotAProjectionError,
)


class _Parser(argparse.ArgumentParser):
    """argparse variant that reports usage problems with exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def fmt_float(v: float) -> str:
    return f"{float(v):.12g}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    # components below the 12-digit display precision print as zero
    cutoff = 1e-12 * max(abs(z), 1e-300)
    re = z.real if abs(z.real) >= cutoff else 0.0
    im = z.imag if abs(z.imag) >= cutoff else 0.0
    sign = "+" if im >= 0 else "-"
    return f"{fmt_float(re)}{sign}{fmt_float(abs(im))}i"


def _read_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


_PARAM_FLAGS = (
    "q", "k", "n", "amplitude", "turns", "half_width", "phase",
    "max_level", "weight", "alpha1", "w1", "alpha2", "w2",
)


def _entry_from_args(args) -> "GalleryEntry":
    params = {}
    for name in _PARAM_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    return gallery_entry(args.map, **params)


def _add_map_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--map", required=True, help="gallery entry name")
    p.add_argument("--q", help="rational parameter a/b")
    p.add_argument("--k", type=int, help="integer power parameter")
    p.add_argument("--n", type=int, help="block scale parameter")
    p.add_argument("--amplitude", type=float)
    p.add_argument("--turns", type=int)
    p.add_argument("--half-width", dest="half_width", type=float)
    p.add_argument("--phase", type=float)
    p.add_argument("--max-level", dest="max_level", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--alpha1")
    p.add_argument("--w1", type=int)
    p.add_argument("--alpha2")
    p.add_argument("--w2", type=int)


def _build_parser() -> _Parser:
    parser = _Parser(prog="adelic", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("winding", help="winding number of a gallery map")
    _add_map_flags(p)
    p.add_argument("--epsilon", default="1/8", help="invariance tolerance, rational")
    p.add_argument("--n-max", dest="n_max", type=int, default=720)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("winding-field", help="per-coset windings of a unitization map")
    _add_map_flags(p)
    p.add_argument("--den-bound", dest="den_bound", type=int, required=True)
    p.add_argument("--tail", type=float, default=4.0)
    p.add_argument("--png", help="render a stem plot of the field")

    p = sub.add_parser("crt-decompose", help="coset representative of a finite adele")
    p.add_argument("--adele", required=True, help="JSON file with a support list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lift", help="tabulate a continuous lift as CSV")
    _add_map_flags(p)
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--step", type=float, default=0.25)
    p.add_argument("--base-point", dest="base_point", type=float)
    p.add_argument("--base-value", dest="base_value", type=float)
    p.add_argument("--csv", help="output path (default stdout)")
    p.add_argument("--png", help="render the lift graph")

    p = sub.add_parser("char", help="evaluate the additive character on an adele")
    p.add_argument("--adele", required=True, help="JSON file (real part optional)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("k1-limit", help="verify the covering multiplication law")
    p.add_argument("--check-chains", dest="limit", type=int, default=60)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("example-plot", help="tabulate (and render) the ramp graph")
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    p.add_argument("--png", help="figure path (default: alongside --out)")

    p = sub.add_parser("metric", help="adele distance between two JSON files")
    p.add_argument("--adele", required=True)
    p.add_argument("--adele2", required=True)
    p.add_argument("--json", action="store_true")

    return parser


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------


def _cmd_winding(args) -> int:
    entry = _entry_from_args(args)
    built = entry.build()
    epsilon = float(parse_rational(args.epsilon))
    if entry.kind == CIRCLE_KIND:
        w = winding_number(built, epsilon, args.n_max)
        if args.json:
            print(json.dumps({
                "value": format_rational(w.value),
                "period": w.period_used,
                "defect": w.lift_defect,
            }))
        else:
            print(format_rational(w.value))
        return 0
    if entry.kind == ADELIC_KIND:
        value = adelic_winding(built, epsilon, args.n_max)
        if args.json:
            print(json.dumps({"value": format_rational(value)}))
        else:
            print(format_rational(value))
        return 0
    raise errors.DomainError(
        "unitization maps have a winding field, not a single winding; "
        "use the winding-field command"
    )


def _cmd_winding_field(args) -> int:
    entry = _entry_from_args(args)
    if entry.kind != UNITIZATION_KIND:
        raise errors.DomainError(f"{entry.name!r} is not a unitization map")
    scale_n = args.n if args.n is not None else int(entry.params.get("n", 1))
    built = entry.build()
    field = winding_field(
        built, LatticeScale.of(scale_n), args.den_bound, args.tail
    )
    print(json.dumps(field.to_json()))
    if args.png:
        from .plotting import render_field_figure

        render_field_figure(field, args.png)
        print(f"wrote {args.png}", file=sys.stderr)
    return 0


def _cmd_crt(args) -> int:
    x = FiniteAdele.from_json(_read_json(args.adele))
    alpha = crt_decompose(x, LatticeScale.of(args.n))
    if args.json:
        print(json.dumps({"alpha": format_rational(alpha), "N": args.n}))
    else:
        print(format_rational(alpha))
    return 0


def _cmd_lift(args) -> int:
    entry = _entry_from_args(args)
    if entry.kind != CIRCLE_KIND:
        raise errors.DomainError("lift tabulation expects a circle map")
    f = entry.build()
    base_point = args.base_point if args.base_point is not None else args.lo
    if args.base_value is not None:
        base_value = args.base_value
    else:
        base_value = phase_turns(f(base_point))
    lf = lift(f, base_point, base_value, (args.lo, args.hi), args.step)
    if args.csv and args.csv != "-":
        with open(args.csv, "w", encoding="utf-8") as fh:
            lf.to_csv(fh)
        print(f"wrote {args.csv}", file=sys.stderr)
    else:
        lf.to_csv(sys.stdout)
    if args.png:
        from .plotting import render_lift_figure

        render_lift_figure(lf, args.png)
        print(f"wrote {args.png}", file=sys.stderr)
    return 0


def _cmd_char(args) -> int:
    a = Adele.from_json(_read_json(args.adele))
    z = adelic_character(a)
    if args.json:
        print(json.dumps({"re": z.real, "im": z.imag}))
    else:
        print(fmt_complex(z))
    return 0


def _cmd_k1(args) -> int:
    rows = check_multiplication_law(args.limit)
    chains = check_chains(args.limit)
    pair_status: dict[tuple[int, int], bool] = {}
    for n, m, _, ok in rows:
        pair_status[(n, m)] = pair_status.get((n, m), True) and ok
    chains_ok = all(c.ok for c in chains)
    if args.json:
        print(json.dumps({
            "pairs": [
                {"n": n, "m": m, "ok": ok} for (n, m), ok in sorted(pair_status.items())
            ],
            "chains_ok": chains_ok,
        }))
    else:
        print(f"{'n':>4} {'m':>4} status")
        for (n, m), ok in sorted(pair_status.items()):
            print(f"{n:>4} {m:>4} {'PASS' if ok else 'FAIL'}")
        print(f"chains ({len(chains)} checks): {'PASS' if chains_ok else 'FAIL'}")
    return 0 if all(pair_status.values()) and chains_ok else 2


def _cmd_example_plot(args) -> int:
    rows = ramp_rows(args.step)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("x,f\n")
            for x, v in rows:
                fh.write(f"{x:.12g},{v:.12g}\n")
        print(f"wrote {args.out}", file=sys.stderr)
        png = args.png
        if png is None:
            stem = args.out[:-4] if args.out.endswith(".csv") else args.out
            png = stem + ".png"
    else:
        sys.stdout.write("x,f\n")
        for x, v in rows:
            sys.stdout.write(f"{x:.12g},{v:.12g}\n")
        png = args.png
    if png:
        from .plotting import render_ramp_figure

        render_ramp_figure(rows, png)
        print(f"wrote {png}", file=sys.stderr)
    return 0


def _cmd_metric(args) -> int:
    a = Adele.from_json(_read_json(args.adele))
    b = Adele.from_json(_read_json(args.adele2))
    d = adele_metric(a, b)
    if args.json:
        print(json.dumps({
            "real": d.real,
            "finite": format_rational(d.finite),
            "value": d.value,
        }))
    else:
        print(fmt_float(d.value))
    return 0


_HANDLERS = {
    "winding": _cmd_winding,
    "winding-field": _cmd_winding_field,
    "crt-decompose": _cmd_crt,
    "lift": _cmd_lift,
    "char": _cmd_char,
    "k1-limit": _cmd_k1,
    "example-plot": _cmd_example_plot,
    "metric": _cmd_metric,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 64
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except errors.DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _CERTIFICATE_ERRORS as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:  # console script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
