"""``witt-trace`` command line.

Every input argument is a path to a JSON file or, for convenience, an inline
JSON literal (anything starting with ``[`` or ``{``).  Groups may also be
named: ``trivial``, ``C<n>``, ``S<n>``, ``D<n>`` (dihedral of order 2n).

Exit status: 0 on success, 1 on a domain error, 2 on unreadable input.
"""
import argparse
import json
import re
import sys

from . import serialize as ser
from .endo import char_poly, char_series, tr_trace
from .errors import IntegralityViolation, WittTraceError
from .hh0 import (
    GroupRing,
    augment,
    compute_hh0,
    cyclic_group,
    dihedral_group,
    reidemeister_series,
    symmetric_group,
    trivial_group,
)
from .rings import ZZ
from .series import DEFAULT_ORDER
from .tomdieck import TomDieckVector, convert, coordinate_change_polys
from .witt import ghost, series_to_witt, witt_to_series
from .zeta import lefschetz_numbers, zeta_exp, zeta_rational


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def read_input(arg):
    text = arg.strip()
    if text[:1] in "[{":
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ser.ParseError(f"inline JSON is malformed: {e}") from e
    return ser.load_file(arg)


_GROUP_RE = re.compile(r"^(trivial|[CSD]\d+)$")


def read_group(arg):
    m = _GROUP_RE.match(arg.strip())
    if m:
        name = m.group(1)
        if name == "trivial":
            return trivial_group()
        n = int(name[1:])
        if n < 1 or (name[0] == "S" and n > 6) or (name[0] == "D" and n < 2):
            raise ser.ParseError(f"unsupported group name {name!r}")
        return {"C": cyclic_group, "S": symmetric_group, "D": dihedral_group}[name[0]](n)
    return ser.group_from_json(read_input(arg))


# -- formatting ------------------------------------------------------------------

def _coords(v):
    return "(" + ", ".join(str(x) for x in v.values()) + ")"


def _witt_payload(v):
    return {"witt": v.to_json(), "ghost": ghost(v).to_json()}


def _witt_text(v):
    return [f"witt:  {_coords(v)}", f"ghost: {_coords(ghost(v))}"]


# -- subcommands -----------------------------------------------------------------
# Each returns (json_payload, text_lines).

def _binary(args, op):
    a = ser.witt_from_json(read_input(args.a), order=args.order_given)
    b = ser.witt_from_json(read_input(args.b), order=args.order_given)
    c = a + b if op == "add" else a * b
    return _witt_payload(c), _witt_text(c)


def cmd_witt_add(args):
    return _binary(args, "add")


def cmd_witt_mul(args):
    return _binary(args, "mul")


def cmd_ghost(args):
    v = ser.witt_from_json(read_input(args.vec), order=args.order_given)
    g = ghost(v)
    return {"ghost": g.to_json()}, [f"ghost: {_coords(g)}"]


def cmd_witt_from_series(args):
    s = ser.series_from_json(read_input(args.series), order=args.order_given)
    v = series_to_witt(s)
    return _witt_payload(v), [f"series: {s}"] + _witt_text(v)


def cmd_witt_to_series(args):
    v = ser.witt_from_json(read_input(args.vec), order=args.order_given)
    s = witt_to_series(v)
    return {"series": ser.series_to_json(s)}, [f"series: {s}"]


def cmd_char_poly(args):
    f = ser.matrix_from_json(read_input(args.matrix))
    coeffs = char_poly(f)
    s = char_series(f, max(args.order, len(coeffs) - 1))
    payload = {"ring": f.ring.to_json(), "det_1_minus_tf": [c.to_json() for c in coeffs]}
    return payload, [f"det(1 - t f) = {s.to_str().rsplit(' + O(', 1)[0]}"]


def cmd_tr_trace(args):
    f = ser.matrix_from_json(read_input(args.matrix))
    w = tr_trace(f, args.order)
    payload = _witt_payload(w)
    payload["series"] = ser.series_to_json(witt_to_series(w))
    return payload, _witt_text(w) + [f"series: {witt_to_series(w)}"]


def cmd_zeta(args):
    g = ser.graded_from_json(read_input(args.graded))
    N = args.order
    z = zeta_exp(g, N)
    payload = {"zeta": ser.series_to_json(z),
               "lefschetz": [v.to_json() for v in lefschetz_numbers(g, N)]}
    lines = [f"zeta: {z}"]
    if args.rational:
        num, den = zeta_rational(g, N)
        payload["numerator"] = ser.series_to_json(num)
        payload["denominator"] = ser.series_to_json(den)
        lines += [f"numerator:   {num}", f"denominator: {den}"]
    return payload, lines


def _twist(args, algebra):
    return None if args.twist is None else ser.twist_from_json(read_input(args.twist), algebra)


def cmd_reidemeister(args):
    A = GroupRing(read_group(args.group))
    phi = _twist(args, A)
    f = ser.algebra_matrix_from_json(read_input(args.matrix), A)
    series = reidemeister_series(f, phi, args.order)
    terms = []
    lines = []
    for n, c in enumerate(series, start=1):
        terms.append({"n": n, "hh0": c.parent.to_json(), "class": c.to_json(), "augmentation": augment(c)})
        lines.append(f"R(f^{n}) = {'0' if c.is_zero() else c}    in {c.parent.summary()}    augmentation {augment(c)}")
    return {"series": terms}, lines


def cmd_hh0(args):
    if (args.group is None) == (args.algebra is None):
        raise ser.ParseError("give exactly one of --group or --algebra")
    if args.group is not None:
        A = GroupRing(read_group(args.group))
    else:
        A = ser.algebra_from_json(read_input(args.algebra))
    H = compute_hh0(A, _twist(args, A))
    lines = [f"HH_0 = {H.summary()}", "basis: " + ", ".join(H.basis_labels)]
    if H.classes is not None:
        for lab, cls in zip(H.basis_labels, H.classes):
            lines.append(f"  [{lab}] = {{" + ", ".join(A.labels[g] for g in cls) + "}")
    return H.to_json(), lines


def _read_coord_vector(args):
    obj = read_input(args.vec)
    if args.source == "tomdieck":
        return ser.tomdieck_from_json(obj)
    if args.source == "ghost":
        return ser.ghost_from_json(obj, order=args.order_given)
    return ser.witt_from_json(obj, order=args.order_given)


def cmd_coord_convert(args):
    vec = _read_coord_vector(args)
    if getattr(vec, "ring", ZZ) != ZZ:
        raise ser.ParseError("coordinate conversion works over ZZ")
    out = convert(vec, args.source, args.target)
    if isinstance(out, TomDieckVector):
        text = "(" + ", ".join(str(c) for c in out.coords) + ")"
    else:
        text = _coords(out)
    return {args.target: out.to_json()}, [f"{args.target}: {text}"]


def cmd_coord_polys(args):
    C = coordinate_change_polys(args.max_n)
    a_names, b_names = C.a_names(), C.b_names()
    payload = {
        "max_n": C.max_n,
        "a_in_terms_of_b": {f"a{n}": C.a_polys[n].to_str(b_names) for n in range(1, C.max_n + 1)},
        "b_in_terms_of_a": {f"b{n}": C.b_polys[n].to_str(a_names) for n in range(1, C.max_n + 1)},
    }
    return payload, C.lines()


def cmd_verify(args):
    from .verify import run_all

    only = set(args.only.split(",")) if args.only else None
    results = run_all(args.seed, only, args.workers)
    payload = {"seed": args.seed, "results": [
        {"criterion": r.number, "title": r.title, "passed": r.passed, "checks": r.checked, "details": r.details}
        for r in results]}
    lines = []
    for r in results:
        lines.append(r.line())
        if not r.passed or args.verbose:
            lines.extend("    " + d for d in r.details)
    failed = [r.number for r in results if not r.passed]
    lines.append(f"{len(results) - len(failed)}/{len(results)} criteria passed" +
                 (f"; failing: {', '.join(failed)}" if failed else ""))
    return payload, lines, (1 if failed else 0)


# -- parser ------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--order", type=int, default=None,
                        help="truncation order N (default 12, or the length of a vector given as a list)")
    common.add_argument("--format", choices=("json", "pretty"), default="pretty")
    common.add_argument("--out", help="write the result here instead of stdout")

    p = _Parser(prog="witt-trace", description="Exact Witt vector, TR-trace and twisted HH_0 computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    for name, fn, what in (("witt-add", cmd_witt_add, "sum"), ("witt-mul", cmd_witt_mul, "product")):
        sp = add(name, fn, f"Witt vector {what}")
        sp.add_argument("a")
        sp.add_argument("b")
    add("ghost", cmd_ghost, "ghost coordinates of a Witt vector").add_argument("vec")
    add("witt-from-series", cmd_witt_from_series, "Witt vector of a unit power series").add_argument("series")
    add("witt-to-series", cmd_witt_to_series, "unit power series of a Witt vector").add_argument("vec")
    add("char-poly", cmd_char_poly, "det(1 - t f)").add_argument("--matrix", required=True)
    add("tr-trace", cmd_tr_trace, "TR-trace Witt vector of a matrix").add_argument("--matrix", required=True)
    sp = add("zeta", cmd_zeta, "Lefschetz zeta function of a graded endomorphism")
    sp.add_argument("--graded", required=True)
    sp.add_argument("--rational", action="store_true", help="also print numerator and denominator")
    sp = add("reidemeister", cmd_reidemeister, "Reidemeister trace series over a group ring")
    sp.add_argument("--group", required=True)
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--twist")
    sp = add("hh0", cmd_hh0, "twisted HH_0 of a group ring or finite-rank algebra")
    sp.add_argument("--group")
    sp.add_argument("--algebra")
    sp.add_argument("--twist")
    sp = add("coord-convert", cmd_coord_convert, "convert between tom Dieck, Witt and ghost coordinates")
    sp.add_argument("--from", dest="source", choices=("tomdieck", "witt", "ghost"), required=True)
    sp.add_argument("--to", dest="target", choices=("tomdieck", "witt", "ghost"), required=True)
    sp.add_argument("--vec", required=True)
    sp = add("coord-polys", cmd_coord_polys, "tom Dieck <-> Witt coordinate-change polynomials")
    sp.add_argument("--max-n", type=int, default=4)
    sp = add("verify", cmd_verify, "run the cross-module identity suites")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-v", "--verbose", action="store_true")
    return p


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    args.order_given = args.order
    args.order = DEFAULT_ORDER if args.order is None else args.order
    if args.order < 1:
        print("witt-trace: error: --order must be >= 1", file=sys.stderr)
        return 2
    if getattr(args, "max_n", 1) < 1:
        print("witt-trace: error: --max-n must be >= 1", file=sys.stderr)
        return 2
    if args.command == "verify" and args.seed is None:
        from .verify import DEFAULT_SEED

        args.seed = DEFAULT_SEED
    try:
        result = args.func(args)
    except ser.ParseError as e:
        print(f"witt-trace: input error: {e}", file=sys.stderr)
        return 2
    except IntegralityViolation as e:
        print(f"witt-trace: integrality violated: {e}", file=sys.stderr)
        return 1
    except (WittTraceError, ArithmeticError, ValueError, TypeError) as e:
        print(f"witt-trace: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    payload, lines = result[0], result[1]
    status = result[2] if len(result) > 2 else 0
    text = ser.dumps(payload) if args.format == "json" else "\n".join(lines) + "\n"
    _emit(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
