"""Command-line front end.

Every command prints compact JSON lines with ring elements as strings.
Exit codes: 0 success, 2 membership violation, 3 validation error,
4 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from .errors import RecurrenceError, ValidationError
from .fastval import term
from .hasse import divided_derivative
from .poly import Poly, RootData, find_roots
from .recurrence import RecurrenceSpec, build_basis, check_membership, extend, represent
from .rings import PrimeField, Ring, ring_from_json
from .sequences import BasisSeq, PrefixSeq

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_INVALID = 3
EXIT_USAGE = 4

# Past this N, term over Z or Q needs --allow-big.
BIG_N = 10**5
# Exhaustive root search is only offered below this modulus.
FIND_ROOTS_LIMIT = 2**20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def _elements(R: Ring, xs) -> list[str]:
    return [R.format(x) for x in xs]


class Problem:
    """A parsed problem file."""

    def __init__(self, ring: Ring, char_poly: Poly, roots=None, init=None, seq=None):
        if not char_poly.is_monic():
            raise ValidationError(f"characteristic polynomial {char_poly} is not monic")
        self.ring = ring
        self.spec = RecurrenceSpec(char_poly)
        self.roots: Optional[RootData] = roots
        self.init: Optional[PrefixSeq] = init
        self.seq: Optional[PrefixSeq] = seq
        if init is not None and len(init) != self.spec.order:
            raise ValidationError(f"init has {len(init)} terms, expected {self.spec.order}")

    @classmethod
    def from_json(cls, obj) -> "Problem":
        if not isinstance(obj, dict):
            raise ValidationError("problem file must be a JSON object")
        for key in ("ring", "char_poly"):
            if key not in obj:
                raise ValidationError(f"problem file lacks {key!r}")
        R = ring_from_json(obj["ring"])
        char_poly = Poly(R, _list(obj, "char_poly"))
        roots = None
        if obj.get("roots") is not None:
            pairs = []
            for entry in _list(obj, "roots"):
                if not isinstance(entry, list) or len(entry) != 2:
                    raise ValidationError(f"root entry {entry!r} is not an [alpha, multiplicity] pair")
                pairs.append((entry[0], _int(entry[1], "multiplicity")))
            roots = RootData(R, pairs)
        init = PrefixSeq(R, _list(obj, "init")) if obj.get("init") is not None else None
        seq = PrefixSeq(R, _list(obj, "seq")) if obj.get("seq") is not None else None
        return cls(R, char_poly, roots, init, seq)

    def to_json(self) -> dict:
        R = self.ring
        out: dict[str, Any] = {"ring": R.to_json(), "char_poly": _elements(R, self.spec.char_poly.coeffs)}
        if self.roots is not None:
            out["roots"] = [[R.format(a), mu] for a, mu in self.roots]
        if self.init is not None:
            out["init"] = _elements(R, self.init)
        if self.seq is not None:
            out["seq"] = _elements(R, self.seq)
        return out

    def initial_terms(self) -> PrefixSeq:
        if self.init is not None:
            return self.init
        n = self.spec.order
        if self.seq is not None and len(self.seq) >= n:
            return self.seq.truncate(n)
        raise ValidationError(f"problem needs init (or a seq with at least {n} terms)")

    def sequence(self) -> PrefixSeq:
        if self.seq is not None:
            return self.seq
        if self.init is not None:
            return self.init
        raise ValidationError("problem has neither seq nor init")

    def require_roots(self) -> RootData:
        if self.roots is None:
            raise ValidationError("problem file lacks 'roots'")
        return self.roots


def _list(obj, key) -> list:
    v = obj[key]
    if not isinstance(v, list):
        raise ValidationError(f"{key!r} must be a JSON array")
    return v


def _int(v, what: str) -> int:
    if isinstance(v, bool):
        raise ValidationError(f"{what} must be an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise ValidationError(f"{what} must be an integer, got {v!r}")


def load_problem(path: str, stdin=None) -> Problem:
    try:
        if path == "-":
            text = (stdin or sys.stdin).read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno}") from None
    return Problem.from_json(obj)


def parse_ring(text: str) -> Ring:
    """``int``, ``rat``, ``mod:P`` or a JSON ring descriptor."""
    t = text.strip()
    if t in ("int", "rat"):
        return ring_from_json(t)
    if t.startswith("mod:"):
        return PrimeField(_int(t[4:], "modulus"))
    try:
        obj = json.loads(t)
    except json.JSONDecodeError:
        raise ValidationError(f"unknown ring {text!r}") from None
    return ring_from_json(obj)


def parse_poly(R: Ring, text: str) -> Poly:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        raise ValidationError(f"polynomial must be a JSON array, got {text!r}") from None
    if not isinstance(obj, list):
        raise ValidationError("polynomial must be a JSON array of coefficients")
    return Poly(R, obj)


# -- commands --------------------------------------------------------------


def cmd_check(args, out) -> int:
    prob = load_problem(args.file, args.stdin)
    ok, bad = check_membership(prob.spec, prob.sequence())
    if ok:
        out.append({"ok": True})
        return EXIT_OK
    out.append({"ok": False, "first_violation": str(bad)})
    return EXIT_VIOLATION


def cmd_extend(args, out) -> int:
    prob = load_problem(args.file, args.stdin)
    if args.to < prob.spec.order:
        raise ValidationError(f"--to must be at least the order {prob.spec.order}")
    init = prob.initial_terms()
    prob.init = init
    prob.seq = extend(prob.spec, init, args.to)
    out.append(prob.to_json())
    return EXIT_OK


def cmd_basis(args, out) -> int:
    prob = load_problem(args.file, args.stdin)
    basis = build_basis(prob.spec, prob.require_roots())
    R = prob.ring
    for e in basis.elements:
        out.append({"alpha": R.format(e.alpha), "order": str(e.n)})
    out.append({"casoratian": R.format(basis.casoratian)})
    return EXIT_OK


def cmd_represent(args, out) -> int:
    prob = load_problem(args.file, args.stdin)
    basis = build_basis(prob.spec, prob.require_roots())
    s = prob.sequence()
    ok, bad = check_membership(prob.spec, s)
    if not ok:
        out.append({"ok": False, "first_violation": str(bad)})
        return EXIT_VIOLATION
    rep = represent(basis, s)
    R = prob.ring
    line = {"coords": [str(c) for c in rep.coords], "denominator": R.format(rep.denominator)}
    if args.reduced:
        line["reduced_denominator"] = R.format(rep.minimal_denominator)
    out.append(line)
    return EXIT_OK


def cmd_term(args, out) -> int:
    prob = load_problem(args.file, args.stdin)
    N = _int(args.N, "N")
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    if not isinstance(prob.ring, PrimeField) and N > BIG_N and not args.allow_big:
        raise UsageError(f"N > {BIG_N} over {prob.ring.to_json()} may produce a huge number; pass --allow-big")
    value = term(prob.spec, prob.initial_terms(), N)
    out.append({"term": prob.ring.format(value)})
    return EXIT_OK


def cmd_hasse(args, out) -> int:
    R = parse_ring(args.ring)
    p = parse_poly(R, args.poly)
    n = _int(args.n, "n")
    if n < -1:
        raise ValidationError(f"order must be >= -1, got {n}")
    out.append(_elements(R, divided_derivative(p, n).coeffs))
    return EXIT_OK


def cmd_basis_seq(args, out) -> int:
    R = parse_ring(args.ring)
    n = _int(args.n, "n")
    m = _int(args.len, "len")
    if n < 0 or m < 0:
        raise ValidationError("-n and --len must be >= 0")
    out.append(_elements(R, BasisSeq(R, args.alpha, n).prefix(m)))
    return EXIT_OK


def cmd_find_roots(args, out) -> int:
    if args.file is not None:
        prob = load_problem(args.file, args.stdin)
        R, p = prob.ring, prob.spec.char_poly
    elif args.ring is not None and args.poly is not None:
        R = parse_ring(args.ring)
        p = parse_poly(R, args.poly)
    else:
        raise UsageError("find-roots needs --file, or --ring together with --poly")
    if not isinstance(R, PrimeField):
        raise ValidationError("find-roots only works over a prime field")
    if R.p >= FIND_ROOTS_LIMIT:
        raise ValidationError(f"find-roots is limited to p < {FIND_ROOTS_LIMIT}")
    roots = find_roots(p)
    found = sum(mu for _, mu in roots)
    out.append({
        "roots": [[R.format(a), str(mu)] for a, mu in roots],
        "splits": found == p.degree,
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hasserec", description="Exact linear recurrences over Z, Q and F_p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--file", required=True, help="problem JSON, or - for stdin")
        return sp

    with_file("check", "check a sequence against the recurrence").set_defaults(func=cmd_check)
    sp = with_file("extend", "extend init to a given length")
    sp.add_argument("--to", type=int, required=True)
    sp.set_defaults(func=cmd_extend)
    with_file("basis", "list the closed-form solution basis").set_defaults(func=cmd_basis)
    sp = with_file("represent", "coordinates of a solution in the basis")
    sp.add_argument("--reduced", action="store_true", help="also print the lcm of coordinate denominators")
    sp.set_defaults(func=cmd_represent)
    sp = with_file("term", "N-th term by polynomial exponentiation")
    sp.add_argument("-N", required=True)
    sp.add_argument("--allow-big", action="store_true")
    sp.set_defaults(func=cmd_term)

    sp = sub.add_parser("hasse", help="divided derivative of a polynomial")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--poly", required=True, help='JSON array, lowest degree first, e.g. ["-1","-1","1"]')
    sp.add_argument("-n", required=True)
    sp.set_defaults(func=cmd_hasse)

    sp = sub.add_parser("basis-seq", help="prefix of s(alpha, n)")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("-n", required=True)
    sp.add_argument("--len", required=True)
    sp.set_defaults(func=cmd_basis_seq)

    sp = sub.add_parser("find-roots", help="exhaustive root search over F_p (p < 2^20)")
    sp.add_argument("--file")
    sp.add_argument("--ring")
    sp.add_argument("--poly")
    sp.set_defaults(func=cmd_find_roots)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    out: list = []
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        args.stdin = stdin
        code = args.func(args, out)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (RecurrenceError, ZeroDivisionError) as exc:
        msg = " ".join(str(exc).split()) or type(exc).__name__
        stderr.write(f"error: {type(exc).__name__}: {msg}\n")
        return EXIT_INVALID
    for line in out:
        stdout.write(_dump(line) + "\n")
    return code


def main() -> None:
    try:
        code = run()
    except SystemExit as exc:
        # --help exits through argparse
        code = exc.code if isinstance(exc.code, int) else 0
    sys.exit(code)
