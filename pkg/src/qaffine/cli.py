"""Command-line front end.

Input is a JSON document::

    {"n": 3, "m": 2, "parameters": ["lambda1", "lambda2"],
     "L": [[[0,1,0],[-1,0,0],[0,0,0]], [[0,0,1],[0,0,0],[-1,0,0]]],
     "mu": [1, "alpha"]}

``r`` (a single antisymmetric matrix) may replace ``L``.  Optional keys:
``f`` (lifting polynomials in ``z``) and ``toric`` with ``d``, ``degrees``
and ``L``.  Reports go to stdout as JSON with a fixed key order.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import AlgebraElement
from .bichar import Bicharacter, BicharacterError, from_uniparameter, validate
from .limit import (FFamily, LimitFormulaError, explicit_family, monomial_family, poisson_bracket,
                    poisson_matrix, quadratic_family, verify_limit, verify_limit_box)
from .spectrum import bitstring, cover_edges, full_spectrum, hasse_diagram, symplectic_core
from .toric import GradingData, diagram_commute_check, grading, pullback

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

EXAMPLE3 = """{
  "n": 3,
  "m": 2,
  "parameters": ["lambda1", "lambda2"],
  "L": [
    [[0, 1, 0], [-1, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
  ],
  "mu": [1, "alpha"],
  "f": ["z", "1 + alpha*(z - 1)"]
}
"""

EXAMPLE3_POINTS = ((1, 0, 0), (0, 2, 3), (2, 3, 0), (2, 0, 3), (1, 2, 3))


class SpecError(ValueError):
    """Invalid input; ``str()`` carries the location."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.message, self.line, self.field = message, line, field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


@dataclass
class InputSpec:
    n: int
    m: int
    parameter_names: tuple
    bichar: Bicharacter
    mu: Optional[list] = None
    r: Optional[tuple] = None
    f: Optional[list] = None
    toric: Optional[GradingData] = None
    raw: dict = field(default_factory=dict)

    def family(self) -> FFamily:
        if self.f is not None:
            return explicit_family(self.f, self.mu if self.mu and "symbolic" not in self.mu else None)
        if self.r is not None:
            return monomial_family([1])
        return quadratic_family(self.m)


def _line_of(text: str, key: str) -> Optional[int]:
    needle = f'"{key}"'
    for no, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return no
    return None


def _int_matrix(value, name: str, text: str):
    err = SpecError("expected a list of integer rows", _line_of(text, name), name)
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise err
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in value for x in r):
        raise err
    return value


def _mu_entry(v, k: int, text: str):
    if v == "symbolic" or v is None:
        return "symbolic"
    if isinstance(v, bool):
        raise SpecError(f"mu[{k}] must be \"symbolic\", a symbol name or a rational", _line_of(text, "mu"), "mu")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            if v.isidentifier():
                return v
    raise SpecError(f"mu[{k}] must be \"symbolic\", a symbol name or a rational", _line_of(text, "mu"), "mu")


def parse_spec(text: str) -> InputSpec:
    if not text.strip():
        raise SpecError("syntax error: empty input", 1)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"syntax error: {exc.msg} (column {exc.colno})", exc.lineno) from None
    if not isinstance(data, dict):
        raise SpecError("syntax error: top level must be an object", 1)
    known = {"n", "m", "parameters", "L", "r", "mu", "f", "toric"}
    for key in data:
        if key not in known:
            raise SpecError("unknown field", _line_of(text, key), key)
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecError("n must be a positive integer", _line_of(text, "n"), "n")
    if ("L" in data) == ("r" in data):
        raise SpecError("'L' and 'r' are mutually exclusive; give exactly one",
                        _line_of(text, "L") or _line_of(text, "r"), "L/r")

    r = None
    try:
        if "r" in data:
            r = tuple(tuple(row) for row in _int_matrix(data["r"], "r", text))
            b = from_uniparameter(r, name=(data.get("parameters") or ["q"])[0])
        else:
            mats = data["L"]
            if not isinstance(mats, list):
                raise SpecError("expected a list of matrices", _line_of(text, "L"), "L")
            mats = [_int_matrix(M, "L", text) for M in mats]
            b = validate(mats, n, data.get("parameters"))
    except BicharacterError as exc:
        key = "r" if "r" in data else "L" if "parameters" not in str(exc) else "parameters"
        raise SpecError(str(exc), _line_of(text, key), key) from None
    if b.n != n:
        raise SpecError(f"matrix size does not match n = {n}", _line_of(text, "r"), "r")
    m = data.get("m", b.m)
    if m != b.m:
        raise SpecError(f"m = {m} but {b.m} matrices were given", _line_of(text, "m"), "m")

    mu = None
    if "mu" in data:
        if not isinstance(data["mu"], list) or len(data["mu"]) != b.m:
            raise SpecError(f"expected a list of {b.m} entries", _line_of(text, "mu"), "mu")
        mu = [_mu_entry(v, k, text) for k, v in enumerate(data["mu"])]

    f = None
    if "f" in data:
        if not isinstance(data["f"], list) or len(data["f"]) != b.m or not all(isinstance(p, str) for p in data["f"]):
            raise SpecError(f"expected a list of {b.m} polynomial strings", _line_of(text, "f"), "f")
        f = data["f"]
        try:
            explicit_family(f, mu if mu and "symbolic" not in mu else None)
        except Exception as exc:  # sympy parse errors or a mu/f mismatch
            raise SpecError(f"invalid lifting polynomials: {exc}", _line_of(text, "f"), "f") from None

    tor = None
    if "toric" in data:
        t = data["toric"]
        if not isinstance(t, dict) or not {"degrees", "L"} <= t.keys():
            raise SpecError("expected an object with 'degrees' and 'L'", _line_of(text, "toric"), "toric")
        D = _int_matrix(t["degrees"], "degrees", text)
        d = t.get("d", len(D))
        if d != len(D) or any(len(row) != n for row in D):
            raise SpecError(f"degrees must be a {d}x{n} matrix", _line_of(text, "degrees"), "toric.degrees")
        try:
            tor = grading(D, [_int_matrix(M, "L", text) for M in t["L"]], t.get("parameters"))
        except (BicharacterError, ValueError) as exc:
            raise SpecError(str(exc), _line_of(text, "toric"), "toric.L") from None

    return InputSpec(n, b.m, b.names, b, mu, r, f, tor, data)


# --- commands -------------------------------------------------------------

def _matrix_report(spec: InputSpec) -> dict:
    U = poisson_matrix(spec.bichar, spec.mu)
    return {"mu": [str(v) for v in (spec.mu or ["symbolic"] * spec.m)], "matrix": U.rows()}


def _echo(spec: InputSpec) -> dict:
    out = {"n": spec.n, "m": spec.m, "parameters": list(spec.parameter_names)}
    if spec.r is not None:
        out["r"] = [list(row) for row in spec.r]
    else:
        out["L"] = [[list(row) for row in M] for M in spec.bichar.L]
    if spec.mu is not None:
        out["mu"] = [str(v) for v in spec.mu]
    if spec.f is not None:
        out["f"] = list(spec.f)
    return out


def cmd_analyze(spec: InputSpec, args) -> tuple[dict, int]:
    strata = full_spectrum(spec.bichar)
    return {
        "input": _echo(spec),
        "strata": [r.as_dict() for r in strata],
        "rank_vector": [r.rank for r in strata],
        "cover_edges": [[bitstring(spec.n, x), bitstring(spec.n, y)] for x, y in cover_edges(spec.bichar)],
        "poisson_matrix": _matrix_report(spec),
    }, EXIT_OK


def _all_vectors(n: int, bound: int):
    if n == 0:
        yield ()
        return
    for head in range(bound + 1):
        for tail in _all_vectors(n - 1, bound):
            yield (head,) + tail


def cmd_limit(spec: InputSpec, args) -> tuple[dict, int]:
    fam = spec.family()
    b = spec.bichar
    pairs = []
    ok = True
    for i in range(b.n):
        for j in range(i + 1, b.n):
            s = tuple(int(k == i) for k in range(b.n))
            t = tuple(int(k == j) for k in range(b.n))
            rep = verify_limit(b, s, t, fam, strict=False)
            ok &= rep.passed
            pairs.append({"i": i + 1, "j": j + 1, "sigma_tilde": rep.sigma,
                          "derivative_at_1": rep.derivative, "expected": rep.expected,
                          "passed": rep.passed})
    box = verify_limit_box(b, args.max_degree, fam)
    checked, failures = box.pairs, len(box.failures)
    ok &= failures == 0
    return {
        "input": _echo(spec),
        "family": fam.kind,
        "poisson_matrix": _matrix_report(spec),
        "generator_pairs": pairs,
        "exhaustive": {"max_entry": box.bound, "distinct_exponents": box.distinct_exponents,
                       "checked": checked, "failures": failures},
        "status": "pass" if ok else "fail",
    }, EXIT_OK if ok else EXIT_FAIL


def _parse_point(text: str, n: int) -> tuple:
    try:
        point = tuple(Fraction(x.strip()) for x in text.split(","))
    except ValueError:
        raise SpecError(f"cannot parse point {text!r}", field="--point") from None
    if len(point) != n:
        raise SpecError(f"point has {len(point)} coordinates, expected {n}", field="--point")
    return tuple(int(x) if x.denominator == 1 else x for x in point)


def cmd_core(spec: InputSpec, args) -> tuple[dict, int]:
    point = _parse_point(args.point, spec.n)
    core = symplectic_core(spec.bichar, point)
    return {"input": _echo(spec), "point": [str(x) for x in point], "core": core.as_dict()}, EXIT_OK


def cmd_hasse(spec: InputSpec, args) -> tuple[str, int]:
    dot = hasse_diagram(spec.bichar)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    return dot, EXIT_OK


def _random_vector(rng: random.Random, n: int, bound: int) -> tuple:
    return tuple(rng.randint(0, bound) for _ in range(n))


def cmd_verify(spec: InputSpec, args) -> tuple[dict, int]:
    """Seeded property suite: limit formula, Jacobi and Leibniz on random monomials."""
    rng = random.Random(args.seed)
    b = spec.bichar
    fam = spec.family()
    U = poisson_matrix(b, spec.mu)
    passed = 0
    failures = []
    for k in range(args.samples):
        s, t, v = (_random_vector(rng, b.n, args.max_degree) for _ in range(3))
        ok = verify_limit(b, s, t, fam, strict=False).passed
        xs, xt, xv = (AlgebraElement.monomial(e, U.ring.one) for e in (s, t, v))
        jac = (poisson_bracket(U, xs, poisson_bracket(U, xt, xv))
               + poisson_bracket(U, xt, poisson_bracket(U, xv, xs))
               + poisson_bracket(U, xv, poisson_bracket(U, xs, xt)))
        leib = poisson_bracket(U, xs, xt * xv) - (poisson_bracket(U, xs, xt) * xv
                                                   + xt * poisson_bracket(U, xs, xv))
        ok = ok and not jac and not leib
        if ok:
            passed += 1
        else:
            failures.append({"sample": k, "s": list(s), "t": list(t), "v": list(v)})
    status = "pass" if passed == args.samples else "fail"
    return {
        "input": _echo(spec),
        "seed": args.seed, "samples": args.samples, "max_degree": args.max_degree,
        "passed": passed, "failures": failures[:10],
        "summary": f"{status}, {passed}/{args.samples}",
    }, EXIT_OK if status == "pass" else EXIT_FAIL


def cmd_toric(spec: InputSpec, args) -> tuple[dict, int]:
    g = spec.toric
    if g is None:
        raise SpecError("no 'toric' block in input", field="toric")
    if g.n != spec.n:
        raise SpecError(f"degrees have {g.n} columns, expected {spec.n}", field="toric.degrees")
    if args.action == "pullback":
        hat = pullback(g)
        return {"degrees": [list(r) for r in g.degrees],
                "pullback": [[list(row) for row in M] for M in hat.L]}, EXIT_OK
    results = [diagram_commute_check(g, s, args.max_degree)
               for s in _all_vectors(g.n, args.max_degree) if sum(s) <= args.max_degree]
    ok = all(r.passed for r in results)
    return {"degrees": [list(r) for r in g.degrees], "max_degree": args.max_degree,
            "checked": len(results), "failures": [r.as_dict() for r in results if not r.passed],
            "status": "pass" if ok else "fail"}, EXIT_OK if ok else EXIT_FAIL


def example3_report() -> dict:
    spec = parse_spec(EXAMPLE3)
    analysis, _ = cmd_analyze(spec, None)
    limit, _ = cmd_limit(spec, argparse.Namespace(max_degree=1))
    cores = {",".join(map(str, p)): symplectic_core(spec.bichar, p).as_dict() for p in EXAMPLE3_POINTS}
    analysis["generator_pairs"] = limit["generator_pairs"]
    analysis["cores"] = cores
    return analysis


def cmd_example3(args) -> tuple[dict, int]:
    return example3_report(), EXIT_OK


# --- driver ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qaffine", description="Spectra and semiclassical limits of quantum affine spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="JSON input file ('-' for stdin)")
        return sp

    with_input("analyze", "strata, centres and Poisson matrix")
    sp = with_input("limit", "check the semiclassical-limit formula")
    sp.add_argument("--max-degree", type=int, default=2, help="exhaustive bound on exponent entries")
    sp = with_input("core", "symplectic core of a point")
    sp.add_argument("--point", required=True, help="comma-separated coordinates, e.g. 1,0,0")
    sp = with_input("hasse", "Hasse diagram of strata as DOT")
    sp.add_argument("--dot", help="also write the DOT text to this file")
    sp = with_input("verify", "random property suite")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=3)
    sp = sub.add_parser("toric", help="graded twists: pullback or diagram check")
    sp.add_argument("action", choices=["pullback", "check"])
    sp.add_argument("input")
    sp.add_argument("--max-degree", type=int, default=4)
    sub.add_parser("example3", help="built-in three-variable example report")
    return p


COMMANDS = {"analyze": cmd_analyze, "limit": cmd_limit, "core": cmd_core, "hasse": cmd_hasse,
            "verify": cmd_verify, "toric": cmd_toric}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "example3":
            out, code = cmd_example3(args)
        else:
            try:
                text = _read(args.input)
            except OSError as exc:
                raise SpecError(f"cannot read input: {exc.strerror}") from None
            out, code = COMMANDS[args.command](parse_spec(text), args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LimitFormulaError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(out if isinstance(out, str) else dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
