"""Command line front end.

Results go to stdout, diagnostics to stderr.  With --json every result is
one compact JSON document per line.  Exit code 0 means every requested
check passed; usage problems exit 2, runtime failures exit 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import centralizer, diagram, rational, rep, seqmodel, setpart

__all__ = ["Command", "UsageError", "parse", "execute", "main"]


class UsageError(ValueError):
    """Invalid invocation: bad flag combination or malformed input text."""


@dataclass
class Command:
    name: str
    payload: dict
    json_mode: bool


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partalg", description=__doc__)
    groups = p.add_subparsers(dest="group", required=True)

    def sub(group, action, **kwargs):
        sp = group.add_parser(action, **kwargs)
        sp.add_argument("--json", action="store_true", help="one JSON document per result line")
        return sp

    diagrams = groups.add_parser("diagrams").add_subparsers(dest="action", required=True)
    sp = sub(diagrams, "enumerate")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--filter", choices=["uniform", "top", "bottom"])
    sp = sub(diagrams, "multiply")
    sp.add_argument("--k", type=int)
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs")
    sp = sub(diagrams, "classify")
    sp.add_argument("--k", type=int)
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--ratio", default="1/2")

    rep_g = groups.add_parser("rep").add_subparsers(dest="action", required=True)
    sp = sub(rep_g, "matrix")
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--diagram", required=True)
    sp = sub(rep_g, "entry")
    sp.add_argument("--k", type=int)
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--top", required=True)
    sp.add_argument("--bottom", required=True)

    verify = groups.add_parser("verify").add_subparsers(dest="action", required=True)
    sp = sub(verify, "schur-weyl")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = sub(verify, "closure")
    sp.add_argument("--k", type=int, default=2)
    sp = sub(verify, "classification")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--ratio", default="1/2")

    norms = groups.add_parser("norms").add_subparsers(dest="action", required=True)
    sp = sub(norms, "lp")
    sp.add_argument("--k", type=int)
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--trunc", type=int, action="append")
    sp.add_argument("--ratio", default="1/2")
    sp = sub(norms, "linf")
    sp.add_argument("--k", type=int)
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--trunc", type=int, action="append")

    inv = groups.add_parser("invariants").add_subparsers(dest="action", required=True)
    sp = sub(inv, "dim")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = sub(inv, "vector")
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--pi", required=True)
    sp = sub(inv, "act")
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--pi", required=True)

    count = groups.add_parser("count").add_subparsers(dest="action", required=True)
    sp = sub(count, "bell")
    sp.add_argument("--g", type=int, required=True)
    sp = sub(count, "partitions")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--max-blocks", type=int, dest="max_blocks")

    return p


def _parse_diagram(text: str, k: int | None) -> diagram.Diagram:
    try:
        return diagram.parse_diagram(text, k=k)
    except ValueError as err:
        raise UsageError(str(err)) from None


def _parse_pi(text: str, k: int) -> setpart.SetPartition:
    try:
        return setpart.parse_text(text, ground_size=k)
    except ValueError as err:
        raise UsageError(f"invalid partition text {text!r}: {err}") from None


def _parse_ratio(text: str) -> seqmodel.GeometricWeights:
    try:
        return seqmodel.GeometricWeights(rational.parse_frac(text))
    except ValueError as err:
        raise UsageError(str(err)) from None


def _parse_tuple(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x.strip()) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed tuple {text!r}") from None
    if not out or any(v < 1 for v in out):
        raise UsageError(f"tuple entries must be positive integers, got {text!r}")
    return out


def parse(argv: list[str]) -> Command:
    """Parse and semantically validate one invocation."""
    ns = _build_parser().parse_args(argv)
    name = f"{ns.group} {ns.action}"
    payload: dict = {}

    if name == "diagrams enumerate":
        if ns.k < 1:
            raise UsageError("--k must be a positive integer")
        payload = {"k": ns.k, "subset": ns.filter}
    elif name == "diagrams multiply":
        lhs = _parse_diagram(ns.lhs, ns.k)
        if ns.rhs is None:
            raise UsageError("--rhs is required")
        rhs = _parse_diagram(ns.rhs, ns.k if ns.k is not None else lhs.k)
        if lhs.k != rhs.k:
            raise UsageError(f"operands have different k: {lhs.k} and {rhs.k}")
        payload = {"lhs": lhs, "rhs": rhs}
    elif name == "diagrams classify":
        d = _parse_diagram(ns.diagram, ns.k)
        payload = {"diagram": d, "weights": _parse_ratio(ns.ratio)}
    elif name == "rep matrix":
        if ns.n < 1:
            raise UsageError("--n must be a positive integer")
        payload = {"diagram": _parse_diagram(ns.diagram, ns.k), "n": ns.n}
    elif name == "rep entry":
        d = _parse_diagram(ns.diagram, ns.k)
        top, bottom = _parse_tuple(ns.top), _parse_tuple(ns.bottom)
        if len(top) != d.k or len(bottom) != d.k:
            raise UsageError(f"--top and --bottom must have length k={d.k}")
        payload = {"diagram": d, "top": top, "bottom": bottom}
    elif name == "verify schur-weyl":
        if ns.n < 1 or ns.k < 1:
            raise UsageError("--n and --k must be positive integers")
        payload = {"n": ns.n, "k": ns.k}
    elif name == "verify closure":
        if ns.k < 1:
            raise UsageError("--k must be a positive integer")
        payload = {"k": ns.k}
    elif name == "verify classification":
        if ns.k < 1:
            raise UsageError("--k must be a positive integer")
        payload = {"k": ns.k, "weights": _parse_ratio(ns.ratio)}
    elif name == "norms lp":
        d = _parse_diagram(ns.diagram, ns.k)
        truncs = tuple(ns.trunc) if ns.trunc else (seqmodel.DEFAULT_TRUNC_SMALL, seqmodel.DEFAULT_TRUNC_LARGE)
        if any(t < 1 for t in truncs):
            raise UsageError("--trunc values must be positive")
        payload = {"diagram": d, "truncations": truncs, "weights": _parse_ratio(ns.ratio)}
    elif name == "norms linf":
        d = _parse_diagram(ns.diagram, ns.k)
        truncs = tuple(ns.trunc) if ns.trunc else (seqmodel.DEFAULT_TRUNC_SMALL, seqmodel.DEFAULT_TRUNC_LARGE)
        if any(t < 1 for t in truncs):
            raise UsageError("--trunc values must be positive")
        payload = {"diagram": d, "truncations": truncs}
    elif name == "invariants dim":
        if ns.n < 1 or ns.k < 1:
            raise UsageError("--n and --k must be positive integers")
        payload = {"n": ns.n, "k": ns.k}
    elif name == "invariants vector":
        if ns.n < 1:
            raise UsageError("--n must be a positive integer")
        if ns.k is not None:
            pi = _parse_pi(ns.pi, ns.k)
        else:
            try:
                pi = setpart.parse_text(ns.pi)
            except ValueError as err:
                raise UsageError(f"invalid partition text {ns.pi!r}: {err}") from None
        payload = {"pi": pi, "n": ns.n}
    elif name == "invariants act":
        d = _parse_diagram(ns.diagram, ns.k)
        pi = _parse_pi(ns.pi, d.k)
        if ns.n < d.k:
            raise UsageError(f"--n must be at least k={d.k} for a full monomial basis")
        payload = {"diagram": d, "pi": pi, "n": ns.n}
    elif name == "count bell":
        if ns.g < 0:
            raise UsageError("--g must be non-negative")
        payload = {"g": ns.g}
    elif name == "count partitions":
        if ns.g < 0:
            raise UsageError("--g must be non-negative")
        if ns.max_blocks is not None and ns.max_blocks < 1:
            raise UsageError("--max-blocks must be at least 1")
        payload = {"g": ns.g, "max_blocks": ns.max_blocks}

    return Command(name=name, payload=payload, json_mode=ns.json)


def _emit(doc: dict) -> None:
    print(json.dumps(doc, separators=(",", ":")))


def _bool_word(b: bool) -> str:
    return "yes" if b else "no"


def _run_enumerate(payload, json_mode):
    for d in diagram.enumerate_diagrams(payload["k"], payload["subset"]):
        if json_mode:
            _emit({"diagram": d.to_text()})
        else:
            print(d.to_text())
    return 0


def _run_multiply(payload, json_mode):
    prod = diagram.multiply(
        diagram.AlgebraElement.from_diagram(payload["lhs"]),
        diagram.AlgebraElement.from_diagram(payload["rhs"]),
    )
    for term in prod.to_json_terms():
        if json_mode:
            _emit(term)
        else:
            poly = diagram.Poly(tuple(Fraction(c) for c in term["coeff"]))
            print(f"({poly.pretty()}) * {term['diagram']}")
    return 0


def _run_classify(payload, json_mode):
    d = payload["diagram"]
    doc = {
        "diagram": d.to_text(),
        "uniform": diagram.is_uniform(d),
        "top_propagating": diagram.is_top_propagating(d),
        "bottom_propagating": diagram.is_bottom_propagating(d),
        "lp_bounded": seqmodel.classify_lp_bounded(d, payload["weights"]),
        "linf_bounded": seqmodel.classify_linf_bounded(d),
        "column_finite": seqmodel.classify_column_finite(d),
    }
    if json_mode:
        _emit(doc)
    else:
        for key, val in doc.items():
            print(f"{key}: {val if isinstance(val, str) else _bool_word(val)}")
    return 0


def _run_rep_matrix(payload, json_mode):
    m = rep.matrix(payload["diagram"], payload["n"])
    if json_mode:
        _emit(m.to_json())
    elif m.dim <= 32:
        for row in m.to_dense():
            print(" ".join(rational.frac_str(v) for v in row))
    else:
        for r, c, v in m.triples:
            print(f"{r} {c} {rational.frac_str(v)}")
    return 0


def _run_rep_entry(payload, json_mode):
    val = rep.entry(payload["diagram"], payload["top"], payload["bottom"])
    if json_mode:
        _emit({"entry": val})
    else:
        print(val)
    return 0


def _run_schur_weyl(payload, json_mode):
    report = centralizer.verify_schur_weyl(payload["n"], payload["k"])
    if json_mode:
        _emit(report.to_json())
    else:
        for key, val in report.to_json().items():
            print(f"{key}: {val if not isinstance(val, bool) else _bool_word(val)}")
    ok = report.surjectivity_verdict and report.double_commutant_verdict
    return 0 if ok else 1


def _run_closure(payload, json_mode):
    k = payload["k"]
    doc: dict = {"k": k}
    for subset, pred in (
        ("uniform", diagram.is_uniform),
        ("top", diagram.is_top_propagating),
        ("bottom", diagram.is_bottom_propagating),
    ):
        members = list(diagram.enumerate_diagrams(k, subset))
        closed = True
        for d1, d2 in product(members, repeat=2):
            d, middles = diagram.concat(d1, d2)
            if middles != 0 or not pred(d):
                closed = False
                break
        doc[subset] = closed
    if json_mode:
        _emit(doc)
    else:
        for subset in ("uniform", "top", "bottom"):
            print(f"{subset}: {'closed' if doc[subset] else 'NOT closed'}")
    return 0 if all(doc[s] for s in ("uniform", "top", "bottom")) else 1


def _run_classification(payload, json_mode):
    k, weights = payload["k"], payload["weights"]
    lp_ok = linf_ok = col_ok = True
    for d in diagram.enumerate_diagrams(k):
        lp_ok = lp_ok and seqmodel.classify_lp_bounded(d, weights) == diagram.is_uniform(d)
        linf_ok = linf_ok and seqmodel.classify_linf_bounded(d) == diagram.is_bottom_propagating(d)
        col_ok = col_ok and seqmodel.classify_column_finite(d) == diagram.is_top_propagating(d)
    doc = {
        "k": k,
        "lp_matches_uniform": lp_ok,
        "linf_matches_bottom_propagating": linf_ok,
        "column_finite_matches_top_propagating": col_ok,
    }
    if json_mode:
        _emit(doc)
    else:
        for key, val in doc.items():
            print(f"{key}: {val if not isinstance(val, bool) else _bool_word(val)}")
    return 0 if lp_ok and linf_ok and col_ok else 1


def _run_norms_lp(payload, json_mode):
    profile = seqmodel.lp_norm_profile(payload["diagram"], payload["weights"], payload["truncations"])
    if json_mode:
        _emit(profile.to_json())
    else:
        for norm in profile.norms:
            print(rational.frac_str(norm))
    return 0


def _run_norms_linf(payload, json_mode):
    profile = seqmodel.linf_norm_profile(payload["diagram"], payload["truncations"])
    if json_mode:
        _emit(profile.to_json())
    else:
        for norm in profile.norms:
            print(rational.frac_str(norm))
    return 0


def _run_inv_dim(payload, json_mode):
    val = seqmodel.invariant_dim(payload["n"], payload["k"])
    if json_mode:
        _emit({"n": payload["n"], "k": payload["k"], "dim": val})
    else:
        print(val)
    return 0


def _run_inv_vector(payload, json_mode):
    inv = seqmodel.monomial_vector(payload["pi"], payload["n"])
    support = [list(rep.unrank_tuple(r, inv.n, inv.k)) for r in inv.support()]
    if json_mode:
        _emit({"pi": inv.pi.to_text(), "n": inv.n, "k": inv.k, "support": support})
    else:
        for t in support:
            print(",".join(str(v) for v in t))
    return 0


def _run_inv_act(payload, json_mode):
    coeffs = seqmodel.act_on_invariants(payload["diagram"], payload["pi"], payload["n"])
    for tau in sorted(coeffs, key=lambda p: p.rgs):
        if json_mode:
            _emit({"tau": tau.to_text(), "coeff": rational.frac_str(coeffs[tau])})
        else:
            print(f"{tau.to_text()}: {rational.frac_str(coeffs[tau])}")
    return 0


def _run_count_bell(payload, json_mode):
    val = setpart.bell_number(payload["g"])
    if json_mode:
        _emit({"g": payload["g"], "count": val})
    else:
        print(val)
    return 0


def _run_count_partitions(payload, json_mode):
    val = setpart.count_partitions(payload["g"], payload["max_blocks"])
    if json_mode:
        _emit({"g": payload["g"], "max_blocks": payload["max_blocks"], "count": val})
    else:
        print(val)
    return 0


_RUNNERS = {
    "diagrams enumerate": _run_enumerate,
    "diagrams multiply": _run_multiply,
    "diagrams classify": _run_classify,
    "rep matrix": _run_rep_matrix,
    "rep entry": _run_rep_entry,
    "verify schur-weyl": _run_schur_weyl,
    "verify closure": _run_closure,
    "verify classification": _run_classification,
    "norms lp": _run_norms_lp,
    "norms linf": _run_norms_linf,
    "invariants dim": _run_inv_dim,
    "invariants vector": _run_inv_vector,
    "invariants act": _run_inv_act,
    "count bell": _run_count_bell,
    "count partitions": _run_count_partitions,
}


def execute(cmd: Command) -> int:
    """Run a parsed command; returns the process exit code."""
    return _RUNNERS[cmd.name](cmd.payload, cmd.json_mode)


def main(argv: list[str] | None = None) -> int:
    try:
        cmd = parse(sys.argv[1:] if argv is None else argv)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    try:
        return execute(cmd)
    except (ValueError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
