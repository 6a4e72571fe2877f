"""Command line interface for resolutions, rates, and the certified checks.

Most subcommands read a session script (see gradedres.script) naming rings
and modules, then operate on one of them. Exit codes: 0 success, 1 a
verification or mathematical check failed, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import AlgebraError, BudgetExceededError, ScriptError
from .field import DEFAULT_PRIME
from .filtration import (
    FiltrationCertificate,
    lift_filtration,
    rate_bound_from_filtration,
    truncation_filtration,
    verify_filtration,
)
from .groebner import ideal_equal
from .hilbert import hilbert_series
from .invariants import (
    artinian_rate_bound,
    backelin_rate,
    check_change_of_rings,
    linear_annihilator,
    rate,
    regularity,
)
from .lexsegment import lex_ideal, stretched_algebra, stretched_hilbert_function
from .modules import residue_field_presentation
from .oracle import oracle_betti
from .poly import parse_poly
from .resolution import betti, resolve
from .script import run_script
from .tensorprod import tensor_modules, tensor_rings, verify_tensor_bounds


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_session(ns):
    return run_script(_read_text(ns.script))


def _emit(ns, doc: dict, human: str) -> None:
    if ns.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(human)


def _table_doc(tab) -> dict:
    return {
        "entries": {f"{i},{j}": b for (i, j), b in sorted(tab.entries.items())},
        "totals": [tab.total(i) for i in range(tab.hmax + 1)],
        "t": [tab.t(i) for i in range(tab.hmax + 1)],
        "hmax": tab.hmax,
        "dmax": tab.dmax,
        "finite": tab.finite,
    }


def cmd_betti(ns) -> int:
    session = _load_session(ns)
    P = session.module(ns.module)
    res = resolve(P, ns.hmax, ns.dmax, ns.pair_budget)
    tab = betti(res)
    doc = _table_doc(tab)
    doc["budget_exceeded"] = res.budget_exceeded
    lines = [tab.pretty()]
    lines.append("t_i: " + " ".join(str(tab.t(i)) for i in range(tab.hmax + 1)))
    lines.append(f"finite: {tab.finite}")
    if res.budget_exceeded:
        lines.append(f"pair budget exhausted; rows shown only up to {tab.hmax}")
    _emit(ns, doc, "\n".join(lines))
    return 3 if res.budget_exceeded else 0


def cmd_hilbert(ns) -> int:
    session = _load_session(ns)
    if ns.target in session.modules:
        obj = session.modules[ns.target]
    else:
        obj = session.quotient(ns.target)
    h = hilbert_series(obj, dmax=ns.dmax)
    doc = h.to_dict()
    lines = [f"coefficients: {list(h.coeffs)}"]
    if h.exact:
        lines.append(f"numerator: {list(h.numerator)}")
        lines.append(f"dimension: {h.dimension()}  multiplicity: {h.multiplicity()}")
        if h.is_artinian():
            lines.append(f"artinian, top degree {h.top_degree()}")
    else:
        lines.append("series truncated: no closed form claimed")
    _emit(ns, doc, "\n".join(lines))
    return 0


def cmd_reg(ns) -> int:
    session = _load_session(ns)
    rep = regularity(session.module(ns.module), ns.hmax, ns.dmax, ns.pair_budget)
    human = f"regularity {rep.value} ({'exact' if rep.certified else 'window value'}, hmax={rep.hmax}, dmax={rep.dmax})"
    _emit(ns, rep.to_dict(), human)
    return 0


def cmd_rate(ns) -> int:
    session = _load_session(ns)
    rep = rate(session.module(ns.module), ns.hmax, ns.dmax, pair_budget=ns.pair_budget)
    human = f"rate {rep.value} ({rep.certified}, hmax={rep.hmax}, dmax={rep.dmax})"
    _emit(ns, rep.to_dict(), human)
    return 0


def cmd_backelin(ns) -> int:
    session = _load_session(ns)
    R = session.quotient(ns.ring)
    cert = None
    if ns.cert is not None:
        report = verify_filtration(FiltrationCertificate.from_json(_read_text(ns.cert)))
        if report.status != "verified":
            print(f"certificate did not verify: {report.status}", file=sys.stderr)
            for f in report.failures:
                print("  " + f, file=sys.stderr)
            return 1
        cert = rate_bound_from_filtration(report)
    elif ns.artinian_cert:
        cert = artinian_rate_bound(R)
    rep = backelin_rate(R, ns.hmax, ns.dmax, certificate=cert, pair_budget=ns.pair_budget)
    human = f"Rate {rep.value} ({rep.certified}, hmax={rep.hmax}, dmax={rep.dmax})"
    _emit(ns, rep.to_dict(), human)
    return 0


def cmd_socle(ns) -> int:
    session = _load_session(ns)
    rep = linear_annihilator(session.quotient(ns.ring))
    human = f"socle dimension {rep.tau}; generators: " + ", ".join(str(g) for g in rep.gens)
    _emit(ns, rep.to_dict(), human)
    return 0


def cmd_lex(ns) -> int:
    hf = [int(x) for x in ns.hf.split(",")]
    if len(hf) < 2:
        raise AlgebraError("the Hilbert function needs at least degrees 0 and 1")
    from .poly import PolyRing

    S = PolyRing(ns.p, [f"x{i}" for i in range(1, hf[1] + 1)])
    R = lex_ideal(S, hf)
    check = list(hilbert_series(R, dmax=len(hf) + 1).coeffs[: len(hf)])
    ok = check == hf
    doc = {
        "generators": [str(g) for g in R.gens],
        "hilbert_function": check,
        "matches": ok,
    }
    human = "generators: " + ", ".join(str(g) for g in R.gens)
    human += f"\nhilbert function check: {'ok' if ok else 'MISMATCH ' + str(check)}"
    _emit(ns, doc, human)
    return 0 if ok else 1


def cmd_stretched(ns) -> int:
    R = stretched_algebra(ns.p, ns.embdim, ns.ones)
    hf = stretched_hilbert_function(ns.embdim, ns.ones)
    h = hilbert_series(R, dmax=ns.ones + 3)
    hf_ok = tuple(h.coeffs[: len(hf)]) == hf and all(c == 0 for c in h.coeffs[len(hf) :])
    tau = linear_annihilator(R).tau
    m_of_i = R.max_gen_degree()
    lex_ok = ideal_equal(R.ambient, list(R.gens), list(lex_ideal(R.ambient, list(hf)).gens))
    rep = backelin_rate(R, ns.hmax, ns.dmax, certificate=artinian_rate_bound(R), pair_budget=ns.pair_budget)
    rate_ok = rep.value == Fraction(ns.ones + 1) and rep.certified == "exact"
    ok = hf_ok and tau == ns.embdim and m_of_i == ns.ones + 2 and lex_ok and rate_ok
    doc = {
        "generators": [str(g) for g in R.gens],
        "hilbert_function": list(hf),
        "hf_ok": hf_ok,
        "socle_dimension": tau,
        "max_generator_degree": m_of_i,
        "lex_segment": lex_ok,
        "rate": rep.to_dict(),
        "all_ok": ok,
    }
    human = (
        f"stretched algebra, embedding dimension {ns.embdim}, Hilbert function {list(hf)}\n"
        f"socle dimension {tau}; max generator degree {m_of_i}; lex-segment: {lex_ok}\n"
        f"Rate {rep.value} ({rep.certified}); all checks {'pass' if ok else 'FAIL'}"
    )
    _emit(ns, doc, human)
    return 0 if ok else 1


def cmd_checkfilt(ns) -> int:
    cert = FiltrationCertificate.from_json(_read_text(ns.cert))
    report = verify_filtration(cert)
    doc = report.to_dict()
    lines = [f"status: {report.status}  members: {report.size}"]
    if report.bound is not None:
        lines.append(f"generator degree bound: {report.bound}")
    for f in report.failures:
        lines.append("  " + f)
    _emit(ns, doc, "\n".join(lines))
    return 0 if report.status == "verified" else 1


def cmd_truncfilt(ns) -> int:
    R, cert = truncation_filtration(ns.embdim, ns.top, p=ns.p)
    report = verify_filtration(cert)
    if ns.out:
        Path(ns.out).write_text(cert.to_json())
    doc = report.to_dict()
    doc["written"] = ns.out
    human = f"family of {report.size} ideals, status {report.status}, bound {report.bound}"
    if ns.out:
        human += f"\nwrote {ns.out}"
    _emit(ns, doc, human)
    return 0 if report.status == "verified" else 1


def cmd_lift(ns) -> int:
    session = _load_session(ns)
    R = session.quotient(ns.ring)
    l = parse_poly(R.ambient, ns.form)
    cert = FiltrationCertificate.from_json(_read_text(ns.cert))
    lifted = lift_filtration(R, l, cert)
    report = verify_filtration(lifted)
    if ns.out:
        Path(ns.out).write_text(lifted.to_json())
    doc = report.to_dict()
    doc["written"] = ns.out
    human = f"lifted family of {report.size} ideals, status {report.status}, bound {report.bound}"
    if ns.out:
        human += f"\nwrote {ns.out}"
    _emit(ns, doc, human)
    return 0 if report.status == "verified" else 1


def cmd_tensor(ns) -> int:
    session = _load_session(ns)
    R1 = session.quotient(ns.ring1)
    R2 = session.quotient(ns.ring2)
    if ns.module1 is not None or ns.module2 is not None:
        if ns.module1 is None or ns.module2 is None:
            raise AlgebraError("tensor needs both --module1 and --module2 or neither")
        P1 = session.module(ns.module1)
        P2 = session.module(ns.module2)
    else:
        P1 = residue_field_presentation(R1)
        P2 = residue_field_presentation(R2)
    rep = verify_tensor_bounds(R1, R2, P1, P2, ns.hmax, ns.dmax, ns.pair_budget)
    human = (
        f"Kunneth convolution: {'ok' if rep.kunneth_holds else 'MISMATCH'}\n"
        f"shift bound t_n <= max(t_i + t_j): {'ok' if rep.shift_bound_holds else 'FAIL'}\n"
        f"regularity bound: {'ok' if rep.reg_bound_holds else 'FAIL'}"
    )
    _emit(ns, rep.to_dict(), human)
    return 0 if rep.all_hold else 1


def cmd_change_of_rings(ns) -> int:
    session = _load_session(ns)
    R = session.quotient(ns.big)
    S = session.quotient(ns.small)
    P = session.module(ns.module)
    rep = check_change_of_rings(R, S, P, ns.hmax, ns.dmax, ns.pair_budget)
    lines = [
        f"rate_R(M) = {rep.rate_r_m.value}, rate_S(M) = {rep.rate_s_m.value}, rate_R(S) = {rep.rate_r_s.value}",
        f"surjection bound: {'ok' if rep.bound_down_holds else 'FAIL'}",
    ]
    if rep.bound_up_holds is None:
        lines.append(f"reverse bound skipped: {rep.bound_up_skipped_reason}")
    else:
        lines.append(f"reverse bound: {'ok' if rep.bound_up_holds else 'FAIL'}")
    if rep.equality_case_applies:
        lines.append(f"equality case: {'ok' if rep.equality_holds else 'FAIL'}")
    _emit(ns, rep.to_dict(), "\n".join(lines))
    return 0 if rep.all_hold else 1


def cmd_oracle_diff(ns) -> int:
    session = _load_session(ns)
    P = session.module(ns.module)
    tab = betti(resolve(P, ns.hmax, ns.dmax, ns.pair_budget))
    otab = oracle_betti(P, min(ns.hmax, tab.hmax), ns.dmax)
    mism = []
    keys = set(tab.entries) | set(otab.entries)
    for i, j in sorted(keys):
        if i > min(tab.hmax, otab.hmax) or j > ns.dmax:
            continue
        a, b = tab.entries.get((i, j), 0), otab.entries.get((i, j), 0)
        if a != b:
            mism.append((i, j, a, b))
    doc = {
        "engine": _table_doc(tab),
        "oracle": {f"{i},{j}": b for (i, j), b in sorted(otab.entries.items())},
        "mismatches": [list(m) for m in mism],
        "match": not mism,
    }
    human = "tables agree" if not mism else "MISMATCHES: " + "; ".join(
        f"beta_{i},{j}: engine {a}, oracle {b}" for i, j, a, b in mism
    )
    _emit(ns, doc, human)
    return 0 if not mism else 1


def _add_common(sp, script=True, module=False, ring=False):
    if script:
        sp.add_argument("--script", required=True, help="session script file, or - for stdin")
    if module:
        sp.add_argument("--module", default="M", help="module name in the session (default M)")
    if ring:
        sp.add_argument("--ring", default="R", help="ring name in the session (default R)")
    sp.add_argument("--hmax", type=int, default=5, help="homological window (default 5)")
    sp.add_argument("--dmax", type=int, default=20, help="internal degree window (default 20)")
    sp.add_argument("--pair-budget", type=int, default=None, help="abort after this many S-pairs")
    sp.add_argument("--json", action="store_true", help="machine readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedres",
        description="Minimal graded free resolutions, Betti tables, rates, and certificates over F_p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("betti", help="graded Betti table of a module")
    _add_common(sp, module=True)
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("hilbert", help="Hilbert series of a ring or module")
    sp.add_argument("--script", required=True)
    sp.add_argument("--target", default="R", help="ring or module name (default R)")
    sp.add_argument("--dmax", type=int, default=20)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("reg", help="Castelnuovo-Mumford regularity over the window")
    _add_common(sp, module=True)
    sp.set_defaults(func=cmd_reg)

    sp = sub.add_parser("rate", help="module rate sup t_i/i over the window")
    _add_common(sp, module=True)
    sp.set_defaults(func=cmd_rate)

    sp = sub.add_parser("backelin-rate", help="ring rate sup (t_i-1)/(i-1) for the residue field")
    _add_common(sp, ring=True)
    sp.add_argument("--artinian-cert", action="store_true", help="attach the Artinian upper bound")
    sp.add_argument("--cert", default=None, help="filtration certificate JSON to attach")
    sp.set_defaults(func=cmd_backelin)

    sp = sub.add_parser("socle", help="the annihilator of the maximal ideal in an Artinian ring")
    sp.add_argument("--script", required=True)
    sp.add_argument("--ring", default="R")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_socle)

    sp = sub.add_parser("lex", help="lex-segment ideal with a prescribed Hilbert function")
    sp.add_argument("--hf", required=True, help="comma separated values, e.g. 1,3,3,1")
    sp.add_argument("--p", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_lex)

    sp = sub.add_parser("stretched", help="build a stretched algebra and verify its invariants")
    sp.add_argument("--embdim", type=int, required=True, help="embedding dimension h")
    sp.add_argument("--ones", type=int, required=True, help="number of 1s after degree 1")
    sp.add_argument("--p", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--hmax", type=int, default=5)
    sp.add_argument("--dmax", type=int, default=20)
    sp.add_argument("--pair-budget", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_stretched)

    sp = sub.add_parser("checkfilt", help="verify a filtration certificate")
    sp.add_argument("--cert", required=True, help="certificate JSON file, or - for stdin")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_checkfilt)

    sp = sub.add_parser("truncfilt", help="filtration certificate for F_p[x_1..x_h]/m^t")
    sp.add_argument("--embdim", type=int, required=True)
    sp.add_argument("--top", type=int, required=True, help="the power t")
    sp.add_argument("--p", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--out", default=None, help="write the certificate JSON here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_truncfilt)

    sp = sub.add_parser("lift", help="lift a filtration certificate along division by a linear form")
    sp.add_argument("--script", required=True)
    sp.add_argument("--ring", default="R")
    sp.add_argument("--form", required=True, help="the linear form, e.g. x-y")
    sp.add_argument("--cert", required=True, help="certificate for R/(form)")
    sp.add_argument("--out", default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("tensor", help="tensor product: convolution identity and bounds")
    sp.add_argument("--script", required=True)
    sp.add_argument("--ring1", required=True)
    sp.add_argument("--ring2", required=True)
    sp.add_argument("--module1", default=None)
    sp.add_argument("--module2", default=None)
    sp.add_argument("--hmax", type=int, default=5)
    sp.add_argument("--dmax", type=int, default=20)
    sp.add_argument("--pair-budget", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_tensor)

    sp = sub.add_parser("change-of-rings", help="rate bounds along a graded surjection")
    sp.add_argument("--script", required=True)
    sp.add_argument("--big", required=True, help="the source ring R")
    sp.add_argument("--small", required=True, help="the target ring S = R/J")
    sp.add_argument("--module", default="M")
    sp.add_argument("--hmax", type=int, default=5)
    sp.add_argument("--dmax", type=int, default=20)
    sp.add_argument("--pair-budget", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_change_of_rings)

    sp = sub.add_parser("oracle-diff", help="compare the resolution engine to the linear algebra oracle")
    _add_common(sp, module=True)
    sp.set_defaults(func=cmd_oracle_diff)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except BudgetExceededError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3
    except (ScriptError, AlgebraError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
