"""Batch front-end: one JSON config per invocation, deterministic output.

Commands (config key "command"): moments, recurrence, solve, sobolev,
companion, verify.  Rationals travel as "num/den" strings (bare integers
accepted on input).  Output is byte-stable for identical configs: JSON with
fixed key order and two-space indent, or CSV with every cell quoted.

Exit codes: 0 success, 2 configuration error, 3 math-domain error
(vanishing pivot, degeneracy, inconsistent data), 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .coherence import (CoherenceData, solve_case1, solve_case2, solve_case3,
                        solve_case4, solve_case_ii)
from .errors import CoherentPairsError, ConfigError
from .functionals import MomentFunctional
from .mops import FLIP, STD, RecurrencePair, generate, recurrence
from .polynomials import Poly, to_strings
from .scalars import format_rational, rat
from .sobolev import check_generalized_coherence
from .companion import companion_from_ad, delta_decomposition, solve_mk, verify_companion
from .coherence import fit_relation

_COMMANDS = ("moments", "recurrence", "solve", "sobolev", "companion", "verify")

_FUNCTIONAL_KEYS = {"family", "alpha", "beta", "a0", "moments", "mods"}
_MOD_KEYS = {"op", "coeffs", "c", "point", "order", "weight"}


def _fail_config(msg):
    raise ConfigError(msg)


def _build_functional(node) -> MomentFunctional:
    if not isinstance(node, dict):
        _fail_config("functional descriptor must be an object")
    unknown = set(node) - _FUNCTIONAL_KEYS
    if unknown:
        _fail_config(f"unknown functional keys: {sorted(unknown)}")
    if "moments" in node:
        u = MomentFunctional.from_moments([rat(m) for m in node["moments"]])
    elif "family" in node:
        u = MomentFunctional.classical(
            node["family"],
            alpha=rat(node["alpha"]) if "alpha" in node else None,
            beta=rat(node["beta"]) if "beta" in node else None,
            a0=rat(node.get("a0", 1)))
    else:
        _fail_config("functional needs 'family' or 'moments'")
    for mod in node.get("mods", ()):
        unknown = set(mod) - _MOD_KEYS
        if unknown:
            _fail_config(f"unknown modification keys: {sorted(unknown)}")
        op = mod.get("op")
        if op == "derivative":
            u = u.derive()
        elif op == "mul_poly":
            u = u.mul_poly(Poly([rat(c) for c in mod["coeffs"]]))
        elif op == "div_linear":
            u = u.div_linear(rat(mod["c"]))
        elif op == "add_delta":
            u = u.add_delta(rat(mod["point"]), int(mod["order"]), rat(mod["weight"]))
        else:
            _fail_config(f"unknown modification op {op!r}")
    return u


def _build_recurrence(node) -> RecurrencePair:
    conv = node.get("convention", STD)
    if conv not in (STD, FLIP):
        _fail_config(f"unknown recurrence convention {conv!r}")
    return RecurrencePair(b=tuple(rat(v) for v in node["b"]),
                          c=tuple(rat(v) for v in node["c"]),
                          convention=conv)


def _seq(values):
    return [format_rational(v) for v in values]


def _cmd_moments(cfg, depth):
    u = _build_functional(cfg.get("functional") or _fail_config("missing 'functional'"))
    rows = [{"n": n, "a_n": format_rational(u.moment(n))} for n in range(depth + 1)]
    return {"command": "moments", "functional": u.descriptor(),
            "depth": depth, "rows": rows}


def _cmd_recurrence(cfg, depth):
    u = _build_functional(cfg.get("functional") or _fail_config("missing 'functional'"))
    conv = cfg.get("convention", STD)
    if conv not in (STD, FLIP):
        _fail_config(f"unknown recurrence convention {conv!r}")
    pair = recurrence(generate(u, depth + 1), conv)
    rows = [{"n": n, "b_n": format_rational(pair.b[n]), "c_n": format_rational(pair.c[n])}
            for n in range(depth + 1)]
    return {"command": "recurrence", "functional": u.descriptor(),
            "convention": conv, "depth": depth, "rows": rows}


def _solution_rows(sol, conv):
    q = sol.q_rec.to(conv)
    r = sol.r_rec.to(conv)
    cd = sol.cd
    rows = []
    count = min(len(q.b), len(r.b), len(cd.sigma), len(cd.d))
    for n in range(count):
        rows.append({
            "n": n,
            "b_n": format_rational(q.b[n]),
            "c_n": format_rational(q.c[n]) if n < len(q.c) else "",
            "beta_n": format_rational(r.b[n]),
            "gamma_n": format_rational(r.c[n]) if n < len(r.c) else "",
            "sigma_n": format_rational(cd.sigma[n]),
            "tau_n": format_rational(cd.tau[n]) if n < len(cd.tau) else "",
            "d_n": format_rational(cd.d[n]),
            "e_n": format_rational(cd.e[n]) if n < len(cd.e) else "",
        })
    return rows


def _cmd_solve(cfg, depth):
    case = cfg.get("case")
    initials = cfg.get("initials", {})
    strict = bool(cfg.get("strict", True))
    conv = cfg.get("convention", FLIP)
    if conv not in (STD, FLIP):
        _fail_config(f"unknown recurrence convention {conv!r}")
    if case == 1:
        sol = solve_case1(cfg["sigma"], cfg["tau"],
                          initials.get("d0", 0), initials.get("e0", 0), verify=strict)
    elif case == 2:
        pair = (_build_recurrence(cfg["q_recurrence"]) if "q_recurrence" in cfg
                else recurrence(generate(_build_functional(cfg["q_functional"]),
                                         depth + 1)))
        sol = solve_case2(pair, initials.get("sigma0", 0),
                          initials.get("d0", 0), initials.get("e0", 0), verify=strict)
    elif case == 3:
        pair = (_build_recurrence(cfg["r_recurrence"]) if "r_recurrence" in cfg
                else recurrence(generate(_build_functional(cfg["r_functional"]),
                                         depth + 1)))
        sol = solve_case3(pair, initials.get("d0", 0), initials.get("e0", 0),
                          initials.get("sigma0", 0), initials.get("tau0", 0),
                          verify=strict)
    elif case == 4:
        sol = solve_case4(cfg["d"], cfg["e"], initials.get("sigma0", 0),
                          initials.get("tau0", 0), verify=strict)
    elif case == "II":
        given_r = cfg.get("given_r") or _fail_config("case II needs 'given_r'")
        given_q = cfg.get("given_q") or _fail_config("case II needs 'given_q'")
        if "beta" in given_r:
            given_r = dict(given_r)
        if "b" in given_q:
            given_q = dict(given_q)
        sol = solve_case_ii(given_r, given_q, initials, verify=strict)
    else:
        _fail_config("case must be one of 1, 2, 3, 4, 'II'")
    out = {"command": "solve", "case": case, "convention": conv,
           "initials": {k: format_rational(rat(v)) for k, v in sorted(initials.items())},
           "classification": {"tag": sol.verdict.tag, "detail": sol.verdict.detail},
           "depth": depth, "rows": _solution_rows(sol, conv)}
    if "annotations" in cfg:
        out["annotations"] = cfg["annotations"]
    return out


def _cmd_sobolev(cfg, depth):
    u0 = _build_functional(cfg.get("u0") or _fail_config("missing 'u0'"))
    u1 = _build_functional(cfg.get("u1") or _fail_config("missing 'u1'"))
    lam = rat(cfg.get("lambda", 1))
    report = check_generalized_coherence(u0, u1, lam, depth)
    link = report.link
    records = []
    for n in range(len(link.sigma_t)):
        records.append({
            "n": n,
            "sigma_t": format_rational(link.sigma_t[n]),
            "tau_t": format_rational(link.tau_t[n]) if n < len(link.tau_t) else "",
            "mu": format_rational(link.mu[n]),
            "theta": format_rational(link.theta[n]) if n < len(link.theta) else "",
            "d_t": format_rational(report.d_t[n]) if n < len(report.d_t) else "",
            "e_t": format_rational(report.e_t[n]) if n < len(report.e_t) else "",
            "relation_holds": link.residuals[n].is_zero,
        })
    return {"command": "sobolev", "u0": u0.descriptor(), "u1": u1.descriptor(),
            "lambda": format_rational(lam), "depth": depth,
            "coherent": report.coherent, "records": records}


def _cmd_companion(cfg, depth):
    u = _build_functional(cfg.get("u") or _fail_config("missing 'u'"))
    A = Poly([rat(v) for v in cfg.get("A") or _fail_config("missing 'A'")])
    D = Poly([rat(v) for v in cfg.get("D") or _fail_config("missing 'D'")])
    m0 = rat(cfg.get("m0", u.moment(0)))
    m1 = rat(cfg.get("m1", u.moment(1)))
    v = companion_from_ad(u, A, D, m0, m1)
    residuals = verify_companion(u, v, A, D, depth)
    out = {"command": "companion", "u": u.descriptor(),
           "A": to_strings(A), "D": to_strings(D),
           "m0": format_rational(m0), "m1": format_rational(m1),
           "residual_depth_checked": depth,
           "identity_holds": all(r == 0 for r in residuals)}
    deco = delta_decomposition(v, u, A, D, depth)
    if deco is None:
        out["delta_terms"] = None
        out["note"] = "multiplier has no rational roots; identity reported only"
    else:
        base, terms = deco
        out["delta_terms"] = [{"point": format_rational(p), "order": o,
                               "weight": format_rational(w)} for p, o, w in terms]
        out["base"] = base.descriptor()
    fit_depth = min(depth, 10)
    qm = generate(u, fit_depth)
    rm = generate(v, fit_depth)
    cd, resid, _ = fit_relation(list(rm.polys), list(qm.polys), fit_depth)
    out["relation_fit_holds"] = all(r.is_zero for r in resid)
    try:
        mk = solve_mk(cd, A, v, list(rm.polys))
        out["M0"], out["M1"], out["M2"] = (format_rational(m) for m in mk)
    except CoherentPairsError as exc:
        out["M0"] = out["M1"] = out["M2"] = None
        out["mk_note"] = str(exc)
    return out


def _cmd_verify(cfg, depth):
    u = _build_functional(cfg.get("u") or _fail_config("missing 'u'"))
    A = Poly([rat(v) for v in cfg.get("A") or _fail_config("missing 'A'")])
    D = Poly([rat(v) for v in cfg.get("D") or _fail_config("missing 'D'")])
    if "u1" in cfg:
        v = _build_functional(cfg["u1"])
    else:
        v = companion_from_ad(u, A, D, rat(cfg.get("m0", 1)), rat(cfg.get("m1", 0)))
    residuals = verify_companion(u, v, A, D, depth)
    return {"command": "verify", "depth": depth,
            "residuals": _seq(residuals),
            "ok": all(r == 0 for r in residuals)}


_HANDLERS = {"moments": (_cmd_moments, 12), "recurrence": (_cmd_recurrence, 12),
             "solve": (_cmd_solve, 12), "sobolev": (_cmd_sobolev, 10),
             "companion": (_cmd_companion, 30), "verify": (_cmd_verify, 30)}

_TOP_KEYS = {"command", "depth", "format", "functional", "convention", "case",
             "initials", "strict", "sigma", "tau", "d", "e", "q_recurrence",
             "q_functional", "r_recurrence", "r_functional", "given_r",
             "given_q", "u0", "u1", "lambda", "u", "A", "D", "m0", "m1",
             "annotations"}


def run_config(cfg, depth_override=None):
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(cfg) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    command = cfg.get("command")
    if command not in _COMMANDS:
        raise ConfigError(f"command must be one of {_COMMANDS}")
    handler, default_depth = _HANDLERS[command]
    depth = depth_override if depth_override is not None else cfg.get("depth", default_depth)
    if not isinstance(depth, int) or depth < 0:
        raise ConfigError("depth must be a nonnegative integer")
    return handler(cfg, depth)


def _to_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\n")
    rows = report.get("rows") or report.get("records")
    if rows:
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([row.get(k, "") for k in header])
    else:
        writer.writerow(["key", "value"])
        for key, value in report.items():
            if isinstance(value, (list, dict)):
                value = json.dumps(value, separators=(",", ":"))
            writer.writerow([key, value])
    return buf.getvalue()


def render(report, fmt) -> str:
    if fmt == "csv":
        return _to_csv(report)
    return json.dumps(report, indent=2) + "\n"


def main(argv=None) -> int:
    # formal coefficient chains grow long; keep exact printing possible
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2_000_000)
    parser = argparse.ArgumentParser(
        prog="coherent-pairs",
        description="Exact computations with moment functionals and coherent pairs")
    parser.add_argument("--config", required=True, help="path to a JSON run config")
    parser.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (default: config value or json)")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--depth", type=int, default=None, help="depth override")
    args = parser.parse_args(argv)

    def emit(text):
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        emit(json.dumps({"error": {"type": "ConfigError", "message": str(exc)}},
                        indent=2) + "\n")
        return 2

    fmt = args.format or cfg.get("format", "json") if isinstance(cfg, dict) else "json"
    try:
        report = run_config(cfg, depth_override=args.depth)
    except ConfigError as exc:
        emit(json.dumps({"error": {"type": "ConfigError", "message": str(exc)}},
                        indent=2) + "\n")
        return 2
    except CoherentPairsError as exc:
        record = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        index = getattr(exc, "index", None)
        if index is not None:
            record["error"]["index"] = index
        emit(json.dumps(record, indent=2) + "\n")
        return 3
    except (KeyError, TypeError, ValueError) as exc:
        emit(json.dumps({"error": {"type": "ConfigError",
                                   "message": f"malformed config: {exc}"}},
                        indent=2) + "\n")
        return 2

    emit(render(report, fmt))
    if report.get("command") == "verify" and not report.get("ok", False):
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
