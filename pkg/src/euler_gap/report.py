"""Machine-readable reports and an independent replay checker.

Rationals are written as ``"num/den"`` strings and big integers as decimal
strings, so a third party can re-run every comparison bit-exactly.  The
replay checker below deliberately uses nothing from the rest of the package:
it re-derives each verdict from the serialized witnesses with plain
:class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import math
import sys
from fractions import Fraction

from .chain import ChainReport, LINK_NAMES
from .exponents import ExponentRecord
from .numerics import rat_str

SCHEMA = "euler-gap/1"


def allow_big_decimals() -> None:
    """Lift the interpreter's int/str conversion digit limit (reports hold huge integers)."""
    if hasattr(sys, "set_int_max_str_digits") and sys.get_int_max_str_digits() != 0:
        sys.set_int_max_str_digits(0)


def _ser(v):
    if isinstance(v, Fraction):
        return rat_str(v)
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v)
    return v


def chain_report_to_dict(r: ChainReport) -> dict:
    allow_big_decimals()
    links = {}
    for name, verdict in r.links.items():
        entry = {"status": verdict.status.value, "witnesses": {k: _ser(v) for k, v in verdict.witnesses.items()}}
        if verdict.mode is not None:
            entry["mode"] = verdict.mode
        links[name] = entry
    return {
        "n": r.n,
        "mu": str(r.mu),
        "K": r.K,
        "N": r.N,
        "links": links,
        "theorem": {
            "status": r.theorem.status.value,
            "mode": r.theorem.mode,
            "witnesses": {k: _ser(v) for k, v in r.theorem.witnesses.items()},
        },
        "a_n": str(r.a_n),
        "b_n": str(r.b_n),
        "primorial": str(r.primorial),
        "elapsed_s": round(r.elapsed, 6),
    }


def flatten_chain_dict(d: dict) -> dict[str, str]:
    """One flat row per report; column names are ``<link>_<field>``."""
    row = {"n": str(d["n"]), "mu": d["mu"], "K": str(d["K"]), "N": str(d["N"])}
    for name in LINK_NAMES:
        link = d["links"][name]
        row[f"{name}_status"] = link["status"]
        row[f"{name}_mode"] = link.get("mode") or ""
        for k, v in link["witnesses"].items():
            row[f"{name}_{k}"] = str(v)
    row["theorem_status"] = d["theorem"]["status"]
    row["theorem_mode"] = d["theorem"]["mode"] or ""
    for k, v in d["theorem"]["witnesses"].items():
        row[f"theorem_{k}"] = str(v)
    for k in ("a_n", "b_n", "primorial"):
        row[k] = d[k]
    row["elapsed_s"] = str(d["elapsed_s"])
    return row


def exponent_record_to_dict(r: ExponentRecord, running_max: Fraction | None = None) -> dict:
    allow_big_decimals()
    d = {
        "n": r.n,
        "b_n": str(r.b_n),
        "gap_lo": rat_str(r.gap.lo),
        "gap_hi": rat_str(r.gap.hi),
        "mu_lo": rat_str(r.mu_n.lo),
        "mu_hi": rat_str(r.mu_n.hi),
        "midpoint": f"{r.midpoint:.6f}",
        "terms": r.terms,
        "converged": r.converged,
    }
    if running_max is not None:
        d["running_max_hi"] = rat_str(running_max)
    return d


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------


def _q(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den or 1))


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    return all(m % d for d in range(3, math.isqrt(m) + 1, 2))


def _lin(cert: bool, fals: bool) -> str:
    if cert:
        return "certified"
    if fals:
        return "falsified"
    return "inconclusive"


def replay_chain_dict(d: dict) -> list[str]:
    """Re-derive every verdict in one serialized report; return the disagreements."""
    allow_big_decimals()
    problems = []
    n = d["n"]
    mu = _q(d["mu"])
    P, Q = mu.numerator, mu.denominator
    a, b, prim = int(d["a_n"]), int(d["b_n"]), int(d["primorial"])
    value = Fraction(a, b)

    if math.gcd(a, b) != 1:
        problems.append(f"n={n}: a_n/b_n not in lowest terms")
    if (prim * prim) % b:
        problems.append(f"n={n}: b_n does not divide primorial^2")

    def expect(name: str, got: str):
        stated = d["links"][name]["status"] if name != "theorem" else d["theorem"]["status"]
        if stated != got:
            problems.append(f"n={n}: {name} stated {stated}, replay gives {got}")

    w = {k: _q(v) for k, v in d["links"]["L1"]["witnesses"].items()}
    glo, ghi = w["gap_lo"], w["gap_hi"]
    if d["links"]["L1"].get("mode") == "log":
        # huge powers: re-derive the verdict from the stated log bounds
        lo = w.get("log_lo")
        expect("L1", _lin(lo is not None and lo > 0, ghi <= 0 or w["log_hi"] <= 0))
    else:
        expect("L1", _lin(glo > 0 and glo**Q * b**P > 1, ghi <= 0 or ghi**Q * b**P <= 1))

    expect("L2", _lin(a < b, a >= b))

    w = {k: _q(v) for k, v in d["links"]["L3"]["witnesses"].items()}
    endpoint = 1 - w["prod_lo"] < w["sum_lo"]
    coupled = 1 - w["prod_hi"] < w["sum_lo"]
    got = _lin(endpoint or coupled, 1 - w["prod_hi"] >= w["sum_hi"])
    expect("L3", got)
    mode = d["links"]["L3"].get("mode")
    if got == "certified" and mode != ("endpoint" if endpoint else "coupled"):
        problems.append(f"n={n}: L3 mode {mode} does not match replay")

    link4 = d["links"]["L4"]["witnesses"]
    p_next = int(link4["p_next"])
    slo, shi = _q(link4["sum_lo"]), _q(link4["sum_hi"])
    expect("L4", _lin(shi < Fraction(1, p_next), slo >= Fraction(1, p_next)))
    if not _is_prime(p_next) or prim % p_next == 0:
        problems.append(f"n={n}: p_next={p_next} is not a prime beyond the primorial")

    w = {k: _q(v) for k, v in d["links"]["identity"]["witnesses"].items()}
    s_lo, s_hi = value * (1 - w["prod_hi"]), value * (1 - w["prod_lo"])
    expect("identity", "certified" if s_lo <= w["gap_hi"] and w["gap_lo"] <= s_hi else "falsified")

    th = d["theorem"]
    tw = th["witnesses"]
    if th["mode"] == "exact":
        p = int(tw["p_next"])
        expect("theorem", _lin(p**Q < prim ** (2 * P), p**Q >= prim ** (2 * P)))
    else:
        lhs_lo, lhs_hi = _q(tw["lhs_lo"]), _q(tw["lhs_hi"])
        rhs_lo, rhs_hi = _q(tw["rhs_lo"]), _q(tw["rhs_hi"])
        expect("theorem", _lin(lhs_hi < rhs_lo, lhs_lo >= rhs_hi))
    return problems


def replay_document(doc: dict) -> list[str]:
    if doc.get("schema") != SCHEMA:
        return [f"unsupported schema {doc.get('schema')!r}"]
    problems = []
    for d in doc["reports"]:
        problems.extend(replay_chain_dict(d))
    return problems
