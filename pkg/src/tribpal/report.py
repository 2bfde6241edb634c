"""Plain-text proof transcript for a :class:`VerificationReport`."""
from __future__ import annotations


def _checks(lines: list[str], checks: list[dict]) -> None:
    for c in checks:
        mark = "ok  " if c["holds"] else "FAIL"
        lines.append(f"    [{mark}] {c['name']}: {c['computed']} {c['relation']} {c['reference']}")


def render_text(report) -> str:
    d = report.to_dict()
    cfg = d["config"]
    lines = [
        "Tribonacci-Lucas palindromic repdigit concatenations: proof transcript",
        f"backend: {d['backend']}, precision: {cfg['precision_digits']} digits, n_low_max: {cfg['n_low_max']}",
        "",
        f"1. Exhaustive search over n <= {cfg['n_low_max']} (closed form and digit recognition)",
    ]
    for s in d["solutions"]:
        lines.append(f"    S_{s['n']} = {s['value']}  (d1, d2, l, m) = ({s['d1']}, {s['d2']}, {s['ell']}, {s['m']})")
    if not d["solutions"]:
        lines.append("    no solutions")
    rounds = {r["name"]: r for r in d["rounds"]}

    init = rounds.get("initial_bounds")
    if init:
        det = init["details"]
        steps = det["steps"]
        lines += [
            "",
            "2. Initial bounds (Matveev lower bound for three linear forms, Guzman Sanchez-Luca lemma)",
            f"    step 1: l log 10 < {steps['step1_coeff']} (1 + log n)",
            f"    step 2: m log 10 < {steps['step2_coeff']} (1 + log n)^2",
            f"    step 3: n log alpha < {steps['step3_magnitude']} (1 + log n)^3 + log 2",
            f"    n < H (log n)^3 with H = {steps['gsl_H']}",
            f"    n < {det['n_bound_sci']}, 2l + m < {det['two_ell_plus_m_bound_sci']}",
        ]
        _checks(lines, init["checks"])

    r1 = rounds.get("round1")
    if r1:
        det = r1["details"]
        lines += ["", "3. Round 1: Baker-Davenport reduction (Dujella-Petho), d1 = 1..8; Legendre criterion, d1 = 9"]
        for c in det["dp_cases"]:
            o = c["outcome"]
            cert = o["certificate"]
            lines.append(
                f"    d1={c['d1']}: q_{cert['convergent_index']}, eps in {cert['epsilon']}, "
                f"l <= {o.get('bound', o.get('failure_reason'))}"
            )
        leg = det["legendre_d1_9"]
        lines.append(f"    d1=9: a(M) = {leg['certificate']['a_M']}, l <= {leg['bound']}")
        lines.append(f"    => l <= {r1['bound']}")
        _checks(lines, r1["checks"])

    r2 = rounds.get("round2")
    if r2:
        det = r2["details"]
        br = det["branch_1_0_1"]
        lines += [
            "",
            f"4. Round 2: Baker-Davenport reduction over {det['cases']} cases (d1, d2, l)",
            f"    eps_min >= {det['eps_min_lower']}, m <= {det['dp_bound']}, "
            f"{det['cases_beyond_first_convergent']} cases use a later convergent",
            "    (1,0,1): lattice lemma with Lagrange-Gauss reduction",
        ]
        for a in br["lll"]["attempts"]:
            lines.append(
                f"      C = {a['C']}: d^2 = {a['d_lambda_sq']}, T^2 + X1^2 = {a['T_sq_plus_X1_sq']}, "
                f"condition {'holds' if a['condition_holds'] else 'fails'}"
            )
        if "m_bound" in br["lll"]:
            lines.append(f"      lower bound {br['lll']['lower_bound']}, m <= {br['lll']['m_bound']}")
        lines.append(f"    (1,0,1): Legendre criterion, m <= {br['legendre']['bound']}")
        lines.append(f"    => m <= {r2['bound']}")
        _checks(lines, r2["checks"])

    r3 = rounds.get("round3")
    if r3:
        det = r3["details"]
        lines += [
            "",
            f"5. Round 3: Baker-Davenport reduction over {det['cases']} cases (d1, d2, l, m)",
            f"    eps_min >= {det['eps_min_lower']}, "
            f"{det['cases_beyond_first_convergent']} cases use a later convergent",
        ]
        if "worst_case" in det:
            w = det["worst_case"]
            cert = w["outcome"]["certificate"]
            lines.append(
                f"    largest bound from ({w['case']}): q_{cert['convergent_index']}, "
                f"threshold {cert.get('threshold')}"
            )
        lines.append(f"    => n <= {r3['bound']}")
        _checks(lines, r3["checks"])

    lines += ["", f"final bound: n <= {d['final_n_bound']}", f"verdict: {d['verdict']}"]
    if d["notes"]:
        lines += ["", "notes:"]
        lines += [f"  - {n}" for n in d["notes"]]
    hist = d["precision_history"]
    if len(hist) > 1:
        lines += ["", "precision history:"]
        lines += [f"  {h['digits']} digits: {h['status']}" for h in hist]
    if d.get("timestamp"):
        lines += ["", f"generated {d['timestamp']}"]
    return "\n".join(lines) + "\n"
