"""Assemble the full invariant dossier for one group spec: lambda data,
facet data, component groups, point counts, fan summary, and a ledger of
machine-checked claims.  Output is deterministic (stable key order, exact
rationals as strings)."""

import io
import json
import random
from fractions import Fraction

from . import alcove, dl_variety as dl, finite_linear as fl
from . import lambda_engine as le, linalg, lt_specialize as lt
from . import puiseux as px, toroidal_fan as tf
from .errors import (BudgetError, DomainError, InvariantViolation,
                     SpecParseError, UnsupportedCase)
from .root_datum import datum_from_spec, pairing

DEFAULT_BUDGET = 10**7
FAN_BOUND = 6


def parse_spec_doc(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"spec is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise SpecParseError("spec must be a JSON object")
    if "q" not in doc or "mu" not in doc:
        raise SpecParseError("spec needs 'q' and 'mu'")
    return doc


def _frac_list(v):
    return [str(Fraction(x)) for x in v]


def build_dossier(doc, count_max_m=1, budget=DEFAULT_BUDGET, seed=0,
                  explicit_max_m=False):
    datum = datum_from_spec(doc)
    try:
        q = int(doc["q"])
        mu = tuple(int(x) for x in doc["mu"])
    except (TypeError, ValueError) as exc:
        raise SpecParseError(f"bad 'q' or 'mu': {exc}")
    if len(mu) != datum.rank:
        raise SpecParseError("mu length does not match the rank")

    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
            checks.append({"name": name, "pass": ok})
            return ok
        except InvariantViolation as exc:
            checks.append({"name": exc.check, "pass": False})
            return False

    sd = le.shimura_datum(datum, q, mu)
    checks.append({"name": "length_zero_w_unique", "pass": True})

    named = ["lambda_identity", "lambda_dominant", "e_divides",
             "e_coprime_p", "radius_integrality", "dim_r_two_rho"]
    try:
        ld = le.compute_lambda(sd)
        for name in named:
            checks.append({"name": name, "pass": True})
    except InvariantViolation as exc:
        for name in named:
            checks.append({"name": name, "pass": name != exc.check})
        raise

    check("lambdapst_scan", lambda: le.lambdapst_check(sd, ld)["pass"])
    ri = le.rootset_identities(sd, ld)
    checks.append({"name": "rootset_N_cap_wsNbar", "pass": ri["N_cap_wsNbar_eq_mu_pos"]})
    checks.append({"name": "rootset_M_stable", "pass": ri["wsM_eq_M"]})

    facet = alcove.facet_of_lambda(datum, ld.lam)
    check("facet_zero_roots_match_M",
          lambda: facet.zero_roots == set(ld.phi_M))
    orbit = alcove.b_sigma_orbit(datum, mu, sd.w, 2 * ld.N)
    check("orbit_in_alcove_closure",
          lambda: all(alcove.base_alcove_contains(datum, x, closed=True)
                      for x in orbit))
    check("orbit_in_facet_span",
          lambda: all(pairing(a, x) == 0
                      for x in orbit for a in facet.zero_roots))
    minimal = alcove.facet_is_minimal(datum, sd.w, ld.lam)

    # split-case Weil integer
    try:
        weil = le.weil_d(sd)
        weil_doc = {"d": weil["d"], "mu_d": list(weil["mu_d"])}
    except UnsupportedCase as exc:
        weil_doc = {"unsupported": str(exc)}

    comp = {"w": list(le.component_group(datum, sd.w.matrix))}
    for i, word in enumerate(doc.get("component_v_words", [])):
        v = datum.identity_weyl()
        for s in word:
            v = v * datum.reflection(datum.simple[int(s)])
        comp[f"word_{i}"] = list(le.component_group(
            datum, linalg.mat_mul(v.matrix, datum.sigma)))

    is_gl = doc.get("type") == "gl"
    n = datum.rank

    m_ws_order = None
    m_ws_note = None
    if is_gl:
        try:
            m_ws_order = len(dl.m_wsigma_points(sd, ld, budget=budget))
        except BudgetError as exc:
            m_ws_note = str(exc)

    yw_counts = {}
    if is_gl:
        for m in range(1, count_max_m + 1):
            try:
                enum = dl.enumerate_Yw(sd, ld, m, budget=budget)
            except BudgetError:
                if explicit_max_m:
                    raise
                yw_counts[str(m)] = {"skipped": "budget"}
                continue
            fibers = {"|".join(str(x) for x in k): v
                      for k, v in sorted(enum.fibers.items())}
            yw_counts[str(m)] = {"points": len(enum.points), "fibers": fibers}
            gsz = fl.group_order(n, sd.q)
            check(f"torsor_fibers_m{m}",
                  lambda fib=enum.fibers, g=gsz: all(v == g for v in fib.values()))

    fan_doc = None
    if is_gl and n <= FAN_BOUND:
        fan = tf.kgl_fan(n)
        fan_doc = {
            "n": n,
            "maximal_cones": len(fan.cones),
            "sigma_plus": [
                {"label": c.label,
                 "generators": [list(g) for g in c.generators],
                 "inequalities": [list(c_) for c_ in c.inequalities]}
                for c in tf.sigma_plus_cones(fan)],
        }
        if n <= 4:
            check("fan_w_stable", lambda: tf.weyl_stable(fan))
            check("locate_e_lambda_dominant",
                  lambda: any(c.contains(ld.lam)
                              for c in tf.sigma_plus_cones(fan)))
            check("cartan_reassembly_seeded",
                  lambda: _cartan_seeded_check(sd, ld, seed))

    doc_out = {
        "spec": {k: doc[k] for k in sorted(doc)},
        "q": q, "p": sd.p, "f": sd.f,
        "mu": list(mu),
        "w": {"matrix": [list(r) for r in sd.w.matrix],
              "word": list(sd.w.word or ())},
        "b": "mu(-pi) * w",
        "lambda": _frac_list(ld.lam),
        "N": ld.N,
        "e": ld.e,
        "e_lambda": [int(ld.e * x) for x in ld.lam],
        "r_alpha": [{"root": list(a), "r": str(ld.r_alpha[a]),
                     "e_r": int(ld.e * ld.r_alpha[a])}
                    for a in sorted(ld.phi_mu_neg)],
        "root_partition": {
            "M": [list(a) for a in sorted(ld.phi_M)],
            "N": [list(a) for a in sorted(ld.phi_N)],
            "Nbar": [list(a) for a in sorted(ld.phi_Nbar)],
            "mu_neg": [list(a) for a in sorted(ld.phi_mu_neg)],
            "mu_pos": [list(a) for a in sorted(ld.phi_mu_pos)],
        },
        "dim_r": ld.dim_r,
        "facet": {
            "zero_roots": [list(a) for a in sorted(facet.zero_roots)],
            "sample_point": _frac_list(facet.sample_interior_point),
            "minimal": minimal,
        },
        "orbit_of_origin": [_frac_list(x) for x in orbit],
        "weil": weil_doc,
        "component_groups": comp,
        "m_wsigma_order": m_ws_order,
        "m_wsigma_note": m_ws_note,
        "yw_counts": yw_counts,
        "fan": fan_doc,
        "seed": seed,
        "checks": checks,
    }
    return doc_out


def _cartan_seeded_check(sd, ld, seed):
    rng = random.Random(seed)
    twr = fl.tower(sd.p, sd.f, 1)
    n = sd.datum.rank
    ram = ld.e
    T = Fraction(4)
    trials = 0
    while trials < 10:
        g = [[px.PuiseuxElement._raw(
            twr, ram,
            {Fraction(rng.randint(0, 3 * ram), ram): rng.randrange(twr.order)
             for _ in range(3)}, T) for _ in range(n)] for _ in range(n)]
        try:
            g1, exps, g2 = tf.cartan_decompose(g)
        except (DomainError,) as exc:
            continue
        trials += 1
        back = tf.reassemble(g1, exps, g2)
        for i in range(n):
            for j in range(n):
                if not back[i][j].eq_to_precision(g[i][j]):
                    return False
        if list(exps) != sorted(exps):
            return False
    return True


def render_dossier(doc, pretty=False):
    out = json.dumps(doc, indent=None, separators=(",", ":")) + "\n"
    if pretty:
        buf = io.StringIO()
        buf.write(out)
        buf.write("----\n")
        buf.write(f"q = {doc['q']} (p={doc['p']}, f={doc['f']}); mu = {doc['mu']}\n")
        buf.write(f"lambda = ({', '.join(doc['lambda'])}), N = {doc['N']}, "
                  f"e = {doc['e']}, e*lambda = {doc['e_lambda']}\n")
        buf.write(f"dim r = {doc['dim_r']}; facet minimal: {doc['facet']['minimal']}\n")
        buf.write(f"weil: {doc['weil']}\n")
        buf.write(f"component groups: {doc['component_groups']}\n")
        if doc["m_wsigma_order"] is not None:
            buf.write(f"|M^(w sigma)| = {doc['m_wsigma_order']}\n")
        for m, rec in doc["yw_counts"].items():
            buf.write(f"Y(w) at m={m}: {rec}\n")
        fails = [c["name"] for c in doc["checks"] if not c["pass"]]
        buf.write("checks: " + ("all pass" if not fails else f"FAILED {fails}") + "\n")
        out = buf.getvalue()
    return out


def dossier_exit_code(doc):
    return 0 if all(c["pass"] for c in doc["checks"]) else 4


def failed_checks(doc):
    return [c["name"] for c in doc["checks"] if not c["pass"]]


def specialize_report(vectors):
    """Per-record stratum report for cmd_specialize."""
    records = []
    any_disagreement = False
    for i, t in enumerate(vectors):
        try:
            rep = lt.stratum_report(t)
        except Exception as exc:   # precision or degenerate-input errors
            records.append({"index": i, "error": f"{type(exc).__name__}: {exc}"})
            continue
        bd = rep["breaks"]
        records.append({
            "index": i,
            "stratum": list(bd.lengths),
            "breaks": list(bd.breaks),
            "residues": [[list(t.tower._digits(c.idx)) for c in grp]
                         for grp in bd.residues],
            "agreement": rep["agreement"],
        })
        if not rep["agreement"]:
            any_disagreement = True
    return {"records": records, "disagreements": any_disagreement}


def fan_export(n):
    if n < 1 or n > FAN_BOUND:
        raise BudgetError(f"fan export bound is 1 <= n <= {FAN_BOUND}")
    fan = tf.kgl_fan(n)
    return {
        "n": n,
        "weyl_closure": fan.weyl_closure,
        "cones": [
            {"label": c.label,
             "generators": [list(g) for g in c.generators],
             "inequalities": [list(x) for x in c.inequalities]}
            for c in fan.cones],
    }
