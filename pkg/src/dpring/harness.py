"""Verification campaigns over the construction.

Every campaign replays a mathematical claim as a set of concrete checks,
each backed by a certificate that can be re-verified independently of the
data structure that produced it.  Reports are plain dictionaries rendered as
canonical JSON: with a fixed seed two runs produce byte-identical output
(wall-clock timings are only included on request).
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as _dcfield
from math import comb

from .budgets import BudgetExceeded, Budgets, DEFAULT_BUDGETS
from .construction import (
    ConstructionParams,
    SpanOracle,
    SpanQuery,
    collision_test,
    count_words,
    signed_reorder,
    signed_reorder_word,
    span_rows,
    words_iter,
)
from .fields import RationalField
from .freealg import FreePoly, derive, word_stats
from .ore import expand_power, expand_power_window, is_ballot_word
from .series import (
    InnerDerivation,
    coefficient_identity,
    invert_one_minus,
    mat_add,
    mat_is_zero,
    mat_scale,
    nil_index,
    s_index,
    vandermonde_extract,
    zero_matrix,
)

SCHEMA = "dpring.report/1"
INLINE_CERT_LIMIT = 32

__all__ = [
    "SCHEMA",
    "INLINE_CERT_LIMIT",
    "CheckRecord",
    "CampaignReport",
    "summarize_certificate",
    "verify_ballot",
    "verify_z_closure",
    "verify_inclusions",
    "verify_products",
    "locate_escape",
    "verify_counterexample",
    "verify_phi",
    "verify_series",
    "CAMPAIGNS",
    "run_campaign",
]


# -- reports -------------------------------------------------------------------


def _field_label(field) -> str:
    if field.characteristic:
        return f"gf({field.characteristic})"
    return field.name


def _word_text(word: tuple) -> str:
    return "1" if not word else ".".join(f"x{i}" for i in word)


def summarize_certificate(field, cert) -> dict:
    """JSON-ready certificate digest; small certificates appear verbatim."""
    if cert.kind == "member":
        out = {"kind": "member", "entries": len(cert.combination)}
        if len(cert.combination) <= INLINE_CERT_LIMIT:
            out["combination"] = {
                str(i): field.format(c) for i, c in cert.combination
            }
        return out
    out = {"kind": "non_member", "entries": len(cert.functional)}
    if len(cert.functional) <= INLINE_CERT_LIMIT:
        out["functional"] = {
            _word_text(w): field.format(c) for w, c in cert.functional.items()
        }
    return out


@dataclass
class CheckRecord:
    claim: str
    component: str
    verdict: str  # "pass" | "fail" | "info"
    detail: dict = _dcfield(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "component": self.component,
            "verdict": self.verdict,
            "detail": self.detail,
        }


@dataclass
class CampaignReport:
    campaign: str
    parameters: dict
    seed: int | None = None
    checks: list = _dcfield(default_factory=list)
    elapsed_s: float | None = None

    def add(self, claim: str, component: str, ok, detail: dict | None = None):
        verdict = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        self.checks.append(CheckRecord(claim, component, verdict, detail or {}))

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "info": 0}
        for c in self.checks:
            out[c.verdict] += 1
        return out

    @property
    def verdict(self) -> str:
        return "fail" if any(c.verdict == "fail" for c in self.checks) else "pass"

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "campaign": self.campaign,
            "parameters": self.parameters,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "counts": self.counts(),
            "verdict": self.verdict,
        }
        if self.elapsed_s is not None:
            out["elapsed_s"] = self.elapsed_s
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _Clock:
    def __init__(self, report: CampaignReport, include_timing: bool):
        self.report = report
        self.include_timing = include_timing
        self.start = time.perf_counter()

    def finish(self) -> CampaignReport:
        if self.include_timing:
            self.report.elapsed_s = round(time.perf_counter() - self.start, 3)
        return self.report


def _params_dict(params: ConstructionParams) -> dict:
    return {
        "base": params.base,
        "ratio": params.ratio,
        "k_max": params.k_max,
        "field": _field_label(params.field),
    }


# -- ballot words in powers of the shifted generator ---------------------------


def verify_ballot(field=None, m_max: int = 8, include_timing: bool = False) -> CampaignReport:
    """Expand (x0 X)^m for m <= m_max and audit the coefficient structure.

    Checked per m: the top coefficient is x0^m and the constant one is zero;
    every monomial is a ballot word (partial letter sums stay below the
    position) of degree m - t; the distinct monomials across all t number the
    m-th Catalan number; and the windowed expansion agrees with the full one.
    The converse (every ballot word appears with nonzero coefficient) is
    reported informationally.
    """
    field = field or RationalField()
    rep = CampaignReport("ballot", {"field": _field_label(field), "m_max": m_max})
    clock = _Clock(rep, include_timing)
    for m in range(0, m_max + 1):
        full = expand_power(field, m, max_expand_m=max(m_max, 16))
        window = expand_power_window(field, m, 0)
        ok = True
        detail: dict = {}
        seen = set()
        for t, coeff in full.coeffs.items():
            for w in coeff.terms:
                seen.add(w)
                if len(w) != m or sum(w) != m - t or not is_ballot_word(w):
                    ok = False
                    detail["offender"] = {"t": t, "word": _word_text(w)}
        catalan = comb(2 * m, m) // (m + 1)
        if field.characteristic == 0:
            # in positive characteristic binomial weights can vanish, so the
            # monomial count only matches the Catalan number over the rationals
            if len(seen) != catalan:
                ok = False
        elif len(seen) > catalan:
            ok = False
        if m >= 1 and not full.coeff(0).is_zero():
            ok = False
        top = FreePoly.monomial(field, (0,) * m)
        if full.coeff(m) != top:
            ok = False
        for t in range(0, m + 1):
            if window.get(t, FreePoly.zero(field)) != full.coeff(t):
                ok = False
                detail["window_mismatch"] = t
        detail.update({"monomials": len(seen), "catalan": catalan})
        rep.add("ballot grading, Catalan count, dual-route agreement",
                f"m={m}", ok, detail)
        if field.characteristic == 0:
            missing = sum(
                1
                for t in range(0, m + 1)
                for w in words_iter(m, m - t)
                if is_ballot_word(w) and w not in seen
            )
            rep.add("every ballot word appears (converse)", f"m={m}",
                    "info" if missing == 0 else "fail", {"missing": missing})
    return clock.finish()


# -- collision sampling ---------------------------------------------------------


def _collision_pairs(params: ConstructionParams, k: int):
    cps = params.checkpoints(k)
    length = params.block(k) - 1
    inner = cps[1 : k + 2]
    return [
        (p, q, inner[p], inner[q])
        for p in range(k + 1)
        for q in range(p + 1, k + 1)
        if inner[p] < inner[q] <= length
    ]


def _sample_collision(params: ConstructionParams, k: int, rng: random.Random,
                      degree_cap: int | None = None):
    """One random collision element at level k, sparse enough that its
    component stays small; returns the witnessing element."""
    length = params.block(k) - 1
    pairs = _collision_pairs(params, k)
    if not pairs:
        raise ValueError(f"level {k} has no usable checkpoint pairs")
    while True:
        word = [0] * length
        for _ in range(rng.randint(0, 2)):
            word[rng.randrange(length)] = 1
        p, q, pos_p, pos_q = pairs[rng.randrange(len(pairs))]
        if rng.random() < 0.5:
            letter = rng.randint(0, 2)
            word[pos_p - 1] = word[pos_q - 1] = letter
            candidate = tuple(word)
        else:
            hi = rng.randint(1, 2)
            lo = rng.randint(0, hi - 1)
            w1 = list(word)
            w1[pos_p - 1], w1[pos_q - 1] = hi, lo
            w2 = list(word)
            w2[pos_p - 1], w2[pos_q - 1] = lo, hi
            candidate = (tuple(w1), tuple(w2))
        elem = collision_test(params, k, candidate)
        if elem is None:
            continue
        degree = elem.component()[1]
        if degree_cap is not None and degree + 1 > degree_cap:
            continue
        return elem


def verify_z_closure(params: ConstructionParams, samples: int = 25, seed: int = 0,
                     levels=None, degree_cap: int = 6, verify_limit: int = 4,
                     budgets: Budgets = DEFAULT_BUDGETS,
                     include_timing: bool = False) -> CampaignReport:
    """Shift-derivatives of collision elements stay inside the collision span.

    Each sampled element z of the level-k family is checked twice: z itself
    is a member of its own component's span, and D(z) is a member of the span
    one degree up.  The certificates of the first verify_limit samples per
    level are additionally re-verified against a regenerated spanning family.
    """
    field = params.field
    rep = CampaignReport("z_closure", {**_params_dict(params),
                                       "samples": samples,
                                       "degree_cap": degree_cap}, seed=seed)
    clock = _Clock(rep, include_timing)
    rng = random.Random(seed)
    if levels is None:
        levels = [k for k in range(1, params.k_max + 1) if params.level_valid(k)]
    oracle = SpanOracle(params, budgets)
    for k in levels:
        length = params.block(k) - 1
        failures = 0
        max_witness = 0
        sample_summary = None
        for s in range(samples):
            elem = _sample_collision(params, k, rng, degree_cap=degree_cap)
            z = elem.poly(field)
            d = elem.component()[1]
            self_q = SpanQuery("collisions", length, d, level=k)
            self_cert = oracle.member(z, self_q)
            dz = derive(z)
            q = SpanQuery("collisions", length, d + 1, level=k)
            cert = oracle.member(dz, q)
            ok = self_cert.kind == "member" and cert.kind == "member"
            if ok and s < verify_limit:
                ok = (oracle.verify(z, self_q, self_cert)
                      and oracle.verify(dz, q, cert))
            if not ok:
                failures += 1
                rep.add("derivative of a collision element stays in the span",
                        f"level {k}, degree {d}", False,
                        {"kind": elem.kind,
                         "word": _word_text(elem.words[0]),
                         "certificate": summarize_certificate(field, cert)})
            else:
                max_witness = max(max_witness, len(cert.combination))
                if sample_summary is None:
                    sample_summary = summarize_certificate(field, cert)
        if not failures:
            rep.add("derivative of a collision element stays in the span",
                    f"level {k}", True,
                    {"samples": samples, "max_witness": max_witness,
                     "sample_certificate": sample_summary})
    return clock.finish()


# -- inclusions ------------------------------------------------------------------


def verify_inclusions(params: ConstructionParams, k: int = 1, lengths=None,
                      degree_cap: int = 2, budgets: Budgets = DEFAULT_BUDGETS,
                      include_timing: bool = False) -> CampaignReport:
    """The generated-ideal rows sit inside both the collision span and the
    word span, and the collision rows sit inside the word span.

    Every spanning row of the level-k ideal family at the listed lengths is
    given a membership certificate in both larger spans; the certificates
    for the first row of each component are re-verified from scratch.
    """
    field = params.field
    N = params.block(k)
    if lengths is None:
        lengths = (2 * N, 3 * N)
    rep = CampaignReport("inclusions", {**_params_dict(params), "level": k,
                                        "lengths": list(lengths),
                                        "degree_cap": degree_cap})
    clock = _Clock(rep, include_timing)
    oracle = SpanOracle(params, budgets)
    for L in lengths:
        for d in range(0, degree_cap + 1):
            ideal_q = SpanQuery("ideal_level", L, d, level=k)
            words_q = SpanQuery("words", L, d, level=k)
            coll_q = SpanQuery("collisions", L, d, level=k)
            checked = 0
            bad = 0
            sample = None
            for row in span_rows(params, ideal_q, budgets):
                a = FreePoly(field, dict(row))
                if checked == 0:
                    # one full certificate per component, re-verified against
                    # a regenerated family; the bulk gets reduce-to-zero checks
                    cert_w = oracle.member(a, words_q)
                    cert_b = oracle.member(a, coll_q)
                    ok = (cert_w.kind == "member" and cert_b.kind == "member"
                          and oracle.verify(a, words_q, cert_w)
                          and oracle.verify(a, coll_q, cert_b))
                    sample = summarize_certificate(field, cert_b)
                else:
                    ok = (oracle.normal_form(a, words_q).is_zero()
                          and oracle.normal_form(a, coll_q).is_zero())
                checked += 1
                if not ok:
                    bad += 1
            rep.add("ideal rows lie in the word span and the collision span",
                    f"({L}, {d})", bad == 0,
                    {"rows": checked, "failures": bad,
                     "sample_certificate": sample})
            checked = bad = 0
            for row in span_rows(params, words_q, budgets):
                a = FreePoly(field, dict(row))
                checked += 1
                if not oracle.normal_form(a, coll_q).is_zero():
                    bad += 1
            rep.add("word rows lie in the collision span", f"({L}, {d})",
                    bad == 0, {"rows": checked, "failures": bad})
    return clock.finish()


# -- products of non-members -----------------------------------------------------


def _random_homogeneous(params: ConstructionParams, rng: random.Random,
                        length: int, degree: int) -> FreePoly:
    field = params.field
    words = list(words_iter(length, degree))
    picks = rng.sample(words, min(len(words), rng.randint(1, 3)))
    items = []
    for w in picks:
        c = rng.choice((-3, -2, -1, 1, 2, 3))
        items.append((w, field.from_int(c)))
    return FreePoly.from_terms(field, items)


def verify_products(params: ConstructionParams, k: int = 1, trials: int = 20,
                    h_values=(1, 2), seed: int = 0, max_tries: int = 12,
                    budgets: Budgets = DEFAULT_BUDGETS,
                    include_timing: bool = False) -> CampaignReport:
    """Products of certified non-members joined by the zeroth generator stay
    outside the collision span.

    Each trial draws h+1 random homogeneous elements of the block-length
    component, certifies each lies outside the level-k span (resampling
    members, which are counted as skips), forms their x0-joined product, and
    certifies the product outside the span of its own component.
    """
    field = params.field
    N = params.block(k)
    length = N - 1
    rep = CampaignReport("products", {**_params_dict(params), "level": k,
                                      "trials": trials,
                                      "h_values": list(h_values)},
                         seed=seed)
    clock = _Clock(rep, include_timing)
    rng = random.Random(seed)
    oracle = SpanOracle(params, budgets)
    x0 = FreePoly.generator(field, 0)
    skips = 0
    failures = 0
    done = 0
    for t in range(trials):
        h = h_values[t % len(h_values)]
        factors = []
        certs = []
        give_up = False
        for _ in range(h + 1):
            for _ in range(max_tries):
                d = rng.randint(1, 2)
                r = _random_homogeneous(params, rng, length, d)
                q = SpanQuery("collisions", length, d, level=k)
                cert = oracle.member(r, q)
                if cert.kind == "non_member":
                    factors.append((r, d, q, cert))
                    certs.append(cert)
                    break
                skips += 1
            else:
                give_up = True
                break
        if give_up:
            rep.add("found a non-member factor", f"trial {t}", False,
                    {"skips": skips})
            failures += 1
            continue
        product = factors[0][0]
        for r, _, _, _ in factors[1:]:
            product = product * x0 * r
        pl, pd = product.bigrade()
        pq = SpanQuery("collisions", pl, pd, level=k)
        pcert = oracle.member(product, pq)
        ok = (pcert.kind == "non_member"
              and oracle.verify(product, pq, pcert)
              and all(oracle.verify(r, q, c) for r, _, q, c in factors))
        done += 1
        if not ok:
            failures += 1
            rep.add("x0-joined product of non-members is a non-member",
                    f"({pl}, {pd})", False,
                    {"h": h, "certificate": summarize_certificate(field, pcert)})
    rep.add("x0-joined product of non-members is a non-member",
            f"level {k}", failures == 0,
            {"trials": done, "skipped_member_factors": skips})
    return clock.finish()


# -- escape of windowed coefficients ----------------------------------------------


def _descend(params: ConstructionParams, k: int, h: int, oracle: SpanOracle,
             budgets: Budgets = DEFAULT_BUDGETS):
    """Expand (x0 X)^m for m = h*N - 1 and walk the window top-down until a
    coefficient escapes the level-k collision span.

    The window is widened lazily: coefficients near the guaranteed-membership
    floor have far too many terms to materialize at realistic block sizes,
    while the escape sits within a few indices of the top, so each step
    recomputes only the narrow window it needs.  The width budget turns
    runaway descents into a
    clean refusal instead of memory exhaustion.
    """
    field = params.field
    N = params.block(k)
    m = h * N - 1
    floor = (k + 2) * (m + 1) // (2 * (k + 1)) + 1
    tail = []
    i = m
    while i >= floor:
        if m - i + 1 > budgets.max_expand_m:
            raise BudgetExceeded(
                f"escape descent window for m={m} reached width {m - i + 1} "
                f"(budget {budgets.max_expand_m})",
                max_expand_m=budgets.max_expand_m,
            )
        window = expand_power_window(field, m, i)
        a = window[i]
        q = SpanQuery("collisions", m, m - i, level=k)
        cert = oracle.member(a, q)
        if cert.kind == "non_member":
            return m, floor, i, a, q, cert, tail
        tail.append((i, a, q, cert))
        i -= 1
    return m, floor, None, None, None, None, tail


def locate_escape(params: ConstructionParams, k: int = 1, h: int = 1,
                  budgets: Budgets = DEFAULT_BUDGETS, oracle: SpanOracle | None = None,
                  include_timing: bool = False) -> CampaignReport:
    """Find the largest window coefficient of (x0 X)^(h*N-1) outside the
    level-k collision span and check it beats the strict threshold
    (k+2)(m+1) / (2(k+1)); coefficients above it are certified members.
    """
    field = params.field
    rep = CampaignReport("escape", {**_params_dict(params), "level": k, "h": h})
    clock = _Clock(rep, include_timing)
    oracle = oracle or SpanOracle(params, budgets)
    m, floor, i, a, q, cert, tail = _descend(params, k, h, oracle, budgets)
    if i is None:
        rep.add("a window coefficient escapes the collision span",
                f"m={m}", False, {"floor": floor, "note": "no escape found"})
        return clock.finish()
    bound_strict = 2 * (k + 1) * i > (k + 2) * (m + 1)
    ok = (bound_strict and oracle.verify(a, q, cert)
          and all(c.kind == "member" for _, _, _, c in tail)
          and all(oracle.verify(ta, tq, tc) for _, ta, tq, tc in tail[:3]))
    rep.add("a window coefficient escapes the collision span",
            f"m={m}", ok,
            {"escape_index": i, "floor": floor,
             "threshold": f"{(k + 2) * (m + 1)}/{2 * (k + 1)}",
             "members_above": len(tail),
             "certificate": summarize_certificate(field, cert)})
    return clock.finish()


def _random_zero_degree_poly(field, rng: random.Random) -> FreePoly:
    """Random polynomial in the zeroth generator alone, without unit term."""
    items = []
    for L in rng.sample(range(1, 4), rng.randint(1, 2)):
        c = rng.choice((-2, -1, 1, 2))
        items.append(((0,) * L, field.from_int(c)))
    return FreePoly.from_terms(field, items)


def verify_counterexample(params: ConstructionParams, h_max: int = 2,
                          products: int = 20, seed: int = 0,
                          budgets: Budgets = DEFAULT_BUDGETS,
                          include_timing: bool = False) -> CampaignReport:
    """The headline separation at level 1: escaped window coefficients avoid
    the truncated ideal too, while the degree-zero subalgebra is visibly nil
    modulo it.

    For each h <= h_max the escape coefficient of (x0 X)^(h*N-1) gets
    non-membership certificates against both the collision span and the
    truncated ideal.  Positively, x0^(2N) generates: it is a member of the
    level-1 ideal family, and random products of 2N degree-zero elements
    reduce to zero against the ideal in every component.
    """
    field = params.field
    k = 1
    N = params.block(k)
    rep = CampaignReport("counterexample", {**_params_dict(params),
                                            "h_max": h_max,
                                            "products": products}, seed=seed)
    clock = _Clock(rep, include_timing)
    rng = random.Random(seed)
    oracle = SpanOracle(params, budgets)
    for h in range(1, h_max + 1):
        m, floor, i, a, q, cert, tail = _descend(params, k, h, oracle, budgets)
        if i is None:
            rep.add("escape avoids the collision span", f"h={h}", False,
                    {"floor": floor})
            continue
        ok = oracle.verify(a, q, cert)
        rep.add("escape avoids the collision span", f"h={h}, ({m}, {m - i})",
                ok, {"escape_index": i, "members_above": len(tail),
                     "certificate": summarize_certificate(field, cert)})
        ideal_q = SpanQuery("ideal", m, m - i)
        icert = oracle.member(a, ideal_q)
        ok = icert.kind == "non_member" and oracle.verify(a, ideal_q, icert)
        rep.add("escape avoids the truncated ideal", f"h={h}, ({m}, {m - i})",
                ok, {"certificate": summarize_certificate(field, icert)})
    gen = FreePoly.monomial(field, (0,) * (2 * N))
    gen_q = SpanQuery("ideal_level", 2 * N, 0, level=k)
    gcert = oracle.member(gen, gen_q)
    rep.add("the square of the block power generates the ideal",
            f"({2 * N}, 0)",
            gcert.kind == "member" and oracle.verify(gen, gen_q, gcert),
            {"certificate": summarize_certificate(field, gcert)})
    bad = 0
    lengths_seen = set()
    for _ in range(products):
        prod = FreePoly.one(field)
        for _ in range(2 * N):
            prod = prod * _random_zero_degree_poly(field, rng)
        for (L, d), comp in prod.components().items():
            lengths_seen.add(L)
            nf = oracle.normal_form(comp, SpanQuery("ideal", L, d))
            if not nf.is_zero():
                bad += 1
    rep.add("products of 2N degree-zero elements vanish modulo the ideal",
            f"lengths {min(lengths_seen)}..{max(lengths_seen)}",
            bad == 0, {"products": products, "failures": bad})
    return clock.finish()


# -- the signed checkpoint reorder --------------------------------------------


def _embedded_collision_witness(params: ConstructionParams, j: int,
                                poly: FreePoly, prefer_m: int | None = None):
    """Structural membership witness in the level-j collision span: the
    polynomial must be a scalar times one embedded collision word u z v or an
    embedded swap pair with common u and v.  Returns a summary dict or None.
    Windows are scanned from prefer_m first, since sparse fillers can create
    incidental collisions in earlier windows.
    """
    if poly.is_zero():
        return {"form": "zero"}
    N = params.block(j)
    terms = sorted(poly.terms.items())
    words = [w for w, _ in terms]
    L = len(words[0])
    coeffs = [c for _, c in terms]
    window_order = list(range((L - (N - 1)) // N + 1))
    if prefer_m in window_order:
        window_order.remove(prefer_m)
        window_order.insert(0, prefer_m)
    if len(terms) == 1:
        w = words[0]
        for m in window_order:
            core = w[m * N : m * N + N - 1]
            elem = collision_test(params, j, core)
            if elem is not None and elem.kind == "repeat":
                return {"form": "embedded repeat", "m": m,
                        "positions": list(elem.positions)}
        return None
    if len(terms) == 2:
        if coeffs[0] != coeffs[1]:
            return None
        w1, w2 = words
        diff = [idx for idx in range(L) if w1[idx] != w2[idx]]
        for m in window_order:
            lo, hi = m * N, m * N + N - 1
            if all(lo <= idx < hi for idx in diff):
                elem = collision_test(params, j, (w1[lo:hi], w2[lo:hi]))
                if elem is not None and elem.kind == "swap":
                    return {"form": "embedded swap", "m": m,
                            "positions": list(elem.positions)}
        return None
    return None


def verify_phi(params: ConstructionParams, kill_samples: int = 100,
               fix_samples: int = 20, preserve_trials: int = 20,
               seed: int = 0, include_timing: bool = False) -> CampaignReport:
    """The signed checkpoint reorder at the top level kills the top collision
    family, fixes checkpoint-sorted words, signs transpositions, and carries
    embedded lower-level collision elements to embedded collision elements.
    """
    field = params.field
    k = max((j for j in range(1, params.k_max + 1) if params.level_valid(j)),
            default=None)
    rep = CampaignReport("phi", {**_params_dict(params),
                                 "kill_samples": kill_samples,
                                 "fix_samples": fix_samples,
                                 "preserve_trials": preserve_trials}, seed=seed)
    clock = _Clock(rep, include_timing)
    if k is None:
        rep.add("a valid level exists for the reorder", "params", False, {})
        return clock.finish()
    rng = random.Random(seed)
    N = params.block(k)
    length = N - 1
    cps = params.checkpoints(k)
    positions = cps[1 : k + 2]
    targets = tuple(cps[0 : k + 1])

    # kill: the reorder annihilates every top-level collision element
    bad = 0
    batch = []
    for s in range(kill_samples):
        elem = _sample_collision(params, k, rng)
        z = elem.poly(field)
        if not signed_reorder(params, k, z).is_zero():
            bad += 1
            rep.add("reorder kills the top collision family",
                    f"level {k}, {elem.kind}", False,
                    {"word": _word_text(elem.words[0])})
        batch.append(z)
        if len(batch) == 5:
            combo = FreePoly.zero(field)
            for zz in batch:
                combo = combo + zz.scale(field.from_int(rng.choice((1, 2, -1, 3))))
            if not signed_reorder(params, k, combo).is_zero():
                bad += 1
                rep.add("reorder kills combinations of collision elements",
                        f"level {k}", False, {})
            batch = []
    if not bad:
        rep.add("reorder kills the top collision family", f"level {k}", True,
                {"samples": kill_samples})

    # fix and sign: sorted checkpoint letters are fixed, transposed letters
    # flip the sign and land on the same sorted image, foreign letters die
    bad = 0
    for _ in range(fix_samples):
        word = [0] * length
        for _ in range(rng.randint(0, 2)):
            word[rng.randrange(length)] = rng.randint(1, 2)
        for pos, t in zip(positions, targets):
            word[pos - 1] = t
        sorted_word = tuple(word)
        img = signed_reorder_word(params, k, sorted_word)
        if img != (1, sorted_word):
            bad += 1
            rep.add("reorder fixes checkpoint-sorted words", "fix", False,
                    {"word": _word_text(sorted_word)})
        a, b = rng.sample(range(len(positions)), 2)
        swapped = list(sorted_word)
        swapped[positions[a] - 1], swapped[positions[b] - 1] = (
            swapped[positions[b] - 1], swapped[positions[a] - 1])
        img2 = signed_reorder_word(params, k, tuple(swapped))
        if img2 != (-1, sorted_word):
            bad += 1
            rep.add("reorder signs a transposition by -1", "sign", False,
                    {"word": _word_text(tuple(swapped))})
        foreign = list(sorted_word)
        foreign[positions[0] - 1] = targets[-1] + 1
        if signed_reorder_word(params, k, tuple(foreign)) is not None:
            bad += 1
            rep.add("reorder kills foreign checkpoint letters", "kill", False,
                    {"word": _word_text(tuple(foreign))})
    if not bad:
        rep.add("reorder fixes sorted words, signs transpositions, kills "
                "foreign letters", f"level {k}", True,
                {"samples": fix_samples})

    # preservation: embedded lower-level collision elements stay embedded
    for j in range(1, k):
        if not params.level_valid(j):
            rep.add("reorder preserves the lower collision span",
                    f"level {j}", True,
                    {"note": "level degenerate, lower family is zero"})
            continue
        Nj = params.block(j)
        bad = 0
        killed = 0
        moved = 0
        for t in range(preserve_trials):
            m = rng.randrange(0, (length - (Nj - 1)) // Nj + 1)
            elem = _sample_collision(params, j, rng)
            filler = [0] * length
            for _ in range(rng.randint(0, 2)):
                filler[rng.randrange(length)] = 1
            if t % 2 == 0:
                perm = list(targets)
                rng.shuffle(perm)
                for pos, letter in zip(positions, perm):
                    filler[pos - 1] = letter
            embedded = []
            for cw in elem.words:
                w = list(filler)
                w[m * Nj : m * Nj + Nj - 1] = cw
                embedded.append(tuple(w))
            a = FreePoly(field, {w: field.one for w in embedded})
            img = signed_reorder(params, k, a)
            if img.is_zero():
                killed += 1
                continue
            moved += 1
            witness = _embedded_collision_witness(params, j, img, prefer_m=m)
            touched_outside = any(
                any(iw[p] != sw[p]
                    for p in range(length)
                    if (p + 1) not in positions)
                for iw, sw in zip(sorted(img.terms), sorted(a.terms))
            )
            if witness is None or witness.get("m") != m or touched_outside:
                bad += 1
                rep.add("reorder preserves the lower collision span",
                        f"level {j}, trial {t}", False,
                        {"witness": witness})
        if not bad:
            rep.add("reorder preserves the lower collision span",
                    f"level {j}", True,
                    {"trials": preserve_trials, "killed": killed,
                     "moved": moved})
    return clock.finish()


# -- series over nilpotent matrices ----------------------------------------------


def _random_strict_upper(field, n: int, rng: random.Random):
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            if c > r:
                row.append(field.from_int(rng.choice((-2, -1, 0, 1, 1, 2))))
            else:
                row.append(field.zero)
        rows.append(tuple(row))
    return tuple(rows)


def verify_series(field=None, dimension: int = 3, trials: int = 25,
                  seed: int = 0, include_timing: bool = False) -> CampaignReport:
    """Random inner derivations on strictly upper-triangular matrices: the
    derivation index is finite, 1 - c X^p inverts exactly once p exceeds it
    (with both product identities checked), the top coefficient of powers is
    the matrix power, and component extraction from sampled evaluations is
    exact.
    """
    field = field or RationalField()
    rep = CampaignReport("series", {"field": _field_label(field),
                                    "dimension": dimension,
                                    "trials": trials}, seed=seed)
    clock = _Clock(rep, include_timing)
    rng = random.Random(seed)
    n = dimension
    bad = 0
    refused = 0
    for t in range(trials):
        u = _random_strict_upper(field, n, rng)
        c = _random_strict_upper(field, n, rng)
        if mat_is_zero(u) or mat_is_zero(c):
            continue
        D = InnerDerivation(field, u)
        s = s_index(c, D)
        q = nil_index(field, c)
        ok = True
        try:
            for p in (s + 1, s + 2):
                inv = invert_one_minus(c, p, D)
                if not all(coefficient_identity(c, p, e, D)
                           for e in range(1, q + 1)):
                    ok = False
            if s >= 1:
                try:
                    invert_one_minus(c, s, D)
                    ok = False
                except ValueError:
                    refused += 1
        except ArithmeticError:
            ok = False
        if not ok:
            bad += 1
            rep.add("series identities for 1 - c X^p", f"trial {t}", False,
                    {"s_index": s})
    rep.add("series inverses and coefficient identities hold exactly",
            f"{n} x {n}", bad == 0,
            {"trials": trials, "premise_refusals": refused})
    bad = 0
    max_alpha = trials + 4
    if field.characteristic:
        max_alpha = field.characteristic - 1
    for t in range(trials):
        lo = rng.randint(0, 2)
        hi = lo + rng.randint(0, min(2, max_alpha - 1))
        parts = [_random_strict_upper(field, n, rng) for _ in range(hi - lo + 1)]
        alphas = rng.sample(range(1, max_alpha + 1), hi - lo + 1)
        samples = []
        for av in alphas:
            alpha = field.from_int(av)
            acc = zero_matrix(field, n)
            power = field.one
            for _ in range(lo):
                power = field.mul(power, alpha)
            for g in parts:
                acc = mat_add(field, acc, mat_scale(field, g, power))
                power = field.mul(power, alpha)
            samples.append((alpha, acc))
        if vandermonde_extract(field, samples, lo, hi) != parts:
            bad += 1
            rep.add("sampled evaluations recover components", f"trial {t}",
                    False, {"degrees": [lo, hi]})
        zero = zero_matrix(field, n)
        zeroed = [(alpha, zero) for alpha, _ in samples]
        if any(not mat_is_zero(g)
               for g in vandermonde_extract(field, zeroed, lo, hi)):
            bad += 1
            rep.add("all-zero evaluations yield all-zero components",
                    f"trial {t}", False, {"degrees": [lo, hi]})
    rep.add("sampled evaluations recover the graded components exactly",
            f"{n} x {n}", bad == 0, {"trials": trials})
    return clock.finish()


# -- registry --------------------------------------------------------------------


CAMPAIGNS = ("ballot", "z_closure", "inclusions", "products", "escape",
             "counterexample", "phi", "series")


def run_campaign(name: str, params: ConstructionParams | None = None, *,
                 seed: int = 0, include_timing: bool = False,
                 budgets: Budgets = DEFAULT_BUDGETS,
                 knobs: dict | None = None) -> CampaignReport:
    """Dispatch a named campaign with its relevant knobs.

    Knobs not used by the named campaign are ignored; params defaults to the
    standard small parameter set over the rationals.
    """
    knobs = knobs or {}
    params = params or ConstructionParams()

    def k(name_, default):
        return knobs.get(name_, default)

    if name == "ballot":
        return verify_ballot(params.field, m_max=k("m_max", 8),
                             include_timing=include_timing)
    if name == "z_closure":
        return verify_z_closure(params, samples=k("samples", 25), seed=seed,
                                degree_cap=k("degree_cap", 6), budgets=budgets,
                                include_timing=include_timing)
    if name == "inclusions":
        return verify_inclusions(params, degree_cap=k("degree_cap", 2),
                                 budgets=budgets,
                                 include_timing=include_timing)
    if name == "products":
        return verify_products(params, trials=k("trials", 20), seed=seed,
                               budgets=budgets,
                               include_timing=include_timing)
    if name == "escape":
        return locate_escape(params, h=k("h", 1), budgets=budgets,
                             include_timing=include_timing)
    if name == "counterexample":
        return verify_counterexample(params, h_max=k("h_max", 2),
                                     products=k("products", 20), seed=seed,
                                     budgets=budgets,
                                     include_timing=include_timing)
    if name == "phi":
        return verify_phi(params, kill_samples=k("kill_samples", 100),
                          fix_samples=k("fix_samples", 20),
                          preserve_trials=k("preserve_trials", 20), seed=seed,
                          include_timing=include_timing)
    if name == "series":
        return verify_series(params.field, dimension=k("dimension", 3),
                             trials=k("trials", 25), seed=seed,
                             include_timing=include_timing)
    raise ValueError(f"unknown campaign {name!r} (expected one of "
                     f"{', '.join(CAMPAIGNS)})")
