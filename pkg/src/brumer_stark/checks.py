"""End-to-end checks on a loaded case file.

Each check returns a plain dict section with a ``verdict`` of 'pass', 'fail'
or 'skipped' and the witnesses it computed.  Sections are JSON-ready.
"""
from fractions import Fraction
from math import inf

from .cyclotomic import Cyclotomic
from .errors import (ActionMismatch, CharacterIdentityFails, InvalidModule, MissingLValues,
                     NotDivisible, NotQuadratic, PrecisionExhausted, SizeMismatch, TrivialConjugation)
from .fitting import DEFAULT_GUARD, Presentation, fitting_ideal, ideal_compare, module_size, principal
from .gmodule import GModule
from .group_ring import QQ, GroupRingElement, MinusElement, minus_project, padic_ring
from .padic import DEFAULT_PRECISION
from .ritter_weiss import minus_module
from .stickelberger import assemble_theta, dirichlet_l_table, dirichlet_places


def _skip(reason):
    return {"verdict": "skipped", "reason": reason}


def _q(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cyc(z):
    if z.is_rational():
        return _q(z.to_fraction())
    m, num, den = z.minimal()
    return {"m": m, "coefficients": [_q(Fraction(a, den)) for a in num]}


def _element_terms(el):
    G = el.group
    return [{"element": list(g), "coefficient": _q(a)} for g, a in zip(G.elements, el.coeffs) if a]


# theta -------------------------------------------------------------------------------------
def case_places(case):
    """(S, T) as place specs for the L-value code, in file order."""
    if case.over_Q:
        dg = case.dirichlet
        S_primes = [v.prime for v in case.places_of("S") if not v.archimedean]
        T_primes = [v.prime for v in case.places_of("T") if not v.archimedean]
        return dirichlet_places(dg, S_primes, T_primes)
    return [v.spec() for v in case.places_of("S")], [v.spec() for v in case.places_of("T")]


def l_value_table(case):
    S, T = case_places(case)
    if case.over_Q:
        return dirichlet_l_table(case.dirichlet, S, T)
    if case.l_values is None:
        raise MissingLValues("the base field is not Q and the case file supplies no L-values")
    table = case.l_values
    table.S, table.T = tuple(v.label for v in S), tuple(v.label for v in T)
    return table


def case_theta(case, p=None):
    """Theta_{S,T} in Q[G] for the case, from computed or supplied L-values."""
    S, T = case_places(case)
    table = l_value_table(case)
    t = case.parameters.get("t", 0)
    return assemble_theta(case.group, S, T, table, n=case.n, t=t, p=p)


def _scaled_minus(theta_el, k):
    """Theta / 2^k in the minus quotient, with integer coefficients or NotDivisible."""
    m = minus_project(theta_el)
    out = []
    for r, a in zip(theta_el.group.minus_reps, m.coeffs):
        x = Fraction(a) / 2 ** k
        if x.denominator != 1:
            raise NotDivisible(f"coefficient {a} at orbit {r} is not divisible by 2^{k}",
                               orbit=r, coefficient=a)
        out.append(int(x))
    return out


# Brumer-Stark ----------------------------------------------------------------------------
def check_brumer_stark(case, theta=None):
    """Character identity and valuation vector of the supplied Brumer-Stark unit."""
    unit = case.bs_unit
    if unit is None:
        return _skip("no bs_unit block")
    G = case.group
    if G.order == 1:
        return {"verdict": "pass", "reason": "trivial group: the identity is vacuous",
                "attestations": _attestations(unit)}
    theta = theta if theta is not None else case_theta(case)
    k = unit.get("theta_exponent", 0)
    scale = Fraction(1, 2 ** k) if k >= 0 else Fraction(2 ** -k)
    table = l_value_table(case)
    vals = unit["valuations"]
    identities = []
    for chi in G.characters:
        bins = [0] * chi.m
        for g, a in vals.items():
            bins[chi.exp_at(g)] += a
        lhs = Cyclotomic.from_bins(chi.m, bins, 1)
        if chi.is_odd:
            # the table holds L(psi^-1, 0) at psi, so L(chi, 0) sits at chi^-1
            rhs = table.value(chi.inverse()) * Cyclotomic.from_rational(chi.m, scale)
        else:
            rhs = Cyclotomic.from_rational(chi.m, 0)
        if lhs != rhs:
            raise CharacterIdentityFails(
                f"character {list(chi.dual)}: sum of chi(sigma) ord = {_cyc(lhs)}, L-value side = {_cyc(rhs)}",
                character=chi.dual, lhs=lhs, rhs=rhs)
        identities.append({"character": list(chi.dual), "value": _cyc(lhs)})
    expected = {g: theta.element.coefficient(G.neg(g)) * scale for g in G.elements}
    mismatched = [list(g) for g in G.elements if Fraction(vals[g]) != expected[g]]
    section = {
        "verdict": "pass" if not mismatched else "fail",
        "theta": _element_terms(theta.element),
        "theta_exponent": k,
        "provenance": {"l_values": table.provenance, "unit": unit.get("provenance", "unprovenanced")},
        "character_identities": identities,
        "valuations": [{"sigma": list(g), "ord": vals[g]} for g in G.elements],
        "valuations_match_theta": not mismatched,
        "attestations": _attestations(unit),
    }
    if mismatched:
        section["reason"] = f"valuation vector differs from the theta coefficients at {mismatched}"
    return section


def _attestations(unit):
    out = {}
    for key in ("absolute_value_one", "t_congruence"):
        block = unit.get(key)
        if block is None:
            out[key] = "missing"
        else:
            out[key] = "attested" if block["attested"] else "denied"
    return out


# annihilation ----------------------------------------------------------------------------
def class_group_module(case, key="class_group"):
    block = getattr(case, key)
    try:
        return GModule(case.group, block["invariants"], block["actions"])
    except InvalidModule as err:
        raise ActionMismatch(f"{key}: {err}") from err


def check_annihilation(case, theta=None):
    """Theta / 2^k kills every generator of the minus part of the class group."""
    if case.class_group is None:
        return _skip("no class_group block")
    G = case.group
    Cl = class_group_module(case)
    if Cl.order() == 1:
        return {"verdict": "pass", "reason": "trivial class group", "class_group": []}
    if not G.has_conjugation:
        raise TrivialConjugation("the minus part needs c != 1")
    k = case.parameters.get("annihilation_exponent", max(case.n - 1, 0))
    theta = theta if theta is not None else case_theta(case)
    x = MinusElement(G, _scaled_minus(theta.element, k))
    Cl_minus = minus_module(Cl)
    A = Cl_minus.act(x.lift())
    survivors = [i for i, row in enumerate(A) if not Cl_minus.is_zero_vector(row)]
    section = {
        "verdict": "pass" if not survivors else "fail",
        "exponent": k,
        "element": [{"orbit": list(r), "coefficient": a} for r, a in zip(G.minus_reps, x.coeffs) if a],
        "class_group": Cl.invariants(),
        "class_group_minus": Cl_minus.invariants(),
        "provenance": case.class_group.get("provenance", "unprovenanced"),
    }
    if survivors:
        section["reason"] = f"generators {survivors} of the minus part are not killed"
    section["class_number_ratio"] = class_number_ratio(case, Cl, Cl_minus)
    return section


def class_number_ratio(case, Cl=None, Cl_minus=None):
    """#Cl / #Cl^+ against #Cl_-, when both class groups are supplied."""
    if case.class_group is None or case.class_group_plus is None:
        return _skip("needs both class_group and class_group_plus")
    Cl = Cl or class_group_module(case)
    Cl_minus = Cl_minus or minus_module(Cl)
    plus = 1
    for d in case.class_group_plus["invariants"]:
        plus *= d
    whole, minus = Cl.order(), Cl_minus.order()
    ok = plus != 0 and Fraction(whole, plus) == minus
    return {"verdict": "pass" if ok else "fail", "order": whole, "order_plus": plus, "order_minus": minus}


# Fitting equality ------------------------------------------------------------------------
def nabla_presentation(case, p, precision):
    """The nabla block over Z_p[G]_- at the given precision, or over Q[G]_- when precision is None."""
    block = case.nabla
    G = case.group
    ring = padic_ring(p, precision) if precision else QQ
    rows = []
    for row in block["matrix"]:
        rows.append([minus_project(GroupRingElement.from_dict(G, terms, QQ)).change_ring(ring)
                     for terms in row])
    ngens = len(rows[0]) if rows else 0
    return Presentation(G, ngens, rows, minus=True, ring=ring)


def check_fitting_equality(case, theta=None, p=None, precision=None, guard=DEFAULT_GUARD):
    """Fitting ideal of the supplied presentation against (Theta / 2^t)."""
    if case.nabla is None:
        return _skip("no nabla block")
    G = case.group
    p = p or case.nabla["prime"]
    precision = precision or case.nabla.get("precision") or case.parameters.get("precision") or DEFAULT_PRECISION
    t = case.nabla.get("t", case.parameters.get("t", 0))
    P = nabla_presentation(case, p, precision)
    if not P.is_quadratic:
        raise NotQuadratic(f"{P.nrels} relations on {P.ngens} generators")
    theta = theta if theta is not None else case_theta(case)
    ring = padic_ring(p, precision)
    m = minus_project(theta.element)
    x = MinusElement(G, [Fraction(a) / 2 ** t for a in m.coeffs], QQ)
    if p == 2:
        x = MinusElement(G, _scaled_minus(theta.element, t), ring)
    else:
        x = x.change_ring(ring)
    fit = fitting_ideal(P)
    section = {
        "prime": p, "t": t,
        "precision_audit": {"precision": precision, "guard": guard},
        "provenance": case.nabla.get("provenance", "unprovenanced"),
        "theta_over_2t": [{"orbit": list(r), "coefficient": a} for r, a in zip(G.minus_reps, x.coeffs) if a],
    }
    fit_zero = all(g.is_zero() for g in fit.gens)
    if fit_zero and not fitting_ideal(nabla_presentation(case, p, None)).is_zero():
        raise PrecisionExhausted(f"the Fitting ideal is nonzero but vanishes mod {p}^{precision}")
    if x.is_zero() and not m.is_zero():
        raise PrecisionExhausted(f"theta / 2^t is nonzero but vanishes mod {p}^{precision}")
    if fit_zero or x.is_zero():
        section["verdict"] = "pass" if fit_zero and x.is_zero() else "fail"
        section["comparison"] = ("equal" if section["verdict"] == "pass" else
                                 "A<B" if fit_zero else "B<A")
        section["reason"] = ("zero ideal: the Fitting ideal vanishes" if fit_zero else
                             "zero ideal: theta / 2^t vanishes")
        return section
    verdict = ideal_compare(fit, principal(x), p, precision, guard)
    section["comparison"] = verdict
    section["verdict"] = "pass" if verdict == "equal" else "fail"
    odd = G.odd_characters()
    size_fit = module_size(fit.gens[0], odd, p, precision, guard)
    size_theta = module_size(x, odd, p, precision, guard)
    section["size_fitting"] = "inf" if size_fit == inf else size_fit
    section["size_l_values"] = "inf" if size_theta == inf else size_theta
    if verdict == "equal" and size_fit != size_theta:
        raise SizeMismatch(f"ideals agree but sizes differ: {size_fit} vs {size_theta}")
    if verdict != "equal":
        section["reason"] = f"Fitting ideal vs (theta / 2^t): {verdict}"
    return section


# all checks ----------------------------------------------------------------------------
CHECK_FAILURES = (CharacterIdentityFails, NotDivisible, SizeMismatch)


def _guarded(check, *args, **kwargs):
    """Run a check; the errors that mean 'the identity does not hold' become a failed section."""
    try:
        return check(*args, **kwargs)
    except CHECK_FAILURES as err:
        return {"verdict": "fail", "error": type(err).__name__, "reason": str(err)}


def verify(case, p=None, precision=None):
    """Run every applicable check; the overall verdict fails if any section fails."""
    theta = None
    needs_theta = any(getattr(case, b) is not None for b in ("bs_unit", "class_group", "nabla"))
    if needs_theta and case.group.order > 1:
        theta = case_theta(case)
    sections = {
        "brumer_stark": _guarded(check_brumer_stark, case, theta),
        "annihilation": _guarded(check_annihilation, case, theta),
        "fitting_equality": _guarded(check_fitting_equality, case, theta, p, precision),
    }
    failed = [k for k, s in sections.items() if s["verdict"] == "fail"]
    return {
        "case": case.name,
        "group": {"invariants": list(case.group.invariants), "c": list(case.group.c)},
        "theta": _element_terms(theta.element) if theta is not None else None,
        "checks": sections,
        "assumptions": case.assumptions,
        "warnings": list(case.warnings),
        "verdict": "fail" if failed else "pass",
    }
