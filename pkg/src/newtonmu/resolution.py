"""Simultaneous resolution pipeline: monomial charts over a regular
admissible subdivision of the Newton fan of the generic support, with a
per-chart certificate.

Charts over original vertices carry a unit certificate (the strict
transform has a constant term that survives at s = 0).  Charts over added
vertices verify the pyramid normal form (constant term vanishing at s = 0,
the good apex pulling back to a linear term with unit coefficient) and a
Jacobian smoothness test of the strict transform on the exceptional
hyperplanes.
"""

from dataclasses import dataclass

from .geometry import (GeometryError, InternalConsistencyError, ZERO, dot)
from .polyhedra import SupportError, convenience_report, added_vertices
from .newton_number import newton_number_set
from .families import DeformationFamily, family, spoly
from .apex import mu_constant_test
from .fans import (LatticeCone, newton_fan, simplicialize, regularize_fan,
                   is_regular_cone, is_admissible, support_function)
from .groebner import DEFAULT_BUDGET, BudgetExceeded, ideal_contains_one
from .milnor import nondegeneracy_check

SMOOTH_MONOMIAL_CAP = 30
SMOOTH_VARIABLE_CAP = 4


@dataclass(frozen=True)
class Chart:
    """Monomial chart of a full-dimensional regular cone: with generators
    q_1..q_n in row order, x_j = prod_k y_k^(q_k)_j."""

    cone: LatticeCone

    @property
    def generators(self):
        return self.cone.rays

    @property
    def monomial_map(self):
        return self.cone.rays

    def pullback_exponent(self, alpha):
        return tuple(dot(q, alpha) for q in self.cone.rays)


def make_chart(cone):
    if cone.dim != cone.ambient_dim:
        raise GeometryError("chart cone must be full-dimensional")
    if not is_regular_cone(cone):
        raise GeometryError(f"chart cone {cone.rays} is not regular")
    return Chart(cone)


@dataclass(frozen=True)
class TotalTransform:
    chart: Chart
    monomial_exponents: tuple
    strict_part: DeformationFamily


def chart_pullback(fam, chart):
    """Total transform of the family through the chart: every exponent maps
    to its generator pairing vector, the common monomial factor is divided
    out, coefficients ride along unchanged."""
    if isinstance(chart, LatticeCone):
        chart = make_chart(chart)
    n = fam.n_vars
    if chart.cone.ambient_dim != n:
        raise SupportError("chart dimension does not match the family")
    pulled = [(chart.pullback_exponent(mono), coeff) for mono, coeff in fam.terms]
    if not pulled:
        raise SupportError("cannot pull back the zero family")
    m = tuple(min(p[k] for p, _ in pulled) for k in range(n))
    strict = family(n, fam.n_params,
                    [(tuple(a - b for a, b in zip(p, m)), coeff)
                     for p, coeff in pulled])
    return TotalTransform(chart, m, strict)


@dataclass(frozen=True)
class ChartCertificate:
    chart: Chart
    dual_vertex: tuple
    status: str    # unit | smooth-verified | unchecked
    witness: tuple # sorted (key, value) pairs


@dataclass(frozen=True)
class ResolutionReport:
    nu: object
    verd: tuple
    status_counts: tuple
    nondegeneracy: str
    warnings: tuple


@dataclass(frozen=True)
class ResolutionResult:
    fan: object
    charts: tuple
    transforms: tuple
    certificates: tuple
    report: ResolutionReport


def _dual_vertex(fam, transform):
    """The unique generic-support point pulling back onto the monomial
    factor exactly."""
    m = transform.monomial_exponents
    hits = [mono for mono, _ in fam.terms
            if transform.chart.pullback_exponent(mono) == m]
    if len(hits) != 1:
        raise InternalConsistencyError(
            f"chart {transform.chart.generators} has {len(hits)} dual "
            "vertices; expected exactly one")
    return hits[0]


def _coefficient_at_zero(fam, mono):
    zero_s = (0,) * fam.n_params
    for m, coeff in fam.terms:
        if m == mono:
            return dict(coeff).get(zero_s, ZERO)
    return ZERO


def _decomposable_positions(strict, apex_pos):
    """Chart positions j (1-based, != apex) for which every term free of
    y_j is constant, pure in the apex variable, or free of it."""
    n = strict.n_vars
    out = []
    for j in range(n):
        if j == apex_pos:
            continue
        ok = True
        for mono, _ in strict.terms:
            if mono[j] != 0:
                continue
            if all(e == 0 for e in mono):
                continue
            pure_apex = all(e == 0 for k, e in enumerate(mono) if k != apex_pos)
            if not pure_apex and mono[apex_pos] != 0:
                ok = False
                break
        if ok:
            out.append(j + 1)
    return tuple(out)


def _smoothness_on_hyperplane(strict_base, position, budget):
    """Whether the singular locus of the strict transform at s = 0 misses
    the coordinate hyperplane of the given 0-based position."""
    n = strict_base.n_vars
    gens = [strict_base]
    for i in range(1, n + 1):
        p = strict_base.partial(i)
        if not p.is_zero:
            gens.append(p)
    axis = [0] * n
    axis[position] = 1
    gens.append(spoly(n, [(tuple(axis), 1)]))
    return ideal_contains_one(gens, budget)


def _certify_unit(fam, transform, alpha):
    c0 = _coefficient_at_zero(fam, alpha)
    if c0 == 0:
        raise InternalConsistencyError(
            f"unit chart over {alpha} has vanishing constant term at s = 0")
    witness = (("constant_at_zero", c0),)
    return ChartCertificate(transform.chart, alpha, "unit", witness)


def _certify_added(fam, transform, alpha, cert, skip_smoothness, budget,
                   monomial_cap, variable_cap, warnings):
    chart = transform.chart
    strict = transform.strict_part
    n = fam.n_vars
    apex_ray = tuple(1 if k + 1 == cert.i else 0 for k in range(n))
    if apex_ray not in chart.generators:
        raise GeometryError(
            f"chart over added vertex {alpha} does not contain the apex ray "
            f"e_{cert.i}; conflicting apex axes between added vertices are "
            "not supported")
    apex_pos = chart.generators.index(apex_ray)
    if transform.monomial_exponents[apex_pos] != 0:
        raise InternalConsistencyError(
            "apex generator carries a nonzero monomial exponent")
    c0 = _coefficient_at_zero(fam, alpha)
    if c0 != 0:
        raise InternalConsistencyError(
            f"added vertex {alpha} has a coefficient surviving at s = 0")
    beta_strict = chart.pullback_exponent(cert.beta)
    unit = tuple(1 if k == apex_pos else 0 for k in range(n))
    expected = tuple(b - m for b, m in zip(beta_strict,
                                           transform.monomial_exponents))
    if expected != unit:
        raise InternalConsistencyError(
            f"good apex {cert.beta} pulls back to {expected}, not the unit "
            f"vector at the apex position")
    linear = _coefficient_at_zero(fam, cert.beta)
    if linear == 0:
        raise InternalConsistencyError(
            f"apex term {cert.beta} vanishes at s = 0")
    witness = [
        ("apex_axis", cert.i),
        ("apex_position", apex_pos + 1),
        ("beta", cert.beta),
        ("constant_at_zero", ZERO),
        ("linear_at_zero", linear),
        ("decomposable_positions", _decomposable_positions(strict, apex_pos)),
    ]
    exceptional = [k for k, m in enumerate(transform.monomial_exponents) if m > 0]
    witness.append(("exceptional_positions", tuple(k + 1 for k in exceptional)))
    status = "smooth-verified"
    results = []
    strict_base = strict.base()
    if skip_smoothness:
        status = "unchecked"
        results = [(k + 1, "skipped") for k in exceptional]
        warnings.append(f"chart {chart.generators}: smoothness check skipped")
    elif (len(strict_base.terms) > monomial_cap or n > variable_cap):
        status = "unchecked"
        results = [(k + 1, "beyond cap") for k in exceptional]
        warnings.append(
            f"chart {chart.generators}: strict transform beyond the "
            "smoothness cap; certificate left unchecked")
    else:
        for k in exceptional:
            try:
                empty = _smoothness_on_hyperplane(strict_base, k, budget)
            except BudgetExceeded:
                status = "unchecked"
                results.append((k + 1, "budget exceeded"))
                warnings.append(
                    f"chart {chart.generators}: smoothness budget exceeded "
                    f"on hyperplane {k + 1}")
                continue
            if empty:
                results.append((k + 1, "empty"))
            else:
                status = "unchecked"
                results.append((k + 1, "nonempty"))
                warnings.append(
                    f"chart {chart.generators}: strict transform singular "
                    f"somewhere on hyperplane {k + 1}; not localized, "
                    "certificate left unchecked")
    witness.append(("singular_locus", tuple(results)))
    return ChartCertificate(chart, alpha, status, tuple(sorted(witness)))


def simultaneous_resolution(fam, skip_smoothness=False, budget=DEFAULT_BUDGET,
                            monomial_cap=SMOOTH_MONOMIAL_CAP,
                            variable_cap=SMOOTH_VARIABLE_CAP,
                            waive_degenerate_faces=(),
                            nondegeneracy_report=None):
    """Resolve a deformation family: Newton fan of the generic support,
    simplicialized with the apex rays pulled first, regularized, then one
    certified monomial chart per maximal cone.

    nondegeneracy_report lets a caller pass a precomputed report for the
    base polynomial; by default it is computed here.
    """
    fam.check_deformation()
    base = fam.base()
    s_base = base.support()
    s_gen = fam.generic_support()
    conv = convenience_report(s_base)
    if not conv.axis_convenient:
        raise SupportError(
            f"base polynomial is not convenient; axes {conv.missing_axes} "
            "carry no support point")
    warnings = []

    mu_res = mu_constant_test(s_base, s_gen)
    warnings.extend(mu_res.warnings)
    if not mu_res.verdict:
        offenders = sorted(c.alpha for c in mu_res.certificates if not c.good)
        rendered = ", ".join(
            "(" + ", ".join(str(c) for c in a) + ")"
            for a in (offenders or sorted(added_vertices(s_base, s_gen))))
        raise GeometryError(
            f"family is not mu-constant; added vertices without a good "
            f"apex: {rendered}")

    if nondegeneracy_report is None:
        nondegeneracy_report = nondegeneracy_check(base)
    waived = {tuple(sorted(map(tuple, f))) for f in waive_degenerate_faces}
    for fv in nondegeneracy_report.faces:
        if fv.status == "degenerate":
            if tuple(sorted(fv.points)) in waived:
                warnings.append(f"degenerate face {fv.points} waived")
            else:
                raise GeometryError(
                    f"base polynomial is degenerate on face {fv.points}; "
                    "waive it explicitly to proceed")
        elif fv.status == "unchecked":
            warnings.append(f"nondegeneracy unchecked on face {fv.points}")

    verd = added_vertices(s_base, s_gen)
    certs_by_vertex = {c.alpha: c for c in mu_res.certificates}
    apex_rays = []
    for alpha in verd:
        cert = certs_by_vertex[alpha]
        ray = tuple(1 if k + 1 == cert.i else 0 for k in range(fam.n_vars))
        if ray not in apex_rays:
            apex_rays.append(ray)

    fan = regularize_fan(simplicialize(newton_fan(s_gen), priority=apex_rays))
    for cone in fan.maximal:
        if not is_regular_cone(cone):
            raise InternalConsistencyError(
                f"regularization left a non-regular cone {cone.rays}")
    if is_admissible(fan, s_gen) is not True:
        raise InternalConsistencyError("emitted fan is not admissible")

    charts = []
    transforms = []
    certificates = []
    for cone in fan.maximal:
        chart = make_chart(cone)
        transform = chart_pullback(fam, chart)
        for pos, q in enumerate(chart.generators):
            if transform.monomial_exponents[pos] != support_function(s_gen, q):
                raise InternalConsistencyError(
                    f"monomial exponent at generator {q} disagrees with the "
                    "support function")
        alpha = _dual_vertex(fam, transform)
        if alpha in certs_by_vertex:
            cert = _certify_added(fam, transform, alpha,
                                  certs_by_vertex[alpha], skip_smoothness,
                                  budget, monomial_cap, variable_cap, warnings)
        else:
            cert = _certify_unit(fam, transform, alpha)
        charts.append(chart)
        transforms.append(transform)
        certificates.append(cert)

    counts = {}
    for cert in certificates:
        counts[cert.status] = counts.get(cert.status, 0) + 1
    report = ResolutionReport(
        nu=newton_number_set(s_base),
        verd=verd,
        status_counts=tuple(sorted(counts.items())),
        nondegeneracy=nondegeneracy_report.verdict,
        warnings=tuple(warnings),
    )
    return ResolutionResult(fan, tuple(charts), tuple(transforms),
                            tuple(certificates), report)
