"""
End-to-end analysis of a presented ring: invariants, Koszul homology,
verdicts, searches and series comparisons, gathered into report models.
"""
from src.models.report import (AnalysisReport, BettiSummary, ClassSummary, EzdSummary, Flags, GolodSummary,
                               HomologyCheckSummary, QuotientSummary, RingEcho)
from src.models.report import SeriesComparison as SeriesComparisonModel
from src.services.algebra import (compile_ring, hilbert, is_compressed, is_gorenstein, quotient_power,
                                  ring_type)
from src.services.constructions import ezd_search
from src.services.koszul import (classify, golod_verdict, homology, is_complete_intersection, koszul_complex,
                                 quotient_homology_dims_check, tor_over_presentation)
from src.services.resolution import betti_of_residue_field, verify_exactness
from src.services.series import (IntSeries, codepth3_gorenstein_series, compare, ezd_series, format_terms,
                                 golod_series, koszul_numerical_test, la_quotient_series, poly_coefficients,
                                 rossi_sega_criterion_series)
from src.utils.config import DEFAULT_DEPTH, EZD_DEFAULT_BUDGET, DEFAULT_SEED
from src.utils.logger import get_logger

logger = get_logger(__name__)


def ring_echo(algebra):
    pr = algebra.origin
    return RingEcho(
        label=algebra.label or (pr.label if pr is not None else ''),
        char=algebra.p,
        vars=list(algebra.names),
        ideal=list(pr.ideal) if pr is not None else None,
        cap=algebra.reduction.cap if algebra.reduction is not None else None,
        dim=algebra.dim,
        basis=list(algebra.labels),
    )


def _witness(witness):
    return witness.to_dict() if witness is not None else None


def class_summary(verdict):
    return ClassSummary(kind=verdict.kind, description=verdict.describe(), dims=verdict.dims,
                        witness=_witness(verdict.witness), qualifier=verdict.qualifier, notes=verdict.notes)


def golod_summary(verdict):
    return GolodSummary(kind=verdict.kind, description=verdict.describe(), depth=verdict.depth,
                        certificate=verdict.certificate, witness=_witness(verdict.witness), index=verdict.index,
                        betti=verdict.betti, golod=verdict.golod)


def ezd_summary(report):
    return EzdSummary(**report.to_dict())


def betti_summary(table):
    return BettiSummary(**table.to_dict())


def _comparison(name, expected, computed):
    result = compare(name, expected, computed)
    return SeriesComparisonModel(**result.to_dict())


def analyze(pr, depth=DEFAULT_DEPTH, betti_depth=None, ezd_mode=None, ezd_budget=EZD_DEFAULT_BUDGET,
            seed=DEFAULT_SEED, quotient=None, quotient_betti=False, allow_deep=False):
    """
    Run the full analysis of a presented ring.

    :param pr: The ring
    :type pr: PresentedRing
    :param depth: Cutoff D of the Golod verdicts
    :param betti_depth: Resolve k over R to this depth, or skip when None
    :param ezd_mode: Exact zero divisor search mode, or skip when None
    :param quotient: Exponent q of the quotient R/m^q; defaults to the socle degree when it is at least 2
    :param quotient_betti: Also resolve k over the quotient and compare with the predicted series
    :return: The assembled report
    :rtype: AnalysisReport
    """
    algebra = compile_ring(pr)
    algebra.check_axioms()
    h = hilbert(algebra)
    s = algebra.socle_degree
    e = algebra.embedding_dimension
    gorenstein = is_gorenstein(algebra)
    compressed = gorenstein and is_compressed(algebra)
    complex_ = koszul_complex(algebra)
    complex_.check_differentials()
    H = homology(complex_)
    ci = is_complete_intersection(algebra)
    classification = classify(algebra)
    golod = golod_verdict(algebra, depth, allow_deep)
    logger.info("%s: hilbert %s, Koszul dims %s, %s", pr.label, h, H.dims, classification.describe())

    ezd = None
    if ezd_mode:
        ezd = ezd_search(algebra, ezd_mode, ezd_budget, seed)

    series = []
    betti = None
    koszul_consistent = None
    need_ring_betti = betti_depth is not None or quotient_betti
    ring_depth = betti_depth if betti_depth is not None else depth
    if need_ring_betti:
        table = betti_of_residue_field(algebra, ring_depth, allow_deep)
        verify_exactness(table)
        betti = betti_summary(table)
        P = IntSeries(table.values)
        series.append(_comparison('golod-bound', golod_series(e, 0, H.dims[1:], ring_depth).coefficients,
                                  table.values))
        product = P * IntSeries.from_poly(h, ring_depth).evaluate_negated()
        series.append(_comparison('koszul-consistency', [1] + [0] * ring_depth, product.coefficients))
        if koszul_numerical_test(P, h, ring_depth):
            koszul_consistent = ring_depth
        if gorenstein and s == 3:
            expected = rossi_sega_criterion_series(e, H.dims, ring_depth)
            series.append(_comparison('rossi-sega', expected.coefficients, table.values))
        if gorenstein and e == 3 and not ci and H.dims[1] >= 4:
            expected = codepth3_gorenstein_series(H.dims[1], ring_depth)
            series.append(_comparison('codepth3-gorenstein', expected.coefficients, table.values))

    quotient_summary = None
    q = quotient if quotient is not None else (s if s >= 2 else None)
    if q is not None and 2 <= q <= s:
        quotient_summary = _quotient_section(algebra, q, depth, gorenstein, ezd, quotient_betti,
                                             ring_depth, series, allow_deep)

    return AnalysisReport(
        ring=ring_echo(algebra),
        hilbert=h,
        socle_degree=s,
        embedding_dimension=e,
        type=ring_type(algebra),
        mu_presentation=H.dims[1] if e else 0,
        flags=Flags(gorenstein=gorenstein, compressed=compressed, complete_intersection=ci,
                    koszul_consistent_up_to=koszul_consistent),
        koszul_dims=H.dims,
        tor_polynomial=format_terms(poly_coefficients(tor_over_presentation(algebra))),
        classification=class_summary(classification),
        golod=golod_summary(golod),
        ezd=ezd_summary(ezd) if ezd is not None else None,
        betti=betti,
        quotient=quotient_summary,
        series=series,
    )


def _quotient_section(algebra, q, depth, gorenstein, ezd, quotient_betti, ring_depth, series, allow_deep):
    quotient = quotient_power(algebra, q)
    H = homology(koszul_complex(quotient))
    classification = classify(quotient)
    golod = golod_verdict(quotient, depth, allow_deep)
    e = algebra.embedding_dimension
    s = algebra.socle_degree
    check = None
    if gorenstein and e >= 2 and q == s:
        result = quotient_homology_dims_check(algebra, s)
        check = HomologyCheckSummary(**result.to_dict())
    betti = None
    if quotient_betti:
        table = betti_of_residue_field(quotient, depth, allow_deep)
        verify_exactness(table)
        betti = betti_summary(table)
        series.append(_comparison('quotient-golod-bound',
                                  golod_series(e, 0, H.dims[1:], depth).coefficients, table.values))
        if gorenstein and q == s:
            P = IntSeries(betti_of_residue_field(algebra, max(depth, ring_depth), allow_deep).values)
            expected = la_quotient_series(P, depth)
            series.append(_comparison('la-quotient', expected.coefficients, table.values))
        if ezd is not None and ezd.found and s == 3 and q == 3:
            series.append(_comparison('ezd', ezd_series(e, depth).coefficients, table.values))
    return QuotientSummary(
        exponent=q,
        dim=quotient.dim,
        hilbert=hilbert(quotient),
        koszul_dims=H.dims,
        classification=class_summary(classification),
        golod=golod_summary(golod),
        betti=betti,
        homology_check=check,
    )
