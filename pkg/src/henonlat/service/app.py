"""FastAPI surface over the exact-dynamics library.

Endpoints are thin: parse the request model, call the library, shape the
response model. Domain validation errors surface as 422, internal
contract violations as 500; the bulk emitters (orbit, atlas) stream CSV.
"""

from fractions import Fraction

from fastapi import FastAPI
from fastapi.responses import JSONResponse, StreamingResponse

from .. import __version__
from ..analysis import (compression_check, convergence_report,
                        escape_radius_exceptions,
                        optimal_compression_search, padic_escape_check,
                        preperiodic_integers, radius_report,
                        real_escape_check, verify_cd_bounds,
                        verify_monotonicity, verify_sigma_agreement,
                        verify_tail_growth)
from ..dynamics import (NumericDivergenceError, eight_step_offsets,
                        eight_step_translation, enumerate_periodic,
                        hinf_orbit_float, limit_period_table,
                        perturbation_atlas, sweep)
from ..exact import InternalConsistencyError
from ..polyfamily import (Poly, SineTable, binomial_value, centered_binomial,
                          compressing_poly, discrete_sine,
                          discrete_sine_value)
from ..render import orbit_csv_lines, trajectory_csv_lines
from . import models as m

_BOUND_CHECKS = ("cd_sup", "cd_sup_inner", "cd_deriv", "cd_deriv_inner")


def _family_poly(family: str, d: int) -> Poly:
    if family == "sine":
        return discrete_sine(d)
    if family == "binomial":
        return centered_binomial(d)
    return compressing_poly(d)


def _bound_model(report) -> m.BoundReportModel:
    rec = report.to_record()
    return m.BoundReportModel(check=rec["check"], d=rec["d"],
                              grid=m.GridInfo(**rec["grid"]),
                              worst_margin=rec["worst_margin"],
                              worst_x=rec["worst_x"],
                              passed=rec["passed"])


def _periodic_model(report, include_cycles: bool) -> m.PeriodicReportModel:
    cycles = None
    if include_cycles:
        cycles = [m.CycleModel(representative=r.representative,
                               length=r.length, points=list(r.points))
                  for r in report.cycles]
    return m.PeriodicReportModel(
        d=report.d, c=report.c, orientation=report.orientation,
        count=report.count, full_count=report.full_count,
        histogram={str(k): v for k, v in sorted(report.histogram.items())},
        longest_cycle=report.longest_cycle, n_cycles=report.n_cycles,
        elapsed_ms=report.elapsed_ms, cycles=cycles)


def create_app() -> FastAPI:
    app = FastAPI(title="henonlat",
                  description="Exact integer Henon dynamics and the "
                              "polynomial families behind them",
                  version=__version__)

    @app.exception_handler(ValueError)
    async def _value_error(request, exc):
        return JSONResponse(status_code=422, content={
            "error": "invalid_argument", "detail": str(exc)})

    @app.exception_handler(NumericDivergenceError)
    async def _divergence(request, exc):
        return JSONResponse(status_code=422, content={
            "error": "numeric_divergence", "detail": str(exc)})

    @app.exception_handler(InternalConsistencyError)
    async def _contract(request, exc):
        return JSONResponse(status_code=500, content={
            "error": "internal_contract_violation", "detail": str(exc)})

    @app.get("/health", response_model=m.HealthResponse)
    def health():
        return m.HealthResponse(status="ok", version=__version__)

    # -- polynomial families ------------------------------------------

    @app.post("/poly/eval", response_model=m.PolyValueResponse)
    def poly_eval(req: m.PolyEvalRequest):
        x = Fraction(req.x)
        if req.family == "sine":
            value = discrete_sine_value(req.d, x)
        elif req.family == "binomial":
            value = binomial_value(req.d, x)
        else:
            value = compressing_poly(req.d)(x)
        return m.PolyValueResponse(family=req.family, d=req.d, x=str(x),
                                   value=str(value))

    @app.post("/poly/coeffs", response_model=m.PolyCoeffsResponse)
    def poly_coeffs(req: m.PolyCoeffsRequest):
        poly = _family_poly(req.family, req.d)
        return m.PolyCoeffsResponse(family=req.family, d=req.d,
                                    degree=poly.degree,
                                    text=poly.as_text(),
                                    coeffs=[str(c) for c in poly.coeffs])

    @app.post("/poly/table", response_model=m.PolyTableResponse)
    def poly_table(req: m.PolyTableRequest):
        bound = req.bound if req.bound is not None else (req.d + 5) // 2
        table = SineTable(req.d, bound)
        return m.PolyTableResponse(d=req.d, bound=bound,
                                   values=list(table.items()))

    # -- compression --------------------------------------------------

    @app.post("/compress/check", response_model=m.CompressCheckResponse)
    def compress_check(req: m.CompressCheckRequest):
        if (req.d is None) == (req.coeffs is None):
            raise ValueError("give exactly one of d or coeffs")
        poly = compressing_poly(req.d) if req.d is not None \
            else Poly([Fraction(c) for c in req.coeffs])
        return m.CompressCheckResponse(m=req.m, poly=poly.as_text(),
                                       passed=compression_check(poly, req.m))

    @app.post("/compress/search", response_model=m.CompressSearchResponse)
    def compress_search(req: m.CompressSearchRequest):
        result = optimal_compression_search(req.degree, req.m)
        return m.CompressSearchResponse(
            degree=req.degree, m=req.m,
            polynomials=[p.as_text() for p in result.polynomials],
            raw_count=len(result.raw))

    # -- verification -------------------------------------------------

    @app.post("/verify/sigma", response_model=m.SigmaVerifyResponse)
    def verify_sigma(req: m.SigmaVerifyRequest):
        if req.d_max < 1:
            raise ValueError(f"d_max must be >= 1, got {req.d_max}")
        for d in range(1, req.d_max + 1):
            rep = verify_sigma_agreement(d)
            if not rep.passed:
                return m.SigmaVerifyResponse(
                    d_max=req.d_max, checked=d, passed=False,
                    first_failure=rep.to_record())
        return m.SigmaVerifyResponse(d_max=req.d_max, checked=req.d_max,
                                     passed=True)

    @app.post("/verify/cd-bounds", response_model=m.BoundReportsResponse)
    def verify_cd(req: m.CdBoundsRequest):
        which = _BOUND_CHECKS if req.which == "all" else (req.which,)
        step = Fraction(req.grid_step)
        reports = [_bound_model(verify_cd_bounds(req.d, w, step))
                   for w in which]
        return m.BoundReportsResponse(
            reports=reports, passed=all(r.passed for r in reports))

    @app.post("/verify/tail", response_model=m.BoundReportsResponse)
    def verify_tail(req: m.TailRequest):
        cap = None if req.cap is None else Fraction(req.cap)
        rep = _bound_model(verify_tail_growth(req.d, cap))
        return m.BoundReportsResponse(reports=[rep], passed=rep.passed)

    @app.post("/verify/monotone", response_model=m.BoundReportsResponse)
    def verify_monotone(req: m.MonotoneRequest):
        cap = None if req.cap is None else Fraction(req.cap)
        rep = _bound_model(verify_monotonicity(req.d, cap,
                                               Fraction(req.grid_step)))
        return m.BoundReportsResponse(reports=[rep], passed=rep.passed)

    @app.post("/verify/convergence", response_model=m.ConvergenceResponse)
    def verify_convergence(req: m.ConvergenceRequest):
        rep = convergence_report(req.k_max, (req.lo, req.hi), req.step,
                                 req.tolerance)
        rec = rep.to_record()
        return m.ConvergenceResponse(
            k_values=rec["k_values"], errors=rec["errors"],
            interval=rec["interval"], step=rec["step"],
            tolerance=rec["tolerance"], passed=rec["passed"])

    @app.post("/verify/escape-real", response_model=m.BoundReportsResponse)
    def verify_escape_real(req: m.EscapeRealRequest):
        rep = _bound_model(real_escape_check(req.d))
        return m.BoundReportsResponse(reports=[rep], passed=rep.passed)

    @app.post("/verify/escape-padic", response_model=m.BoundReportsResponse)
    def verify_escape_padic(req: m.EscapePadicRequest):
        rep = _bound_model(padic_escape_check(req.d, req.p))
        return m.BoundReportsResponse(reports=[rep], passed=rep.passed)

    @app.post("/verify/preperiodic", response_model=m.PreperiodicResponse)
    def verify_preperiodic(req: m.PreperiodicRequest):
        found = preperiodic_integers(req.d)
        expected = set(range(1, req.d + 7))
        return m.PreperiodicResponse(d=req.d, size=len(found),
                                     expected_size=len(expected),
                                     passed=found == expected)

    @app.post("/verify/eight-step", response_model=m.EightStepResponse)
    def verify_eight_step(req: m.EightStepRequest):
        offsets = [req.y] if req.y is not None else eight_step_offsets(req.d)
        passed = all(eight_step_translation(req.d, y) for y in offsets)
        return m.EightStepResponse(d=req.d, offsets=offsets, passed=passed)

    # -- lattice dynamics ---------------------------------------------

    @app.post("/periodic", response_model=m.PeriodicReportModel,
              response_model_exclude_none=True)
    def periodic(req: m.PeriodicRequest):
        rep = enumerate_periodic(req.d, req.c, req.orientation, req.timings)
        return _periodic_model(rep, req.include_cycles)

    @app.post("/cycles", response_model=m.PeriodicReportModel)
    def cycles(req: m.PeriodicRequest):
        rep = enumerate_periodic(req.d, req.c, req.orientation, req.timings)
        return _periodic_model(rep, include_cycles=True)

    @app.post("/sweep", response_model=m.SweepResponse)
    def sweep_grid(req: m.SweepRequest):
        rows = sweep(req.d_values, req.c_values, req.orientation,
                     req.timings, req.threads)
        return m.SweepResponse(rows=[
            m.SweepRowModel(
                d=r.d, d_mod_6=r.d_mod_6, c=r.c, count=r.count,
                longest_cycle=r.longest_cycle, n_cycles=r.n_cycles,
                elapsed_ms=r.elapsed_ms, expected_count=r.expected_count,
                expected_longest=r.expected_longest,
                in_fit_range=r.in_fit_range,
                count_matches=r.count_matches,
                longest_matches=r.longest_matches)
            for r in rows])

    # -- the limit map ------------------------------------------------

    @app.post("/hinf/periods", response_model=m.HinfPeriodsResponse)
    def hinf_periods(req: m.HinfPeriodsRequest):
        table, exceptions = limit_period_table(req.bound)
        return m.HinfPeriodsResponse(
            bound=req.bound, table=[list(row) for row in table],
            exceptions=[m.ExceptionPoint(x=p[0], y=p[1], period=n)
                        for p, n in exceptions.items()])

    @app.post("/hinf/orbit")
    def hinf_orbit(req: m.HinfOrbitRequest):
        trajectory = hinf_orbit_float((req.x, req.y), req.epsilon,
                                      req.iterations, req.seed)
        lines = (line + "\n" for line in orbit_csv_lines(trajectory))
        return StreamingResponse(lines, media_type="text/csv")

    @app.post("/hinf/atlas")
    def hinf_atlas(req: m.HinfAtlasRequest):
        rows = perturbation_atlas(req.box, req.epsilon, req.iterations,
                                  req.seed)
        lines = (line + "\n" for line in trajectory_csv_lines(rows))
        return StreamingResponse(lines, media_type="text/csv")

    # -- escape radii -------------------------------------------------

    @app.post("/radius", response_model=m.RadiusResponse)
    def radius(req: m.RadiusRequest):
        place = "inf" if req.place == "inf" else int(req.place)
        rep = radius_report(req.d, place)
        return m.RadiusResponse(d=rep.d, place=rep.place,
                                radius=str(rep.radius),
                                is_exception=rep.is_exception)

    @app.post("/radius/exceptions",
              response_model=m.RadiusExceptionsResponse)
    def radius_exceptions(req: m.RadiusExceptionsRequest):
        exceptions = escape_radius_exceptions(req.d_max, req.p_max)
        return m.RadiusExceptionsResponse(d_max=req.d_max, p_max=req.p_max,
                                          exceptions=exceptions)

    return app


app = create_app()
