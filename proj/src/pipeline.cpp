#include "scatter/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/numeric.hpp"
#include "scatter/riemann.hpp"

namespace scatter {

Method method_from_name(const std::string& name) {
    if (name == "krein") return Method::krein;
    if (name == "marchenko") return Method::marchenko;
    if (name == "gl" || name == "gelfand-levitan") return Method::gelfand_levitan;
    if (name == "hybrid") return Method::hybrid;
    if (name == "all") return Method::all;
    throw IngestionError("unknown method: " + name);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::krein: return "krein";
        case Method::marchenko: return "marchenko";
        case Method::gelfand_levitan: return "gl";
        case Method::hybrid: return "hybrid";
        case Method::all: return "all";
    }
    return "?";
}

namespace {

double gamma_row_residual(const KreinKernel& ker, const std::vector<double>& row, double h) {
    const std::size_t n = row.size() - 1;
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        double acc = row[i];
        for (std::size_t j = 0; j <= n; ++j) {
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            acc += h * w * ker.H.values[i > j ? i - j : j - i] * row[j];
        }
        worst = std::max(worst, std::abs(acc - ker.H.values[i]));
    }
    return worst;
}

Potential krein_route(const KreinKernel& ker, const InversionGrids& grids, const Tolerances& tol,
                      PipelineReport& rep) {
    const auto sweep = solve_gamma_family(ker, grids.x_max, grids.t_step);
    rep.gamma_residual =
        gamma_row_residual(ker, sweep.row(sweep.corner.size() - 1), grids.t_step);
    const auto A = amplitude(sweep);
    Potential q = potential_from_amplitude(A, tol.smooth_amplitude);
    const Potential q_alt = potential_alternative(sweep);
    // cross-formula agreement away from the one-sided difference ends
    const std::size_t n = q.q.size();
    for (std::size_t i = 4; i + 4 < n; ++i)
        rep.cross_formula_gap =
            std::max(rep.cross_formula_gap, std::abs(q.q.values[i] - q_alt.q.values[i]));
    return q;
}

Potential marchenko_route(const ComplexFunction& S, const InversionGrids& grids,
                          PipelineReport& rep) {
    const UniformGrid xg = grids.x_grid();
    UniformGrid fg(0.0, grids.x_step, 2 * (xg.count - 1) + 1);
    const MarchenkoKernel F = marchenko_kernel(S, fg);
    const auto sol = solve_marchenko_all(F, xg);
    for (const auto& row : sol.rows)
        rep.marchenko_residual = std::max(rep.marchenko_residual, row.residual);
    return marchenko_potential(sol);
}

std::vector<double> gl_default_checkpoints(const InversionGrids& grids, std::size_t count) {
    // spread over (0, x_max), snapped to the t grid, away from both ends
    std::vector<double> xs;
    const double lo = std::max(8.0 * grids.t_step, 0.1);
    const double hi = 0.8 * grids.x_max;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(count > 1 ? count - 1 : 1);
        xs.push_back(grids.t_step * std::lround(x / grids.t_step));
    }
    return xs;
}

}  // namespace

InvertResult invert_scattering(const ComplexFunction& S_in, const InversionGrids& grids,
                               Method method, const Tolerances& tol,
                               const std::optional<BlaschkeSpec>& spec,
                               std::size_t gl_checkpoint_count) {
    grids.validate();
    InvertResult result;
    PipelineReport& rep = result.report;

    for (const cplx& s : S_in.values)
        rep.unitarity_defect = std::max(rep.unitarity_defect, std::abs(std::abs(s) - 1.0));

    ComplexFunction S = S_in;
    rep.winding_index = winding_index(S, tol.unitarity);
    if (rep.winding_index != 0) {
        if (!spec)
            throw NonzeroIndex("invert: winding index " + std::to_string(rep.winding_index) +
                               " requires a bound-state spec for the index reduction");
        S = reduce_index(S, *spec);
        rep.notes.push_back(
            "index reduced via Blaschke factors; the result is the potential of the "
            "reduced data (bound-state re-addition is delegated to external tooling)");
        rep.winding_index = winding_index(S, tol.unitarity);
    }

    const JostClosure f = solve_riemann(S, S.grid);
    rep.riemann_jump_residual = riemann_jump_residual(S, f);

    const KreinKernel ker = kernel_from_jost(f, grids.t_grid());
    rep.positivity_margin = ker.symbol_margin;
    if (ker.symbol_margin <= tol.positivity_floor)
        throw SymbolNotPositive("invert: symbol margin " + std::to_string(ker.symbol_margin) +
                                " at or below the floor");

    switch (method) {
        case Method::krein:
            result.q = krein_route(ker, grids, tol, rep);
            break;
        case Method::marchenko:
            result.q = marchenko_route(S, grids, rep);
            break;
        case Method::gelfand_levitan: {
            const GlKernelTable table = gl_m_table(f, grids.t_grid());
            const auto xs = gl_default_checkpoints(grids, gl_checkpoint_count);
            GlPotential glq = gl_potential_at(table, xs);
            // sample a spline through the checkpoints onto the x grid
            const UniformGrid xg = grids.x_grid();
            std::vector<double> sx = glq.x, sq = glq.q;
            sx.insert(sx.begin(), 0.0);
            sq.insert(sq.begin(), glq.q.empty() ? 0.0 : glq.q.front());
            CubicSpline spline(sx, sq);
            RealFunction qs;
            qs.grid = xg;
            qs.values.assign(xg.count, 0.0);
            for (std::size_t i = 0; i < xg.count; ++i) qs.values[i] = spline(xg.node(i));
            result.q = Potential(std::move(qs));
            result.gl_checkpoints = std::move(glq);
            rep.notes.push_back("gl potential computed at checkpoints and splined in between");
            break;
        }
        case Method::hybrid: {
            HybridResult hr = hybrid_invert(S, grids);
            rep.overlap_discrepancy = hr.overlap_discrepancy;
            rep.hybrid_x0 = hr.x0;
            result.q = std::move(hr.q);
            break;
        }
        case Method::all: {
            result.q = krein_route(ker, grids, tol, rep);
            const Potential qm = marchenko_route(S, grids, rep);
            const UniformGrid xg = grids.x_grid();
            double km = 0.0;
            for (std::size_t i = 0; i < xg.count; ++i) {
                const double x = xg.node(i);
                if (x < 0.2 || x > 0.8 * grids.x_max) continue;
                km = std::max(km, std::abs(result.q.q.values[i] - qm.q.values[i]));
            }
            rep.cross_method["krein_vs_marchenko"] = km;
            const GlKernelTable table = gl_m_table(f, grids.t_grid());
            const auto xs = gl_default_checkpoints(grids, gl_checkpoint_count);
            GlPotential glq = gl_potential_at(table, xs);
            double kg = 0.0;
            for (std::size_t c = 0; c < glq.x.size(); ++c) {
                const auto i = static_cast<std::size_t>(std::lround(glq.x[c] / grids.x_step));
                if (i < result.q.q.size())
                    kg = std::max(kg, std::abs(result.q.q.values[i] - glq.q[c]));
            }
            rep.cross_method["krein_vs_gl"] = kg;
            result.gl_checkpoints = std::move(glq);
            break;
        }
    }
    return result;
}

RoundTripReport roundtrip(const Potential& q, const InversionGrids& grids, Method method,
                          const Tolerances& tol, double x_report) {
    grids.validate();
    RoundTripReport rep;
    rep.x_report = (x_report > 0.0) ? x_report : grids.x_max / 2.0;

    const UniformGrid kg = grids.k_grid();
    const JostClosure f = jost_function(q, kg);
    const ComplexFunction S = s_matrix(f);

    InvertResult inv = invert_scattering(S, grids, method, tol);
    rep.invert_report = inv.report;

    const auto& qv = inv.q.q;
    std::vector<double> absdiff;
    for (std::size_t i = 0; i < qv.size(); ++i) {
        const double x = qv.grid.node(i);
        if (x > rep.x_report) break;
        double truth = 0.0;
        const double pos = (x - q.q.grid.start) / q.q.grid.step;
        const auto j = static_cast<std::size_t>(pos + 0.5);
        if (j < q.q.size() && std::abs(pos - static_cast<double>(j)) < 1e-9)
            truth = q.q.values[j];
        else
            truth = CubicSpline(q.q.grid.nodes(), q.q.values)(x);
        const double d = std::abs(qv.values[i] - truth);
        absdiff.push_back(d);
        rep.q_sup_defect = std::max(rep.q_sup_defect, d);
    }
    if (absdiff.size() >= 2) rep.q_l1_defect = trapezoid(absdiff, qv.grid.step);

    const JostClosure f2 = jost_function(inv.q, kg);
    const ComplexFunction S2 = s_matrix(f2);
    for (std::size_t i = 0; i < S.size(); ++i)
        rep.s_sup_defect = std::max(rep.s_sup_defect, std::abs(S.values[i] - S2.values[i]));
    return rep;
}

}  // namespace scatter
