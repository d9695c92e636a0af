#include "scatter/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/krein_kernel.hpp"
#include "scatter/numeric.hpp"
#include "scatter/transforms.hpp"

namespace scatter {

namespace {

void require_offset_grid(const UniformGrid& g, const char* who) {
    if (std::abs(g.start - g.step) > 1e-9 * g.step)
        throw Error(std::string(who) + ": momentum grids must start one step from zero");
}

std::vector<double> raw_phases(const ComplexFunction& S) {
    std::vector<double> raw(S.size());
    for (std::size_t i = 0; i < S.size(); ++i)
        raw[i] = std::atan2(S.values[i].imag(), S.values[i].real());
    return raw;
}

// Mean of k^p * v over the last quarter of the nodes.
double tail_mean(const UniformGrid& g, const std::vector<double>& v, int p) {
    const std::size_t n = v.size();
    const std::size_t from = n - std::max<std::size_t>(n / 4, std::min<std::size_t>(n, 4));
    double acc = 0.0;
    for (std::size_t i = from; i < n; ++i) acc += std::pow(g.node(i), p) * v[i];
    return acc / static_cast<double>(n - from);
}

}  // namespace

int winding_index(const ComplexFunction& S, double unitarity_tol) {
    require_offset_grid(S.grid, "winding_index");
    for (const cplx& s : S.values)
        if (std::abs(std::abs(s) - 1.0) > std::max(unitarity_tol, 1e-3))
            throw Error("winding_index: |S| deviates from 1 beyond tolerance");
    const auto raw = raw_phases(S);
    const std::size_t M = raw.size();
    // Conjugate-symmetric extension: arg S(-k) = -arg S(k).  The continuous
    // phase is tracked across the small gap (-k1, k1) as an ordinary step.
    std::vector<double> full(2 * M);
    for (std::size_t j = 0; j < M; ++j) full[j] = -raw[M - 1 - j];
    for (std::size_t j = 0; j < M; ++j) full[M + j] = raw[j];
    const auto psi = unwrap_phase_from_front(full, kPi / 2.0);
    const double inc = psi.back() - psi.front();
    return static_cast<int>(std::lround(inc / (2.0 * kPi)));
}

ComplexFunction riemann_log_symbol(const ComplexFunction& S) {
    require_offset_grid(S.grid, "riemann_log_symbol");
    const std::size_t M = S.size();
    const double h = S.grid.step;

    std::vector<double> phase;
    try {
        phase = unwrap_phase_from_back(raw_phases(S), kPi / 2.0);
    } catch (const UnwrapAmbiguity& e) {
        throw BranchCutFailure(std::string("log branch tracking failed: ") + e.what());
    }
    // Index-zero data has arg S -> 0 at both ends of the half line.
    if (std::abs(phase.front()) > kPi - 0.2)
        throw BranchCutFailure("phase near k = 0 is not consistent with index zero");

    std::vector<double> logmag(M);
    for (std::size_t i = 0; i < M; ++i) logmag[i] = std::log(std::abs(S.values[i]));

    // ln S(-y) ~ c/y with purely imaginary c; fit on the last quarter.
    const double c_im = -tail_mean(S.grid, phase, 1);

    // Symmetric grid around zero, padded by half the span so that boundary
    // evaluations stay far from the truncation ends; pad values follow the
    // fitted tail model.
    const std::size_t P = M / 2 + 1;
    const std::size_t total = 2 * (M + P) + 1;
    const std::size_t mid = M + P;
    std::vector<cplx> g(total);
    g[mid] = 0.0;
    for (std::size_t m = 1; m <= M + P; ++m) {
        cplx gp;
        if (m <= M) {
            // y > 0: ln S(-y) = ln conj S(y) = ln|S(y)| - i arg S(y)
            gp = cplx(logmag[m - 1], -phase[m - 1]);
        } else {
            gp = cplx(0.0, c_im) / (static_cast<double>(m) * h);
        }
        g[mid + m] = gp;
        g[mid - m] = std::conj(gp);
    }
    UniformGrid sym(-static_cast<double>(M + P) * h, h, total);
    return ComplexFunction(sym, std::move(g), TailDecay{cplx(0.0, c_im), 1.0});
}

namespace {

double fit_a0(const UniformGrid& kg, const std::vector<cplx>& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = (kg.node(i) * (f[i] - 1.0)).imag();
    return tail_mean(kg, v, 0);
}

}  // namespace

JostClosure solve_riemann(const ComplexFunction& S, const UniformGrid& k_grid) {
    if (!(k_grid == S.grid))
        throw Error("solve_riemann: output grid must match the grid of S");
    const int idx = winding_index(S);
    if (idx != 0)
        throw NonzeroIndex("solve_riemann: winding index is " + std::to_string(idx) +
                           "; reduce with Blaschke factors first");
    const ComplexFunction g = riemann_log_symbol(S);

    JostClosure out;
    out.f.grid = k_grid;
    out.f.values.assign(k_grid.count, cplx{});
    for (std::size_t i = 0; i < k_grid.count; ++i)
        out.f.values[i] = std::exp(hilbert_boundary(g, k_grid.node(i)));
    out.asymptotic_A0 = fit_a0(k_grid, out.f.values);
    return out;
}

double riemann_jump_residual(const ComplexFunction& S, const JostClosure& f) {
    double worst = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        // f(k) = S(-k) f(-k) with S(-k) = conj S(k), f(-k) = conj f(k)
        const cplx rhs = std::conj(S.values[i] * f.f.values[i]);
        worst = std::max(worst, std::abs(f.f.values[i] - rhs));
    }
    return worst;
}

JostClosure wiener_levy_route(const RealFunction& delta, const UniformGrid& t_grid,
                              const UniformGrid& k_grid) {
    require_offset_grid(delta.grid, "wiener_levy_route");
    if (std::abs(t_grid.start) > 1e-12)
        throw Error("wiener_levy_route: t grid must start at 0");
    const double hk = delta.grid.step;
    const double K = delta.grid.back();
    std::vector<double> kd(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) kd[i] = delta.grid.node(i) * delta.values[i];
    const double c_delta = tail_mean(delta.grid, delta.values, 1);

    // g(t) = -(2/pi) int_0^inf delta(k) sin(kt) dk, tail integrated from the
    // fitted c/k model; the [0, k1] segment uses delta(0) = 0.
    std::vector<double> g(t_grid.count);
    for (std::size_t j = 0; j < t_grid.count; ++j) {
        const double t = t_grid.node(j);
        double s = 0.5 * (delta.values.front() * std::sin(delta.grid.start * t) +
                          delta.values.back() * std::sin(K * t));
        for (std::size_t i = 1; i + 1 < delta.size(); ++i)
            s += delta.values[i] * std::sin(delta.grid.node(i) * t);
        s *= hk;
        s += 0.5 * hk * delta.values.front() * std::sin(delta.grid.start * t);
        s += c_delta * tail_sin_over_power(K, t, 1);
        g[j] = -(2.0 / kPi) * s;
    }

    JostClosure out;
    out.f.grid = k_grid;
    out.f.values.assign(k_grid.count, cplx{});
    const double ht = t_grid.step;
    for (std::size_t i = 0; i < k_grid.count; ++i) {
        const double k = k_grid.node(i);
        cplx acc = 0.5 * (g.front() + g.back() * std::exp(cplx(0.0, k * t_grid.back())));
        for (std::size_t j = 1; j + 1 < t_grid.count; ++j)
            acc += g[j] * std::exp(cplx(0.0, k * t_grid.node(j)));
        out.f.values[i] = std::exp(ht * acc);
    }
    out.asymptotic_A0 = fit_a0(k_grid, out.f.values);
    return out;
}

AdmissibilityReport check_admissibility(const ComplexFunction& S) {
    AdmissibilityReport rep;
    for (const cplx& s : S.values)
        rep.unitarity_defect = std::max(rep.unitarity_defect, std::abs(std::abs(s) - 1.0));
    rep.index = winding_index(S, 1e-3);

    // Finite-grid surrogates of the F-norm conditions (diagnostic only).
    const UniformGrid xg(0.0, 0.05, 601);
    const MarchenkoKernel F = marchenko_kernel(S, xg);
    std::vector<double> absF(F.F.size()), xdF(F.F.size());
    const auto dF = derivative4(F.F.values, xg.step);
    for (std::size_t i = 0; i < F.F.size(); ++i) {
        absF[i] = std::abs(F.F.values[i]);
        xdF[i] = xg.node(i) * std::abs(dF[i]);
        rep.F_sup = std::max(rep.F_sup, absF[i]);
    }
    rep.F_l1 = trapezoid(absF, xg.step);
    rep.xFprime_l1 = trapezoid(xdF, xg.step);
    return rep;
}

}  // namespace scatter
