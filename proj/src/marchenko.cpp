#include "scatter/marchenko.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "scatter/krein_inversion.hpp"
#include "scatter/numeric.hpp"
#include "scatter/parallel.hpp"
#include "scatter/riemann.hpp"

namespace scatter {

namespace {

// F sample at u >= 0; zero beyond the grid (the grid is truncated where
// |F| has dropped below 1e-10 of its maximum).
struct KernelView {
    const RealFunction* F;
    std::size_t y_end;  // index of the truncation point Y

    double at(std::size_t idx) const { return idx < F->values.size() ? F->values[idx] : 0.0; }
};

std::size_t truncation_index(const RealFunction& F) {
    double fmax = 0.0;
    for (double v : F.values) fmax = std::max(fmax, std::abs(v));
    if (fmax == 0.0) return 1;
    std::size_t y_end = F.values.size() - 1;
    while (y_end > 1 && std::abs(F.values[y_end]) < 1e-10 * fmax &&
           std::abs(F.values[y_end - 1]) < 1e-10 * fmax)
        --y_end;
    return y_end;
}

}  // namespace

double marchenko_contraction(const MarchenkoKernel& F, double x) {
    // sup_{y >= x} int_x^Y |F(s+y)| ds = int_{2x}^{x+Y} |F(u)| du
    const double h = F.F.grid.step;
    const auto ix = static_cast<std::size_t>(std::lround(x / h));
    const std::size_t y_end = truncation_index(F.F);
    KernelView view{&F.F, y_end};
    double acc = 0.0;
    for (std::size_t s = ix; s <= y_end; ++s) {
        const double w = (s == ix || s == y_end) ? 0.5 : 1.0;
        acc += w * std::abs(view.at(s + ix));
    }
    return h * acc;
}

MarchenkoRow solve_marchenko(const MarchenkoKernel& F, double x) {
    const double h = F.F.grid.step;
    if (std::abs(F.F.grid.start) > 1e-12) throw Error("solve_marchenko: F grid must start at 0");
    const double pos = x / h;
    const auto ix = static_cast<std::size_t>(pos + 0.5);
    if (std::abs(pos - static_cast<double>(ix)) > 1e-9)
        throw Error("solve_marchenko: x must be a grid node of F");
    const std::size_t y_end = std::max<std::size_t>(truncation_index(F.F), ix + 1);
    KernelView view{&F.F, y_end};
    const std::size_t n = y_end - ix;  // nodes y_j = (ix + j) h, j = 0..n

    MarchenkoRow row;
    row.values.assign(n + 1, 0.0);
    auto apply = [&](const std::vector<double>& a, std::vector<double>& out) {
        // out_j = -F(x+y_j) - sum_s w_s a_s F(s + y_j) h
        for (std::size_t j = 0; j <= n; ++j) {
            double acc = 0.0;
            for (std::size_t s = 0; s <= n; ++s) {
                const double w = (s == 0 || s == n) ? 0.5 : 1.0;
                acc += w * a[s] * view.at(2 * ix + s + j);
            }
            out[j] = -view.at(2 * ix + j) - h * acc;
        }
    };

    const double rho = marchenko_contraction(F, x);
    bool solved = false;
    if (rho < 0.999) {
        std::vector<double> a(n + 1), next(n + 1);
        for (std::size_t j = 0; j <= n; ++j) a[j] = -view.at(2 * ix + j);
        std::size_t it = 0;
        for (; it < 400; ++it) {
            apply(a, next);
            double diff = 0.0, scale = 0.0;
            for (std::size_t j = 0; j <= n; ++j) {
                diff = std::max(diff, std::abs(next[j] - a[j]));
                scale = std::max(scale, std::abs(next[j]));
            }
            a.swap(next);
            if (diff <= 1e-13 * std::max(scale, 1e-30)) break;
        }
        if (it < 400) {
            row.values = a;
            row.iterations = it + 1;
            solved = true;
        }
    }
    if (!solved) {
        // dense fallback: (I + hat F) a = -F(x + .)
        Eigen::MatrixXd M(n + 1, n + 1);
        Eigen::VectorXd rhs(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            for (std::size_t s = 0; s <= n; ++s) {
                const double w = (s == 0 || s == n) ? 0.5 : 1.0;
                M(j, s) = (j == s ? 1.0 : 0.0) + h * w * view.at(2 * ix + s + j);
            }
            rhs(j) = -view.at(2 * ix + j);
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
        const Eigen::VectorXd a = lu.solve(rhs);
        if (!a.allFinite())
            throw NoContraction("solve_marchenko: iteration diverged and dense solve failed");
        row.values.assign(n + 1, 0.0);
        for (std::size_t j = 0; j <= n; ++j) row.values[j] = a(j);
        row.dense_fallback = true;
    }

    // residual of the equation on this row
    std::vector<double> res(n + 1);
    apply(row.values, res);
    for (std::size_t j = 0; j <= n; ++j)
        row.residual = std::max(row.residual, std::abs(res[j] - row.values[j]));
    return row;
}

MarchenkoSolution solve_marchenko_all(const MarchenkoKernel& F, const UniformGrid& x_grid) {
    MarchenkoSolution sol;
    sol.x_grid = x_grid;
    sol.y_step = F.F.grid.step;
    sol.rows.assign(x_grid.count, MarchenkoRow{});
    sol.diag.assign(x_grid.count, 0.0);
    parallel_for(x_grid.count, [&](std::size_t i) {
        sol.rows[i] = solve_marchenko(F, x_grid.node(i));
        sol.diag[i] = sol.rows[i].values.empty() ? 0.0 : sol.rows[i].values[0];
    });
    return sol;
}

Potential marchenko_potential(const MarchenkoSolution& sol) {
    const auto d = derivative4(sol.diag, sol.x_grid.step);
    RealFunction q;
    q.grid = sol.x_grid;
    q.values.assign(sol.diag.size(), 0.0);
    for (std::size_t i = 0; i < sol.diag.size(); ++i) q.values[i] = -2.0 * d[i];
    return Potential(std::move(q));
}

HybridResult hybrid_invert(const ComplexFunction& S, const InversionGrids& grids) {
    grids.validate();
    const JostClosure f = solve_riemann(S, S.grid);
    const KreinKernel ker = kernel_from_jost(f, grids.t_grid());
    const double h = grids.x_step;
    const double X = grids.x_max;
    const double ht = grids.t_step;

    // x0: largest grid x with the kernel operator norm below 1 (minus one
    // step), clipped to [h, X/2].
    double x0 = X / 2.0;
    for (double x = 2.0 * h; x <= X / 2.0 + 1e-12; x += h) {
        if (contraction_norm(ker, x, ht) >= 1.0) {
            x0 = x - h;
            break;
        }
    }
    x0 = std::min(std::max(x0, h), X / 2.0);
    const auto i0 = static_cast<std::size_t>(std::lround(x0 / h));
    x0 = h * static_cast<double>(i0);

    const double overlap = std::min(16.0 * h, x0);
    const double krein_to = std::min(x0 + overlap, X);
    const auto sweep =
        solve_gamma_family(ker, krein_to, ht, GammaMode::iterative, {1.0});
    const auto A = amplitude(sweep);
    const Potential qk = potential_from_amplitude(A);

    const UniformGrid xg = grids.x_grid();
    UniformGrid fg(0.0, h, 2 * (xg.count - 1) + 1);
    const MarchenkoKernel F = marchenko_kernel(S, fg);
    const auto sol = solve_marchenko_all(F, xg);
    const Potential qm = marchenko_potential(sol);

    HybridResult out;
    out.x0 = x0;
    out.overlap_lo = std::max(h, x0 - overlap);
    out.overlap_hi = krein_to;
    RealFunction q;
    q.grid = xg;
    q.values.assign(xg.count, 0.0);
    // The sweep ran with t step 2*x_step, so its x grid matches xg node for
    // node over the range it covers.
    const std::size_t k_count = qk.q.grid.count;
    for (std::size_t i = 0; i < xg.count; ++i) {
        const double x = xg.node(i);
        const bool have_k = i < k_count;
        if (x < x0 && have_k)
            q.values[i] = qk.q.values[i];
        else
            q.values[i] = qm.q.values[i];
        if (have_k && x >= out.overlap_lo - 1e-12 && x <= out.overlap_hi + 1e-12)
            out.overlap_discrepancy = std::max(out.overlap_discrepancy,
                                               std::abs(qk.q.values[i] - qm.q.values[i]));
    }
    out.q = Potential(std::move(q));
    return out;
}

}  // namespace scatter
