#include "scatter/gelfand_levitan.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "scatter/krein_kernel.hpp"
#include "scatter/numeric.hpp"

namespace scatter {

GlKernelTable gl_m_table(const JostClosure& f, const UniformGrid& x_grid2) {
    // Same 1-D cosine transform as the convolution kernel; L is assembled
    // from this single table.
    KreinKernel ker = kernel_from_jost(f, x_grid2);
    GlKernelTable t;
    t.M = std::move(ker.H);
    return t;
}

GlKernelTable gl_m_table_from_density(const RealFunction& rho, const UniformGrid& x_grid2) {
    // pi rho'(k) / (2 k^2) = 1/|f(k)|^2, so the weight is recovered from the
    // spectral density and transformed exactly like the |f| route.
    JostClosure fake;
    fake.f.grid = rho.grid;
    fake.f.values.assign(rho.size(), cplx{});
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double k = rho.grid.node(i);
        const double inv_f2 = kPi * rho.values[i] / (2.0 * k * k);
        if (!(inv_f2 > 0.0)) throw Error("gl_m_table_from_density: density must be positive");
        fake.f.values[i] = 1.0 / std::sqrt(inv_f2);
    }
    return gl_m_table(fake, x_grid2);
}

namespace {

std::size_t node_of(const GlKernelTable& table, double v, const char* who) {
    const double pos = (v - table.M.grid.start) / table.M.grid.step;
    const auto i = static_cast<std::size_t>(pos + 0.5);
    if (std::abs(pos - static_cast<double>(i)) > 1e-9 || i >= table.M.grid.count)
        throw Error(std::string(who) + ": point is not on the table grid");
    return i;
}

}  // namespace

double gl_kernel(const GlKernelTable& table, double x, double y) {
    const std::size_t im = node_of(table, std::abs(x - y), "gl_kernel");
    const std::size_t ip = node_of(table, x + y, "gl_kernel");
    return table.M.values[im] - table.M.values[ip];
}

std::vector<double> solve_gl(const GlKernelTable& table, double x) {
    const double h = table.M.grid.step;
    const std::size_t n = node_of(table, x, "solve_gl");
    if (n < 1) throw Error("solve_gl: x must be positive");
    const auto L = [&](std::size_t i, std::size_t j) {
        return table.M.values[i > j ? i - j : j - i] - table.M.values[i + j];
    };
    // K(x, s_i) + L(x, y_j) + int_0^x K(x,s) L(s,y) ds = 0
    Eigen::MatrixXd M(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            M(j, i) = (i == j ? 1.0 : 0.0) + h * w * L(i, j);
        }
        rhs(j) = -L(n, j);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    const Eigen::VectorXd k = lu.solve(rhs);
    if (!k.allFinite()) throw SingularSystem("solve_gl: dense solve failed");
    std::vector<double> row(n + 1);
    for (std::size_t i = 0; i <= n; ++i) row[i] = k(i);
    return row;
}

GlPotential gl_potential_at(const GlKernelTable& table, const std::vector<double>& xs) {
    const double h = table.M.grid.step;
    GlPotential out;
    for (double xc : xs) {
        const std::size_t n = node_of(table, xc, "gl_potential_at");
        if (n < 2 || n + 2 >= table.M.grid.count / 2) continue;
        // 5-point stencil of diagonal values around the checkpoint
        double diag[5];
        for (int m = -2; m <= 2; ++m) {
            const auto row = solve_gl(table, h * static_cast<double>(n + m));
            diag[m + 2] = row.back();
        }
        const double d = (diag[0] - 8.0 * diag[1] + 8.0 * diag[3] - diag[4]) / (12.0 * h);
        out.x.push_back(table.M.grid.node(n));
        out.q.push_back(2.0 * d);
    }
    return out;
}

}  // namespace scatter
