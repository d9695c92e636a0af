#include "scatter/krein_inversion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "scatter/numeric.hpp"
#include "scatter/parallel.hpp"

namespace scatter {

const std::vector<double>& GammaSweep::row(std::size_t n) const {
    auto it = full_rows.find(n);
    if (it == full_rows.end())
        throw MissingRow("GammaSweep: no stored row at size " + std::to_string(n));
    return it->second;
}

namespace {

// Discretization of Gamma(t) + int_0^{nh} H(t-u) Gamma(u) du = H(t) on
// t_i = i h with trapezoid weights:
//   M = A - (h/2) (b e_0^T + Jb e_n^T),   A_ij = delta_ij + h H(|i-j| h),
// where b_i = H(i h) and J is the reversal.  A is symmetric Toeplitz, so
// y = A^{-1} b comes from a Levinson recursion, A^{-1} Jb = J y, and the
// boundary half-weights reduce to a 2x2 correction:
//   K z = (y_0, y_n)^T,  K = I - (h/2) [[y_0, y_n], [y_n, y_0]],
//   gamma = y + (h/2) (z_0 y + z_1 Jy).
struct BoundaryCorrection {
    double z0 = 0.0, z1 = 0.0;
};

BoundaryCorrection boundary_correction(double h, double y0, double yn) {
    const double a = 1.0 - 0.5 * h * y0;
    const double b = -0.5 * h * yn;
    const double det = a * a - b * b;
    if (std::abs(det) < 1e-14)
        throw SingularSystem("gamma solve: boundary correction is singular");
    BoundaryCorrection c;
    c.z0 = (a * y0 - b * yn) / det;
    c.z1 = (a * yn - b * y0) / det;
    return c;
}

std::vector<double> corrected_row(double h, const std::vector<double>& y, std::size_t n) {
    const auto c = boundary_correction(h, y[0], y[n]);
    std::vector<double> row(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        row[i] = y[i] + 0.5 * h * (c.z0 * y[i] + c.z1 * y[n - i]);
    return row;
}

std::set<std::size_t> checkpoint_sizes(std::size_t N, const std::vector<double>& fractions) {
    std::set<std::size_t> out;
    for (double f : fractions) {
        auto n = static_cast<std::size_t>(std::lround(f * static_cast<double>(N)));
        if (n >= 1 && n <= N) out.insert(n);
    }
    return out;
}

void prepare(const KreinKernel& ker, double X, double h, std::size_t& N,
             std::vector<double>& H) {
    if (std::abs(ker.H.grid.start) > 1e-12)
        throw Error("gamma solve: kernel grid must start at t = 0");
    if (std::abs(ker.H.grid.step - h) > 1e-9 * h)
        throw Error("gamma solve: kernel step does not match h");
    N = static_cast<std::size_t>(std::lround(2.0 * X / h));
    if (ker.H.grid.count < N + 1) throw Error("gamma solve: kernel grid shorter than 2X");
    H.assign(ker.H.values.begin(), ker.H.values.begin() + static_cast<long>(N + 1));
}

}  // namespace

GammaSweep solve_gamma_family(const KreinKernel& ker, double X, double h, GammaMode mode,
                              const std::vector<double>& checkpoint_fractions) {
    std::size_t N = 0;
    std::vector<double> H;
    prepare(ker, X, h, N, H);
    const auto marks = checkpoint_sizes(N, checkpoint_fractions);

    GammaSweep sweep;
    sweep.x_grid = UniformGrid(0.0, 0.5 * h, N + 1);
    sweep.t_step = h;
    sweep.h_zero = H[0];
    sweep.corner.assign(N + 1, 0.0);
    sweep.diag0.assign(N + 1, 0.0);
    sweep.corner[0] = H[0];
    sweep.diag0[0] = H[0];

    if (mode == GammaMode::iterative) {
        sweep.iterations.assign(N + 1, 0);
        std::vector<double> gamma, next;
        for (std::size_t n = 1; n <= N; ++n) {
            gamma.assign(H.begin(), H.begin() + static_cast<long>(n + 1));
            next.assign(n + 1, 0.0);
            std::size_t it = 0;
            const std::size_t max_it = 300;
            for (; it < max_it; ++it) {
                double diff = 0.0, scale = 0.0;
                for (std::size_t i = 0; i <= n; ++i) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j <= n; ++j) {
                        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
                        acc += w * H[i > j ? i - j : j - i] * gamma[j];
                    }
                    next[i] = H[i] - h * acc;
                    diff = std::max(diff, std::abs(next[i] - gamma[i]));
                    scale = std::max(scale, std::abs(next[i]));
                }
                gamma.swap(next);
                if (diff <= 1e-12 * std::max(scale, 1e-30)) break;
            }
            if (it == 300)
                throw NoConvergence("gamma solve: fixed point stalled at size " +
                                    std::to_string(n) + "; interval exceeds the radius");
            sweep.iterations[n] = it + 1;
            sweep.corner[n] = gamma[n];
            sweep.diag0[n] = gamma[0];
            if (marks.count(n)) sweep.full_rows[n] = gamma;
        }
        return sweep;
    }

    // Bordering sweep on the normalized Toeplitz part.
    const double a0 = 1.0 + h * H[0];
    if (a0 < 1e-12) throw SingularSystem("gamma solve: leading pivot is not positive");
    std::vector<double> r(N + 1, 0.0), b(N + 1, 0.0);
    for (std::size_t m = 0; m <= N; ++m) {
        r[m] = h * H[m] / a0;
        b[m] = H[m] / a0;
    }

    std::vector<double> y(N + 1, 0.0), z(N + 1, 0.0);
    y[0] = b[0];
    if (N >= 1) {
        double beta = 1.0;
        double alpha = -r[1];
        z[0] = -r[1];
        for (std::size_t k = 1; k <= N; ++k) {
            beta = (1.0 - alpha * alpha) * beta;
            if (std::abs(beta) < 1e-14)
                throw SingularSystem("gamma solve: Levinson pivot vanished at size " +
                                     std::to_string(k));
            double dot = 0.0;
            for (std::size_t j = 1; j <= k; ++j) dot += r[j] * y[k - j];
            const double mu = (b[k] - dot) / beta;
            for (std::size_t i = 0; i < k; ++i) y[i] += mu * z[k - 1 - i];
            y[k] = mu;

            {
                const auto c = boundary_correction(h, y[0], y[k]);
                sweep.corner[k] = y[k] + 0.5 * h * (c.z0 * y[k] + c.z1 * y[0]);
                sweep.diag0[k] = y[0] + 0.5 * h * (c.z0 * y[0] + c.z1 * y[k]);
            }
            if (marks.count(k)) sweep.full_rows[k] = corrected_row(h, y, k);

            if (k < N) {
                double zdot = 0.0;
                for (std::size_t j = 1; j <= k; ++j) zdot += r[j] * z[k - j];
                alpha = -(r[k + 1] + zdot) / beta;
                for (std::size_t i = 0, jj = k - 1; i < jj; ++i, --jj) {
                    const double zi = z[i], zj = z[jj];
                    z[i] = zi + alpha * zj;
                    z[jj] = zj + alpha * zi;
                }
                if ((k - 1) % 2 == 0) z[(k - 1) / 2] *= (1.0 + alpha);
                z[k] = alpha;
            }
        }
    }
    return sweep;
}

GammaTable gamma_table(const KreinKernel& ker, double interval, double h) {
    std::size_t N = 0;
    std::vector<double> H;
    prepare(ker, interval / 2.0, h, N, H);  // prepare() takes X = interval/2
    const std::size_t n = N;
    GammaTable table;
    table.n = n;
    table.h = h;
    Eigen::MatrixXd M(n + 1, n + 1), B(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            const double Hij = H[i > j ? i - j : j - i];
            M(i, j) = (i == j ? 1.0 : 0.0) + h * w * Hij;
            B(i, j) = Hij;
        }
    Eigen::MatrixXd G = M.partialPivLu().solve(B);
    table.a.resize((n + 1) * (n + 1));
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j) table.a[i * (n + 1) + j] = G(i, j);
    return table;
}

double contraction_norm(const KreinKernel& ker, double xbar, double h) {
    std::size_t N = 0;
    std::vector<double> H;
    prepare(ker, xbar / 2.0, h, N, H);
    double worst = 0.0;
    for (std::size_t i = 0; i <= N; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= N; ++j) {
            const double w = (j == 0 || j == N) ? 0.5 : 1.0;
            acc += w * std::abs(H[i > j ? i - j : j - i]);
        }
        worst = std::max(worst, h * acc);
    }
    return worst;
}

AmplitudeA amplitude(const GammaSweep& sweep) {
    AmplitudeA out;
    out.A.grid = sweep.x_grid;
    out.A.values.assign(sweep.corner.size(), 0.0);
    for (std::size_t i = 0; i < sweep.corner.size(); ++i) out.A.values[i] = 2.0 * sweep.corner[i];
    out.A.values[0] = 2.0 * sweep.h_zero;  // A(0) = 2H(0) exactly
    return out;
}

Potential potential_from_amplitude(const AmplitudeA& A, bool smooth) {
    std::vector<double> a = A.A.values;
    if (smooth && a.size() >= 3) {
        std::vector<double> s = a;
        for (std::size_t i = 1; i + 1 < a.size(); ++i)
            s[i] = (a[i - 1] + a[i] + a[i + 1]) / 3.0;
        a.swap(s);
    }
    const auto d = derivative4(a, A.A.grid.step);
    RealFunction q;
    q.grid = A.A.grid;
    q.values.assign(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) q.values[i] = a[i] * a[i] + d[i];
    return Potential(std::move(q));
}

Potential potential_alternative(const GammaSweep& sweep) {
    std::vector<double> diff(sweep.corner.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = sweep.corner[i] - sweep.diag0[i];
    const auto d = derivative4(diff, sweep.x_grid.step);
    RealFunction q;
    q.grid = sweep.x_grid;
    q.values.assign(diff.size(), 0.0);
    for (std::size_t i = 0; i < diff.size(); ++i) q.values[i] = 2.0 * d[i];
    return Potential(std::move(q));
}

ComplexFunction e_function(const std::vector<double>& row, double t_step,
                           const UniformGrid& k_grid) {
    if (row.size() < 2) throw Error("e_function: row too short");
    const std::size_t n = row.size() - 1;
    const double x = 0.5 * t_step * static_cast<double>(n);
    ComplexFunction E;
    E.grid = k_grid;
    E.values.assign(k_grid.count, cplx{});
    for (std::size_t m = 0; m < k_grid.count; ++m) {
        const double k = k_grid.node(m);
        cplx acc = 0.5 * (row[0] + row[n] * std::exp(cplx(0.0, -k * t_step * n)));
        for (std::size_t j = 1; j < n; ++j)
            acc += row[j] * std::exp(cplx(0.0, -k * t_step * j));
        E.values[m] = std::exp(cplx(0.0, k * x)) * (1.0 - t_step * acc);
    }
    return E;
}

EvolvedE evolve_e(const AmplitudeA& A, cplx k) {
    const auto& g = A.A.grid;
    const double h = g.step;
    const auto amid = midpoints(A.A.values);
    EvolvedE out;
    out.E.assign(g.count, cplx{});
    out.Eminus.assign(g.count, cplx{});
    cplx E = 1.0, Em = 1.0;
    out.E[0] = E;
    out.Eminus[0] = Em;
    const cplx ik = cplx(0.0, 1.0) * k;
    auto rhs = [&](double a, cplx e, cplx em, cplx& de, cplx& dem) {
        de = ik * e - a * em;
        dem = -ik * em - a * e;
    };
    for (std::size_t i = 0; i + 1 < g.count; ++i) {
        const double a0 = A.A.values[i], am = amid[i], a1 = A.A.values[i + 1];
        cplx k1e, k1m, k2e, k2m, k3e, k3m, k4e, k4m;
        rhs(a0, E, Em, k1e, k1m);
        rhs(am, E + 0.5 * h * k1e, Em + 0.5 * h * k1m, k2e, k2m);
        rhs(am, E + 0.5 * h * k2e, Em + 0.5 * h * k2m, k3e, k3m);
        rhs(a1, E + h * k3e, Em + h * k3m, k4e, k4m);
        E += h / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
        Em += h / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
        out.E[i + 1] = E;
        out.Eminus[i + 1] = Em;
    }
    return out;
}

std::vector<double> converse_chain(const AmplitudeA& A, const UniformGrid& k_grid, double x) {
    const double hx = A.A.grid.step;
    const double pos = (x - A.A.grid.start) / hx;
    const auto ix = static_cast<std::size_t>(pos + 0.5);
    if (std::abs(pos - static_cast<double>(ix)) > 1e-9 || ix < 1 || ix >= A.A.grid.count)
        throw Error("converse_chain: x must be an interior grid node of A");
    if (std::abs(k_grid.start - k_grid.step) > 1e-9 * k_grid.step)
        throw Error("converse_chain: momentum grid must start one step from zero");

    AmplitudeA sub;
    sub.A.grid = UniformGrid(0.0, hx, ix + 1);
    sub.A.values.assign(A.A.values.begin(), A.A.values.begin() + static_cast<long>(ix + 1));

    const std::size_t M = k_grid.count;
    const double hk = k_grid.step;
    const double K = k_grid.back();
    std::vector<cplx> G(M + 1);  // G(m hk), m = 0..M
    parallel_for(M + 1, [&](std::size_t m) {
        const double k = hk * static_cast<double>(m);
        const auto ev = evolve_e(sub, cplx(k, 0.0));
        G[m] = 1.0 - std::exp(cplx(0.0, -k * x)) * ev.E[ix];
    });

    // Gamma_{2x}(s,0) = (1/2pi) int G(k) e^{iks} dk over the symmetric grid.
    const std::size_t ns = ix;  // s step = 2 hx = t step, nodes 0..ns cover [0, 2x]
    const double hs = 2.0 * hx;
    std::vector<double> raw(ns + 1);
    for (std::size_t j = 0; j <= ns; ++j) {
        const double s = hs * static_cast<double>(j);
        double acc = G[0].real();
        for (std::size_t m = 1; m <= M; ++m) {
            const double w = (m == M) ? 0.5 : 1.0;
            acc += 2.0 * w * (G[m] * std::exp(cplx(0.0, hk * m * s))).real();
        }
        raw[j] = hk * acc / (2.0 * kPi);
    }

    // Truncation-tail passes: G ~ (G0 - G2x e^{-2ikx})/(ik) + (G0' - ...)/(ik)^2
    // with the boundary values and slopes estimated from the current row.
    auto I1 = [&](double s) {
        if (s == 0.0) return 0.0;
        const double v = (kPi / 2.0 - sin_integral(K * std::abs(s))) / kPi;
        return s > 0.0 ? v : -v;
    };
    auto I2 = [&](double s) { return -tail_cos_over_power(K, s, 2) / kPi; };

    std::vector<double> row = raw;
    double g0 = 2.0 * raw[0], g2x = 2.0 * raw[ns], gp0 = 0.0, gp2x = 0.0;
    for (int pass = 0; pass < 3; ++pass) {
        for (std::size_t j = 0; j <= ns; ++j) {
            const double s = hs * static_cast<double>(j);
            row[j] = raw[j] + g0 * I1(s) + gp0 * I2(s) - g2x * I1(s - 2.0 * x) -
                     gp2x * I2(s - 2.0 * x);
        }
        row[0] *= 2.0;
        row[ns] *= 2.0;
        g0 = row[0];
        g2x = row[ns];
        if (ns >= 2) {
            gp0 = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * hs);
            gp2x = (3.0 * row[ns] - 4.0 * row[ns - 1] + row[ns - 2]) / (2.0 * hs);
        }
    }
    return row;
}

AmplitudeA riccati_converse(const Potential& q, double A0, double blow_up_bound) {
    const auto& g = q.q.grid;
    const double h = g.step;
    const auto qmid = midpoints(q.q.values);
    AmplitudeA out;
    out.A.grid = g;
    out.A.values.assign(g.count, 0.0);
    double a = A0;
    out.A.values[0] = a;
    for (std::size_t i = 0; i + 1 < g.count; ++i) {
        const double q0 = q.q.values[i], qm = qmid[i], q1 = q.q.values[i + 1];
        const double k1 = q0 - a * a;
        const double a2 = a + 0.5 * h * k1;
        const double k2 = qm - a2 * a2;
        const double a3 = a + 0.5 * h * k2;
        const double k3 = qm - a3 * a3;
        const double a4 = a + h * k3;
        const double k4 = q1 - a4 * a4;
        a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(a) || std::abs(a) > blow_up_bound)
            throw BlowUp("riccati_converse: |A| exceeded the bound at x = " +
                         std::to_string(g.node(i + 1)));
        out.A.values[i + 1] = a;
    }
    return out;
}

}  // namespace scatter
