#include "scatter/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/numeric.hpp"

namespace scatter {

RealFunction fourier_symbol(const RealFunction& H, const UniformGrid& k_grid, double decay_tol) {
    if (std::abs(H.grid.start) > 1e-12)
        throw Error("fourier_symbol: H must be sampled from t = 0");
    double hmax = 0.0;
    for (double v : H.values) hmax = std::max(hmax, std::abs(v));
    if (hmax > 0.0 && std::abs(H.values.back()) > decay_tol * hmax)
        throw NonDecayedInput("fourier_symbol: |H| at the grid end is " +
                              std::to_string(std::abs(H.values.back()) / hmax) +
                              " of its maximum");

    const double ht = H.grid.step;
    RealFunction out;
    out.grid = k_grid;
    out.values.assign(k_grid.count, 0.0);
    for (std::size_t m = 0; m < k_grid.count; ++m) {
        const double k = std::abs(k_grid.node(m));  // |k|: evenness is exact
        double s = 0.5 * (H.values.front() + H.values.back() * std::cos(k * H.grid.back()));
        for (std::size_t j = 1; j + 1 < H.values.size(); ++j)
            s += H.values[j] * std::cos(k * H.grid.node(j));
        out.values[m] = 2.0 * ht * s;
    }
    return out;
}

namespace {

// int_L^inf u^-r / (u - k) du for |k| < L, r in {1, 2}; series branch keeps
// the removable k -> 0 limit stable.
cplx power_tail_integral(double L, cplx k, double rate) {
    const int r = static_cast<int>(rate + 0.5);
    if (std::abs(rate - r) > 1e-9 || (r != 1 && r != 2))
        throw Error("tail handling supports rates 1 and 2 only");
    const cplx w = k / L;
    if (std::abs(w) < 1e-6) {
        if (r == 1) return (1.0 / L) * (1.0 + w / 2.0 + w * w / 3.0);
        return (1.0 / (2.0 * L * L)) * (1.0 + 2.0 * w / 3.0 + w * w / 2.0);
    }
    const cplx log_term = std::log(1.0 - w);
    if (r == 1) return -log_term / k;
    return -log_term / (k * k) - 1.0 / (k * L);
}

// Both tails of int g(y)/(y - k) dy beyond a grid spanning [-Lm, Lp],
// with g ~ c y^-r on each side (odd continuation for odd r).
cplx tails_both_sides(const TailDecay& tail, double Lm, double Lp, cplx k) {
    const int r = static_cast<int>(tail.rate + 0.5);
    const double sign_left = (r % 2 == 1) ? 1.0 : -1.0;  // (-1)^{r+1}
    return tail.coefficient *
           (power_tail_integral(Lp, k, tail.rate) +
            sign_left * power_tail_integral(Lm, -k, tail.rate));
}

}  // namespace

cplx cauchy_integral(const ComplexFunction& g, cplx k, double pole_floor) {
    if (k.imag() <= pole_floor)
        throw PoleOnContour("cauchy_integral: Im k must exceed the pole floor");
    const double h = g.grid.step;
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double w = (j == 0 || j + 1 == g.size()) ? 0.5 : 1.0;
        s += w * g.values[j] / (g.grid.node(j) - k);
    }
    s *= h;
    if (g.tail) {
        const double Lp = g.grid.back();
        const double Lm = -g.grid.start;
        if (Lm <= 0.0) throw Error("cauchy_integral: tail model needs a two-sided grid");
        s += tails_both_sides(*g.tail, Lm, Lp, k);
    }
    return s / (cplx(0.0, 2.0 * kPi));
}

cplx hilbert_boundary(const ComplexFunction& g, double k0) {
    const double h = g.grid.step;
    const double lo = g.grid.start, hi = g.grid.back();
    if (k0 < lo + 2.0 * h || k0 > hi - 2.0 * h)
        throw PoleOnContour("hilbert_boundary: k0 too close to the grid ends");

    // Value (and a node-coincidence flag) at k0.
    const double pos = (k0 - lo) / h;
    const auto jn = static_cast<std::size_t>(pos + 0.5);
    const bool on_node = std::abs(pos - static_cast<double>(jn)) < 1e-9;
    cplx g0;
    if (on_node) {
        g0 = g.values[jn];
    } else {
        const auto jl = static_cast<std::size_t>(pos);
        const double t = pos - static_cast<double>(jl);
        g0 = (1.0 - t) * g.values[jl] + t * g.values[jl + 1];
    }

    // Singularity subtraction: the integrand (g - g0)/(y - k0) is regular;
    // at a coinciding node it equals g'(k0) (central difference).
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double w = (j == 0 || j + 1 == g.size()) ? 0.5 : 1.0;
        cplx val;
        if (on_node && j == jn)
            val = (g.values[jn + 1] - g.values[jn - 1]) / (2.0 * h);
        else
            val = (g.values[j] - g0) / (g.grid.node(j) - k0);
        s += w * val;
    }
    s *= h;

    // P.V. of the subtracted constant over [lo, hi].
    s += g0 * std::log((hi - k0) / (k0 - lo));

    if (g.tail) {
        const double Lm = -lo;
        if (Lm <= 0.0) throw Error("hilbert_boundary: tail model needs a two-sided grid");
        s += tails_both_sides(*g.tail, Lm, hi, cplx(k0, 0.0));
    }

    return s / cplx(0.0, 2.0 * kPi) + 0.5 * g0;
}

}  // namespace scatter
