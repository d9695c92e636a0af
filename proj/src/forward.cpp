#include "scatter/forward.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/numeric.hpp"
#include "scatter/parallel.hpp"

namespace scatter {

Potential::Potential(RealFunction q_, double support_end_) : q(std::move(q_)) {
    if (std::abs(q.grid.start) > 1e-12) throw Error("Potential: grid must start at x = 0");
    for (double v : q.values)
        if (!std::isfinite(v)) throw Error("Potential: non-finite sample");
    support_end = (support_end_ < 0.0) ? q.grid.back() : support_end_;
    if (!std::isfinite(l11_norm())) throw Error("Potential: x|q| is not integrable on the grid");
}

double Potential::l11_norm() const {
    std::vector<double> xq(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) xq[i] = q.grid.node(i) * std::abs(q.values[i]);
    return trapezoid(xq, q.grid.step);
}

namespace {

// Backward product-integration sweep for the reduced function
// m(x,k) = f(x,k) e^{-ikx}:
//   m(x) = 1 + int_x^X (e^{2ik(y-x)} - 1)/(2ik) q(y) m(y) dy.
// The running sums keep phases relative to the current node, so nothing
// grows for Im k > 0.  Returns m at every node; fills fprime0 with f'(0,k).
std::vector<cplx> reduced_sweep(const Potential& pot, cplx k, cplx* fprime0) {
    const auto& g = pot.q.grid;
    const std::size_t N = g.count - 1;
    const double h = g.step;
    const bool tiny_k = std::abs(k) < 1e-12;
    const cplx two_ik = 2.0 * cplx(0.0, 1.0) * k;
    const cplx rho = std::exp(two_ik * h);

    std::vector<cplx> m(N + 1);
    m[N] = 1.0;
    cplx U{};  // sum w e^{2ik(x_j - x_i)} q_j m_j h over j > i
    cplx V{};  // sum w q_j m_j h
    cplx W{};  // sum w x_j q_j m_j h  (|k| -> 0 limit)
    for (std::size_t ii = N; ii-- > 0;) {
        const std::size_t j = ii + 1;  // node entering the sums
        const double wj = (j == N) ? 0.5 : 1.0;
        const cplx add = wj * h * pot.q.values[j] * m[j];
        V += add;
        if (tiny_k)
            W += add * g.node(j);
        else
            U = (U + add) * rho;
        if (tiny_k)
            m[ii] = 1.0 + (W - g.node(ii) * V);
        else
            m[ii] = 1.0 + (U - V) / two_ik;
    }
    if (fprime0) {
        // f'(0,k) = ik f(k) - int_0^X e^{2iky} q m dy (trapezoid, j = 0 term added)
        const cplx full = (tiny_k ? V : U) + 0.5 * h * pot.q.values[0] * m[0];
        *fprime0 = cplx(0.0, 1.0) * k * m[0] - full;
    }
    return m;
}

}  // namespace

ComplexFunction jost_solution(const Potential& q, cplx k) {
    if (k.imag() < -1e-12) throw Error("jost_solution: Im k must be nonnegative");
    const auto m = reduced_sweep(q, k, nullptr);
    ComplexFunction f;
    f.grid = q.q.grid;
    f.values.assign(m.size(), cplx{});
    for (std::size_t i = 0; i < m.size(); ++i)
        f.values[i] = std::exp(cplx(0.0, 1.0) * k * q.q.grid.node(i)) * m[i];
    return f;
}

JostPoint jost_point(const Potential& q, cplx k) {
    if (k.imag() < -1e-12) throw Error("jost_point: Im k must be nonnegative");
    JostPoint out;
    const auto m = reduced_sweep(q, k, &out.fprime0);
    out.f = m[0];
    return out;
}

JostClosure jost_function(const Potential& q, const UniformGrid& k_grid) {
    JostClosure out;
    out.f.grid = k_grid;
    out.f.values.assign(k_grid.count, cplx{});
    parallel_for(k_grid.count, [&](std::size_t i) {
        out.f.values[i] = jost_point(q, cplx(k_grid.node(i), 0.0)).f;
    });
    const std::size_t from = k_grid.count - std::max<std::size_t>(k_grid.count / 4, 1);
    double acc = 0.0;
    for (std::size_t i = from; i < k_grid.count; ++i)
        acc += (k_grid.node(i) * (out.f.values[i] - 1.0)).imag();
    out.asymptotic_A0 = acc / static_cast<double>(k_grid.count - from);
    return out;
}

ComplexFunction s_matrix(const JostClosure& f, double zero_floor) {
    ComplexFunction S;
    S.grid = f.f.grid;
    S.values.assign(f.f.size(), cplx{});
    for (std::size_t i = 0; i < f.f.size(); ++i) {
        const cplx fi = f.f.values[i];
        if (std::abs(fi) < zero_floor)
            throw ZeroJost("s_matrix: |f| below floor at k = " + std::to_string(f.f.grid.node(i)));
        S.values[i] = std::conj(fi) / fi;
    }
    return S;
}

RealFunction phase_shift(const ComplexFunction& S) {
    for (const cplx& s : S.values)
        if (std::abs(std::abs(s) - 1.0) > 1e-3)
            throw Error("phase_shift: |S| deviates from 1 beyond tolerance");
    std::vector<double> raw(S.size());
    for (std::size_t i = 0; i < S.size(); ++i)
        raw[i] = std::atan2(S.values[i].imag(), S.values[i].real());
    // delta(+inf) -> 0: anchor the principal value at the far end and
    // unwrap toward k = 0.
    const auto psi = unwrap_phase_from_back(raw, kPi / 2.0);
    RealFunction d;
    d.grid = S.grid;
    d.values.assign(S.size(), 0.0);
    for (std::size_t i = 0; i < S.size(); ++i) d.values[i] = 0.5 * psi[i];
    return d;
}

namespace {

// Dirichlet shooting: u'' = (q + kappa^2) u, u(0) = 0, u'(0) = 1 by RK4;
// matching function u'(X) + kappa u(X) changes sign exactly at eigenvalues.
double shoot(const Potential& pot, double kappa, const std::vector<double>& qmid) {
    const auto& g = pot.q.grid;
    const double h = g.step;
    std::size_t last = g.count - 1;
    // integrate to the end of the support (beyond it u only grows)
    while (last > 2 && g.node(last - 1) > pot.support_end) --last;
    double u = 0.0, v = 1.0;
    const double k2 = kappa * kappa;
    for (std::size_t i = 0; i < last; ++i) {
        const double q0 = pot.q.values[i] + k2;
        const double qm = qmid[i] + k2;
        const double q1 = pot.q.values[i + 1] + k2;
        // RK4 for u' = v, v' = q u
        const double k1u = v, k1v = q0 * u;
        const double k2u = v + 0.5 * h * k1v, k2v = qm * (u + 0.5 * h * k1u);
        const double k3u = v + 0.5 * h * k2v, k3v = qm * (u + 0.5 * h * k2u);
        const double k4u = v + h * k3v, k4v = q1 * (u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        const double scale = std::abs(u) + std::abs(v);
        if (scale > 1e120) {
            u /= scale;
            v /= scale;
        }
    }
    return v + kappa * u;
}

}  // namespace

BoundStates bound_states(const Potential& q) {
    BoundStates out;
    double qmin = 0.0, qabs = 0.0;
    for (double v : q.q.values) {
        qmin = std::min(qmin, v);
        qabs = std::max(qabs, std::abs(v));
    }
    if (qmin >= 0.0 || qabs == 0.0) return out;
    const double kappa_max = std::sqrt(qabs);
    const auto qmid = midpoints(q.q.values);

    constexpr int kScan = 64;
    double prev_kappa = kappa_max * (1.0 / kScan);
    double prev_phi = shoot(q, prev_kappa, qmid);
    for (int m = 2; m <= kScan; ++m) {
        const double kappa = kappa_max * (static_cast<double>(m) / kScan);
        const double phi = shoot(q, kappa, qmid);
        if (prev_phi == 0.0 || (prev_phi < 0.0) != (phi < 0.0)) {
            double lo = prev_kappa, hi = kappa;
            double flo = prev_phi;
            for (int it = 0; it < 100 && (hi - lo) > 1e-13 * kappa_max; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = shoot(q, mid, qmid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.k.push_back(0.5 * (lo + hi));
        }
        prev_kappa = kappa;
        prev_phi = phi;
    }
    std::sort(out.k.begin(), out.k.end());

    for (double kj : out.k) {
        // s_j = -2i k_j / (fdot(i k_j) f'(0, i k_j)); fdot by a central
        // difference along the imaginary axis with step k_j * 1e-4.
        const double eps = kj * 1e-4;
        const cplx f_plus = jost_point(q, cplx(0.0, kj + eps)).f;
        const cplx f_minus = jost_point(q, cplx(0.0, kj - eps)).f;
        const cplx fdot = (f_plus - f_minus) / (cplx(0.0, 1.0) * (2.0 * eps));
        const cplx fp0 = jost_point(q, cplx(0.0, kj)).fprime0;
        const cplx s = -2.0 * cplx(0.0, 1.0) * kj / (fdot * fp0);
        out.s.push_back(s.real());
    }
    return out;
}

RealFunction spectral_density(const JostClosure& f, const UniformGrid& k_grid) {
    if (!(k_grid == f.f.grid))
        throw Error("spectral_density: grid must match the Jost closure");
    RealFunction rho;
    rho.grid = k_grid;
    rho.values.assign(k_grid.count, 0.0);
    for (std::size_t i = 0; i < k_grid.count; ++i) {
        const double af = std::abs(f.f.values[i]);
        if (af < 1e-8) throw ZeroJost("spectral_density: |f| below floor");
        const double k = k_grid.node(i);
        rho.values[i] = 2.0 * k * k / (kPi * af * af);
    }
    return rho;
}

}  // namespace scatter
