#include "scatter/krein_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/numeric.hpp"
#include "scatter/transforms.hpp"

namespace scatter {

namespace {

void require_offset_grid(const UniformGrid& g, const char* who) {
    if (std::abs(g.start - g.step) > 1e-9 * g.step)
        throw Error(std::string(who) + ": momentum grids must start one step from zero");
}

std::vector<double> jost_weight(const JostClosure& f, double floor) {
    std::vector<double> w(f.f.size());
    for (std::size_t i = 0; i < f.f.size(); ++i) {
        const double af = std::abs(f.f.values[i]);
        if (af < floor) throw ZeroJost("kernel transform: |f| below floor");
        w[i] = 1.0 / (af * af) - 1.0;
    }
    return w;
}

struct WeightTailFit {
    double c2 = 0.0, c4 = 0.0;
};

WeightTailFit fit_weight_tail(const UniformGrid& kg, const std::vector<double>& w) {
    const std::size_t n = w.size();
    const std::size_t from = n - std::max<std::size_t>(n / 4, std::min<std::size_t>(n, 4));
    std::vector<double> ks(n - from), ws(w.begin() + from, w.end());
    for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = kg.node(from + i);
    WeightTailFit fit;
    fit_power_tail(ks, ws, 2, 4, fit.c2, fit.c4);
    return fit;
}

// (1/pi) int_0^inf w(k) cos(kt) dk for an even weight sampled on the offset
// grid: trapezoid on [k1, K], an even-extrapolated segment on [0, k1], and
// the fitted (c2/k^2 + c4/k^4) tail in closed form.
double cos_transform_at(const UniformGrid& kg, const std::vector<double>& w, double w0,
                        const WeightTailFit& fit, double t) {
    const double h = kg.step;
    const double K = kg.back();
    double s = 0.5 * (w.front() * std::cos(kg.node(0) * t) + w.back() * std::cos(K * t));
    for (std::size_t i = 1; i + 1 < w.size(); ++i) s += w[i] * std::cos(kg.node(i) * t);
    s *= h;
    s += 0.5 * h * (w0 + w.front() * std::cos(kg.node(0) * t));
    s += fit.c2 * tail_cos_over_power(K, t, 2) + fit.c4 * tail_cos_over_power(K, t, 4);
    return s / kPi;
}

}  // namespace

KreinKernel kernel_from_jost(const JostClosure& f, const UniformGrid& t_grid) {
    require_offset_grid(f.f.grid, "kernel_from_jost");
    if (std::abs(t_grid.start) > 1e-12) throw Error("kernel_from_jost: t grid must start at 0");
    const auto w = jost_weight(f, 1e-8);
    const auto& kg = f.f.grid;
    const double w0 = even_extrapolate0(kg.node(0), w[0], kg.node(1), w[1]);
    const auto fit = fit_weight_tail(kg, w);

    KreinKernel ker;
    ker.H.grid = t_grid;
    ker.H.values.assign(t_grid.count, 0.0);
    for (std::size_t j = 0; j < t_grid.count; ++j)
        ker.H.values[j] = cos_transform_at(kg, w, w0, fit, t_grid.node(j));
    ker.H0 = ker.H.values[0];

    // symbol 1 + Htilde = 1/|f|^2 exactly; grid minimum with the k = 0
    // extrapolation included
    double margin = 1.0 + even_extrapolate0(kg.node(0), w[0], kg.node(1), w[1]);
    for (double wi : w) margin = std::min(margin, 1.0 + wi);
    ker.symbol_margin = margin;
    return ker;
}

JostClosure jost_from_kernel(const KreinKernel& ker, const UniformGrid& k_grid) {
    require_offset_grid(k_grid, "jost_from_kernel");
    const std::size_t M = k_grid.count;
    const double h = k_grid.step;
    const std::size_t P = M / 2 + 1;

    // Symbol 1 + Htilde evaluated from the kernel samples out to the padded
    // end (the kernel is data here, so no tail model is needed inside).
    UniformGrid ext(h, h, M + P);
    const RealFunction Ht = fourier_symbol(ker.H, ext, 0.05);
    std::vector<double> symbol(M + P + 1);
    {
        std::vector<double> habs(ker.H.size());
        for (std::size_t i = 0; i < ker.H.size(); ++i) habs[i] = ker.H.values[i];
        symbol[0] = 1.0 + 2.0 * trapezoid(habs, ker.H.grid.step);
    }
    for (std::size_t i = 0; i < M + P; ++i) symbol[i + 1] = 1.0 + Ht.values[i];
    for (double s : symbol)
        if (s <= 1e-12)
            throw SymbolNotPositive("jost_from_kernel: 1 + Htilde is not strictly positive");

    // g(y) = ln |f(y)|^2 = -ln(1 + Htilde(|y|)), even, with a c/y^2 tail.
    std::vector<double> gpos(M + P + 1);
    for (std::size_t i = 0; i < symbol.size(); ++i) gpos[i] = -std::log(symbol[i]);
    double c2, c4;
    {
        const std::size_t from = M - std::max<std::size_t>(M / 4, std::min(M, std::size_t(4)));
        std::vector<double> ks, ws;
        for (std::size_t i = from; i < M; ++i) {
            ks.push_back(ext.node(i));
            ws.push_back(gpos[i + 1]);
        }
        fit_power_tail(ks, ws, 2, 4, c2, c4);
    }
    const std::size_t total = 2 * (M + P) + 1;
    const std::size_t mid = M + P;
    std::vector<cplx> g(total);
    for (std::size_t m = 0; m <= M + P; ++m) {
        g[mid + m] = gpos[m];
        g[mid - m] = gpos[m];
    }
    UniformGrid sym(-static_cast<double>(M + P) * h, h, total);
    ComplexFunction gfun(sym, std::move(g), TailDecay{cplx(c2, 0.0), 2.0});

    JostClosure out;
    out.f.grid = k_grid;
    out.f.values.assign(M, cplx{});
    for (std::size_t i = 0; i < M; ++i)
        out.f.values[i] = std::exp(hilbert_boundary(gfun, k_grid.node(i)));
    std::size_t from = M - std::max<std::size_t>(M / 4, 1);
    double acc = 0.0;
    for (std::size_t i = from; i < M; ++i)
        acc += (k_grid.node(i) * (out.f.values[i] - 1.0)).imag();
    out.asymptotic_A0 = acc / static_cast<double>(M - from);
    return out;
}

MarchenkoKernel marchenko_kernel(const ComplexFunction& S, const UniformGrid& x_grid) {
    require_offset_grid(S.grid, "marchenko_kernel");
    const auto& kg = S.grid;
    const double h = kg.step;
    const double K = kg.back();
    const std::size_t M = S.size();
    std::vector<double> re(M), im(M);
    for (std::size_t i = 0; i < M; ++i) {
        const cplx w = 1.0 - S.values[i];
        re[i] = w.real();
        im[i] = w.imag();
    }
    // 1 - S ~ i c1/k + c3 i/k^3 + c2/k^2 + c4/k^4 at large k.
    const std::size_t from = M - std::max<std::size_t>(M / 4, std::min(M, std::size_t(4)));
    std::vector<double> ks(M - from);
    for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = kg.node(from + i);
    std::vector<double> res(re.begin() + from, re.end());
    std::vector<double> ims(im.begin() + from, im.end());
    double c1, c3, c2, c4;
    fit_power_tail(ks, ims, 1, 3, c1, c3);
    fit_power_tail(ks, res, 2, 4, c2, c4);

    MarchenkoKernel out;
    out.F.grid = x_grid;
    out.F.values.assign(x_grid.count, 0.0);
    for (std::size_t j = 0; j < x_grid.count; ++j) {
        const double x = x_grid.node(j);
        auto integrand = [&](std::size_t i) {
            const double k = kg.node(i);
            return re[i] * std::cos(k * x) - im[i] * std::sin(k * x);
        };
        double s = 0.5 * (integrand(0) + integrand(M - 1));
        for (std::size_t i = 1; i + 1 < M; ++i) s += integrand(i);
        s *= h;
        s += 0.5 * h * integrand(0);  // [0, k1] segment, W(0) = 0 for index 0
        // tails: Re[i c/k^p e^{ikx}] = -(c/k^p) sin(kx); Re[c/k^p e^{ikx}] = (c/k^p) cos(kx)
        s += -c1 * tail_sin_over_power(K, x, 1) - c3 * tail_sin_over_power(K, x, 3);
        s += c2 * tail_cos_over_power(K, x, 2) + c4 * tail_cos_over_power(K, x, 4);
        out.F.values[j] = s / kPi;
    }
    return out;
}

double h_zero_from_jost(const JostClosure& f) {
    require_offset_grid(f.f.grid, "h_zero_from_jost");
    const auto w = jost_weight(f, 1e-8);
    const auto& kg = f.f.grid;
    const double w0 = even_extrapolate0(kg.node(0), w[0], kg.node(1), w[1]);
    const auto fit = fit_weight_tail(kg, w);
    return 2.0 * cos_transform_at(kg, w, w0, fit, 0.0);
}

}  // namespace scatter
