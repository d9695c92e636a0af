#include "scatter/blaschke.hpp"

#include <cmath>

#include "scatter/riemann.hpp"

namespace scatter {

namespace {

void validate(const BlaschkeSpec& spec) {
    for (std::size_t i = 0; i < spec.bound_ks.size(); ++i) {
        if (!(spec.bound_ks[i] > 0.0)) throw Error("BlaschkeSpec: k_j must be positive");
        for (std::size_t j = i + 1; j < spec.bound_ks.size(); ++j)
            if (std::abs(spec.bound_ks[i] - spec.bound_ks[j]) < 1e-12)
                throw Error("BlaschkeSpec: k_j must be distinct");
    }
    if (spec.gamma) {
        if (!(*spec.gamma > 0.0)) throw InvalidGamma("BlaschkeSpec: gamma must be positive");
        for (double kj : spec.bound_ks)
            if (std::abs(*spec.gamma - kj) < 1e-12)
                throw InvalidGamma("BlaschkeSpec: gamma must differ from every k_j");
    }
}

}  // namespace

ComplexFunction blaschke(const BlaschkeSpec& spec, const UniformGrid& k_grid) {
    validate(spec);
    ComplexFunction w;
    w.grid = k_grid;
    w.values.assign(k_grid.count, cplx{1.0, 0.0});
    for (std::size_t i = 0; i < k_grid.count; ++i) {
        const double k = k_grid.node(i);
        cplx v{1.0, 0.0};
        for (double kj : spec.bound_ks) v *= cplx(k, -kj) / cplx(k, kj);
        if (spec.gamma) v *= cplx(k, 0.0) / cplx(k, *spec.gamma);
        w.values[i] = v;
    }
    return w;
}

ComplexFunction reduce_index(const ComplexFunction& S, const BlaschkeSpec& spec) {
    validate(spec);
    const int idx = winding_index(S);
    if (idx != spec.expected_index())
        throw IndexMismatch("reduce_index: computed index " + std::to_string(idx) +
                            " does not match the supplied spec (" +
                            std::to_string(spec.expected_index()) + ")");
    if (idx == 0 && spec.bound_ks.empty() && !spec.gamma) return S;
    const ComplexFunction w = blaschke(spec, S.grid);
    ComplexFunction out;
    out.grid = S.grid;
    out.values.assign(S.size(), cplx{});
    for (std::size_t i = 0; i < S.size(); ++i)
        out.values[i] = S.values[i] * w.values[i] * w.values[i];
    return out;
}

}  // namespace scatter
