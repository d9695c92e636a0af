#ifndef SCATTER_BLASCHKE_HPP
#define SCATTER_BLASCHKE_HPP

#include <optional>
#include <vector>

#include "scatter/grid.hpp"

namespace scatter {

// Bound-state data for the index normalization S -> S1.  gamma is required
// in the odd-index case and must differ from every k_j.
struct BlaschkeSpec {
    std::vector<double> bound_ks;
    std::optional<double> gamma;

    bool odd() const { return gamma.has_value(); }
    int expected_index() const {
        int J = static_cast<int>(bound_ks.size());
        return odd() ? -(2 * J + 1) : -2 * J;
    }
};

// w(k) = prod (k - i k_j)/(k + i k_j), or W(k) = k/(k + i gamma) * w(k)
// in the odd case; unimodular for real k (up to the k/(k+i gamma) factor).
ComplexFunction blaschke(const BlaschkeSpec& spec, const UniformGrid& k_grid);

// S1 = S * w^2 (even) or S * W^2 (odd); the computed winding index of S
// must match the parity and count in spec, and the result has index 0.
ComplexFunction reduce_index(const ComplexFunction& S, const BlaschkeSpec& spec);

}  // namespace scatter

#endif
