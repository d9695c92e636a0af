#ifndef SCATTER_KREIN_INVERSION_HPP
#define SCATTER_KREIN_INVERSION_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "scatter/forward.hpp"
#include "scatter/grid.hpp"
#include "scatter/krein_kernel.hpp"

namespace scatter {

// Family of truncated convolution equations
//   Gamma(t) + int_0^xbar H(t-u) Gamma(u) du = H(t),   0 <= t <= xbar,
// discretized on t_i = i*h with trapezoid weights and solved for every
// nested size in one bordering sweep.  corner[j] = Gamma_xbar(xbar, 0) and
// diag0[j] = Gamma_xbar(0, 0) at xbar = j*h, i.e. at x = j*h/2 on x_grid.
struct GammaSweep {
    UniformGrid x_grid;          // step h/2, x = xbar/2
    double t_step = 0.0;         // h
    double h_zero = 0.0;         // H(0), used to pin A(0) = 2H(0)
    std::vector<double> corner;
    std::vector<double> diag0;
    std::map<std::size_t, std::vector<double>> full_rows;  // n -> Gamma_{nh}(t_i, 0)
    std::vector<std::size_t> iterations;  // per size, iterative mode only

    const std::vector<double>& row(std::size_t n) const;
};

struct AmplitudeA {
    RealFunction A;  // A(0) = 2 H(0) exactly
};

enum class GammaMode { bordering, iterative };

// Solves the family up to x = X (sizes n = 1..2X/h).  Boundary trapezoid
// half-weights make the matrix Toeplitz-plus-rank-2; the sweep runs a
// Levinson recursion on the Toeplitz part and applies a 2x2
// Sherman-Morrison correction at every size, O(N^2) total.
// checkpoint_fractions selects sizes whose corrected full rows are stored.
GammaSweep solve_gamma_family(const KreinKernel& ker, double X, double h,
                              GammaMode mode = GammaMode::bordering,
                              const std::vector<double>& checkpoint_fractions = {0.125, 0.25,
                                                                                 0.5, 1.0});

// Dense Gamma_xbar(t_i, s_j) table (LU path, independent of the sweep).
struct GammaTable {
    std::size_t n = 0;  // nodes 0..n
    double h = 0.0;
    std::vector<double> a;  // row-major (n+1) x (n+1)
    double at(std::size_t i, std::size_t j) const { return a[i * (n + 1) + j]; }
};
GammaTable gamma_table(const KreinKernel& ker, double interval, double h);

// Discrete sup-norm of the integral operator on [0, xbar]; the fixed point
// iteration of the family contracts when this is < 1.
double contraction_norm(const KreinKernel& ker, double xbar, double h);

// A(x) = 2 Gamma_{2x}(2x, 0) with A(0) patched to 2 H(0) exactly.
AmplitudeA amplitude(const GammaSweep& sweep);

// q = A^2 + A' with a 4th-order difference stencil (optional 3-point
// moving average first, for noisy external data).
Potential potential_from_amplitude(const AmplitudeA& A, bool smooth = false);

// q = 2 d/dx [ Gamma_{2x}(2x,0) - Gamma_{2x}(0,0) ].
Potential potential_alternative(const GammaSweep& sweep);

// E(x,k) = e^{ikx} [ 1 - int_0^{2x} Gamma_{2x}(s,0) e^{-iks} ds ] from a
// stored row (row.size() == 2x/t_step + 1).
ComplexFunction e_function(const std::vector<double>& row, double t_step,
                           const UniformGrid& k_grid);

// E and E_- along the x-grid of A for one k, from the coupled system
//   E' = ikE - A E_-,  E_-' = -ikE_- - A E,  E(0) = E_-(0) = 1  (RK4).
struct EvolvedE {
    std::vector<cplx> E;       // E(x_j, k)
    std::vector<cplx> Eminus;  // E(x_j, -k)
};
EvolvedE evolve_e(const AmplitudeA& A, cplx k);

// Converse chain: integrate the E system for the sampled A up to x, then
// invert the finite Fourier representation to recover Gamma_{2x}(s, 0) on
// s = 0, h, ..., 2x with h = 2 * (A grid step).
std::vector<double> converse_chain(const AmplitudeA& A, const UniformGrid& k_grid, double x);

// A' = q - A^2 from A(0) = A0; throws BlowUp past the configured bound.
AmplitudeA riccati_converse(const Potential& q, double A0, double blow_up_bound = 1e6);

}  // namespace scatter

#endif
