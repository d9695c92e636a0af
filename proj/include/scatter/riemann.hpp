#ifndef SCATTER_RIEMANN_HPP
#define SCATTER_RIEMANN_HPP

#include <optional>

#include "scatter/grid.hpp"

namespace scatter {

// Jost function on the positive-k grid plus the constant A(0) of the
// 1 - A(0)/(ik) large-k expansion.  f(-k) = conj f(k) is implied.
struct JostClosure {
    ComplexFunction f;
    double asymptotic_A0 = 0.0;
};

struct AdmissibilityReport {
    double unitarity_defect = 0.0;            // sup | |S| - 1 |
    int index = 0;                            // winding of arg S over R
    double F_sup = 0.0;                       // finite-grid surrogates of the
    double F_l1 = 0.0;                        // F-norm conditions; diagnostic,
    double xFprime_l1 = 0.0;                  // not pass/fail thresholds
    std::optional<double> positivity_margin;  // min(1 + Htilde), when known
};

// Winding number of S along the real axis: total unwrapped argument
// increment over (-inf, inf) divided by 2*pi, using the conjugate-symmetric
// extension of the positive-k samples.  Consecutive (wrapped) phase steps
// must stay below pi/2 or UnwrapAmbiguity is thrown.
int winding_index(const ComplexFunction& S, double unitarity_tol = 1e-4);

// log S(-y) on a symmetric grid including y = 0, with a continuous branch
// anchored at S(+inf) ~ 1 and a fitted c/y tail.  The grid of S must start
// at one step (nodes k_step * (1..n)).  Used by the factorization below and
// exposed for evaluating the upper-half-plane values via cauchy_integral.
ComplexFunction riemann_log_symbol(const ComplexFunction& S);

// Index-zero factorization S(k) = f(-k)/f(k): recovers the Jost function on
// the grid of S as exp of the boundary Cauchy integral of log S(-y).
JostClosure solve_riemann(const ComplexFunction& S, const UniformGrid& k_grid);

// max_k | f(k) - S(-k) f(-k) | on the grid (f(-k) = conj f(k)).
double riemann_jump_residual(const ComplexFunction& S, const JostClosure& f);

// Alternative route: from the phase shift, g(t) = -(2/pi) int delta sin(kt) dk,
// then f(k) = exp( int_0^inf g(t) e^{ikt} dt ).
JostClosure wiener_levy_route(const RealFunction& delta, const UniformGrid& t_grid,
                              const UniformGrid& k_grid);

AdmissibilityReport check_admissibility(const ComplexFunction& S);

}  // namespace scatter

#endif
