#ifndef SCATTER_FORWARD_HPP
#define SCATTER_FORWARD_HPP

#include <vector>

#include "scatter/grid.hpp"
#include "scatter/riemann.hpp"

namespace scatter {

// Real potential sampled on x >= 0 (grid starts at 0), treated as zero
// beyond support_end.  int_0^inf x |q| dx must be finite on the grid.
struct Potential {
    RealFunction q;
    double support_end = 0.0;

    Potential() = default;
    explicit Potential(RealFunction q_, double support_end_ = -1.0);
    double l11_norm() const;
};

struct ScatteringData {
    ComplexFunction S;              // on k > 0, |S| = 1 within tolerance
    std::vector<double> bound_ks;   // k_j > 0, distinct
    std::vector<double> norming;    // s_j > 0, same length
};

// Jost solution f(x,k), Im k >= 0: the Volterra equation
//   f(x,k) = e^{ikx} + int_x^X sin(k(y-x))/k q(y) f(y,k) dy
// marched backward from x >= X where f = e^{ikx} exactly, with trapezoid
// product integration (single sweep, second order).
ComplexFunction jost_solution(const Potential& q, cplx k);

// f(k) = f(0,k) together with f'(0,k) from the same sweep.
struct JostPoint {
    cplx f;
    cplx fprime0;
};
JostPoint jost_point(const Potential& q, cplx k);

// f(k) over the momentum grid with the fitted A(0) tail constant.
JostClosure jost_function(const Potential& q, const UniformGrid& k_grid);

// S(k) = f(-k)/f(k) = conj f(k) / f(k) on the real grid.
ComplexFunction s_matrix(const JostClosure& f, double zero_floor = 1e-8);

// Continuous phase shift, S = e^{2 i delta}, normalized by delta(+inf) -> 0.
RealFunction phase_shift(const ComplexFunction& S);

struct BoundStates {
    std::vector<double> k;  // k_j > 0 ascending, eigenvalues are -k_j^2
    std::vector<double> s;  // norming constants s_j > 0
};

// Dirichlet negative spectrum by shooting + bisection on the eigenparameter,
// norming constants via s_j = -2i k_j / (fdot(i k_j) f'(0, i k_j)).
BoundStates bound_states(const Potential& q);

// Spectral density rho'(k) = 2 k^2 / (pi |f(k)|^2) for k > 0 (index-0 case).
RealFunction spectral_density(const JostClosure& f, const UniformGrid& k_grid);

}  // namespace scatter

#endif
