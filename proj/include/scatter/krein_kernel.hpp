#ifndef SCATTER_KREIN_KERNEL_HPP
#define SCATTER_KREIN_KERNEL_HPP

#include "scatter/grid.hpp"
#include "scatter/riemann.hpp"

namespace scatter {

// Even real convolution kernel H(t) with 1 + Htilde(k) = 1/|f(k)|^2.
// symbol_margin is the grid minimum of 1 + Htilde (including the k = 0
// extrapolation); the inversion requires it strictly positive.
struct KreinKernel {
    RealFunction H;
    double H0 = 0.0;
    double symbol_margin = 0.0;
};

struct MarchenkoKernel {
    RealFunction F;
};

// H(t) = (1/pi) int_0^inf (1/|f(k)|^2 - 1) cos(kt) dk with a fitted
// (c2/k^2 + c4/k^4) tail integrated in closed form.
KreinKernel kernel_from_jost(const JostClosure& f, const UniformGrid& t_grid);

// Converse: |f|^2 = 1/(1 + Htilde); f recovered by the outer (index-zero)
// factorization of the symbol.  Throws SymbolNotPositive when 1 + Htilde
// fails to stay positive on the grid.
JostClosure jost_from_kernel(const KreinKernel& ker, const UniformGrid& k_grid);

// F(x) = (1/2*pi) int (1 - S(k)) e^{ikx} dk, real by conjugate symmetry.
MarchenkoKernel marchenko_kernel(const ComplexFunction& S, const UniformGrid& x_grid);

// 2 H(0) = (1/pi) int (1/|f|^2 - 1) dk  (Riccati initial condition).
double h_zero_from_jost(const JostClosure& f);

}  // namespace scatter

#endif
