#ifndef SCATTER_GELFAND_LEVITAN_HPP
#define SCATTER_GELFAND_LEVITAN_HPP

#include <vector>

#include "scatter/forward.hpp"
#include "scatter/grid.hpp"
#include "scatter/riemann.hpp"

namespace scatter {

// Precomputed table M(x) = (1/pi) int_0^inf (|f(k)|^-2 - 1) cos(kx) dk on a
// uniform grid covering [0, 2X]; the 2-D kernel is L(x,y) = M(x-y) - M(x+y).
struct GlKernelTable {
    RealFunction M;
};

GlKernelTable gl_m_table(const JostClosure& f, const UniformGrid& x_grid2);

// Same table built from the spectral density rho'(k) = 2k^2/(pi |f|^2):
// the weight is recovered as pi rho'/(2k^2) - 1.
GlKernelTable gl_m_table_from_density(const RealFunction& rho, const UniformGrid& x_grid2);

// L(x,y) for x, y on the table grid.
double gl_kernel(const GlKernelTable& table, double x, double y);

// Row K(x, s), s = 0..x, from K + L + int_0^x K(x,s) L(s,y) ds = 0
// (dense second-kind solve; the step is the table step).
std::vector<double> solve_gl(const GlKernelTable& table, double x);

// q(x) = 2 d/dx K(x,x) at checkpoint abscissae (5-point stencil of dense
// solves around each checkpoint; GL is the validator, not the bulk path).
struct GlPotential {
    std::vector<double> x;
    std::vector<double> q;
};
GlPotential gl_potential_at(const GlKernelTable& table, const std::vector<double>& xs);

}  // namespace scatter

#endif
