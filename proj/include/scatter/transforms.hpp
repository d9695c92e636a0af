#ifndef SCATTER_TRANSFORMS_HPP
#define SCATTER_TRANSFORMS_HPP

#include "scatter/grid.hpp"

namespace scatter {

// Symbol of an even real kernel:  Htilde(k) = 2 int_0^inf cos(kt) H(t) dt.
// H must be sampled on t >= 0 starting at 0 and must have decayed at the
// end of its grid (|H| at the last node below decay_tol * max|H|).
// The output is even in k by construction; cos(|k| t) is used so symmetry
// is exact on symmetric grids.
RealFunction fourier_symbol(const RealFunction& H, const UniformGrid& k_grid,
                            double decay_tol = 1e-3);

// Cauchy integral (1/2*pi*i) int g(y)/(y - k) dy over the sampled contour,
// Im k > 0.  The portion beyond the grid is integrated analytically from
// g.tail (rates 1 and 2 are supported).
cplx cauchy_integral(const ComplexFunction& g, cplx k, double pole_floor = 1e-8);

// Boundary value of the Cauchy integral from the upper half plane at the
// real point k0: principal value by singularity subtraction plus g(k0)/2.
// k0 must lie at least two grid steps inside the sampled interval.
cplx hilbert_boundary(const ComplexFunction& g, double k0);

}  // namespace scatter

#endif
