#ifndef SCATTER_MARCHENKO_HPP
#define SCATTER_MARCHENKO_HPP

#include <cstddef>
#include <vector>

#include "scatter/forward.hpp"
#include "scatter/grid.hpp"
#include "scatter/krein_kernel.hpp"

namespace scatter {

// One row A(x, y), y = x..Y on the step of F.
struct MarchenkoRow {
    std::vector<double> values;
    std::size_t iterations = 0;  // 0 when the dense fallback was used
    bool dense_fallback = false;
    double residual = 0.0;
};

struct MarchenkoSolution {
    UniformGrid x_grid;
    double y_step = 0.0;
    std::vector<MarchenkoRow> rows;
    std::vector<double> diag;  // A(x, x)
};

// Contraction estimate sup_y int_x^Y |F(s+y)| ds = int_{2x}^{x+Y} |F|.
double marchenko_contraction(const MarchenkoKernel& F, double x);

// Solves A(x,y) + F(x+y) + int_x^Y A(x,s) F(s+y) ds = 0 for one x on the
// grid of F.  Fixed-point iteration when the contraction estimate is < 1,
// dense solve otherwise; throws NoContraction if both fail.
MarchenkoRow solve_marchenko(const MarchenkoKernel& F, double x);

MarchenkoSolution solve_marchenko_all(const MarchenkoKernel& F, const UniformGrid& x_grid);

// q(x) = -2 d/dx A(x,x), same stencil policy as the Krein route.
Potential marchenko_potential(const MarchenkoSolution& sol);

struct HybridResult {
    Potential q;
    double x0 = 0.0;                   // stitch point from the contraction radius
    double overlap_discrepancy = 0.0;  // sup |q_krein - q_marchenko| on the window
    double overlap_lo = 0.0;
    double overlap_hi = 0.0;
};

// Krein (iterative, x < x0) + Marchenko (x >= x0) with an overlap window
// where both run; x0 is the largest grid point where the kernel operator
// norm stays below 1, clipped to [h, X/2].
HybridResult hybrid_invert(const ComplexFunction& S, const InversionGrids& grids);

}  // namespace scatter

#endif
