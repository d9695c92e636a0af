#ifndef SCATTER_PIPELINE_HPP
#define SCATTER_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scatter/blaschke.hpp"
#include "scatter/forward.hpp"
#include "scatter/gelfand_levitan.hpp"
#include "scatter/grid.hpp"
#include "scatter/krein_inversion.hpp"
#include "scatter/marchenko.hpp"

namespace scatter {

enum class Method { krein, marchenko, gelfand_levitan, hybrid, all };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

struct Tolerances {
    double positivity_floor = 1e-6;  // abort below this symbol margin
    double unitarity = 1e-4;
    double cross_method = 1e-3;
    double residual = 1e-8;
    bool smooth_amplitude = false;
};

struct PipelineReport {
    int winding_index = 0;
    double unitarity_defect = 0.0;
    double positivity_margin = 0.0;
    double riemann_jump_residual = 0.0;
    double gamma_residual = 0.0;      // residual of the largest Toeplitz solve
    double cross_formula_gap = 0.0;   // A-route vs derivative-route q
    double marchenko_residual = 0.0;
    double overlap_discrepancy = 0.0;  // hybrid only
    double hybrid_x0 = 0.0;
    std::map<std::string, double> cross_method;
    std::vector<std::string> notes;
};

struct InvertResult {
    Potential q;
    PipelineReport report;
    std::optional<GlPotential> gl_checkpoints;
};

// Full inversion per the four-step chain (factorize, kernel, Toeplitz
// family, differentiate), with Marchenko / Gelfand-Levitan / hybrid as
// alternatives.  A nonzero winding index requires a BlaschkeSpec; the
// result is then the potential of the reduced (index-zero) data.
InvertResult invert_scattering(const ComplexFunction& S, const InversionGrids& grids,
                               Method method, const Tolerances& tol = {},
                               const std::optional<BlaschkeSpec>& spec = std::nullopt,
                               std::size_t gl_checkpoint_count = 25);

struct RoundTripReport {
    double q_sup_defect = 0.0;  // sup |qhat - q| on [0, x_report]
    double q_l1_defect = 0.0;
    double s_sup_defect = 0.0;  // sup |Shat - S|
    double x_report = 0.0;
    PipelineReport invert_report;
};

// forward -> invert -> forward; defects of the reconstructed potential and
// of the regenerated S-matrix.
RoundTripReport roundtrip(const Potential& q, const InversionGrids& grids, Method method,
                          const Tolerances& tol = {}, double x_report = -1.0);

}  // namespace scatter

#endif
