#ifndef SCATTER_IO_HPP
#define SCATTER_IO_HPP

#include <optional>
#include <string>

#include "scatter/blaschke.hpp"
#include "scatter/forward.hpp"
#include "scatter/grid.hpp"
#include "scatter/pipeline.hpp"

namespace scatter {

// CSV: one header line, then (axis,value) or (axis,re,im) rows, %.12g.
void write_csv(const std::string& path, const RealFunction& f, const std::string& axis_name,
               const std::string& value_name);
void write_csv(const std::string& path, const ComplexFunction& f, const std::string& axis_name);

RealFunction read_real_csv(const std::string& path);

// Reads an S-matrix CSV (axis,re,im); non-uniform abscissae are resampled
// onto the configured grid by natural cubic interpolation.  The resampling
// residual (original samples vs re-interpolated values) is returned so
// callers can warn when it exceeds tolerance.
ComplexFunction read_s_matrix_csv(const std::string& path, const UniformGrid& k_grid,
                                  double* resample_residual = nullptr);

// Builtin potentials: "zero", "exp(a=1)", "well(d=5,w=1)", "bargmann".
Potential potential_preset(const std::string& name, const UniformGrid& x_grid);

struct Config {
    InversionGrids grids;
    Method method = Method::krein;
    Tolerances tolerances;
    std::string preset;   // forward/roundtrip input
    std::string s_csv;    // invert/check input
    std::string out_dir = ".";
    std::optional<BlaschkeSpec> bound_spec;
    std::size_t gl_checkpoints = 25;
};

Config load_config(const std::string& path);

void write_report_json(const std::string& path, const PipelineReport& report);
void write_roundtrip_json(const std::string& path, const RoundTripReport& report);
void write_admissibility_json(const std::string& path, const AdmissibilityReport& report);

}  // namespace scatter

#endif
