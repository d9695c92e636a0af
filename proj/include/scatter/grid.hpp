#ifndef SCATTER_GRID_HPP
#define SCATTER_GRID_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "scatter/errors.hpp"

namespace scatter {

using cplx = std::complex<double>;

// Uniform grid start + i*step, i = 0..count-1.  Nodes are always computed
// from the formula, never accumulated, so there is no drift.
struct UniformGrid {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 2;

    UniformGrid() = default;
    UniformGrid(double start_, double step_, std::size_t count_)
        : start(start_), step(step_), count(count_) {
        if (!(step > 0.0)) throw Error("UniformGrid: step must be positive");
        if (count < 2) throw Error("UniformGrid: need at least two nodes");
    }

    double node(std::size_t i) const { return start + static_cast<double>(i) * step; }
    double back() const { return node(count - 1); }
    double length() const { return step * static_cast<double>(count - 1); }

    std::vector<double> nodes() const {
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = node(i);
        return out;
    }

    bool operator==(const UniformGrid&) const = default;
};

// Asymptotic model for a sampled function beyond its grid:
// values ~ coefficient * k^-rate.
struct TailDecay {
    cplx coefficient{0.0, 0.0};
    double rate = 1.0;
};

template <class T>
struct SampledFunction {
    UniformGrid grid;
    std::vector<T> values;
    std::optional<TailDecay> tail;

    SampledFunction() = default;
    SampledFunction(UniformGrid g, std::vector<T> v, std::optional<TailDecay> t = std::nullopt)
        : grid(g), values(std::move(v)), tail(t) {
        if (values.size() != grid.count)
            throw Error("SampledFunction: value count does not match grid");
        if (tail && !(tail->rate > 0.0))
            throw Error("SampledFunction: tail rate must be positive");
    }

    std::size_t size() const { return values.size(); }
};

using RealFunction = SampledFunction<double>;
using ComplexFunction = SampledFunction<cplx>;

// The grid configuration shared by the inversion pipelines.  The kernel
// H(t) lives on t in [0, 2*x_max] with step 2*x_step so that the corner
// trace of the Toeplitz family lands exactly on the q(x) output grid.
struct InversionGrids {
    double k_max = 40.0;
    double k_step = 0.02;
    double x_max = 10.0;
    double x_step = 1.0 / 64.0;
    double t_max = 20.0;
    double t_step = 1.0 / 32.0;

    UniformGrid k_grid() const {
        auto n = static_cast<std::size_t>(k_max / k_step + 0.5);
        return UniformGrid(k_step, k_step, n);
    }
    UniformGrid x_grid() const {
        auto n = static_cast<std::size_t>(x_max / x_step + 0.5) + 1;
        return UniformGrid(0.0, x_step, n);
    }
    UniformGrid t_grid() const {
        auto n = static_cast<std::size_t>(t_max / t_step + 0.5) + 1;
        return UniformGrid(0.0, t_step, n);
    }
    void validate() const {
        if (k_step <= 0 || x_step <= 0 || t_step <= 0)
            throw Error("grids: steps must be positive");
        if (std::abs(t_step - 2.0 * x_step) > 1e-12 * t_step)
            throw Error("grids: t_step must equal 2*x_step");
        if (t_max + 1e-12 < 2.0 * x_max)
            throw Error("grids: t_max must cover 2*x_max");
    }
};

}  // namespace scatter

#endif
