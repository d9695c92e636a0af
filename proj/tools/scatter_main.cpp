// Batch front door for the half-line inverse scattering toolkit.
//
// Subcommands:
//   forward    potential preset/CSV -> S(k), delta(k), f(k), bound states
//   invert     S(k) samples -> q(x) by krein | marchenko | gl | hybrid | all
//   roundtrip  forward -> invert -> forward, defect report
//   check      admissibility diagnostics for S(k) samples
//
// Exit codes: 0 ok, 2 ingestion, 3 nonzero index, 4 positivity, 5 convergence.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "scatter/io.hpp"
#include "scatter/pipeline.hpp"

namespace {

using namespace scatter;

struct Options {
    std::string config;
    std::string method_override;
    std::string out_override;
    bool verbose = false;
};

Config load(const Options& opt) {
    Config cfg = load_config(opt.config);
    if (!opt.method_override.empty()) cfg.method = method_from_name(opt.method_override);
    if (!opt.out_override.empty()) cfg.out_dir = opt.out_override;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

Potential load_potential(const Config& cfg) {
    if (!cfg.preset.empty()) return potential_preset(cfg.preset, cfg.grids.x_grid());
    if (!cfg.s_csv.empty()) throw IngestionError("forward needs a potential, not S samples");
    throw IngestionError("config must name a potential preset");
}

int cmd_forward(const Options& opt) {
    const Config cfg = load(opt);
    const Potential q = load_potential(cfg);
    const UniformGrid kg = cfg.grids.k_grid();
    const JostClosure f = jost_function(q, kg);
    const ComplexFunction S = s_matrix(f);
    const RealFunction delta = phase_shift(S);
    const BoundStates bs = bound_states(q);

    write_csv(join(cfg.out_dir, "s_matrix.csv"), S, "k");
    write_csv(join(cfg.out_dir, "jost.csv"), f.f, "k");
    write_csv(join(cfg.out_dir, "phase_shift.csv"), delta, "k", "delta");
    {
        std::ofstream out(join(cfg.out_dir, "bound_states.csv"));
        out << "k_j,s_j\n";
        for (std::size_t j = 0; j < bs.k.size(); ++j) {
            char buf[80];
            std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", bs.k[j], bs.s[j]);
            out << buf;
        }
    }
    if (bs.k.empty()) {
        const RealFunction rho = spectral_density(f, kg);
        write_csv(join(cfg.out_dir, "spectral_density.csv"), rho, "k", "rho_prime");
    }
    if (opt.verbose)
        std::cerr << "forward: " << bs.k.size() << " bound state(s), A0 fit " << f.asymptotic_A0
                  << "\n";
    return 0;
}

ComplexFunction load_s(const Config& cfg, bool verbose) {
    if (cfg.s_csv.empty()) {
        if (!cfg.preset.empty()) {
            // convenience: generate S from a preset potential
            const Potential q = potential_preset(cfg.preset, cfg.grids.x_grid());
            return s_matrix(jost_function(q, cfg.grids.k_grid()));
        }
        throw IngestionError("invert/check needs io.s_matrix_csv or a preset");
    }
    double residual = 0.0;
    ComplexFunction S = read_s_matrix_csv(cfg.s_csv, cfg.grids.k_grid(), &residual);
    if (residual > 1e-6)
        std::cerr << "warning: resampling residual " << residual
                  << " exceeds tolerance; supplied S samples are not well represented on "
                     "the configured grid\n";
    else if (verbose && residual > 0.0)
        std::cerr << "resampled external S data, residual " << residual << "\n";
    return S;
}

int cmd_invert(const Options& opt) {
    const Config cfg = load(opt);
    const ComplexFunction S = load_s(cfg, opt.verbose);
    const InvertResult res = invert_scattering(S, cfg.grids, cfg.method, cfg.tolerances,
                                               cfg.bound_spec, cfg.gl_checkpoints);
    write_csv(join(cfg.out_dir, "q.csv"), res.q.q, "x", "q");
    if (res.gl_checkpoints) {
        std::ofstream out(join(cfg.out_dir, "q_checkpoints.csv"));
        out << "x,q\n";
        for (std::size_t i = 0; i < res.gl_checkpoints->x.size(); ++i) {
            char buf[80];
            std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", res.gl_checkpoints->x[i],
                          res.gl_checkpoints->q[i]);
            out << buf;
        }
    }
    write_report_json(join(cfg.out_dir, "report.json"), res.report);
    if (opt.verbose)
        std::cerr << "invert: index " << res.report.winding_index << ", margin "
                  << res.report.positivity_margin << "\n";
    return 0;
}

int cmd_roundtrip(const Options& opt) {
    const Config cfg = load(opt);
    const Potential q = load_potential(cfg);
    const RoundTripReport rep = roundtrip(q, cfg.grids, cfg.method, cfg.tolerances);
    write_roundtrip_json(join(cfg.out_dir, "roundtrip.json"), rep);
    if (opt.verbose)
        std::cerr << "roundtrip: sup|qhat-q| = " << rep.q_sup_defect << " on [0," << rep.x_report
                  << "], sup|Shat-S| = " << rep.s_sup_defect << "\n";
    return 0;
}

int cmd_check(const Options& opt) {
    const Config cfg = load(opt);
    const ComplexFunction S = load_s(cfg, opt.verbose);
    AdmissibilityReport rep = check_admissibility(S);
    if (rep.index == 0) {
        try {
            const JostClosure f = solve_riemann(S, S.grid);
            const KreinKernel ker = kernel_from_jost(f, cfg.grids.t_grid());
            rep.positivity_margin = ker.symbol_margin;
        } catch (const Error&) {
            // margin stays unset; the report still carries the defects
        }
    }
    write_admissibility_json(join(cfg.out_dir, "admissibility.json"), rep);
    if (opt.verbose)
        std::cerr << "check: index " << rep.index << ", unitarity defect "
                  << rep.unitarity_defect << "\n";
    return 0;
}

int dispatch(int (*fn)(const Options&), const Options& opt) {
    try {
        return fn(opt);
    } catch (const IngestionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonzeroIndex& e) {
        std::cerr << "error: " << e.what()
                  << " (supply bound_states/gamma in the config to reduce the index)\n";
        return 3;
    } catch (const IndexMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SymbolNotPositive& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const NoContraction& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const BlowUp& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-line inverse scattering toolkit"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "JSON config path")->required();
        sub->add_option("--method", opt.method_override,
                        "krein | marchenko | gl | hybrid | all");
        sub->add_option("--out", opt.out_override, "output directory");
        sub->add_flag("--verbose", opt.verbose, "chatty diagnostics on stderr");
    };
    auto* fwd = app.add_subcommand("forward", "potential -> scattering data");
    auto* inv = app.add_subcommand("invert", "S(k) -> q(x)");
    auto* rt = app.add_subcommand("roundtrip", "forward -> invert -> forward");
    auto* chk = app.add_subcommand("check", "admissibility diagnostics");
    for (auto* sub : {fwd, inv, rt, chk}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    if (fwd->parsed()) return dispatch(cmd_forward, opt);
    if (inv->parsed()) return dispatch(cmd_invert, opt);
    if (rt->parsed()) return dispatch(cmd_roundtrip, opt);
    if (chk->parsed()) return dispatch(cmd_check, opt);
    return 1;
}
