#include "scatter/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scatter/numeric.hpp"

namespace scatter {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (...) {
                numeric = false;
                break;
            }
        }
        if (first && !numeric) {  // header line
            first = false;
            continue;
        }
        first = false;
        if (!numeric || row.size() < 2)
            throw IngestionError("malformed CSV row in " + path + ": " + line);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IngestionError("no data rows in " + path);
    return rows;
}

}  // namespace

void write_csv(const std::string& path, const RealFunction& f, const std::string& axis_name,
               const std::string& value_name) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write " + path);
    out << axis_name << "," << value_name << "\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << fmt(f.grid.node(i)) << "," << fmt(f.values[i]) << "\n";
}

void write_csv(const std::string& path, const ComplexFunction& f, const std::string& axis_name) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write " + path);
    out << axis_name << ",re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << fmt(f.grid.node(i)) << "," << fmt(f.values[i].real()) << ","
            << fmt(f.values[i].imag()) << "\n";
}

RealFunction read_real_csv(const std::string& path) {
    const auto rows = read_rows(path);
    const std::size_t n = rows.size();
    if (n < 2) throw IngestionError(path + ": need at least two samples");
    const double start = rows[0][0];
    const double step = (rows[n - 1][0] - start) / static_cast<double>(n - 1);
    if (!(step > 0)) throw IngestionError(path + ": axis must increase");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(rows[i][0] - (start + step * static_cast<double>(i))) > 1e-6 * step)
            throw IngestionError(path + ": potential samples must be uniform");
    RealFunction f;
    f.grid = UniformGrid(start, step, n);
    f.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.values[i] = rows[i][1];
    return f;
}

ComplexFunction read_s_matrix_csv(const std::string& path, const UniformGrid& k_grid,
                                  double* resample_residual) {
    const auto rows = read_rows(path);
    std::vector<double> ks, re, im;
    for (const auto& r : rows) {
        if (r.size() < 3) throw IngestionError(path + ": S-matrix rows need k,re,im");
        ks.push_back(r[0]);
        re.push_back(r[1]);
        im.push_back(r[2]);
    }
    for (std::size_t i = 1; i < ks.size(); ++i)
        if (!(ks[i] > ks[i - 1])) throw IngestionError(path + ": k must increase");

    // Exact-grid fast path.
    bool exact = ks.size() == k_grid.count;
    if (exact)
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (std::abs(ks[i] - k_grid.node(i)) > 1e-9 * k_grid.step) {
                exact = false;
                break;
            }
    ComplexFunction S;
    S.grid = k_grid;
    S.values.assign(k_grid.count, cplx{});
    if (exact) {
        for (std::size_t i = 0; i < ks.size(); ++i) S.values[i] = cplx(re[i], im[i]);
        if (resample_residual) *resample_residual = 0.0;
        return S;
    }

    if (ks.front() > k_grid.start + 1e-9 || ks.back() < k_grid.back() - 1e-9)
        throw IngestionError(path + ": samples do not cover the configured k grid");
    CubicSpline sre(ks, re), sim(ks, im);
    for (std::size_t i = 0; i < k_grid.count; ++i)
        S.values[i] = cplx(sre(k_grid.node(i)), sim(k_grid.node(i)));
    if (resample_residual) {
        // round trip the resampled values back onto the original abscissae
        std::vector<double> gre(k_grid.count), gim(k_grid.count);
        for (std::size_t i = 0; i < k_grid.count; ++i) {
            gre[i] = S.values[i].real();
            gim[i] = S.values[i].imag();
        }
        CubicSpline rre(k_grid.nodes(), gre), rim(k_grid.nodes(), gim);
        double worst = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i)
            worst = std::max(worst, std::abs(cplx(rre(ks[i]), rim(ks[i])) - cplx(re[i], im[i])));
        *resample_residual = worst;
    }
    return S;
}

namespace {

// "name(a=1,b=2)" -> name + key/value map
void parse_preset(const std::string& s, std::string& name,
                  std::vector<std::pair<std::string, double>>& kv) {
    const auto lp = s.find('(');
    if (lp == std::string::npos) {
        name = s;
        return;
    }
    name = s.substr(0, lp);
    const auto rp = s.rfind(')');
    if (rp == std::string::npos || rp < lp) throw IngestionError("bad preset: " + s);
    std::stringstream ss(s.substr(lp + 1, rp - lp - 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw IngestionError("bad preset parameter: " + item);
        kv.emplace_back(item.substr(0, eq), std::stod(item.substr(eq + 1)));
    }
}

double kv_get(const std::vector<std::pair<std::string, double>>& kv, const std::string& key,
              double def) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    return def;
}

}  // namespace

Potential potential_preset(const std::string& spec, const UniformGrid& x_grid) {
    std::string name;
    std::vector<std::pair<std::string, double>> kv;
    parse_preset(spec, name, kv);
    RealFunction q;
    q.grid = x_grid;
    q.values.assign(x_grid.count, 0.0);
    if (name == "zero") {
        // all zeros
    } else if (name == "exp") {
        const double a = kv_get(kv, "a", 1.0);
        const double c = kv_get(kv, "c", 1.0);
        for (std::size_t i = 0; i < x_grid.count; ++i)
            q.values[i] = c * std::exp(-a * x_grid.node(i));
    } else if (name == "well") {
        const double d = kv_get(kv, "d", 5.0);
        const double w = kv_get(kv, "w", 1.0);
        for (std::size_t i = 0; i < x_grid.count; ++i)
            q.values[i] = (x_grid.node(i) <= w) ? -d : 0.0;
    } else if (name == "bargmann") {
        // rational Jost function (k+2i)/(k+i)
        for (std::size_t i = 0; i < x_grid.count; ++i) {
            const double u = std::exp(-2.0 * x_grid.node(i));
            q.values[i] = 24.0 * u / ((3.0 - u) * (3.0 - u));
        }
    } else {
        throw IngestionError("unknown potential preset: " + spec);
    }
    return Potential(std::move(q));
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IngestionError(std::string("config parse error: ") + e.what());
    }
    Config cfg;
    if (j.contains("grids")) {
        const auto& g = j["grids"];
        cfg.grids.k_max = g.value("k_max", cfg.grids.k_max);
        cfg.grids.k_step = g.value("k_step", cfg.grids.k_step);
        cfg.grids.x_max = g.value("x_max", cfg.grids.x_max);
        cfg.grids.x_step = g.value("x_step", cfg.grids.x_step);
        cfg.grids.t_max = g.value("t_max", 2.0 * cfg.grids.x_max);
        cfg.grids.t_step = g.value("t_step", 2.0 * cfg.grids.x_step);
    }
    try {
        cfg.grids.validate();
    } catch (const Error& e) {
        throw IngestionError(std::string("config: ") + e.what());
    }
    cfg.method = method_from_name(j.value("method", "krein"));
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        cfg.tolerances.positivity_floor = t.value("positivity_floor", 1e-6);
        cfg.tolerances.unitarity = t.value("unitarity", 1e-4);
        cfg.tolerances.cross_method = t.value("cross_method", 1e-3);
        cfg.tolerances.residual = t.value("residual", 1e-8);
        cfg.tolerances.smooth_amplitude = t.value("smooth_amplitude", false);
    }
    cfg.preset = j.value("preset", "");
    if (j.contains("io")) {
        cfg.s_csv = j["io"].value("s_matrix_csv", "");
        cfg.out_dir = j["io"].value("out_dir", ".");
    }
    if (j.contains("bound_states")) {
        BlaschkeSpec spec;
        spec.bound_ks = j["bound_states"].get<std::vector<double>>();
        if (j.contains("gamma")) spec.gamma = j["gamma"].get<double>();
        cfg.bound_spec = spec;
    }
    cfg.gl_checkpoints = j.value("gl_checkpoints", std::size_t{25});
    return cfg;
}

void write_report_json(const std::string& path, const PipelineReport& rep) {
    nlohmann::json j;
    j["winding_index"] = rep.winding_index;
    j["unitarity_defect"] = rep.unitarity_defect;
    j["positivity_margin"] = rep.positivity_margin;
    j["riemann_jump_residual"] = rep.riemann_jump_residual;
    j["gamma_residual"] = rep.gamma_residual;
    j["cross_formula_gap"] = rep.cross_formula_gap;
    j["marchenko_residual"] = rep.marchenko_residual;
    j["overlap_discrepancy"] = rep.overlap_discrepancy;
    j["hybrid_x0"] = rep.hybrid_x0;
    j["cross_method"] = rep.cross_method;
    j["notes"] = rep.notes;
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_roundtrip_json(const std::string& path, const RoundTripReport& rep) {
    nlohmann::json j;
    j["q_sup_defect"] = rep.q_sup_defect;
    j["q_l1_defect"] = rep.q_l1_defect;
    j["s_sup_defect"] = rep.s_sup_defect;
    j["x_report"] = rep.x_report;
    j["winding_index"] = rep.invert_report.winding_index;
    j["positivity_margin"] = rep.invert_report.positivity_margin;
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_admissibility_json(const std::string& path, const AdmissibilityReport& rep) {
    nlohmann::json j;
    j["unitarity_defect"] = rep.unitarity_defect;
    j["index"] = rep.index;
    j["F_sup"] = rep.F_sup;
    j["F_l1"] = rep.F_l1;
    j["xFprime_l1"] = rep.xFprime_l1;
    if (rep.positivity_margin) j["positivity_margin"] = *rep.positivity_margin;
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace scatter
