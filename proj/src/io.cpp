#include "ptsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ptsim {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw UsageError("malformed JSON in " + what);
    return j;
}

double get_number(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw UsageError(ctx + ": missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

ComplexMatrix parse_matrix(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 4)
        throw UsageError(ctx + ": 'matrix' must be an array of 4 rows");
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != 4)
            throw UsageError(ctx + ": row " + std::to_string(i) + " must hold 4 entries");
        for (int k = 0; k < 4; ++k) {
            const json& e = row[k];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw UsageError(ctx + ": entry (" + std::to_string(i) + "," +
                                 std::to_string(k) + ") must be a [re, im] pair");
            m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.dim(); ++k)
            row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        rows.push_back(row);
    }
    return rows;
}

InitialState parse_initial(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw UsageError("config: 'initial' must be an object with a 'type' string");
    const std::string type = j["type"].get<std::string>();
    if (type == "bell_phi_plus") return BellInitial{};
    if (type == "damped")
        return DampedInitial{get_number(j, "t_c", "initial"),
                             get_number(j, "gamma", "initial")};
    if (type == "explicit") {
        if (!j.contains("matrix")) throw UsageError("initial: explicit state needs 'matrix'");
        return ExplicitInitial{parse_matrix(j["matrix"], "initial")};
    }
    throw UsageError("config: unknown initial type '" + type + "'");
}

EvolutionSpec parse_evolution(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw UsageError("config: 'evolution' must be an object with a 'type' string");
    const std::string type = j["type"].get<std::string>();
    if (type == "rabi") return Rabi{get_number(j, "g", "evolution")};
    if (type == "pt")
        return PT{PTParams(get_number(j, "s", "evolution"),
                           get_number(j, "alpha", "evolution"))};
    if (type == "nonpt")
        return NonPT{PTParams(get_number(j, "s", "evolution"),
                              get_number(j, "alpha", "evolution")),
                     get_number(j, "epsilon", "evolution")};
    if (type == "amplitude_damping") {
        const double gamma = get_number(j, "gamma", "evolution");
        if (!(gamma > 0.0)) throw ValidationError("evolution: gamma must be positive");
        return AmplitudeDamping{gamma};
    }
    throw UsageError("config: unknown evolution type '" + type + "'");
}

const std::vector<std::pair<Metric, std::string>>& metric_names() {
    static const std::vector<std::pair<Metric, std::string>> names = {
        {Metric::Concurrence, "concurrence"}, {Metric::BellMax, "bell_max"},
        {Metric::S2, "s2"},                   {Metric::S3, "s3"},
        {Metric::Purity, "purity"},           {Metric::TraceRaw, "trace_raw"}};
    return names;
}

Metric metric_from_name(const std::string& name) {
    for (const auto& [m, n] : metric_names())
        if (n == name) return m;
    throw UsageError("config: unknown metric '" + name + "'");
}

} // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    const json j = parse_json(json_text, "config");
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    ScenarioConfig cfg;
    if (!j.contains("initial")) throw UsageError("config: missing 'initial'");
    cfg.initial = parse_initial(j["initial"]);
    if (!j.contains("evolution")) throw UsageError("config: missing 'evolution'");
    cfg.evolution = parse_evolution(j["evolution"]);
    cfg.t_max = get_number(j, "t_max", "config");
    if (j.contains("n_samples")) {
        if (!j["n_samples"].is_number_integer())
            throw UsageError("config: 'n_samples' must be an integer");
        cfg.n_samples = j["n_samples"].get<int>();
    }
    if (j.contains("dt")) cfg.dt = get_number(j, "dt", "config");
    if (j.contains("use_rk4")) {
        if (!j["use_rk4"].is_boolean()) throw UsageError("config: 'use_rk4' must be boolean");
        cfg.use_rk4 = j["use_rk4"].get<bool>();
    }
    if (j.contains("label")) cfg.label = j["label"].get<std::string>();
    if (j.contains("metrics")) {
        if (!j["metrics"].is_array()) throw UsageError("config: 'metrics' must be an array");
        cfg.metrics.clear();
        for (const auto& m : j["metrics"]) {
            if (!m.is_string()) throw UsageError("config: metric names must be strings");
            cfg.metrics.insert(metric_from_name(m.get<std::string>()));
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_overrides(ScenarioConfig& cfg, const Overrides& ov) {
    if (ov.alpha || ov.s) {
        PTParams* cur = nullptr;
        if (auto* pt = std::get_if<PT>(&cfg.evolution)) cur = &pt->params;
        if (auto* np = std::get_if<NonPT>(&cfg.evolution)) cur = &np->params;
        if (!cur)
            throw UsageError("--alpha/--s apply only to pt or nonpt evolutions");
        *cur = PTParams(ov.s.value_or(cur->s()), ov.alpha.value_or(cur->alpha()));
    }
    if (ov.epsilon) {
        auto* np = std::get_if<NonPT>(&cfg.evolution);
        if (!np) throw UsageError("--epsilon applies only to nonpt evolutions");
        np->epsilon = *ov.epsilon;
    }
    if (ov.gamma) {
        bool applied = false;
        if (auto* ad = std::get_if<AmplitudeDamping>(&cfg.evolution)) {
            ad->gamma = *ov.gamma;
            applied = true;
        }
        if (auto* di = std::get_if<DampedInitial>(&cfg.initial)) {
            di->gamma = *ov.gamma;
            applied = true;
        }
        if (!applied)
            throw UsageError(
                "--gamma applies only to amplitude_damping evolutions or damped initial states");
    }
    if (ov.t_max) cfg.t_max = *ov.t_max;
    if (ov.dt) cfg.dt = *ov.dt;
    if (ov.n_samples) cfg.n_samples = *ov.n_samples;
}

LoadedState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open state file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const json j = parse_json(buf.str(), "state file");
    if (!j.is_object() || !j.contains("matrix"))
        throw UsageError("state file: missing 'matrix' field");
    const ComplexMatrix m = parse_matrix(j["matrix"], "state file");
    std::string label = j.value("label", std::string{});
    return {DensityMatrix(m), label};
}

void save_state(const DensityMatrix& state, const std::string& label,
                const std::string& path) {
    json j;
    if (!label.empty()) j["label"] = label;
    j["matrix"] = matrix_to_json(state.matrix());
    write_file_atomic(path, j.dump(2) + "\n");
}

std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string series_csv_text(const std::vector<MetricsRecord>& records) {
    std::string out = "t_prime,trace_raw,concurrence,bell_max,s2,s3,purity\n";
    auto cell = [&](const std::optional<double>& v) {
        out += ',';
        if (v) out += format_sig12(*v);
    };
    for (const MetricsRecord& r : records) {
        out += format_sig12(r.t_prime);
        cell(r.trace_raw);
        cell(r.concurrence);
        cell(r.bell_max);
        cell(r.s2);
        cell(r.s3);
        cell(r.purity);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UsageError("cannot write to '" + tmp.string() + "'");
        out << content;
        if (!out) throw UsageError("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

namespace {

int guard(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const UsageError& e) {
        err << "error (usage/config): " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error (validation): " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        err << "error (numerical): " << e.what() << "\n";
        return 4;
    }
}

struct EvolutionParams {
    std::optional<double> alpha, s, epsilon, gamma, t_c;
};

EvolutionParams describe(const ScenarioConfig& cfg) {
    EvolutionParams p;
    if (const auto* pt = std::get_if<PT>(&cfg.evolution)) {
        p.alpha = pt->params.alpha();
        p.s = pt->params.s();
    } else if (const auto* np = std::get_if<NonPT>(&cfg.evolution)) {
        p.alpha = np->params.alpha();
        p.s = np->params.s();
        p.epsilon = np->epsilon;
    } else if (const auto* ad = std::get_if<AmplitudeDamping>(&cfg.evolution)) {
        p.gamma = ad->gamma;
    }
    if (const auto* di = std::get_if<DampedInitial>(&cfg.initial)) {
        p.t_c = di->t_c;
        p.gamma = di->gamma;
    }
    return p;
}

void print_state_report(const DensityMatrix& state, const std::string& label,
                        std::ostream& out) {
    const DensityMatrix rho = renormalize(state);
    if (!label.empty()) out << "state: " << label << "\n";
    out << "trace (raw): " << format_sig12(state.trace_real()) << "\n";
    const double c = concurrence(rho);
    const double b = bell_max(rho);
    const double s2 = steering_parameter(rho, 2);
    const double s3 = steering_parameter(rho, 3);
    out << "concurrence: " << format_sig12(c) << "\n";
    out << "bell_max:    " << format_sig12(b) << "  ("
        << (b > 2.0 ? "violates CHSH bound 2" : "within CHSH bound 2") << ")\n";
    out << "S2:          " << format_sig12(s2) << "  ("
        << (s2 > 1.0 ? "violates steering bound 1" : "within steering bound 1") << ")\n";
    out << "S3:          " << format_sig12(s3) << "  ("
        << (s3 > 1.0 ? "violates steering bound 1" : "within steering bound 1") << ")\n";
    out << "purity:      " << format_sig12(purity(rho)) << "\n";
    for (int q : {1, 2}) {
        const ComplexMatrix red = partial_trace(rho.matrix(), q == 1 ? 2 : 1);
        out << "reduced qubit-" << q << ":\n";
        for (int i = 0; i < 2; ++i) {
            out << "  [";
            for (int k = 0; k < 2; ++k)
                out << " (" << format_sig12(red(i, k).real()) << ", "
                    << format_sig12(red(i, k).imag()) << ")";
            out << " ]\n";
        }
    }
}

} // namespace

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const Overrides& ov, std::ostream& err) {
    return guard(err, [&] {
        ScenarioConfig cfg = load_config(config_path);
        apply_overrides(cfg, ov);
        const auto records = run_scenario(cfg);
        write_file_atomic(out_path, series_csv_text(records));
    });
}

int cmd_figure(const std::string& id, const std::string& out_dir, std::ostream& err) {
    return guard(err, [&] {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const auto cfgs = figure_preset(id);
        json manifest;
        manifest["figure"] = id;
        for (const ScenarioConfig& cfg : cfgs) {
            const auto records = run_scenario(cfg);
            const std::string name = id + "_" + cfg.label + ".csv";
            write_file_atomic((fs::path(out_dir) / name).string(),
                              series_csv_text(records));
            const EvolutionParams p = describe(cfg);
            json entry;
            entry["csv"] = name;
            if (p.alpha) entry["alpha"] = *p.alpha;
            if (p.s) entry["s"] = *p.s;
            if (p.epsilon) entry["epsilon"] = *p.epsilon;
            if (p.gamma) entry["gamma"] = *p.gamma;
            if (p.t_c) entry["t_c"] = *p.t_c;
            if (const auto* rabi = std::get_if<Rabi>(&cfg.evolution)) entry["g"] = rabi->g;
            entry["dt"] = cfg.dt;
            entry["t_max"] = cfg.t_max;
            entry["n_samples"] = cfg.n_samples;
            manifest["curves"].push_back(entry);
        }
        write_file_atomic((fs::path(out_dir) / (id + "_manifest.json")).string(),
                          manifest.dump(2) + "\n");
    });
}

int cmd_metrics(const std::string& path_or_preset, std::ostream& out, std::ostream& err) {
    return guard(err, [&] {
        std::optional<LoadedState> loaded;
        if (path_or_preset == "bell") {
            loaded = LoadedState{bell_phi_plus(), "bell_phi_plus"};
        } else if (path_or_preset == "mixed") {
            loaded = LoadedState{DensityMatrix(ComplexMatrix::identity(4) * 0.25),
                                 "maximally_mixed"};
        } else if (path_or_preset == "is1" || path_or_preset == "is2" ||
                   path_or_preset == "is3") {
            const double t_c =
                path_or_preset == "is1" ? 0.5 : (path_or_preset == "is2" ? 1.0 : 1.6);
            loaded = LoadedState{damped_state(t_c, 1.0),
                                 "damped_bell(t_c=" + format_sig12(t_c) + ", gamma=1)"};
        } else {
            loaded = load_state(path_or_preset);
        }
        print_state_report(loaded->state, loaded->label, out);
    });
}

} // namespace ptsim
