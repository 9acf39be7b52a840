#ifndef PTSIM_IO_HPP
#define PTSIM_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "ptsim/scenarios.hpp"

namespace ptsim {

/// CLI overrides; set fields win over config-file values.
struct Overrides {
    std::optional<double> alpha, s, epsilon, gamma, t_max, dt;
    std::optional<int> n_samples;
};

ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& json_text);
void apply_overrides(ScenarioConfig& cfg, const Overrides& ov);

struct LoadedState {
    DensityMatrix state;
    std::string label;
};

/// State files hold a "matrix" of nested [re, im] pairs and an optional
/// "label". Validation failures name the violated invariant.
LoadedState load_state(const std::string& path);
void save_state(const DensityMatrix& state, const std::string& label,
                const std::string& path);

std::string format_sig12(double v);
std::string series_csv_text(const std::vector<MetricsRecord>& records);
/// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const Overrides& ov, std::ostream& err);
int cmd_figure(const std::string& id, const std::string& out_dir, std::ostream& err);
int cmd_metrics(const std::string& path_or_preset, std::ostream& out, std::ostream& err);

} // namespace ptsim

#endif
