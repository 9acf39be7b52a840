#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptsim/io.hpp"

using namespace ptsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "ptsim_io_test";
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

const char* kPtConfig = R"({
  "initial": {"type": "bell_phi_plus"},
  "evolution": {"type": "pt", "s": 1.0, "alpha": 0.7853981633974483},
  "t_max": 6.283185307179586,
  "n_samples": 101,
  "label": "demo"
})";

} // namespace

TEST_CASE("parse_config reads every field") {
    const ScenarioConfig cfg = parse_config(kPtConfig);
    CHECK(std::holds_alternative<BellInitial>(cfg.initial));
    const auto* pt = std::get_if<PT>(&cfg.evolution);
    REQUIRE(pt != nullptr);
    CHECK(pt->params.alpha() == doctest::Approx(M_PI / 4.0));
    CHECK(pt->params.s() == 1.0);
    CHECK(cfg.t_max == doctest::Approx(2.0 * M_PI));
    CHECK(cfg.n_samples == 101);
    CHECK(cfg.label == "demo");
    CHECK(cfg.metrics.size() == 6); // defaults to all metrics
    CHECK(cfg.use_rk4 == false);
}

TEST_CASE("parse_config handles optional fields") {
    const ScenarioConfig cfg = parse_config(R"({
      "initial": {"type": "damped", "t_c": 1.6, "gamma": 1.0},
      "evolution": {"type": "nonpt", "s": 1.0, "alpha": 0.5, "epsilon": 0.01},
      "t_max": 3.0, "dt": 5e-4, "use_rk4": true,
      "metrics": ["concurrence", "s3"]
    })");
    const auto* di = std::get_if<DampedInitial>(&cfg.initial);
    REQUIRE(di != nullptr);
    CHECK(di->t_c == 1.6);
    const auto* np = std::get_if<NonPT>(&cfg.evolution);
    REQUIRE(np != nullptr);
    CHECK(np->epsilon == 0.01);
    CHECK(cfg.dt == 5e-4);
    CHECK(cfg.use_rk4 == true);
    CHECK(cfg.metrics == std::set<Metric>{Metric::Concurrence, Metric::S3});
}

TEST_CASE("parse_config reports malformed input as usage errors") {
    CHECK_THROWS_AS(parse_config("{not json"), UsageError);
    CHECK_THROWS_AS(parse_config("[1,2]"), UsageError);
    CHECK_THROWS_AS(parse_config(R"({"evolution": {"type": "rabi", "g": 1}, "t_max": 1})"),
                    UsageError); // missing initial
    CHECK_THROWS_AS(parse_config(R"({"initial": {"type": "bell_phi_plus"}, "t_max": 1})"),
                    UsageError); // missing evolution
    CHECK_THROWS_AS(
        parse_config(
            R"({"initial": {"type": "pure"}, "evolution": {"type": "rabi", "g": 1}, "t_max": 1})"),
        UsageError); // unknown initial type
    CHECK_THROWS_AS(
        parse_config(
            R"({"initial": {"type": "bell_phi_plus"}, "evolution": {"type": "pt", "s": 1}, "t_max": 1})"),
        UsageError); // pt without alpha
    CHECK_THROWS_AS(
        parse_config(
            R"({"initial": {"type": "bell_phi_plus"}, "evolution": {"type": "rabi", "g": 1}, "t_max": 1, "n_samples": 2.5})"),
        UsageError);
    CHECK_THROWS_AS(
        parse_config(
            R"({"initial": {"type": "bell_phi_plus"}, "evolution": {"type": "rabi", "g": 1}, "t_max": 1, "metrics": ["entropy"]})"),
        UsageError);
}

TEST_CASE("parameter invariants surface as validation errors") {
    // alpha outside the unbroken phase
    CHECK_THROWS_AS(
        parse_config(
            R"({"initial": {"type": "bell_phi_plus"}, "evolution": {"type": "pt", "s": 1, "alpha": 1.6}, "t_max": 1})"),
        ValidationError);
    CHECK_THROWS_AS(
        parse_config(
            R"({"initial": {"type": "bell_phi_plus"}, "evolution": {"type": "amplitude_damping", "gamma": -1}, "t_max": 1})"),
        ValidationError);
}

TEST_CASE("apply_overrides") {
    ScenarioConfig cfg = parse_config(kPtConfig);
    Overrides ov;
    ov.alpha = 0.3;
    ov.t_max = 1.5;
    ov.n_samples = 11;
    ov.dt = 1e-4;
    apply_overrides(cfg, ov);
    CHECK(std::get<PT>(cfg.evolution).params.alpha() == 0.3);
    CHECK(std::get<PT>(cfg.evolution).params.s() == 1.0);
    CHECK(cfg.t_max == 1.5);
    CHECK(cfg.n_samples == 11);
    CHECK(cfg.dt == 1e-4);

    // overrides are rejected when the target parameter does not exist
    ScenarioConfig rabi = cfg;
    rabi.evolution = Rabi{1.0};
    Overrides bad;
    bad.alpha = 0.2;
    CHECK_THROWS_AS(apply_overrides(rabi, bad), UsageError);
    bad = Overrides{};
    bad.epsilon = 0.01;
    CHECK_THROWS_AS(apply_overrides(cfg, bad), UsageError);
    bad = Overrides{};
    bad.gamma = 2.0;
    CHECK_THROWS_AS(apply_overrides(cfg, bad), UsageError);

    // --gamma reaches a damped initial state
    cfg.initial = DampedInitial{0.5, 1.0};
    apply_overrides(cfg, bad);
    CHECK(std::get<DampedInitial>(cfg.initial).gamma == 2.0);

    // out-of-range override values still hit the parameter invariants
    bad = Overrides{};
    bad.alpha = 1.6;
    CHECK_THROWS_AS(apply_overrides(cfg, bad), ValidationError);
}

TEST_CASE("format_sig12 keeps 12 significant digits") {
    CHECK(format_sig12(0.5) == "0.5");
    CHECK(format_sig12(M_PI) == "3.14159265359");
    CHECK(format_sig12(1.0 / 3.0) == "0.333333333333");
    CHECK(format_sig12(0.0) == "0");
    CHECK(format_sig12(1e-13) == "1e-13");
}

TEST_CASE("series_csv_text layout") {
    std::vector<MetricsRecord> recs(2);
    recs[0].t_prime = 0.0;
    recs[0].trace_raw = 1.0;
    recs[0].concurrence = 1.0 / 3.0;
    recs[1].t_prime = M_PI;
    recs[1].purity = 0.25;
    const std::string csv = series_csv_text(recs);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t_prime,trace_raw,concurrence,bell_max,s2,s3,purity");
    std::getline(lines, line);
    CHECK(line == "0,1,0.333333333333,,,,");
    std::getline(lines, line);
    CHECK(line == "3.14159265359,,,,,,0.25");
    CHECK(!std::getline(lines, line));
}

TEST_CASE("state save/load round trip preserves metrics") {
    const DensityMatrix st = damped_state(1.6, 1.0);
    const fs::path path = temp_dir() / "state_roundtrip.json";
    save_state(st, "roundtrip", path.string());
    const LoadedState back = load_state(path.string());
    CHECK(back.label == "roundtrip");
    CHECK(max_abs_diff(back.state.matrix(), st.matrix()) < 1e-15);
    CHECK(concurrence(back.state) == doctest::Approx(concurrence(st)).epsilon(1e-12));
    CHECK(bell_max(back.state) == doctest::Approx(bell_max(st)).epsilon(1e-12));
}

TEST_CASE("load_state validation") {
    const fs::path bad = temp_dir() / "bad_state.json";
    write_file(bad, "{\"label\": \"x\"}");
    CHECK_THROWS_AS(load_state(bad.string()), UsageError);
    write_file(bad, "{\"matrix\": [[1,2],[3,4]]}");
    CHECK_THROWS_AS(load_state(bad.string()), UsageError);
    // valid shape but not a density matrix (non-Hermitian)
    write_file(bad, R"({"matrix": [
      [[1,0],[1,0],[0,0],[0,0]],
      [[0,0],[0,0],[0,0],[0,0]],
      [[0,0],[0,0],[0,0],[0,0]],
      [[0,0],[0,0],[0,0],[0,0]]]})");
    CHECK_THROWS_AS(load_state(bad.string()), ValidationError);
    CHECK_THROWS_AS(load_state((temp_dir() / "no_such_file.json").string()), UsageError);
}

TEST_CASE("write_file_atomic leaves no temp file behind") {
    const fs::path path = temp_dir() / "atomic.txt";
    write_file_atomic(path.string(), "payload\n");
    CHECK(read_file(path) == "payload\n");
    CHECK(!fs::exists(path.string() + ".tmp"));
    write_file_atomic(path.string(), "second\n");
    CHECK(read_file(path) == "second\n");
}

TEST_CASE("cmd_simulate writes a deterministic CSV") {
    const fs::path cfg_path = temp_dir() / "sim_config.json";
    write_file(cfg_path, kPtConfig);
    const fs::path out1 = temp_dir() / "sim_out1.csv";
    const fs::path out2 = temp_dir() / "sim_out2.csv";
    std::ostringstream err;
    CHECK(cmd_simulate(cfg_path.string(), out1.string(), Overrides{}, err) == 0);
    CHECK(cmd_simulate(cfg_path.string(), out2.string(), Overrides{}, err) == 0);
    CHECK(err.str().empty());

    const std::string text = read_file(out1);
    CHECK(text == read_file(out2));
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "t_prime,trace_raw,concurrence,bell_max,s2,s3,purity");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 101);
}

TEST_CASE("cmd_simulate exit codes") {
    std::ostringstream err;
    const fs::path out = temp_dir() / "never.csv";
    CHECK(cmd_simulate((temp_dir() / "missing.json").string(), out.string(), Overrides{},
                       err) == 2);
    CHECK(!err.str().empty());

    const fs::path cfg_path = temp_dir() / "bad_alpha.json";
    write_file(cfg_path, R"({
      "initial": {"type": "bell_phi_plus"},
      "evolution": {"type": "pt", "s": 1.0, "alpha": 1.6},
      "t_max": 1.0
    })");
    err.str("");
    CHECK(cmd_simulate(cfg_path.string(), out.string(), Overrides{}, err) == 3);
    CHECK(err.str().find("alpha") != std::string::npos);
}

TEST_CASE("cmd_figure writes per-curve CSVs and a manifest") {
    const fs::path dir = temp_dir() / "fig2_out";
    std::ostringstream err;
    CHECK(cmd_figure("fig2", dir.string(), err) == 0);
    CHECK(fs::exists(dir / "fig2_rabi.csv"));
    CHECK(fs::exists(dir / "fig2_pt.csv"));
    const std::string manifest = read_file(dir / "fig2_manifest.json");
    CHECK(manifest.find("\"alpha\"") != std::string::npos);
    CHECK(manifest.find("fig2_pt.csv") != std::string::npos);

    CHECK(cmd_figure("fig7", (temp_dir() / "never").string(), err) == 2);
}

TEST_CASE("cmd_metrics presets and files") {
    std::ostringstream out, err;
    CHECK(cmd_metrics("bell", out, err) == 0);
    CHECK(out.str().find("concurrence: 1") != std::string::npos);
    CHECK(out.str().find("violates CHSH bound 2") != std::string::npos);

    out.str("");
    CHECK(cmd_metrics("is3", out, err) == 0);
    CHECK(out.str().find("concurrence: 0.449328964") != std::string::npos);
    CHECK(out.str().find("within CHSH bound 2") != std::string::npos);

    const fs::path state_path = temp_dir() / "metrics_state.json";
    save_state(bell_phi_plus(), "saved", state_path.string());
    out.str("");
    CHECK(cmd_metrics(state_path.string(), out, err) == 0);
    CHECK(out.str().find("state: saved") != std::string::npos);

    CHECK(cmd_metrics((temp_dir() / "nope.json").string(), out, err) == 2);
}
