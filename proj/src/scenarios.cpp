#include "ptsim/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace ptsim {

namespace {

// Conversion from the reported time axis to natural time: PT/NonPT runs are
// reported in t' = delta_e * t (the NonPT axis reuses delta_e of the
// epsilon = 0 Hamiltonian).
double natural_time_factor(const EvolutionSpec& spec) {
    if (const auto* pt = std::get_if<PT>(&spec)) return 1.0 / pt->params.delta_e();
    if (const auto* np = std::get_if<NonPT>(&spec)) return 1.0 / np->params.delta_e();
    return 1.0;
}

// Closed-form propagator on qubit-1 at reported time t_prime, where one
// exists (everything except amplitude damping).
std::optional<ComplexMatrix> propagator_2x2(const EvolutionSpec& spec, double t_prime) {
    if (const auto* rabi = std::get_if<Rabi>(&spec))
        return mat_exp_2x2_hermitian(rabi_hamiltonian(rabi->g), t_prime);
    if (const auto* pt = std::get_if<PT>(&spec))
        return pt_propagator(pt->params, t_prime);
    if (const auto* np = std::get_if<NonPT>(&spec)) {
        const double t = t_prime / np->params.delta_e();
        return mat_exp_2x2(nonpt_hamiltonian(np->params, np->epsilon) * Complex(0.0, -t));
    }
    return std::nullopt;
}

std::pair<DensityMatrix, double> normalize_with_trace(const ComplexMatrix& raw) {
    const double tr = raw.trace().real();
    return {DensityMatrix(renormalize_raw(raw)), tr};
}

MetricsRecord take_metrics(const DensityMatrix& state, double raw_trace, double t_prime,
                           const std::set<Metric>& which) {
    MetricsRecord rec;
    rec.t_prime = t_prime;
    if (which.count(Metric::TraceRaw)) rec.trace_raw = raw_trace;
    if (which.count(Metric::Concurrence)) rec.concurrence = concurrence(state);
    if (which.count(Metric::BellMax)) rec.bell_max = bell_max(state);
    if (which.count(Metric::S2)) rec.s2 = steering_parameter(state, 2);
    if (which.count(Metric::S3)) rec.s3 = steering_parameter(state, 3);
    if (which.count(Metric::Purity)) rec.purity = purity(state);
    return rec;
}

void validate(const ScenarioConfig& cfg) {
    if (!(cfg.t_max > 0.0)) throw ValidationError("scenario: t_max must be positive");
    if (cfg.n_samples < 2) throw ValidationError("scenario: n_samples must be at least 2");
    if (cfg.metrics.empty()) throw ValidationError("scenario: metric set must be non-empty");
    if (!(cfg.dt > 0.0)) throw ValidationError("scenario: dt must be positive");
}

} // namespace

DensityMatrix bell_phi_plus() {
    ComplexMatrix m(4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return DensityMatrix(m);
}

DensityMatrix prepare_initial(const InitialState& initial) {
    return std::visit(
        [](const auto& s) -> DensityMatrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BellInitial>)
                return bell_phi_plus();
            else if constexpr (std::is_same_v<T, DampedInitial>)
                return damped_state(s.t_c, s.gamma);
            else
                return DensityMatrix(s.mat);
        },
        initial);
}

std::pair<DensityMatrix, double> state_at(const ScenarioConfig& cfg, double t_prime) {
    const DensityMatrix rho0 = prepare_initial(cfg.initial);
    if (t_prime == 0.0) return {rho0, rho0.trace_real()};
    if (!cfg.use_rk4) {
        if (auto u = propagator_2x2(cfg.evolution, t_prime)) {
            const ComplexMatrix u4 = tensor_product(*u, ComplexMatrix::identity(2));
            return normalize_with_trace(u4 * rho0.matrix() * u4.adjoint());
        }
    }
    const double t_nat = t_prime * natural_time_factor(cfg.evolution);
    const DensityMatrix raw = integrate(rho0, cfg.evolution, t_nat,
                                        cfg.dt * natural_time_factor(cfg.evolution));
    return normalize_with_trace(raw.matrix());
}

std::vector<MetricsRecord> run_scenario(const ScenarioConfig& cfg) {
    validate(cfg);
    const DensityMatrix rho0 = prepare_initial(cfg.initial);
    const int n = cfg.n_samples;
    const double step_t_prime = cfg.t_max / (n - 1);
    std::vector<MetricsRecord> out;
    out.reserve(n);

    const bool closed_form =
        !cfg.use_rk4 && !std::holds_alternative<AmplitudeDamping>(cfg.evolution);

    if (closed_form) {
        for (int i = 0; i < n; ++i) {
            const double tp = (i == n - 1) ? cfg.t_max : step_t_prime * i;
            if (i == 0) {
                out.push_back(take_metrics(rho0, rho0.trace_real(), 0.0, cfg.metrics));
                continue;
            }
            const ComplexMatrix u4 = tensor_product(*propagator_2x2(cfg.evolution, tp),
                                                    ComplexMatrix::identity(2));
            auto [state, tr] = normalize_with_trace(u4 * rho0.matrix() * u4.adjoint());
            out.push_back(take_metrics(state, tr, tp, cfg.metrics));
        }
        return out;
    }

    // RK4 path: march the raw (un-renormalized) state sample to sample.
    const double factor = natural_time_factor(cfg.evolution);
    const double dt_nat = cfg.dt * factor;
    ComplexMatrix raw = rho0.matrix();
    out.push_back(take_metrics(rho0, rho0.trace_real(), 0.0, cfg.metrics));
    for (int i = 1; i < n; ++i) {
        const double tp = (i == n - 1) ? cfg.t_max : step_t_prime * i;
        raw = integrate(DensityMatrix(raw), cfg.evolution, step_t_prime * factor, dt_nat)
                  .matrix();
        auto [state, tr] = normalize_with_trace(raw);
        out.push_back(take_metrics(state, tr, tp, cfg.metrics));
    }
    return out;
}

std::vector<ScenarioConfig> figure_preset(const std::string& id) {
    const PTParams default_pt(1.0, M_PI / 4.0);
    std::vector<ScenarioConfig> cfgs;
    if (id == "fig2") {
        ScenarioConfig rabi;
        rabi.initial = BellInitial{};
        rabi.evolution = Rabi{1.0};
        rabi.label = "rabi";
        cfgs.push_back(rabi);
        ScenarioConfig pt = rabi;
        pt.evolution = PT{default_pt};
        pt.label = "pt";
        cfgs.push_back(pt);
        return cfgs;
    }
    if (id == "fig4" || id == "fig5") {
        for (double t_c : {0.5, 1.0, 1.6}) {
            ScenarioConfig cfg;
            cfg.initial = DampedInitial{t_c, 1.0};
            if (id == "fig4")
                cfg.evolution = PT{default_pt};
            else
                cfg.evolution = NonPT{default_pt, 0.01};
            char buf[32];
            std::snprintf(buf, sizeof(buf), "tc%.1f", t_c);
            cfg.label = buf;
            cfgs.push_back(cfg);
        }
        return cfgs;
    }
    throw UsageError("unknown figure id '" + id + "' (expected fig2, fig4 or fig5)");
}

namespace {

std::vector<CrossingInterval> crossings(const std::vector<MetricsRecord>& recs,
                                        std::optional<double> MetricsRecord::*field,
                                        double bound, double t_max) {
    std::vector<CrossingInterval> out;
    bool above = false;
    double enter = 0.0;
    for (size_t i = 0; i < recs.size(); ++i) {
        const double v = (recs[i].*field).value();
        if (!above && v > bound) {
            if (i == 0) {
                enter = recs[0].t_prime;
            } else {
                const double v0 = (recs[i - 1].*field).value();
                const double f = (bound - v0) / (v - v0);
                enter = recs[i - 1].t_prime + f * (recs[i].t_prime - recs[i - 1].t_prime);
            }
            above = true;
        } else if (above && v <= bound) {
            const double v0 = (recs[i - 1].*field).value();
            const double f = (v0 - bound) / (v0 - v);
            const double exit =
                recs[i - 1].t_prime + f * (recs[i].t_prime - recs[i - 1].t_prime);
            out.push_back({enter, exit});
            above = false;
        }
    }
    if (above) out.push_back({enter, t_max});
    return out;
}

} // namespace

IncreaseReport entanglement_increase_report(const ScenarioConfig& cfg) {
    if (!cfg.metrics.count(Metric::Concurrence))
        throw ValidationError(
            "entanglement_increase_report: concurrence must be among the metrics");
    ScenarioConfig run = cfg;
    run.metrics.insert(Metric::BellMax);
    run.metrics.insert(Metric::S3);
    const auto recs = run_scenario(run);

    IncreaseReport rep;
    rep.c_initial = recs.front().concurrence.value();
    size_t best = 0;
    for (size_t i = 0; i < recs.size(); ++i)
        if (recs[i].concurrence.value() > recs[best].concurrence.value()) best = i;
    rep.c_max = recs[best].concurrence.value();
    rep.t_at_max = recs[best].t_prime;

    // One golden-section refinement between the best sample's neighbours.
    const double step = cfg.t_max / (cfg.n_samples - 1);
    double lo = std::max(0.0, recs[best].t_prime - step);
    double hi = std::min(cfg.t_max, recs[best].t_prime + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto c_at = [&](double tp) { return concurrence(state_at(run, tp).first); };
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = c_at(x1), f2 = c_at(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = c_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = c_at(x1);
        }
    }
    const double t_ref = 0.5 * (lo + hi);
    const double c_ref = c_at(t_ref);
    if (c_ref > rep.c_max) {
        rep.c_max = c_ref;
        rep.t_at_max = t_ref;
    }
    rep.increased = rep.c_max > rep.c_initial + 1e-9;

    rep.bell_crossings = crossings(recs, &MetricsRecord::bell_max, 2.0, cfg.t_max);
    rep.s3_crossings = crossings(recs, &MetricsRecord::s3, 1.0, cfg.t_max);
    return rep;
}

} // namespace ptsim
