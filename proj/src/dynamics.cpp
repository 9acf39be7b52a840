#include "ptsim/dynamics.hpp"

#include <cmath>

namespace ptsim {

namespace {
constexpr double kHermTol = 1e-9;
constexpr double kTraceFloor = 1e-12;
const Complex kI(0.0, 1.0);
} // namespace

PTParams::PTParams(double s, double alpha) : s_(s), alpha_(alpha) {
    if (!(s > 0.0)) throw ValidationError("PTParams: scaling constant s must be positive");
    if (!(std::abs(alpha) <= M_PI / 2.0 - 1e-6))
        throw ValidationError(
            "PTParams: |alpha| must stay below pi/2 - 1e-6 (unbroken PT phase); got " +
            std::to_string(alpha));
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, double psd_tol) : mat_(m) {
    if (m.dim() != 4) throw ValidationError("DensityMatrix: expected a 4x4 matrix");
    if (!m.is_finite()) throw ValidationError("DensityMatrix: non-finite entries");
    const double defect = m.hermiticity_defect();
    if (defect > kHermTol)
        throw ValidationError("DensityMatrix: Hermiticity defect " + std::to_string(defect) +
                              " exceeds 1e-9");
    const double tr = m.trace().real();
    if (!(tr > kTraceFloor))
        throw ValidationError("DensityMatrix: trace " + std::to_string(tr) +
                              " is not above 1e-12");
    const auto ev = hermitian_eigenvalues(m);
    if (ev.back() < -psd_tol)
        throw ValidationError("DensityMatrix: smallest eigenvalue " +
                              std::to_string(ev.back()) + " is below -" +
                              std::to_string(psd_tol));
}

ComplexMatrix rabi_hamiltonian(double g) { return pauli_x() * Complex(g); }

ComplexMatrix pt_hamiltonian(const PTParams& p) {
    const Complex isa = kI * std::sin(p.alpha());
    return ComplexMatrix(2, {isa, 1.0, 1.0, -isa}) * Complex(p.s());
}

ComplexMatrix nonpt_hamiltonian(const PTParams& p, double epsilon) {
    return pt_hamiltonian(p) + pauli_z() * Complex(epsilon);
}

SplitHamiltonian split_hermitian(const ComplexMatrix& h) {
    return {(h + h.adjoint()) * 0.5, (h - h.adjoint()) * 0.5};
}

ComplexMatrix total_hamiltonian(const EvolutionSpec& spec) {
    return std::visit(
        [](const auto& s) -> ComplexMatrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Rabi>)
                return tensor_product(rabi_hamiltonian(s.g), ComplexMatrix::identity(2));
            else if constexpr (std::is_same_v<T, PT>)
                return tensor_product(pt_hamiltonian(s.params), ComplexMatrix::identity(2));
            else if constexpr (std::is_same_v<T, NonPT>)
                return tensor_product(nonpt_hamiltonian(s.params, s.epsilon),
                                      ComplexMatrix::identity(2));
            else
                throw ValidationError("total_hamiltonian: amplitude damping has no Hamiltonian");
        },
        spec);
}

ComplexMatrix pt_propagator(const PTParams& p, double t_prime) {
    const double a = p.alpha();
    const double inv = 1.0 / std::cos(a);
    ComplexMatrix u(2);
    u(0, 0) = inv * std::cos(t_prime - a);
    u(0, 1) = -kI * (inv * std::sin(t_prime));
    u(1, 0) = u(0, 1);
    u(1, 1) = inv * std::cos(t_prime + a);
    return u;
}

namespace {
ComplexMatrix pt_evolved_raw(const DensityMatrix& rho0, const PTParams& p, double t_prime) {
    if (std::abs(rho0.trace_real() - 1.0) > 1e-9)
        throw ValidationError("evolve_closed_form: initial state must have unit trace");
    const ComplexMatrix u4 =
        tensor_product(pt_propagator(p, t_prime), ComplexMatrix::identity(2));
    return u4 * rho0.matrix() * u4.adjoint();
}
} // namespace

DensityMatrix evolve_closed_form(const DensityMatrix& rho0, const PTParams& p,
                                 double t_prime) {
    return renormalize(DensityMatrix(pt_evolved_raw(rho0, p, t_prime)));
}

double pt_raw_trace(const DensityMatrix& rho0, const PTParams& p, double t_prime) {
    return pt_evolved_raw(rho0, p, t_prime).trace().real();
}

ComplexMatrix master_rhs(const ComplexMatrix& rho, const EvolutionSpec& spec) {
    if (const auto* damping = std::get_if<AmplitudeDamping>(&spec)) {
        const ComplexMatrix l = tensor_product(sigma_lower(), ComplexMatrix::identity(2));
        const ComplexMatrix ldl = l.adjoint() * l;
        return (l * rho * l.adjoint() * 2.0 - ldl * rho - rho * ldl) * (0.5 * damping->gamma);
    }
    const auto [h_plus, h_minus] = split_hermitian(total_hamiltonian(spec));
    ComplexMatrix d = (h_plus * rho - rho * h_plus) * (-kI);
    if (h_minus.max_abs() > 0.0) d = d + (h_minus * rho + rho * h_minus) * (-kI);
    return d;
}

ComplexMatrix master_rhs(const DensityMatrix& rho, const EvolutionSpec& spec) {
    return master_rhs(rho.matrix(), spec);
}

DensityMatrix integrate(const DensityMatrix& rho0, const EvolutionSpec& spec, double t_end,
                        double dt) {
    if (!(dt > 0.0)) throw ValidationError("integrate: dt must be positive");
    if (t_end < 0.0) throw ValidationError("integrate: t_end must be non-negative");
    if (t_end == 0.0) return rho0;

    const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-12)));
    const double h = t_end / static_cast<double>(steps);

    ComplexMatrix rho = rho0.matrix();
    for (long n = 0; n < steps; ++n) {
        const ComplexMatrix k1 = master_rhs(rho, spec);
        const ComplexMatrix k2 = master_rhs(rho + k1 * (h / 2.0), spec);
        const ComplexMatrix k3 = master_rhs(rho + k2 * (h / 2.0), spec);
        const ComplexMatrix k4 = master_rhs(rho + k3 * h, spec);
        rho = rho + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
        if (!rho.is_finite()) throw NumericalError("integrate: NaN/Inf encountered");
        if (!(rho.trace().real() > kTraceFloor))
            throw NumericalError("integrate: trace collapsed below 1e-12");
    }
    return DensityMatrix(rho);
}

ComplexMatrix renormalize_raw(const ComplexMatrix& rho) {
    const double tr = rho.trace().real();
    if (!(tr > kTraceFloor))
        throw NumericalError("renormalize: trace " + std::to_string(tr) +
                             " is too close to zero");
    return rho * (1.0 / tr);
}

DensityMatrix renormalize(const DensityMatrix& rho) {
    return DensityMatrix(renormalize_raw(rho.matrix()));
}

DensityMatrix damped_state(double t_c, double gamma) {
    if (t_c < 0.0) throw ValidationError("damped_state: t_c must be non-negative");
    if (!(gamma > 0.0)) throw ValidationError("damped_state: gamma must be positive");
    const double e = std::exp(-gamma * t_c);
    const double c = std::exp(-gamma * t_c / 2.0);
    ComplexMatrix m(4);
    m(0, 0) = 0.5 * e;
    m(0, 3) = 0.5 * c;
    m(3, 0) = 0.5 * c;
    m(2, 2) = 0.5 * (1.0 - e);
    m(3, 3) = 0.5;
    return DensityMatrix(m);
}

} // namespace ptsim
