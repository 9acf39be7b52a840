#include "ptsim/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ptsim {

namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kClampTol = 1e-8;

void require_unit_trace(const DensityMatrix& rho, const char* who) {
    if (std::abs(rho.trace_real() - 1.0) > kTraceTol)
        throw ValidationError(std::string(who) +
                              ": state trace deviates from 1 by more than 1e-9 (trace " +
                              std::to_string(rho.trace_real()) + ")");
}

ComplexMatrix pauli(int i) {
    switch (i) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        default: return pauli_z();
    }
}

} // namespace

double concurrence(const DensityMatrix& rho, bool auto_normalize) {
    ComplexMatrix r = rho.matrix();
    if (std::abs(r.trace().real() - 1.0) > kTraceTol) {
        if (!auto_normalize)
            throw ValidationError(
                "concurrence: un-normalized state (set auto_normalize to accept)");
        r = renormalize_raw(r);
    }
    const ComplexMatrix yy = tensor_product(pauli_y(), pauli_y());
    const ComplexMatrix spin_flipped = yy * r.conjugate() * yy;
    const auto raw = general_eigenvalues(r * spin_flipped);

    std::vector<double> lam;
    lam.reserve(4);
    for (const Complex& z : raw) {
        if (std::abs(z.imag()) >= kClampTol)
            throw NumericalError("concurrence: eigenvalue imaginary part " +
                                 std::to_string(z.imag()) + " exceeds clamping threshold");
        double v = z.real();
        if (v < -kClampTol)
            throw NumericalError("concurrence: eigenvalue " + std::to_string(v) +
                                 " is below the -1e-8 clamping threshold");
        lam.push_back(std::max(v, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    // Round-off floor: eigenvalues that are pure noise relative to the
    // leading one would otherwise leak ~sqrt(eps) into the concurrence.
    for (double& v : lam)
        if (v < 1e-12 * lam[0]) v = 0.0;

    const double c =
        std::sqrt(lam[0]) - std::sqrt(lam[1]) - std::sqrt(lam[2]) - std::sqrt(lam[3]);
    return std::max(0.0, c);
}

double concurrence_pure_oracle(const std::array<Complex, 4>& psi) {
    double norm2 = 0.0;
    for (const Complex& a : psi) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > kTraceTol)
        throw ValidationError("concurrence_pure_oracle: amplitude vector is not normalized");
    return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
    require_unit_trace(rho, "correlation_tensor");
    CorrelationTensor t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Complex v = (rho.matrix() * tensor_product(pauli(i), pauli(j))).trace();
            if (std::abs(v.imag()) >= 1e-10)
                throw NumericalError("correlation_tensor: imaginary residue " +
                                     std::to_string(v.imag()) + " in t[" +
                                     std::to_string(i) + "][" + std::to_string(j) + "]");
            t.t[i][j] = v.real();
        }
    return t;
}

double bell_max(const DensityMatrix& rho) {
    const CorrelationTensor t = correlation_tensor(rho);
    double m[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) m[i][j] += t.t[k][i] * t.t[k][j];
    const auto u = hermitian_eigenvalues(RealSymmetricMatrix3::symmetrized(m).as_complex());
    return 2.0 * std::sqrt(std::max(0.0, u[0] + u[1]));
}

double steering_parameter(const DensityMatrix& rho, int n, SteeringBreakdown* breakdown) {
    if (n != 2 && n != 3)
        throw ValidationError("steering_parameter: N must be 2 or 3");
    require_unit_trace(rho, "steering_parameter");

    // N=2 uses the X and Z axes; N=3 the full mutually unbiased triple.
    const std::vector<int> axes = (n == 2) ? std::vector<int>{0, 2} : std::vector<int>{0, 1, 2};
    const char names[3] = {'x', 'y', 'z'};
    const ComplexMatrix id2 = ComplexMatrix::identity(2);

    if (breakdown) breakdown->axes.clear();
    double total = 0.0;
    for (int i : axes) {
        const ComplexMatrix sig = pauli(i);
        AxisSteering ax{names[i], 0, 0, 0, 0, 0};
        for (int a : {+1, -1}) {
            const ComplexMatrix proj = (id2 + sig * Complex(a)) * 0.5;
            const double p =
                (tensor_product(proj, id2) * rho.matrix()).trace().real();
            double b = 0.0;
            if (p > 1e-15)
                b = (tensor_product(proj, sig) * rho.matrix()).trace().real() / p;
            ax.e_term += (p > 1e-15) ? p * b * b : 0.0;
            if (a > 0) {
                ax.p_plus = p;
                ax.b_plus = b;
            } else {
                ax.p_minus = p;
                ax.b_minus = b;
            }
        }
        total += ax.e_term;
        if (breakdown) breakdown->axes.push_back(ax);
    }
    return total;
}

double purity(const DensityMatrix& rho) {
    require_unit_trace(rho, "purity");
    return (rho.matrix() * rho.matrix()).trace().real();
}

} // namespace ptsim
