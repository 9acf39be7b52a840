#ifndef PTSIM_METRICS_HPP
#define PTSIM_METRICS_HPP

#include <array>
#include <vector>

#include "ptsim/dynamics.hpp"

namespace ptsim {

/// t[i][j] = tr(rho (sigma_i (x) sigma_j)), i,j in {x,y,z}.
struct CorrelationTensor {
    double t[3][3];
};

/// One mutually unbiased axis of the steering sum: outcome probabilities of
/// the qubit-1 measurement and qubit-2 expectations conditioned on them.
struct AxisSteering {
    char axis;              // 'x', 'y' or 'z'
    double p_plus, p_minus; // P(A_i = +1), P(A_i = -1)
    double b_plus, b_minus; // <B_i | A_i = +1>, <B_i | A_i = -1>
    double e_term;          // sum_a P(a) <B_i|a>^2
};

struct SteeringBreakdown {
    std::vector<AxisSteering> axes;
};

/// Wootters concurrence: Max{0, sqrt(l1)-sqrt(l2)-sqrt(l3)-sqrt(l4)} over the
/// descending eigenvalues of rho (sy(x)sy) rho* (sy(x)sy). States with
/// |trace - 1| > 1e-9 are rejected unless auto_normalize is set.
double concurrence(const DensityMatrix& rho, bool auto_normalize = false);

/// Independent pure-state check: C = 2 |a00 a11 - a01 a10| for a normalized
/// amplitude vector in the |00>,|01>,|10>,|11> basis.
double concurrence_pure_oracle(const std::array<Complex, 4>& psi);

CorrelationTensor correlation_tensor(const DensityMatrix& rho);

/// Horodecki closed form 2*sqrt(u1+u2), the two largest eigenvalues of
/// T^T T. Values above 2 certify a Bell-CHSH violation.
double bell_max(const DensityMatrix& rho);

/// Steering parameter S_N over N mutually unbiased Pauli axes on qubit-1
/// (Alice) conditioning qubit-2 (Bob): N=2 uses {X,Z}, N=3 uses {X,Y,Z}.
/// Values above 1 certify steering. A zero-probability branch contributes 0.
double steering_parameter(const DensityMatrix& rho, int n,
                          SteeringBreakdown* breakdown = nullptr);

/// tr(rho^2), in [1/4, 1] for a normalized two-qubit state.
double purity(const DensityMatrix& rho);

} // namespace ptsim

#endif
