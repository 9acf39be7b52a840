#ifndef PTSIM_DYNAMICS_HPP
#define PTSIM_DYNAMICS_HPP

#include <variant>

#include "ptsim/eigen.hpp"
#include "ptsim/matrix.hpp"

namespace ptsim {

/// Parameters of the PT-symmetric single-qubit Hamiltonian
/// s * [[i sin(alpha), 1], [1, -i sin(alpha)]], restricted to the unbroken
/// phase |alpha| < pi/2 where the spectrum +-s*cos(alpha) is real.
class PTParams {
  public:
    PTParams(double s, double alpha);

    double s() const { return s_; }
    double alpha() const { return alpha_; }
    /// Half the level splitting, s*cos(alpha); the time unit of all
    /// PT trajectories is 1/delta_e.
    double delta_e() const { return s_ * std::cos(alpha_); }

  private:
    double s_;
    double alpha_;
};

/// Validated two-qubit state: Hermitian within 1e-9, eigenvalues >= -psd_tol,
/// trace > 1e-12. The trace is allowed to drift from 1 because raw
/// non-Hermitian evolution does not preserve it.
class DensityMatrix {
  public:
    explicit DensityMatrix(const ComplexMatrix& m, double psd_tol = 1e-9);

    const ComplexMatrix& matrix() const { return mat_; }
    double trace_real() const { return mat_.trace().real(); }

  private:
    ComplexMatrix mat_;
};

struct Rabi {
    double g = 1.0;
};
struct PT {
    PTParams params;
};
struct NonPT {
    PTParams params;
    double epsilon = 0.0;
};
struct AmplitudeDamping {
    double gamma = 1.0;
};
using EvolutionSpec = std::variant<Rabi, PT, NonPT, AmplitudeDamping>;

struct SplitHamiltonian {
    ComplexMatrix h_plus;  // Hermitian
    ComplexMatrix h_minus; // anti-Hermitian
};

// Single-qubit Hamiltonians (hbar = 1).
ComplexMatrix rabi_hamiltonian(double g);
ComplexMatrix pt_hamiltonian(const PTParams& p);
ComplexMatrix nonpt_hamiltonian(const PTParams& p, double epsilon);

/// h = (h + h^dag)/2 + (h - h^dag)/2.
SplitHamiltonian split_hermitian(const ComplexMatrix& h);

/// The qubit-1 two-qubit Hamiltonian H_1 (x) I_2 for a given spec
/// (not defined for AmplitudeDamping).
ComplexMatrix total_hamiltonian(const EvolutionSpec& spec);

/// Closed-form PT propagator in rescaled time t' = delta_e * t:
/// (1/cos a) [[cos(t'-a), -i sin t'], [-i sin t', cos(t'+a)]], det = 1.
ComplexMatrix pt_propagator(const PTParams& p, double t_prime);

/// (U(t') (x) I) rho0 (U (x) I)^dag, renormalized to unit trace.
DensityMatrix evolve_closed_form(const DensityMatrix& rho0, const PTParams& p,
                                 double t_prime);

/// Raw trace of the PT-evolved state before renormalization.
double pt_raw_trace(const DensityMatrix& rho0, const PTParams& p, double t_prime);

/// Right-hand side of the equation of motion in natural time:
///   Rabi:      -i [H, rho]
///   PT/NonPT:  -i [H+, rho] - i {H-, rho}   (trace not preserved)
///   Damping:   gamma/2 (2 L rho L^dag - L^dag L rho - rho L^dag L)
ComplexMatrix master_rhs(const ComplexMatrix& rho, const EvolutionSpec& spec);
ComplexMatrix master_rhs(const DensityMatrix& rho, const EvolutionSpec& spec);

/// Classical fixed-step RK4 over natural time; returns the raw
/// (un-renormalized) state. Step count is ceil(t_end/dt), so the grid
/// lands on t_end exactly.
DensityMatrix integrate(const DensityMatrix& rho0, const EvolutionSpec& spec,
                        double t_end, double dt);

/// Divide by the (real) trace; throws on near-zero trace.
DensityMatrix renormalize(const DensityMatrix& rho);
ComplexMatrix renormalize_raw(const ComplexMatrix& rho);

/// Closed-form amplitude-damped Bell state at the cut-off time t_c; its
/// concurrence is exp(-gamma*t_c/2).
DensityMatrix damped_state(double t_c, double gamma);

} // namespace ptsim

#endif
