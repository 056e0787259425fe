#pragma once

// Spin-1 observables on cone directions, the biased GHZ state and its
// N-party correlation function.
//
// Basis order throughout is (|-1>, |0>, |+1>) of S_z. In this order the
// matrix S^2(phi) below is the squared spin component along the cone vector
// n(-phi - pi); the family of observables is the full cone either way, and
// only this order makes the closed-form correlation exact for odd N.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace conebell {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

/// Unit cone vector n(phi) = (sqrt(2) cos phi, sqrt(2) sin phi, 1) / sqrt(3).
std::array<double, 3> cone_direction(double phi);

struct Spin1Observable {
    double phi;
    Matrix3c squared;  // eigenvalues {0, 1, 1}

    /// Traceless version S^2(phi) - 2/3, eigenvalues {-2/3, 1/3, 1/3}.
    Matrix3c traceless() const;
};

Spin1Observable spin_component_matrix(double phi);

/// Standard spin-1 matrices (Sx, Sy, Sz) in the (|-1>, |0>, |+1>) basis.
std::array<Matrix3c, 3> spin1_matrices();

/// Null eigenvector of S^2(phi). Throws std::runtime_error if the smallest
/// eigenvalue is farther than 1e-10 from zero.
Vector3c null_direction_state(double phi);

inline constexpr int default_max_parties = 12;

/// Dense N-qutrit state. Basis index digits run over parties with party 0 most
/// significant; digit 0 is |-1>, 1 is |0>, 2 is |+1>.
struct QutritState {
    int parties;
    std::vector<std::complex<double>> amplitudes;

    double squared_norm() const;
};

/// (2/3)(|-1>^N + 1/2 |0>^N + (-1)^N |+1>^N). Requires 2 <= N <= max_parties.
QutritState biased_ghz(int parties, int max_parties = default_max_parties);

/// Prefactor 8 / 3^(2+N) of the closed-form correlation function.
double correlation_prefactor(int parties);

/// (8/3^(2+N)) (cos S + (-1)^N cos 2S) with S the sum of the angles.
double correlation_closed_form(std::span<const double> phis);

/// Closed form as a function of the angle sum only.
double correlation_from_total(int parties, double total_angle);

/// <psi| O(phi_1) x ... x O(phi_N) |psi> contracted against the non-zero
/// amplitudes of `state`. Throws std::runtime_error when the imaginary residue
/// exceeds 1e-12.
double correlation_oracle(const QutritState& state, std::span<const double> phis);
double correlation_oracle(std::span<const double> phis);

/// Sum of E_QM^2 over the full (3n)^N setting grid, via its frequency content.
double qm_norm_discrete(int trios, int parties);

/// 64 (2 pi)^N / 3^(4+N).
double qm_norm_continuous(int parties);

}  // namespace conebell
