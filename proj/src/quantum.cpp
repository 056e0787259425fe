#include "conebell/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace conebell {

namespace {

using cd = std::complex<double>;

constexpr double null_eigen_tolerance = 1e-10;
constexpr double imaginary_tolerance = 1e-12;

double ipow(double base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

void require_parties(int parties) {
    if (parties < 2) {
        throw std::invalid_argument("correlations need at least two parties");
    }
}

}  // namespace

std::array<double, 3> cone_direction(double phi) {
    const double s = std::sqrt(2.0);
    const double r = 1.0 / std::sqrt(3.0);
    return {s * std::cos(phi) * r, s * std::sin(phi) * r, r};
}

Matrix3c Spin1Observable::traceless() const {
    return squared - (2.0 / 3.0) * Matrix3c::Identity();
}

Spin1Observable spin_component_matrix(double phi) {
    const cd e1 = std::polar(1.0, -phi);
    const cd e2 = std::polar(1.0, -2.0 * phi);
    Matrix3c m;
    m << 2.0, e1, e2,
         std::conj(e1), 2.0, -e1,
         std::conj(e2), -std::conj(e1), 2.0;
    return {phi, m / 3.0};
}

std::array<Matrix3c, 3> spin1_matrices() {
    const double r = 1.0 / std::sqrt(2.0);
    const cd i(0.0, 1.0);
    Matrix3c sx;
    sx << 0, r, 0,
          r, 0, r,
          0, r, 0;
    Matrix3c sy;
    sy << 0, i * r, 0,
          -i * r, 0, i * r,
          0, -i * r, 0;
    Matrix3c sz = Matrix3c::Zero();
    sz(0, 0) = -1.0;
    sz(2, 2) = 1.0;
    return {sx, sy, sz};
}

Vector3c null_direction_state(double phi) {
    const Eigen::SelfAdjointEigenSolver<Matrix3c> solver(spin_component_matrix(phi).squared);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigen-solve failed");
    }
    const double smallest = solver.eigenvalues()(0);
    if (std::abs(smallest) > null_eigen_tolerance) {
        throw std::runtime_error("no null eigenvalue for phi = " + std::to_string(phi));
    }
    return solver.eigenvectors().col(0).normalized();
}

double QutritState::squared_norm() const {
    double total = 0.0;
    for (const auto& a : amplitudes) {
        total += std::norm(a);
    }
    return total;
}

QutritState biased_ghz(int parties, int max_parties) {
    require_parties(parties);
    if (parties > max_parties) {
        throw std::invalid_argument("party count " + std::to_string(parties) +
                                    " exceeds the configured maximum " +
                                    std::to_string(max_parties));
    }
    std::size_t dim = 1;
    for (int k = 0; k < parties; ++k) {
        dim *= 3;
    }
    QutritState state{parties, std::vector<cd>(dim)};
    const double sign = parties % 2 == 0 ? 1.0 : -1.0;
    // all digits 0 (|-1>) is index 0; all digits 2 (|+1>) is the last index;
    // all digits 1 (|0>) is (3^N - 1) / 2
    state.amplitudes.front() = 2.0 / 3.0;
    state.amplitudes[(dim - 1) / 2] = 1.0 / 3.0;
    state.amplitudes.back() = sign * 2.0 / 3.0;
    return state;
}

double correlation_prefactor(int parties) { return 8.0 / ipow(3.0, 2 + parties); }

double correlation_closed_form(std::span<const double> phis) {
    const int parties = static_cast<int>(phis.size());
    require_parties(parties);
    double total = 0.0;
    for (double phi : phis) {
        total += phi;
    }
    return correlation_from_total(parties, total);
}

double correlation_from_total(int parties, double total_angle) {
    const double sign = parties % 2 == 0 ? 1.0 : -1.0;
    return correlation_prefactor(parties) *
           (std::cos(total_angle) + sign * std::cos(2.0 * total_angle));
}

double correlation_oracle(const QutritState& state, std::span<const double> phis) {
    const int parties = state.parties;
    if (static_cast<int>(phis.size()) != parties) {
        throw std::invalid_argument("need one angle per party");
    }
    std::vector<Matrix3c> ops;
    ops.reserve(phis.size());
    for (double phi : phis) {
        ops.push_back(spin_component_matrix(phi).traceless());
    }

    struct Term {
        std::vector<int> digits;
        cd amplitude;
    };
    std::vector<Term> support;
    for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
        if (state.amplitudes[idx] == cd{}) {
            continue;
        }
        std::vector<int> digits(static_cast<std::size_t>(parties));
        std::size_t rest = idx;
        for (int k = parties - 1; k >= 0; --k) {
            digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % 3);
            rest /= 3;
        }
        support.push_back({std::move(digits), state.amplitudes[idx]});
    }

    cd expectation{};
    for (const auto& bra : support) {
        for (const auto& ket : support) {
            cd chain = std::conj(bra.amplitude) * ket.amplitude;
            for (std::size_t k = 0; k < ops.size(); ++k) {
                chain *= ops[k](bra.digits[k], ket.digits[k]);
            }
            expectation += chain;
        }
    }
    if (std::abs(expectation.imag()) > imaginary_tolerance) {
        throw std::runtime_error("correlation has imaginary residue " +
                                 std::to_string(expectation.imag()));
    }
    return expectation.real();
}

double correlation_oracle(std::span<const double> phis) {
    return correlation_oracle(biased_ghz(static_cast<int>(phis.size())), phis);
}

double qm_norm_discrete(int trios, int parties) {
    if (trios < 1) {
        throw std::invalid_argument("trio count must be at least 1");
    }
    require_parties(parties);
    // E^2 = C^2 (cos S + s cos 2S)^2
    //     = C^2 (1 + cos 2S / 2 + cos 4S / 2 + s cos S + s cos 3S)
    // and the grid sum of cos(mS) is (3n)^N when 3n divides m, else zero.
    const int points = 3 * trios;
    const double grid_volume = ipow(static_cast<double>(points), parties);
    auto mode = [&](int m) { return m % points == 0 ? grid_volume : 0.0; };
    const double sign = parties % 2 == 0 ? 1.0 : -1.0;
    const double c = correlation_prefactor(parties);
    return c * c *
           (grid_volume + 0.5 * mode(2) + 0.5 * mode(4) + sign * mode(1) + sign * mode(3));
}

double qm_norm_continuous(int parties) {
    require_parties(parties);
    return 64.0 * ipow(2.0 * std::numbers::pi, parties) / ipow(3.0, 4 + parties);
}

}  // namespace conebell
