#include "conebell/continuum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "conebell/parallel.hpp"
#include "conebell/quantum.hpp"

namespace conebell {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double half_width = 2.0 * pi / 3.0;

void require_parties(int parties) {
    if (parties < 2) {
        throw std::invalid_argument("continuum quantities need at least two parties");
    }
}

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace

double interval_lhv_value(int parties, double shift) {
    require_parties(parties);
    return 8.0 / std::pow(3.0, parties / 2.0 + 2.0) *
           (std::cos(shift) + std::ldexp(1.0, -parties) * std::cos(2.0 * shift));
}

double interval_max(int parties) {
    require_parties(parties);
    return std::ldexp(1.0, 3 - parties) * std::pow(3.0, -parties / 2.0 - 2.0) *
           (std::ldexp(1.0, parties) + 1.0);
}

double quadrature_oracle(int parties, double shift, int points_per_dim, int threads) {
    require_parties(parties);
    if (points_per_dim < 64) {
        throw std::invalid_argument("quadrature needs at least 64 points per dimension");
    }
    const double h = 2.0 * half_width / points_per_dim;
    std::vector<double> nodes(static_cast<std::size_t>(points_per_dim));
    for (int i = 0; i < points_per_dim; ++i) {
        nodes[static_cast<std::size_t>(i)] = -half_width + (i + 0.5) * h;
    }

    // one work item per node of the first observer; the last observer's nodes
    // are shifted by `shift`
    std::vector<double> partial(nodes.size());
    parallel_for(nodes.size(), resolve_threads(threads), [&](std::size_t first) {
        std::vector<std::size_t> odometer(static_cast<std::size_t>(parties - 1), 0);
        CompensatedSum sum;
        while (true) {
            double total = nodes[first] + shift;
            for (auto i : odometer) {
                total += nodes[i];
            }
            sum.add(correlation_from_total(parties, total));
            std::size_t k = odometer.size();
            while (k > 0 && ++odometer[k - 1] == nodes.size()) {
                odometer[--k] = 0;
            }
            if (k == 0) {
                break;
            }
        }
        partial[first] = sum.value();
    });

    CompensatedSum total;
    for (double p : partial) {
        total.add(p);
    }
    return total.value() * std::pow(h, parties);
}

double continuous_ratio_formula(int parties) {
    require_parties(parties);
    return 8.0 / (9.0 * (std::ldexp(1.0, parties) + 1.0)) *
           std::pow(4.0 * pi / (3.0 * std::sqrt(3.0)), parties);
}

ContinuousReport continuous_ratio(int parties) {
    ContinuousReport report;
    report.parties = parties;
    report.qm_norm = qm_norm_continuous(parties);
    report.interval_max = interval_max(parties);
    report.normalized_lhv = std::pow(3.0, parties) * report.interval_max;
    report.ratio = continuous_ratio_formula(parties);
    // cos a + 2^-N cos 2a has derivative -sin a (1 + 2^(2-N) cos a): for N >= 2
    // the only maximum on the circle is a = 0
    report.shift_argmax = 0.0;
    const double identity = report.qm_norm / report.normalized_lhv;
    if (std::abs(identity - report.ratio) > 1e-12 * report.ratio) {
        throw std::logic_error("continuous ratio formula disagrees with qm_norm / lhv");
    }
    return report;
}

}  // namespace conebell
