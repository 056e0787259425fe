#include <limits>

#include "conebell/kernels.hpp"

namespace conebell::kernels::scalar {

namespace {

inline double score(const LinearForm& f, const WitnessColumns& w, std::size_t j) {
    return ((f.a * w.re1[j] + f.b * w.im1[j]) + f.c * w.re2[j]) + f.d * w.im2[j];
}

}  // namespace

BestScore max_score(const LinearForm& f, const WitnessColumns& w, std::size_t begin,
                    std::size_t end) {
    BestScore best{-std::numeric_limits<double>::infinity(), end};
    for (std::size_t j = begin; j < end; ++j) {
        const double s = score(f, w, j);
        if (s > best.value) {
            best = {s, j};
        }
    }
    return best;
}

std::size_t first_at_least(const LinearForm& f, const WitnessColumns& w, std::size_t begin,
                           std::size_t end, double threshold) {
    for (std::size_t j = begin; j < end; ++j) {
        if (score(f, w, j) >= threshold) {
            return j;
        }
    }
    return end;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t size = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < size; ++i) {
        lane[i % 4] = lane[i % 4] + a[i] * b[i];
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace conebell::kernels::scalar
