#include <immintrin.h>

#include <limits>

#include "conebell/kernels.hpp"

namespace conebell::kernels::avx2 {

namespace {

struct Coefficients {
    __m256d a, b, c, d;

    explicit Coefficients(const LinearForm& f)
        : a(_mm256_set1_pd(f.a)), b(_mm256_set1_pd(f.b)), c(_mm256_set1_pd(f.c)),
          d(_mm256_set1_pd(f.d)) {}
};

inline __m256d score4(const Coefficients& k, const WitnessColumns& w, std::size_t j) {
    __m256d s = _mm256_add_pd(_mm256_mul_pd(k.a, _mm256_loadu_pd(&w.re1[j])),
                              _mm256_mul_pd(k.b, _mm256_loadu_pd(&w.im1[j])));
    s = _mm256_add_pd(s, _mm256_mul_pd(k.c, _mm256_loadu_pd(&w.re2[j])));
    return _mm256_add_pd(s, _mm256_mul_pd(k.d, _mm256_loadu_pd(&w.im2[j])));
}

}  // namespace

BestScore max_score(const LinearForm& f, const WitnessColumns& w, std::size_t begin,
                    std::size_t end) {
    BestScore best{-std::numeric_limits<double>::infinity(), end};
    std::size_t j = begin;
    if (end - begin >= 4) {
        const Coefficients k(f);
        __m256d lane_best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
        // lane indices held as doubles; exact below 2^53
        __m256d lane_idx = _mm256_setzero_pd();
        __m256d cur_idx = _mm256_setr_pd(static_cast<double>(j), static_cast<double>(j + 1),
                                         static_cast<double>(j + 2), static_cast<double>(j + 3));
        const __m256d step = _mm256_set1_pd(4.0);
        for (; j + 4 <= end; j += 4) {
            const __m256d s = score4(k, w, j);
            const __m256d gt = _mm256_cmp_pd(s, lane_best, _CMP_GT_OQ);
            lane_best = _mm256_blendv_pd(lane_best, s, gt);
            lane_idx = _mm256_blendv_pd(lane_idx, cur_idx, gt);
            cur_idx = _mm256_add_pd(cur_idx, step);
        }
        alignas(32) double vals[4];
        alignas(32) double idxs[4];
        _mm256_store_pd(vals, lane_best);
        _mm256_store_pd(idxs, lane_idx);
        for (int l = 0; l < 4; ++l) {
            const auto idx = static_cast<std::size_t>(idxs[l]);
            const bool tie = vals[l] == best.value && idx < best.index && best.index != end;
            if (vals[l] > best.value || tie) {
                best = {vals[l], idx};
            }
        }
    }
    for (; j < end; ++j) {
        const double s = ((f.a * w.re1[j] + f.b * w.im1[j]) + f.c * w.re2[j]) + f.d * w.im2[j];
        if (s > best.value) {
            best = {s, j};
        }
    }
    return best;
}

std::size_t first_at_least(const LinearForm& f, const WitnessColumns& w, std::size_t begin,
                           std::size_t end, double threshold) {
    std::size_t j = begin;
    if (end - begin >= 4) {
        const Coefficients k(f);
        const __m256d t = _mm256_set1_pd(threshold);
        for (; j + 4 <= end; j += 4) {
            const int mask = _mm256_movemask_pd(_mm256_cmp_pd(score4(k, w, j), t, _CMP_GE_OQ));
            if (mask != 0) {
                return j + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
            }
        }
    }
    for (; j < end; ++j) {
        const double s = ((f.a * w.re1[j] + f.b * w.im1[j]) + f.c * w.re2[j]) + f.d * w.im2[j];
        if (s >= threshold) {
            return j;
        }
    }
    return end;
}

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t size = a.size() < b.size() ? a.size() : b.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= size; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (; i < size; ++i) {
        lane[i % 4] = lane[i % 4] + a[i] * b[i];
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace conebell::kernels::avx2
