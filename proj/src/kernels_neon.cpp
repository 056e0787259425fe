#include <arm_neon.h>

#include <limits>

#include "conebell/kernels.hpp"

namespace conebell::kernels::neon {

namespace {

inline float64x2_t score2(const LinearForm& f, const WitnessColumns& w, std::size_t j) {
    float64x2_t s = vaddq_f64(vmulq_n_f64(vld1q_f64(&w.re1[j]), f.a),
                              vmulq_n_f64(vld1q_f64(&w.im1[j]), f.b));
    s = vaddq_f64(s, vmulq_n_f64(vld1q_f64(&w.re2[j]), f.c));
    return vaddq_f64(s, vmulq_n_f64(vld1q_f64(&w.im2[j]), f.d));
}

}  // namespace

BestScore max_score(const LinearForm& f, const WitnessColumns& w, std::size_t begin,
                    std::size_t end) {
    BestScore best{-std::numeric_limits<double>::infinity(), end};
    std::size_t j = begin;
    if (end - begin >= 2) {
        float64x2_t lane_best = vdupq_n_f64(-std::numeric_limits<double>::infinity());
        float64x2_t lane_idx = vdupq_n_f64(0.0);
        const double start[2] = {static_cast<double>(j), static_cast<double>(j + 1)};
        float64x2_t cur_idx = vld1q_f64(start);
        const float64x2_t step = vdupq_n_f64(2.0);
        for (; j + 2 <= end; j += 2) {
            const float64x2_t s = score2(f, w, j);
            const uint64x2_t gt = vcgtq_f64(s, lane_best);
            lane_best = vbslq_f64(gt, s, lane_best);
            lane_idx = vbslq_f64(gt, cur_idx, lane_idx);
            cur_idx = vaddq_f64(cur_idx, step);
        }
        const double vals[2] = {vgetq_lane_f64(lane_best, 0), vgetq_lane_f64(lane_best, 1)};
        const double idxs[2] = {vgetq_lane_f64(lane_idx, 0), vgetq_lane_f64(lane_idx, 1)};
        for (int l = 0; l < 2; ++l) {
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
    const float64x2_t t = vdupq_n_f64(threshold);
    for (; j + 2 <= end; j += 2) {
        const uint64x2_t ge = vcgeq_f64(score2(f, w, j), t);
        if (vgetq_lane_u64(ge, 0) != 0) {
            return j;
        }
        if (vgetq_lane_u64(ge, 1) != 0) {
            return j + 1;
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
    // lanes {0,1} and {2,3} of the four-way layout
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= size; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(&a[i]), vld1q_f64(&b[i])));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(&a[i + 2]), vld1q_f64(&b[i + 2])));
    }
    double lane[4] = {vgetq_lane_f64(lo, 0), vgetq_lane_f64(lo, 1), vgetq_lane_f64(hi, 0),
                      vgetq_lane_f64(hi, 1)};
    for (; i < size; ++i) {
        lane[i % 4] = lane[i % 4] + a[i] * b[i];
    }
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

}  // namespace conebell::kernels::neon
