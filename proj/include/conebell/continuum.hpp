#pragma once

// Continuous-setting limit: every observer uses all angles in [0, 2 pi).
//
// The bunched strategy takes the interval (-2pi/3, 2pi/3] for observers
// 1..N-1 and the same interval shifted by `a` for observer N. These are
// two-per-trio sets (measure 4pi/3); their one-per-trio complements give the
// same value once the (-1)^N sign of the functional is applied.

namespace conebell {

/// (8 / 3^(N/2+2)) (cos a + 2^-N cos 2a): integral of E_QM over the product of
/// the N intervals, the last one shifted by a.
double interval_lhv_value(int parties, double shift);

/// Maximum over the shift, attained at a = 0: 2^(3-N) 3^(-N/2-2) (2^N + 1).
double interval_max(int parties);

/// Midpoint-rule product quadrature of the same integral with
/// `points_per_dim` nodes per observer (>= 64). Error is O(points^-2).
double quadrature_oracle(int parties, double shift, int points_per_dim, int threads = 0);

/// 8 / (9 (2^N + 1)) * (4 pi / (3 sqrt 3))^N.
double continuous_ratio_formula(int parties);

struct ContinuousReport {
    int parties = 0;
    double qm_norm = 0.0;         // qm_norm_continuous(N)
    double interval_max = 0.0;    // raw maximal interval overlap
    double normalized_lhv = 0.0;  // 3^N * interval_max, on the same footing as qm_norm
    double ratio = 0.0;           // continuous_ratio_formula(N)
    double shift_argmax = 0.0;
};

/// Throws std::logic_error if the formula and qm_norm / normalized_lhv
/// disagree by more than 1e-12 (relative).
ContinuousReport continuous_ratio(int parties);

}  // namespace conebell
