#pragma once

// Analytic upper bound on the local-realistic overlap.
//
// The witness vector of a strategy is, up to the common norm sqrt(3n/2), the
// projection of its characteristic vector onto span{c1, s1, c2, s2}. The
// overlap of N strategies is at most (8/3^(2+N)) * max_sigma |witness|^N.

#include "conebell/grid.hpp"
#include "conebell/lhv_search.hpp"

namespace conebell {

struct ProjectionBound {
    int trios = 0;
    double max_witness_magnitude = 0.0;
    SigmaAssignment argmax_sigma;  // lexicographically first maximizer
};

/// Exact maximum of sqrt(|w1|^2 + |w2|^2) over all 3^n strategies; n >= 2.
ProjectionBound max_projection(int trios, const SearchOptions& options = {});

/// (8/3^(2+N)) * max_witness_magnitude^N.
double analytic_bound(const ProjectionBound& projection, int parties);
double analytic_bound(int trios, int parties, const SearchOptions& options = {});

/// qm_norm_discrete(n, N) / analytic_bound(n, N); a lower bound on the true
/// violation ratio. Equals (8/9) (n / max_witness_magnitude)^N.
double bound_ratio(const ProjectionBound& projection, int parties);
double bound_ratio(int trios, int parties, const SearchOptions& options = {});

}  // namespace conebell
