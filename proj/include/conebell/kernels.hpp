#pragma once

// Inner-loop kernels for the strategy search.
//
// Each kernel has a portable scalar reference and, where the target allows,
// an AVX2 (x86-64) or NEON (aarch64) variant. Variants are selected at run
// time and must agree with the scalar reference bit for bit: the vector code
// evaluates the same expression tree per lane and all kernel sources are built
// with -ffp-contract=off.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace conebell::kernels {

/// Structure-of-arrays view of a list of Fourier witnesses.
struct WitnessColumns {
    std::span<const double> re1;
    std::span<const double> im1;
    std::span<const double> re2;
    std::span<const double> im2;

    std::size_t size() const noexcept { return re1.size(); }
};

/// score(j) = ((a * re1[j] + b * im1[j]) + c * re2[j]) + d * im2[j]
struct LinearForm {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

struct BestScore {
    double value;
    std::size_t index;  // first index attaining `value`; == end for empty ranges
};

using MaxScoreFn = BestScore (*)(const LinearForm&, const WitnessColumns&, std::size_t begin,
                                 std::size_t end);
/// First j in [begin, end) with score(j) >= threshold, or `end`.
using FirstAtLeastFn = std::size_t (*)(const LinearForm&, const WitnessColumns&, std::size_t begin,
                                       std::size_t end, double threshold);
/// Dot product accumulated in four interleaved partial sums, combined as
/// (s0 + s1) + (s2 + s3).
using DotFn = double (*)(std::span<const double>, std::span<const double>);

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
Isa parse_isa(std::string_view name);

struct KernelTable {
    Isa isa;
    MaxScoreFn max_score;
    FirstAtLeastFn first_at_least;
    DotFn dot;
};

/// Instruction sets compiled in and supported by the running CPU; scalar first.
std::vector<Isa> supported_isas();

/// Throws std::invalid_argument for an unsupported instruction set.
const KernelTable& kernels_for(Isa isa);

/// Widest supported set, unless CONEBELL_ISA names another supported one.
Isa detect_isa();
const KernelTable& active_kernels();

namespace scalar {
BestScore max_score(const LinearForm&, const WitnessColumns&, std::size_t, std::size_t);
std::size_t first_at_least(const LinearForm&, const WitnessColumns&, std::size_t, std::size_t, double);
double dot(std::span<const double>, std::span<const double>);
}  // namespace scalar

#if defined(CONEBELL_HAVE_AVX2)
namespace avx2 {
BestScore max_score(const LinearForm&, const WitnessColumns&, std::size_t, std::size_t);
std::size_t first_at_least(const LinearForm&, const WitnessColumns&, std::size_t, std::size_t, double);
double dot(std::span<const double>, std::span<const double>);
}  // namespace avx2
#endif

#if defined(CONEBELL_HAVE_NEON)
namespace neon {
BestScore max_score(const LinearForm&, const WitnessColumns&, std::size_t, std::size_t);
std::size_t first_at_least(const LinearForm&, const WitnessColumns&, std::size_t, std::size_t, double);
double dot(std::span<const double>, std::span<const double>);
}  // namespace neon
#endif

}  // namespace conebell::kernels
