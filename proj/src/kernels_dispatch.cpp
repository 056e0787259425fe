#include <cstdlib>
#include <stdexcept>
#include <string>

#include "conebell/kernels.hpp"

namespace conebell::kernels {

namespace {

constexpr KernelTable scalar_table{Isa::scalar, &scalar::max_score, &scalar::first_at_least,
                                   &scalar::dot};
#if defined(CONEBELL_HAVE_AVX2)
constexpr KernelTable avx2_table{Isa::avx2, &avx2::max_score, &avx2::first_at_least, &avx2::dot};
#endif
#if defined(CONEBELL_HAVE_NEON)
constexpr KernelTable neon_table{Isa::neon, &neon::max_score, &neon::first_at_least, &neon::dot};
#endif

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(CONEBELL_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(CONEBELL_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

Isa parse_isa(std::string_view name) {
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (isa_name(isa) == name) {
            return isa;
        }
    }
    throw std::invalid_argument("unknown instruction set: " + std::string(name));
}

std::vector<Isa> supported_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (cpu_supports(isa)) {
            out.push_back(isa);
        }
    }
    return out;
}

const KernelTable& kernels_for(Isa isa) {
    if (!cpu_supports(isa)) {
        throw std::invalid_argument("instruction set not available: " + std::string(isa_name(isa)));
    }
    switch (isa) {
#if defined(CONEBELL_HAVE_AVX2)
        case Isa::avx2:
            return avx2_table;
#endif
#if defined(CONEBELL_HAVE_NEON)
        case Isa::neon:
            return neon_table;
#endif
        default:
            return scalar_table;
    }
}

Isa detect_isa() {
    if (const char* forced = std::getenv("CONEBELL_ISA"); forced != nullptr && *forced != '\0') {
        const Isa isa = parse_isa(forced);
        if (!cpu_supports(isa)) {
            throw std::invalid_argument("CONEBELL_ISA names an unavailable instruction set");
        }
        return isa;
    }
    return supported_isas().back();
}

const KernelTable& active_kernels() {
    static const KernelTable& table = kernels_for(detect_isa());
    return table;
}

}  // namespace conebell::kernels
