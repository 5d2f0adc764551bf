#include "ebr/kernels.hpp"

#include <cstdlib>
#include <string>

namespace ebr::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return "scalar";
        case Isa::Avx2:
            return "avx2";
    }
    return "unknown";
}

bool avx2_available() {
#if defined(EBR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

KernelTable table_for(Isa isa) {
#if defined(EBR_HAVE_AVX2)
    if (isa == Isa::Avx2 && avx2_available()) {
        return {Isa::Avx2, &avx2::matmul, &avx2::dot_conj_real};
    }
#endif
    (void)isa;
    return {Isa::Scalar, &scalar::matmul, &scalar::dot_conj_real};
}

namespace {

KernelTable select_table() {
    const char *forced = std::getenv("EBR_SIM_KERNELS");
    if (forced != nullptr && std::string(forced) == "scalar") {
        return table_for(Isa::Scalar);
    }
    return table_for(avx2_available() ? Isa::Avx2 : Isa::Scalar);
}

}  // namespace

const KernelTable &active() {
    static const KernelTable table = select_table();
    return table;
}

}  // namespace ebr::kernels
