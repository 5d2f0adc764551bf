#pragma once

// Dense complex inner loops. Every kernel has a portable scalar reference and
// an AVX2 variant; `active()` picks one at first use from the running CPU.
// Setting EBR_SIM_KERNELS=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace ebr::kernels {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// C (n x m) = A (n x k) * B (k x m), all row-major, C must not alias A or B.
using MatmulFn = void (*)(const cplx *a, const cplx *b, cplx *c, std::size_t n, std::size_t k,
                          std::size_t m);

/// Re sum_i a_i * conj(b_i). With row-major Hermitian B this is Re tr(A B).
using DotConjRealFn = double (*)(const cplx *a, const cplx *b, std::size_t len);

struct KernelTable {
    Isa isa;
    MatmulFn matmul;
    DotConjRealFn dot_conj_real;
};

namespace scalar {
void matmul(const cplx *a, const cplx *b, cplx *c, std::size_t n, std::size_t k, std::size_t m);
double dot_conj_real(const cplx *a, const cplx *b, std::size_t len);
}  // namespace scalar

#if defined(EBR_HAVE_AVX2)
namespace avx2 {
void matmul(const cplx *a, const cplx *b, cplx *c, std::size_t n, std::size_t k, std::size_t m);
double dot_conj_real(const cplx *a, const cplx *b, std::size_t len);
}  // namespace avx2
#endif

/// True when the AVX2 variant was compiled in and the CPU reports support.
bool avx2_available();

KernelTable table_for(Isa isa);

const KernelTable &active();

inline double dot_conj_real(std::span<const cplx> a, std::span<const cplx> b) {
    return active().dot_conj_real(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

}  // namespace ebr::kernels
