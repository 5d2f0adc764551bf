// Compiled with -mavx2 only. FMA stays off so the matmul accumulation matches
// the scalar reference exactly.
#include "ebr/kernels.hpp"

#include <immintrin.h>

namespace ebr::kernels::avx2 {

void matmul(const cplx *a, const cplx *b, cplx *c, std::size_t n, std::size_t k, std::size_t m) {
    const double *ad = reinterpret_cast<const double *>(a);
    const double *bd = reinterpret_cast<const double *>(b);
    double *cd = reinterpret_cast<double *>(c);
    const std::size_t m_pairs = m / 2;
    for (std::size_t i = 0; i < n; ++i) {
        double *crow = cd + 2 * i * m;
        for (std::size_t jp = 0; jp < m_pairs; ++jp) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t l = 0; l < k; ++l) {
                const __m256d ar = _mm256_set1_pd(ad[2 * (i * k + l)]);
                const __m256d ai = _mm256_set1_pd(ad[2 * (i * k + l) + 1]);
                const __m256d bv = _mm256_loadu_pd(bd + 2 * (l * m + 2 * jp));
                const __m256d bswap = _mm256_permute_pd(bv, 0b0101);
                // [ar*br - ai*bi, ar*bi + ai*br] per complex lane
                acc = _mm256_add_pd(acc, _mm256_addsub_pd(_mm256_mul_pd(ar, bv), _mm256_mul_pd(ai, bswap)));
            }
            _mm256_storeu_pd(crow + 4 * jp, acc);
        }
        if (m % 2 != 0) {
            const std::size_t j = m - 1;
            double re = 0.0;
            double im = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                const double ar = ad[2 * (i * k + l)];
                const double ai = ad[2 * (i * k + l) + 1];
                const double br = bd[2 * (l * m + j)];
                const double bi = bd[2 * (l * m + j) + 1];
                re += ar * br - ai * bi;
                im += ar * bi + ai * br;
            }
            crow[2 * j] = re;
            crow[2 * j + 1] = im;
        }
    }
}

double dot_conj_real(const cplx *a, const cplx *b, std::size_t len) {
    const double *ad = reinterpret_cast<const double *>(a);
    const double *bd = reinterpret_cast<const double *>(b);
    const std::size_t doubles = 2 * len;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= doubles; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(ad + i), _mm256_loadu_pd(bd + i)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < doubles; ++i) {
        sum += ad[i] * bd[i];
    }
    return sum;
}

}  // namespace ebr::kernels::avx2
