#include "ebr/kernels.hpp"

namespace ebr::kernels::scalar {

// Explicit real arithmetic: std::complex operator* routes through __muldc3,
// and the AVX2 path must reproduce the same operation order bit for bit.
void matmul(const cplx *a, const cplx *b, cplx *c, std::size_t n, std::size_t k, std::size_t m) {
    const double *ad = reinterpret_cast<const double *>(a);
    const double *bd = reinterpret_cast<const double *>(b);
    double *cd = reinterpret_cast<double *>(c);
    for (std::size_t i = 0; i < n; ++i) {
        double *crow = cd + 2 * i * m;
        for (std::size_t j = 0; j < 2 * m; ++j) {
            crow[j] = 0.0;
        }
        for (std::size_t l = 0; l < k; ++l) {
            const double ar = ad[2 * (i * k + l)];
            const double ai = ad[2 * (i * k + l) + 1];
            const double *brow = bd + 2 * l * m;
            for (std::size_t j = 0; j < m; ++j) {
                const double br = brow[2 * j];
                const double bi = brow[2 * j + 1];
                crow[2 * j] += ar * br - ai * bi;
                crow[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

double dot_conj_real(const cplx *a, const cplx *b, std::size_t len) {
    const double *ad = reinterpret_cast<const double *>(a);
    const double *bd = reinterpret_cast<const double *>(b);
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * len; ++i) {
        acc += ad[i] * bd[i];
    }
    return acc;
}

}  // namespace ebr::kernels::scalar
