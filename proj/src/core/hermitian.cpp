#include "ebr/hermitian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ebr/error.hpp"

namespace ebr {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm2(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return s;
}

double frobenius_norm2(const ComplexMatrix &a) {
    double s = 0.0;
    for (const auto &z : a.entries()) {
        s += std::norm(z);
    }
    return s;
}

}  // namespace

HermitianEigen eigh(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "eigh: matrix is not square");
    }
    if (!m.all_finite()) {
        throw Error(ErrorCode::NonFinite, "eigh: non-finite entries");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = (m + m.adjoint()) * cplx{0.5, 0.0};
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale2 = frobenius_norm2(a);
    const double stop2 = scale2 * 1e-34;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm2(a) > stop2; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                // Phase diag(1, e^{-i phi}) makes the (p,q) pair real, then a
                // real Jacobi rotation zeroes it. Combined 2x2 block:
                //   [ c,              s            ]
                //   [ -s e^{-i phi},  c e^{-i phi} ]
                const cplx phase = std::conj(apq) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx vpp = c;
                const cplx vpq = s;
                const cplx vqp = -s * phase;
                const cplx vqq = c * phase;

                // a <- a V (columns p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = akp * vpp + akq * vqp;
                    a(k, q) = akp * vpq + akq * vqq;
                }
                // a <- V† a (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
                    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = vkp * vpp + vkq * vqp;
                    v(k, q) = vkp * vpq + vkq * vqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen out;
    out.values.reserve(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        out.values.push_back(a(order[col], order[col]).real());
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, col) = v(r, order[col]);
        }
    }
    return out;
}

ComplexMatrix spectral_apply(const HermitianEigen &eig, const std::function<double(double)> &f) {
    const std::size_t n = eig.values.size();
    ComplexMatrix scaled = eig.vectors;
    for (std::size_t c = 0; c < n; ++c) {
        const double fc = f(eig.values[c]);
        for (std::size_t r = 0; r < n; ++r) {
            scaled(r, c) *= fc;
        }
    }
    return scaled * eig.vectors.adjoint();
}

ComplexMatrix sqrt_psd(const ComplexMatrix &m) {
    const HermitianEigen eig = eigh(m);
    double scale = 0.0;
    for (double v : eig.values) {
        scale = std::max(scale, std::abs(v));
    }
    const double floor = kSpectralFloor * scale;
    return spectral_apply(eig, [floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
}

std::vector<double> singular_values(const ComplexMatrix &m) {
    Eigen::MatrixXcd a(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto &sv = svd.singularValues();
    return {sv.data(), sv.data() + sv.size()};
}

}  // namespace ebr
