#include "ebr/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "ebr/error.hpp"

namespace ebr {

nlohmann::json to_json(const DensityOperator &rho) {
    nlohmann::json j;
    j["dim"] = rho.dim();
    if (rho.dim() == 4) {
        j["basis"] = BasisOrder::labels;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            row.push_back({rho(r, c).real(), rho(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    j["trace_weight"] = rho.trace_weight();
    return j;
}

DensityOperator density_from_json(const nlohmann::json &j) {
    try {
        const auto &rows = j.at("matrix");
        const std::size_t dim = rows.size();
        if (j.contains("dim") && j.at("dim").get<std::size_t>() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "density json: dim field disagrees with matrix");
        }
        if (j.contains("basis") && dim == 4) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (j.at("basis").at(i).get<std::string>() != BasisOrder::labels[i]) {
                    throw Error(ErrorCode::Config, "density json: basis order must be HH,HV,VH,VV");
                }
            }
        }
        ComplexMatrix m(dim, dim);
        for (std::size_t r = 0; r < dim; ++r) {
            if (rows.at(r).size() != dim) {
                throw Error(ErrorCode::DimensionMismatch, "density json: matrix is not square");
            }
            for (std::size_t c = 0; c < dim; ++c) {
                const auto &z = rows.at(r).at(c);
                m(r, c) = cplx{z.at(0).get<double>(), z.at(1).get<double>()};
            }
        }
        DensityOperator rho(std::move(m));
        if (j.contains("trace_weight") &&
            std::abs(j.at("trace_weight").get<double>() - rho.trace_weight()) > kTolTrace) {
            throw Error(ErrorCode::InvalidParams, "density json: trace_weight disagrees with matrix trace");
        }
        return rho;
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorCode::Config, std::string("density json: ") + e.what());
    }
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

std::string format_shortest(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

}  // namespace ebr
