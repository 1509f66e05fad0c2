#include "npick/io.hpp"

#include <fstream>
#include <iostream>

#include "npick/errors.hpp"

namespace npick {

namespace {

Complex entry_from_json(const Json& j) {
    if (j.is_number()) {
        return Complex(j.get<double>(), 0.0);
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex(j[0].get<double>(), j[1].get<double>());
    }
    throw DimensionMismatch("matrix entry must be a number or an [re, im] pair");
}

Json entry_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

const Json& require_key(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw DimensionMismatch(std::string("missing required key \"") + key + "\"");
    }
    return j.at(key);
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw DimensionMismatch("matrix must be an array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return ComplexMatrix(0, 0);
    if (!j[0].is_array()) throw DimensionMismatch("matrix rows must be arrays");
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw DimensionMismatch("matrix rows differ in length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            M(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
        }
    }
    return M;
}

Json matrix_to_json(const ComplexMatrix& M) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) {
            row.push_back(entry_to_json(M(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ProblemData problem_from_json(const Json& j) {
    return ProblemData(matrix_from_json(require_key(j, "Z")),
                       matrix_from_json(require_key(j, "B")),
                       matrix_from_json(require_key(j, "Btilde")));
}

Json problem_to_json(const ProblemData& prob) {
    return Json{{"Z", matrix_to_json(prob.Z)},
                {"B", matrix_to_json(prob.B)},
                {"Btilde", matrix_to_json(prob.Btilde)}};
}

RationalSystem system_from_json(const Json& j) {
    return RationalSystem::from_blocks(matrix_from_json(require_key(j, "alpha")),
                                       matrix_from_json(require_key(j, "beta")),
                                       matrix_from_json(require_key(j, "gamma")),
                                       matrix_from_json(require_key(j, "delta")));
}

Json system_to_json(const RationalSystem& sys) {
    return Json{{"alpha", matrix_to_json(sys.alpha)},
                {"beta", matrix_to_json(sys.beta)},
                {"gamma", matrix_to_json(sys.gamma)},
                {"delta", matrix_to_json(sys.delta)},
                {"spectral_radius_alpha", sys.spectral_radius_alpha},
                {"contractive_system_matrix", sys.contractive_system_matrix}};
}

SchurParameter parameter_from_json(const Json& j) {
    if (j.is_object() && j.contains("constant")) {
        return SchurParameter::constant(matrix_from_json(j.at("constant")));
    }
    if (j.is_object() && j.contains("system")) {
        return SchurParameter::dynamic(system_from_json(j.at("system")));
    }
    throw DimensionMismatch("parameter must carry \"constant\" or \"system\"");
}

LeechInstance leech_from_json(const Json& j) {
    LeechInstance inst;
    for (const Json& g : require_key(j, "G")) inst.G_coeffs.push_back(matrix_from_json(g));
    for (const Json& k : require_key(j, "K")) inst.K_coeffs.push_back(matrix_from_json(k));
    inst.N = require_key(j, "N").get<int>();
    return inst;
}

Json report_to_json(const VerificationReport& report) {
    return Json{{"interpolation_residual", report.interpolation_residual},
                {"schur_margin", report.schur_margin},
                {"j_identity_residual", report.j_identity_residual},
                {"spectral_factorization_residual", report.spectral_factorization_residual},
                {"entropy_matrix", matrix_to_json(report.entropy_matrix)},
                {"szego_lhs", report.szego_lhs},
                {"szego_rhs", report.szego_rhs},
                {"notes", report.notes}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_output(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << std::endl;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << std::endl;
}

}  // namespace npick
