#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "implicitize/curve.hpp"
#include "implicitize/geometry.hpp"
#include "implicitize/surface.hpp"

namespace implicitize {

/// Malformed or inconsistent input (maps to CLI exit code 2).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using PatchVariant = std::variant<TensorPatch, TriangularPatch>;

namespace io {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

/// Curve schema: {"type":"curve","degree":n,"coeffs":[[g1...],[g2...],[h...]]}
/// with an optional "form":"monomial" requesting conversion on load
/// (coefficients of t^0..t^n per component).
inline ParametricCurve curve_from_json(const json& j) {
    try {
        if (j.at("type").get<std::string>() != "curve") throw InputError("expected type \"curve\"");
        const int n = j.at("degree").get<int>();
        const auto rows = j.at("coeffs");
        if (!rows.is_array() || rows.size() != 3) throw InputError("curve needs 3 coefficient rows");
        const bool monomial_form = j.value("form", std::string("bernstein")) == "monomial";
        Eigen::Matrix<double, 3, Eigen::Dynamic> c(3, n + 1);
        for (int r = 0; r < 3; ++r) {
            std::vector<double> row = rows.at(r).get<std::vector<double>>();
            if (static_cast<int>(row.size()) != n + 1)
                throw InputError("curve coefficient row length != degree+1");
            if (monomial_form) row = monomial_to_bernstein(row);
            for (int k = 0; k <= n; ++k) c(r, k) = row[k];
        }
        return ParametricCurve(std::move(c));
    } catch (const json::exception& e) {
        throw InputError(std::string("bad curve file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad curve file: ") + e.what());
    }
}

inline json curve_to_json(const ParametricCurve& curve) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        json row = json::array();
        for (int k = 0; k < curve.coeffs.cols(); ++k) row.push_back(curve.coeffs(r, k));
        rows.push_back(row);
    }
    return json{{"type", "curve"}, {"degree", curve.degree()}, {"coeffs", rows}};
}

/// Patch schemas:
///   {"type":"tensor","bidegree":[n1,n2],"coeffs":[g1,g2,g3,h]} with each
///   component an (n1+1)x(n2+1) nested array;
///   {"type":"triangular","degree":n,"coeffs":[g1,g2,g3,h]} with each
///   component a length-C(n+2,2) list in descending lexicographic
///   multi-index order.
inline PatchVariant patch_from_json(const json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "tensor") {
            const auto bd = j.at("bidegree");
            const int n1 = bd.at(0).get<int>(), n2 = bd.at(1).get<int>();
            std::array<Eigen::MatrixXd, 4> comp;
            for (int c = 0; c < 4; ++c) {
                const auto grid = j.at("coeffs").at(c);
                if (static_cast<int>(grid.size()) != n1 + 1)
                    throw InputError("tensor grid rows != n1+1");
                comp[c].resize(n1 + 1, n2 + 1);
                for (int i = 0; i <= n1; ++i) {
                    const auto row = grid.at(i).get<std::vector<double>>();
                    if (static_cast<int>(row.size()) != n2 + 1)
                        throw InputError("tensor grid cols != n2+1");
                    for (int l = 0; l <= n2; ++l) comp[c](i, l) = row[l];
                }
            }
            return TensorPatch(std::move(comp));
        }
        if (type == "triangular") {
            const int n = j.at("degree").get<int>();
            const int N = static_cast<int>(detail::multi_indices(n, 3).size());
            Eigen::Matrix<double, 4, Eigen::Dynamic> c(4, N);
            for (int r = 0; r < 4; ++r) {
                const auto row = j.at("coeffs").at(r).get<std::vector<double>>();
                if (static_cast<int>(row.size()) != N)
                    throw InputError("triangular coefficient row length != C(n+2,2)");
                for (int k = 0; k < N; ++k) c(r, k) = row[k];
            }
            return TriangularPatch(n, std::move(c));
        }
        throw InputError("expected type \"tensor\" or \"triangular\"");
    } catch (const json::exception& e) {
        throw InputError(std::string("bad patch file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad patch file: ") + e.what());
    }
}

inline json frame_to_json(const BarycentricFrame& frame) {
    if (frame.is_homogeneous()) return json("homogeneous");
    json verts = json::array();
    for (int c = 0; c < frame.vertices().cols(); ++c) {
        json v = json::array();
        for (int r = 0; r < frame.vertices().rows(); ++r) v.push_back(frame.vertices()(r, c));
        verts.push_back(v);
    }
    return verts;
}

inline BarycentricFrame frame_from_json(const json& j, int dim) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "homogeneous") return BarycentricFrame::homogeneous(dim);
        if (s == "default") return BarycentricFrame::standard(dim);
        throw InputError("unknown frame \"" + s + "\"");
    }
    if (!j.is_array() || static_cast<int>(j.size()) != dim + 1)
        throw InputError("frame needs dim+1 vertices");
    Eigen::MatrixXd v(dim, dim + 1);
    for (int c = 0; c <= dim; ++c) {
        const auto pt = j.at(c).get<std::vector<double>>();
        if (static_cast<int>(pt.size()) != dim) throw InputError("frame vertex has wrong dimension");
        for (int r = 0; r < dim; ++r) v(r, c) = pt[r];
    }
    try {
        return BarycentricFrame::simplex(v);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

/// Implicit polynomial schema:
/// {"dim":2,"degree":m,"frame":[[x,y],...] | "homogeneous","b":[...]}
/// b in unit 2-norm, descending lexicographic multi-index order.
inline json implicit_to_json(const ImplicitPolynomial& q) {
    json b = json::array();
    for (int k = 0; k < q.b.size(); ++k) b.push_back(q.b[k]);
    return json{{"dim", q.dim}, {"degree", q.degree}, {"frame", frame_to_json(q.frame)}, {"b", b}};
}

inline ImplicitPolynomial implicit_from_json(const json& j) {
    try {
        const int dim = j.at("dim").get<int>();
        const int m = j.at("degree").get<int>();
        auto frame = frame_from_json(j.at("frame"), dim);
        const auto bv = j.at("b").get<std::vector<double>>();
        Eigen::VectorXd b(bv.size());
        for (std::size_t i = 0; i < bv.size(); ++i) b[static_cast<int>(i)] = bv[i];
        return ImplicitPolynomial(m, std::move(frame), std::move(b));
    } catch (const json::exception& e) {
        throw InputError(std::string("bad implicit file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad implicit file: ") + e.what());
    }
}

}  // namespace io
}  // namespace implicitize
