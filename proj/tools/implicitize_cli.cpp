// Command-line driver: implicitization runs, error profiles, and the
// comparison/convergence experiments, emitting JSON and CSV artifacts.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "implicitize/implicitize.hpp"

namespace imp = implicitize;
using nlohmann::json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

imp::Method parse_method(const std::string& name) {
    for (auto m : {imp::Method::bernstein, imp::Method::lagrange_uniform,
                   imp::Method::lagrange_chebyshev, imp::Method::chebyshev, imp::Method::legendre,
                   imp::Method::legendre_orthonormal, imp::Method::monomial,
                   imp::Method::weak_unit, imp::Method::weak_chebyshev}) {
        if (imp::method_name(m) == name) return m;
    }
    throw imp::InputError("unknown method \"" + name + "\"");
}

imp::SurfaceMethod parse_surface_method(const std::string& name) {
    for (auto m : {imp::SurfaceMethod::tensor_bernstein, imp::SurfaceMethod::tensor_lagrange_uniform,
                   imp::SurfaceMethod::tensor_chebyshev,
                   imp::SurfaceMethod::tensor_legendre_orthonormal, imp::SurfaceMethod::tri_bernstein,
                   imp::SurfaceMethod::tri_lagrange, imp::SurfaceMethod::weak_unit}) {
        if (imp::method_name(m) == name) return m;
    }
    throw imp::InputError("unknown surface method \"" + name + "\"");
}

imp::BarycentricFrame resolve_frame(const std::string& spec, int dim,
                                    const imp::ParametricCurve* curve,
                                    const imp::PatchVariant* patch) {
    if (spec == "default") return imp::BarycentricFrame::standard(dim);
    if (spec == "homogeneous") return imp::BarycentricFrame::homogeneous(dim);
    if (spec == "auto") {
        if (curve) return imp::auto_frame(*curve);
        if (patch)
            return std::visit([](const auto& p) { return imp::auto_frame(p); }, *patch);
        throw imp::InputError("--frame auto needs an input geometry");
    }
    // otherwise a path to a JSON vertex list
    return imp::io::frame_from_json(imp::io::load_json_file(spec), dim);
}

std::string default_diag_path(const std::string& out) {
    auto dot = out.rfind('.');
    const std::string stem = (dot == std::string::npos) ? out : out.substr(0, dot);
    return stem + ".diag.json";
}

json diagnostics_json(const imp::ImplicitizationResult& r, int kernel_dim, double max_err,
                      int sign_changes, bool has_bound) {
    json sigma = json::array();
    for (int i = 0; i < r.sigma.size(); ++i) sigma.push_back(r.sigma[i]);
    json d{{"method", r.method},
           {"sigma", sigma},
           {"sigma_min", r.sigma_min()},
           {"sigma_max", r.sigma_max()},
           {"sigma_ratio", r.sigma_max() > 0 ? r.sigma_min() / r.sigma_max() : 0.0},
           {"selected_index", r.selected_index},
           {"kernel_dimension", kernel_dim},
           {"max_algebraic_error", max_err},
           {"error_sign_changes", sign_changes}};
    if (has_bound) d["error_bound"] = r.bound;
    return d;
}

struct CommonArgs {
    std::string input;
    std::string method = "legendre-orthonormal";
    int degree = 2;
    std::string frame = "default";
    int index = 0;
    int samples = 1001;
    int oversample = 0;
    std::string out;
    std::string diagnostics;
};

int cmd_implicitize(const CommonArgs& a) {
    const auto curve = imp::io::curve_from_json(imp::io::load_json_file(a.input));
    const auto frame = resolve_frame(a.frame, 2, &curve, nullptr);
    const auto method = parse_method(a.method);

    imp::ImplicitizationResult result;
    imp::CoefficientMatrix mat;
    bool has_bound = false;
    if (imp::is_weak(method)) {
        const auto weight = (method == imp::Method::weak_unit) ? imp::WeakWeight::unit
                                                               : imp::WeakWeight::chebyshev;
        mat = imp::build_weak(curve, a.degree, frame, weight);
        result = imp::min_eigen(mat, a.index);
    } else {
        imp::BuildOptions opts;
        opts.basis_size = a.oversample;
        mat = imp::build_D(curve, a.degree, frame, method, opts);
        result = imp::min_singular(mat, a.index);
        result.bound = imp::error_bound(mat, result);
        has_bound = true;
    }
    const int kdim = imp::kernel_dimension(mat, 1e-10);
    const double max_err = imp::algebraic_error_max(curve, *result.solution, a.samples);
    const int signs = imp::error_sign_changes(curve, *result.solution, a.samples);

    const std::string out = a.out.empty() ? "implicit.json" : a.out;
    imp::io::write_json_file(out, imp::io::implicit_to_json(*result.solution));
    const std::string diag = a.diagnostics.empty() ? default_diag_path(out) : a.diagnostics;
    imp::io::write_json_file(diag, diagnostics_json(result, kdim, max_err, signs, has_bound));
    std::cout << "wrote " << out << " and " << diag << "\n";
    return 0;
}

int cmd_error_profile(const std::string& curve_path, const std::string& implicit_path, int samples,
                      const std::string& out) {
    const auto curve = imp::io::curve_from_json(imp::io::load_json_file(curve_path));
    const auto q = imp::io::implicit_from_json(imp::io::load_json_file(implicit_path));
    if (q.dim != 2) throw imp::InputError("error-profile: implicit polynomial is not planar");
    std::ofstream os(out);
    if (!os) throw imp::InputError("cannot write " + out);
    os << "t,error\n";
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const double e = q.eval(imp::eval_curve(curve, t));
        os << fmt17(t) << "," << fmt17(e) << "\n";
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_compare(int count, int curve_degree, const std::string& degrees, std::uint64_t seed,
                int samples, const std::string& out, const std::string& format) {
    imp::CompareConfig cfg;
    cfg.curve_count = count;
    cfg.curve_degree = curve_degree;
    cfg.seed = seed;
    cfg.error_samples = samples;
    if (!degrees.empty()) {
        const auto sep = degrees.find("..");
        if (sep == std::string::npos) {
            cfg.m_min = cfg.m_max = std::stoi(degrees);
        } else {
            cfg.m_min = std::stoi(degrees.substr(0, sep));
            cfg.m_max = std::stoi(degrees.substr(sep + 2));
        }
    }
    if (cfg.m_min < 1 || cfg.m_max < cfg.m_min) throw imp::InputError("bad --degrees range");
    const auto rows = imp::compare_methods(cfg);
    if (format == "json") {
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back({{"method", imp::method_name(r.method)},
                             {"m", r.m},
                             {"mean_max_error", r.mean_max_error}});
        imp::io::write_json_file(out, jrows);
    } else {
        std::ofstream os(out);
        if (!os) throw imp::InputError("cannot write " + out);
        os << "method,m,mean_max_error\n";
        for (const auto& r : rows)
            os << imp::method_name(r.method) << "," << r.m << "," << fmt17(r.mean_max_error)
               << "\n";
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_convergence(const std::string& curve_path, const std::string& method, int m, int steps,
                    double h0, double ratio, int samples, const std::string& out) {
    const auto curve = imp::io::curve_from_json(imp::io::load_json_file(curve_path));
    imp::ConvergenceConfig cfg;
    cfg.method = parse_method(method);
    if (imp::is_weak(cfg.method)) throw imp::InputError("convergence: needs a D-type method");
    cfg.m = m;
    cfg.steps = steps;
    cfg.h_start = h0;
    cfg.h_ratio = ratio;
    cfg.error_samples = samples;
    const auto res = imp::convergence_study(curve, cfg);
    std::ofstream os(out);
    if (!os) throw imp::InputError("cannot write " + out);
    os << "h,max_error\n";
    for (std::size_t i = 0; i < res.h.size(); ++i) {
        os << fmt17(res.h[i]) << "," << fmt17(res.max_error[i]) << "\n";
        if (res.at_floor[i])
            std::cerr << "warning: error at h=" << res.h[i]
                      << " is at the roundoff floor; excluded from the slope fit\n";
    }
    os << "# slope = " << fmt17(res.slope) << " (fitted on " << res.fitted_points << " points)\n";
    std::cout << "slope = " << fmt17(res.slope) << "\n";
    return 0;
}

int cmd_surface(const CommonArgs& a, int grid) {
    const auto patch = imp::io::patch_from_json(imp::io::load_json_file(a.input));
    const auto frame = resolve_frame(a.frame, 3, nullptr, &patch);
    const auto method = parse_surface_method(a.method);

    imp::SurfaceCoefficientMatrix mat;
    if (imp::is_weak(method)) {
        mat = std::visit(
            [&](const auto& p) { return imp::weak_matrix_surface(p, a.degree, frame); }, patch);
    } else if (std::holds_alternative<imp::TensorPatch>(patch)) {
        mat = imp::build_D_tensor(std::get<imp::TensorPatch>(patch), a.degree, frame, method);
    } else {
        mat = imp::build_D_triangular(std::get<imp::TriangularPatch>(patch), a.degree, frame, method);
    }
    const auto result = imp::is_weak(method) ? imp::min_eigen(mat, a.index)
                                             : imp::min_singular(mat, a.index);
    const int kdim = [&] {
        imp::CoefficientMatrix c;
        c.entries = mat.entries;
        return imp::kernel_dimension(c, 1e-10);
    }();
    const double max_err = std::visit(
        [&](const auto& p) { return imp::algebraic_error_max_surface(p, *result.solution, grid); },
        patch);

    const std::string out = a.out.empty() ? "implicit.json" : a.out;
    imp::io::write_json_file(out, imp::io::implicit_to_json(*result.solution));
    const std::string diag = a.diagnostics.empty() ? default_diag_path(out) : a.diagnostics;
    imp::io::write_json_file(diag, diagnostics_json(result, kdim, max_err, 0, false));
    std::cout << "wrote " << out << " and " << diag << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate implicitization of rational parametric curves and surfaces"};
    app.require_subcommand(1);

    CommonArgs ia;
    auto* sub_impl = app.add_subcommand("implicitize", "implicitize a curve file");
    sub_impl->add_option("input", ia.input, "curve JSON file")->required();
    sub_impl->add_option("--method", ia.method, "basis / weak method");
    sub_impl->add_option("--degree", ia.degree, "implicit degree m");
    sub_impl->add_option("--frame", ia.frame, "default|auto|homogeneous|PATH");
    sub_impl->add_option("--index", ia.index, "singular vector index from the smallest");
    sub_impl->add_option("--samples", ia.samples, "error sample count");
    sub_impl->add_option("--oversample", ia.oversample, "basis size L > mn+1 (Bernstein/Lagrange)");
    sub_impl->add_option("--out", ia.out, "output implicit JSON path");
    sub_impl->add_option("--diagnostics", ia.diagnostics, "diagnostics JSON path");

    std::string ep_curve, ep_implicit, ep_out = "profile.csv";
    int ep_samples = 1001;
    auto* sub_prof = app.add_subcommand("error-profile", "sample q(p(t)) to CSV");
    sub_prof->add_option("input", ep_curve, "curve JSON file")->required();
    sub_prof->add_option("--implicit", ep_implicit, "implicit JSON file")->required();
    sub_prof->add_option("--samples", ep_samples, "row count");
    sub_prof->add_option("--out", ep_out, "output CSV path");

    int cp_count = 100, cp_degree = 10, cp_samples = 1001;
    std::uint64_t cp_seed = 1;
    std::string cp_degrees = "1..10", cp_out = "compare.csv", cp_format = "csv";
    auto* sub_cmp = app.add_subcommand("compare", "mean max-error per (method, m) over random curves");
    sub_cmp->add_option("--count", cp_count, "number of random curves");
    sub_cmp->add_option("--curve-degree", cp_degree, "parametric degree of the random curves");
    sub_cmp->add_option("--degrees", cp_degrees, "implicit degree range A..B");
    sub_cmp->add_option("--seed", cp_seed, "RNG seed");
    sub_cmp->add_option("--samples", cp_samples, "error sample count");
    sub_cmp->add_option("--out", cp_out, "output path");
    sub_cmp->add_option("--format", cp_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string cv_curve, cv_method = "chebyshev", cv_out = "convergence.csv";
    int cv_m = 1, cv_steps = 8, cv_samples = 1001;
    double cv_h0 = 0.5, cv_ratio = 0.5;
    auto* sub_conv = app.add_subcommand("convergence", "error vs segment width with fitted slope");
    sub_conv->add_option("input", cv_curve, "curve JSON file")->required();
    sub_conv->add_option("--method", cv_method, "D-type method");
    sub_conv->add_option("--degree", cv_m, "implicit degree m");
    sub_conv->add_option("--steps", cv_steps, "ladder length");
    sub_conv->add_option("--h0", cv_h0, "first segment width");
    sub_conv->add_option("--ratio", cv_ratio, "width ratio per step");
    sub_conv->add_option("--samples", cv_samples, "error sample count");
    sub_conv->add_option("--out", cv_out, "output CSV path");

    CommonArgs sa;
    sa.method = "tensor-legendre-orthonormal";
    int sf_grid = 33;
    auto* sub_surf = app.add_subcommand("surface", "implicitize a patch file");
    sub_surf->add_option("input", sa.input, "patch JSON file")->required();
    sub_surf->add_option("--method", sa.method, "surface method");
    sub_surf->add_option("--degree", sa.degree, "implicit degree m");
    sub_surf->add_option("--frame", sa.frame, "default|auto|homogeneous|PATH");
    sub_surf->add_option("--index", sa.index, "singular vector index from the smallest");
    sub_surf->add_option("--grid", sf_grid, "error grid per axis");
    sub_surf->add_option("--out", sa.out, "output implicit JSON path");
    sub_surf->add_option("--diagnostics", sa.diagnostics, "diagnostics JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (sub_impl->parsed()) return cmd_implicitize(ia);
        if (sub_prof->parsed()) return cmd_error_profile(ep_curve, ep_implicit, ep_samples, ep_out);
        if (sub_cmp->parsed())
            return cmd_compare(cp_count, cp_degree, cp_degrees, cp_seed, cp_samples, cp_out,
                               cp_format);
        if (sub_conv->parsed())
            return cmd_convergence(cv_curve, cv_method, cv_m, cv_steps, cv_h0, cv_ratio, cv_samples,
                                   cv_out);
        if (sub_surf->parsed()) return cmd_surface(sa, sf_grid);
    } catch (const imp::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
