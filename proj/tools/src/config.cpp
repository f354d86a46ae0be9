#include "config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

#include "expression.hpp"

namespace glin::tool {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& path, const std::string& what) {
    throw ConfigError("config key '" + path + "': " + what, path);
}

void require_known_keys(const json& obj, const std::string& path,
                        const std::set<std::string>& allowed) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError("unknown config key '" + path + "." + item.key() + "'",
                              path + "." + item.key());
        }
    }
}

const json* find(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::string get_string(const json& obj, const std::string& path, const std::string& key) {
    const json* v = find(obj, key);
    if (!v || !v->is_string()) {
        bad_key(path + "." + key, "required string missing");
    }
    return v->get<std::string>();
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  std::optional<double> fallback = {}) {
    const json* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        bad_key(path + "." + key, "required number missing");
    }
    if (!v->is_number()) {
        bad_key(path + "." + key, "must be a number");
    }
    return v->get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key,
            std::optional<int> fallback = {}) {
    const json* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        bad_key(path + "." + key, "required integer missing");
    }
    if (!v->is_number_integer()) {
        bad_key(path + "." + key, "must be an integer");
    }
    return v->get<int>();
}

Expression get_expr(const json& obj, const std::string& path, const std::string& key) {
    return Expression::parse(get_string(obj, path, key));
}

StateVector sample_field(const ProblemDefinition& problem, const Expression& expr) {
    const Mesh& mesh = *problem.mesh();
    Eigen::VectorXd values(mesh.size());
    switch (mesh.kind()) {
        case MeshKind::Interval: {
            const auto& x = mesh.axis(0).coordinates;
            for (int i = 0; i < mesh.size(); ++i) {
                values[i] = expr.eval_x(x[static_cast<std::size_t>(i)]);
            }
            break;
        }
        case MeshKind::Rectangle: {
            const auto& x = mesh.axis(0).coordinates;
            const auto& y = mesh.axis(1).coordinates;
            const int nx = mesh.axis(0).size();
            for (int j = 0; j < mesh.axis(1).size(); ++j) {
                for (int i = 0; i < nx; ++i) {
                    values[j * nx + i] = expr.eval_xy(x[static_cast<std::size_t>(i)],
                                                      y[static_cast<std::size_t>(j)]);
                }
            }
            break;
        }
        case MeshKind::SpaceTimeCylinder: {
            const auto& x = mesh.axis(0).coordinates;
            const auto& t = mesh.axis(1).coordinates;
            const int nx = mesh.axis(0).size();
            for (int m = 0; m < mesh.axis(1).size(); ++m) {
                for (int i = 0; i < nx; ++i) {
                    values[m * nx + i] = expr.eval_xt(x[static_cast<std::size_t>(i)],
                                                      t[static_cast<std::size_t>(m)]);
                }
            }
            break;
        }
    }
    return problem.make_state(std::move(values));
}

ProblemDefinition build_problem(const json& node, const std::string& family) {
    const std::string path = "problem";
    if (family == "integral") {
        require_known_keys(node, path, {"family", "kernel", "g", "g_u", "domain", "n",
                                        "symmetric"});
        IntegralProblemSpec spec;
        const Expression kernel = get_expr(node, path, "kernel");
        const Expression g = get_expr(node, path, "g");
        const Expression g_u = get_expr(node, path, "g_u");
        spec.kernel = [kernel](double x, double y) { return kernel.eval_xy(x, y); };
        spec.g = [g](double u) { return g.eval_u(u); };
        spec.g_prime = [g_u](double u) { return g_u.eval_u(u); };
        if (const json* domain = find(node, "domain")) {
            if (!domain->is_array() || domain->size() != 2) {
                bad_key(path + ".domain", "must be [lo, hi]");
            }
            spec.x_lo = (*domain)[0].get<double>();
            spec.x_hi = (*domain)[1].get<double>();
        }
        spec.n = get_int(node, path, "n", 65);
        if (spec.n < 3) bad_key(path + ".n", "needs at least 3 nodes");
        if (const json* sym = find(node, "symmetric")) {
            if (!sym->is_boolean()) bad_key(path + ".symmetric", "must be a boolean");
            spec.symmetric_kernel = sym->get<bool>();
        }
        return make_integral_problem(spec);
    }
    if (family == "elliptic") {
        require_known_keys(node, path, {"family", "g", "g_u", "dimension", "n",
                                        "reaction_floor"});
        EllipticProblemSpec spec;
        const Expression g = get_expr(node, path, "g");
        const Expression g_u = get_expr(node, path, "g_u");
        spec.g = [g](double x, double y, double u) { return g.eval_xyu(x, y, u); };
        spec.g_u = [g_u](double x, double y, double u) { return g_u.eval_xyu(x, y, u); };
        spec.dimension = get_int(node, path, "dimension", 1);
        if (spec.dimension != 1 && spec.dimension != 2) {
            bad_key(path + ".dimension", "must be 1 or 2");
        }
        spec.n = get_int(node, path, "n", 64);
        if (spec.n < 3) bad_key(path + ".n", "needs at least 3 interior nodes");
        if (find(node, "reaction_floor")) {
            const double a = get_number(node, path, "reaction_floor");
            if (!(a > 0.0)) bad_key(path + ".reaction_floor", "must be positive");
            spec.reaction_floor = a;
        }
        return make_elliptic_problem(spec);
    }
    if (family == "parabolic") {
        require_known_keys(node, path, {"family", "a", "a_u", "a_uu", "gamma", "bounds",
                                        "check_range", "t_final", "n_space", "n_time"});
        ParabolicProblemSpec spec;
        const Expression a = get_expr(node, path, "a");
        const Expression a_u = get_expr(node, path, "a_u");
        const Expression a_uu = get_expr(node, path, "a_uu");
        spec.a = [a](double u) { return a.eval_u(u); };
        spec.a_prime = [a_u](double u) { return a_u.eval_u(u); };
        spec.a_second = [a_uu](double u) { return a_uu.eval_u(u); };
        if (find(node, "gamma")) {
            const Expression gamma = get_expr(node, path, "gamma");
            spec.gamma = [gamma](double u) { return gamma.eval_u(u); };
        }
        const json* bounds = find(node, "bounds");
        if (!bounds || !bounds->is_array() || bounds->size() != 2) {
            bad_key(path + ".bounds", "must be [c, m] with 0 < c <= m");
        }
        spec.bound_lower = (*bounds)[0].get<double>();
        spec.bound_upper = (*bounds)[1].get<double>();
        spec.check_range = get_number(node, path, "check_range", 2.0);
        spec.t_final = get_number(node, path, "t_final");
        if (!(spec.t_final > 0.0)) bad_key(path + ".t_final", "must be positive");
        spec.n_space = get_int(node, path, "n_space");
        spec.n_time = get_int(node, path, "n_time");
        if (spec.n_space < 3) bad_key(path + ".n_space", "needs at least 3 nodes");
        if (spec.n_time < 3) bad_key(path + ".n_time", "needs at least 3 levels");
        return make_parabolic_problem(spec);
    }
    if (family == "diagonal") {
        require_known_keys(node, path, {"family", "g", "g_u", "n"});
        DiagonalProblemSpec spec;
        const Expression g = get_expr(node, path, "g");
        const Expression g_u = get_expr(node, path, "g_u");
        spec.g = [g](double u) { return g.eval_u(u); };
        spec.g_prime = [g_u](double u) { return g_u.eval_u(u); };
        spec.n = get_int(node, path, "n", 3);
        if (spec.n < 3) bad_key(path + ".n", "needs at least 3 nodes");
        return make_diagonal_problem(spec);
    }
    bad_key("problem.family", "unknown family '" + family + "'");
}

struct RhsSpec {
    std::string source;
    std::optional<Expression> u_exact;
    std::optional<Expression> f_expr;
    std::optional<Expression> initial_value;
    double amplitude = 1.0;
};

StateVector build_rhs(const ProblemDefinition& problem, const RhsSpec& spec) {
    StateVector f = problem.zero_state();
    if (spec.source == "zero") {
        // keep zeros
    } else if (spec.source == "manufactured") {
        f = manufacture_rhs(problem, sample_field(problem, *spec.u_exact));
    } else {  // expression
        if (problem.mesh()->kind() == MeshKind::SpaceTimeCylinder) {
            const Expression u0 = *spec.initial_value;
            const Expression fe = *spec.f_expr;
            f = parabolic_rhs(
                problem, [u0](double x) { return u0.eval_x(x); },
                [fe](double x, double t) { return fe.eval_xt(x, t); });
        } else {
            f = sample_field(problem, *spec.f_expr);
        }
    }
    if (spec.amplitude != 1.0) {
        f = f.with_values(spec.amplitude * f.values());
    }
    return f;
}

}  // namespace

LoadedRun load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json root = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded() || !root.is_object()) {
        throw ConfigError("config file '" + path + "' is not a JSON object");
    }
    require_known_keys(root, "", {"problem", "rhs", "initial_guess", "iteration", "solve",
                                  "certificate", "compare", "sweep"});

    const json* problem_node = find(root, "problem");
    if (!problem_node || !problem_node->is_object()) {
        bad_key("problem", "required section missing");
    }
    const std::string family = get_string(*problem_node, "problem", "family");
    ProblemDefinition problem = build_problem(*problem_node, family);

    // ---- rhs ----
    const json* rhs_node = find(root, "rhs");
    if (!rhs_node || !rhs_node->is_object()) {
        bad_key("rhs", "required section missing");
    }
    require_known_keys(*rhs_node, "rhs",
                       {"source", "u_exact", "f", "initial_value", "amplitude"});
    RhsSpec rhs;
    rhs.source = get_string(*rhs_node, "rhs", "source");
    if (rhs.source != "manufactured" && rhs.source != "expression" && rhs.source != "zero") {
        bad_key("rhs.source", "must be one of manufactured | expression | zero");
    }
    if (rhs.source == "manufactured") {
        rhs.u_exact = get_expr(*rhs_node, "rhs", "u_exact");
    }
    if (rhs.source == "expression") {
        rhs.f_expr = get_expr(*rhs_node, "rhs", "f");
        if (problem.mesh()->kind() == MeshKind::SpaceTimeCylinder) {
            rhs.initial_value = get_expr(*rhs_node, "rhs", "initial_value");
        }
    }
    rhs.amplitude = get_number(*rhs_node, "rhs", "amplitude", 1.0);

    LoadedRun run{problem,
                  build_rhs(problem, rhs),
                  problem.zero_state(),
                  {},
                  {},
                  false,
                  0.0,
                  {},
                  {},
                  {},
                  {},
                  family,
                  rhs.amplitude};

    // ---- initial guess (default: u0 = f) ----
    run.u0 = run.f;
    if (const json* guess = find(root, "initial_guess")) {
        require_known_keys(*guess, "initial_guess", {"source", "expr"});
        const std::string source = get_string(*guess, "initial_guess", "source");
        if (source == "zero") {
            run.u0 = problem.zero_state();
        } else if (source == "expression") {
            run.u0 = sample_field(problem, get_expr(*guess, "initial_guess", "expr"));
        } else if (source != "f") {
            bad_key("initial_guess.source", "must be one of f | zero | expression");
        }
    }

    // ---- iteration ----
    if (const json* it = find(root, "iteration")) {
        require_known_keys(*it, "iteration",
                           {"max_iterations", "step_tolerance", "residual_tolerance",
                            "quadrature_order", "linearizer", "ball_radius"});
        run.iteration.max_iterations = get_int(*it, "iteration", "max_iterations", 100);
        run.iteration.step_tolerance = get_number(*it, "iteration", "step_tolerance", 1e-10);
        run.iteration.residual_tolerance =
            get_number(*it, "iteration", "residual_tolerance", 1e-10);
        run.iteration.quadrature_order = get_int(*it, "iteration", "quadrature_order", 8);
        if (find(*it, "linearizer")) {
            const std::string kind = get_string(*it, "iteration", "linearizer");
            if (kind == "quadrature") {
                run.iteration.linearizer = LinearizerKind::Quadrature;
            } else if (kind == "closed-form") {
                run.iteration.linearizer = LinearizerKind::ClosedForm;
            } else {
                bad_key("iteration.linearizer", "must be quadrature | closed-form");
            }
        }
        if (find(*it, "ball_radius")) {
            const double radius = get_number(*it, "iteration", "ball_radius");
            if (!(radius > 0.0)) bad_key("iteration.ball_radius", "must be positive");
            run.iteration.ball_radius = radius;
        }
        if (run.iteration.max_iterations < 1) {
            bad_key("iteration.max_iterations", "must be >= 1");
        }
        if (!(run.iteration.step_tolerance > 0.0)) {
            bad_key("iteration.step_tolerance", "must be positive");
        }
        if (!(run.iteration.residual_tolerance > 0.0)) {
            bad_key("iteration.residual_tolerance", "must be positive");
        }
        if (run.iteration.quadrature_order < 1) {
            bad_key("iteration.quadrature_order", "must be >= 1");
        }
    }

    // ---- solve ----
    if (const json* sv = find(root, "solve")) {
        require_known_keys(*sv, "solve", {"method", "tolerance", "max_iterations", "restart"});
        if (find(*sv, "method")) {
            const std::string method = get_string(*sv, "solve", "method");
            if (method == "auto") {
                run.solve.method = SolveMethod::Auto;
            } else if (method == "dense-lu") {
                run.solve.method = SolveMethod::DenseLU;
            } else if (method == "cg") {
                run.solve.method = SolveMethod::ConjugateGradient;
            } else if (method == "gmres") {
                run.solve.method = SolveMethod::Gmres;
            } else {
                bad_key("solve.method", "must be auto | dense-lu | cg | gmres");
            }
        }
        run.solve.tolerance = get_number(*sv, "solve", "tolerance", 1e-12);
        run.solve.max_iterations = get_int(*sv, "solve", "max_iterations", 2000);
        run.solve.restart = get_int(*sv, "solve", "restart", 30);
        if (!(run.solve.tolerance > 0.0 && run.solve.tolerance < 1.0)) {
            bad_key("solve.tolerance", "must lie in (0, 1)");
        }
        if (run.solve.max_iterations < 1) bad_key("solve.max_iterations", "must be >= 1");
        if (run.solve.restart < 1) bad_key("solve.restart", "must be >= 1");
    }
    run.iteration.solve = run.solve;

    // ---- certificate ----
    if (const json* cert = find(root, "certificate")) {
        require_known_keys(*cert, "certificate",
                           {"radius", "samples", "t_samples", "pairs", "seed"});
        run.has_certificate = true;
        run.certificate_radius = get_number(*cert, "certificate", "radius");
        if (!(run.certificate_radius > 0.0)) bad_key("certificate.radius", "must be positive");
        run.certify.samples = get_int(*cert, "certificate", "samples", 16);
        run.certify.t_samples = get_int(*cert, "certificate", "t_samples", 5);
        run.certify.pairs = get_int(*cert, "certificate", "pairs", 10);
        if (run.certify.samples < 1) bad_key("certificate.samples", "must be >= 1");
        if (run.certify.t_samples < 2) bad_key("certificate.t_samples", "must be >= 2");
        if (run.certify.pairs < 1) bad_key("certificate.pairs", "must be >= 1");
        if (const json* seed = find(*cert, "seed")) {
            if (!seed->is_number_unsigned()) bad_key("certificate.seed", "must be unsigned");
            run.certify.seed = seed->get<std::uint64_t>();
        }
        run.certify.solve = run.solve;
        run.certify.rule = gauss_legendre(run.iteration.quadrature_order);
    }
    if (seed_override) {
        run.certify.seed = *seed_override;
    }

    // ---- compare ----
    if (const json* cmp = find(root, "compare")) {
        require_known_keys(*cmp, "compare", {"methods"});
        const json* methods = find(*cmp, "methods");
        if (!methods || !methods->is_array() || methods->empty()) {
            bad_key("compare.methods", "must be a non-empty array");
        }
        for (const auto& m : *methods) {
            if (!m.is_string()) bad_key("compare.methods", "entries must be strings");
            const std::string name = m.get<std::string>();
            if (name != "global" && name != "newton" && name != "picard") {
                bad_key("compare.methods", "entries must be global | newton | picard");
            }
            run.compare_methods.push_back(name);
        }
    }

    // ---- sweep ----
    if (const json* sweep = find(root, "sweep")) {
        require_known_keys(*sweep, "sweep", {"parameter", "values"});
        run.sweep_parameter = get_string(*sweep, "sweep", "parameter");
        if (run.sweep_parameter != "f-amplitude") {
            bad_key("sweep.parameter", "only 'f-amplitude' is supported");
        }
        const json* values = find(*sweep, "values");
        if (!values || !values->is_array() || values->empty()) {
            bad_key("sweep.values", "must be a non-empty array of numbers");
        }
        for (const auto& v : *values) {
            if (!v.is_number()) bad_key("sweep.values", "entries must be numbers");
            run.sweep_values.push_back(v.get<double>());
        }
    }

    return run;
}

StateVector scaled_rhs(const LoadedRun& run, double amplitude) {
    if (run.rhs_amplitude == 0.0) {
        return run.f.with_values(0.0 * run.f.values());
    }
    return run.f.with_values((amplitude / run.rhs_amplitude) * run.f.values());
}

}  // namespace glin::tool
