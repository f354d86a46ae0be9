#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "config.hpp"
#include "expression.hpp"
#include "glin/glin.hpp"
#include "reports.hpp"

using namespace glin;
using namespace glin::tool;

namespace {

struct TempConfig {
    std::filesystem::path path;

    explicit TempConfig(const std::string& text) {
        path = std::filesystem::temp_directory_path() /
               ("glin-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++) + ".json");
        std::ofstream out(path);
        out << text;
    }
    ~TempConfig() { std::filesystem::remove(path); }

    static int& counter() {
        static int n = 0;
        return n;
    }
};

}  // namespace

TEST_CASE("expression grammar") {
    CHECK(Expression::parse("1 + 2*3").eval({}) == doctest::Approx(7.0));
    CHECK(Expression::parse("2^3^2").eval({}) == doctest::Approx(512.0));  // right assoc
    CHECK(Expression::parse("-x^2").eval({.x = 3.0}) == doctest::Approx(-9.0));
    CHECK(Expression::parse("(1+x)*(1-x)").eval({.x = 0.5}) == doctest::Approx(0.75));
    CHECK(Expression::parse("sin(pi/2)").eval({}) == doctest::Approx(1.0));
    CHECK(Expression::parse("exp(0)").eval({}) == doctest::Approx(1.0));
    CHECK(Expression::parse("cos(pi*t)").eval({.t = 1.0}) == doctest::Approx(-1.0));
    CHECK(Expression::parse("u^3").eval_u(2.0) == doctest::Approx(8.0));
    CHECK(Expression::parse("x*y + t - u").eval({.x = 2, .y = 3, .t = 1, .u = 4}) ==
          doctest::Approx(3.0));
    CHECK(Expression::parse("1e-3 * x").eval_x(2.0) == doctest::Approx(2e-3));
    CHECK(Expression::parse("3 - 2 - 1").eval({}) == doctest::Approx(0.0));  // left assoc

    CHECK_THROWS_AS(Expression::parse("1 +"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("sin 3"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("foo(2)"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("(1+2"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("1 2"), ConfigError);
}

TEST_CASE("config: minimal elliptic run") {
    TempConfig cfg(R"json({
      "problem": {"family": "elliptic", "g": "u + 0.1*u^3", "g_u": "1 + 0.3*u^2",
                  "n": 16, "reaction_floor": 1.0},
      "rhs": {"source": "manufactured", "u_exact": "0.5*sin(pi*x)"}
    })json");
    const LoadedRun run = load_config(cfg.path.string(), {});
    CHECK(run.family == "elliptic");
    CHECK(run.problem.mesh()->size() == 16);
    CHECK(run.f.norm() > 0.0);
    CHECK(run.u0.values() == run.f.values());  // default guess is the datum
    CHECK(run.iteration.max_iterations == 100);

    const IterationReport report = run_fixed_point(run.problem, run.f, run.u0, run.iteration);
    CHECK(report.converged());
}

TEST_CASE("config: unknown keys are rejected with their path") {
    TempConfig cfg(R"json({
      "problem": {"family": "elliptic", "g": "u", "g_u": "1", "n": 16, "typo_key": 3},
      "rhs": {"source": "zero"}
    })json");
    try {
        load_config(cfg.path.string(), {});
        FAIL("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(std::string(err.what()).find("typo_key") != std::string::npos);
        CHECK(err.key() == "problem.typo_key");
    }
}

TEST_CASE("config: numeric preconditions are validated at load time") {
    TempConfig bad_tol(R"json({
      "problem": {"family": "elliptic", "g": "u", "g_u": "1", "n": 16},
      "rhs": {"source": "zero"},
      "solve": {"tolerance": 1.5}
    })json");
    CHECK_THROWS_AS(load_config(bad_tol.path.string(), {}), ConfigError);

    TempConfig bad_radius(R"json({
      "problem": {"family": "elliptic", "g": "u", "g_u": "1", "n": 16},
      "rhs": {"source": "zero"},
      "certificate": {"radius": -1.0}
    })json");
    CHECK_THROWS_AS(load_config(bad_radius.path.string(), {}), ConfigError);

    TempConfig bad_sweep(R"json({
      "problem": {"family": "elliptic", "g": "u", "g_u": "1", "n": 16},
      "rhs": {"source": "zero"},
      "sweep": {"parameter": "f-amplitude", "values": []}
    })json");
    CHECK_THROWS_AS(load_config(bad_sweep.path.string(), {}), ConfigError);
}

TEST_CASE("config: parabolic expression data assembles the volterra rhs") {
    TempConfig cfg(R"json({
      "problem": {"family": "parabolic", "a": "1 + 0.1*u", "a_u": "0.1", "a_uu": "0",
                  "gamma": "u + 0.05*u^2", "bounds": [0.5, 2.0], "t_final": 0.1,
                  "n_space": 8, "n_time": 6},
      "rhs": {"source": "expression", "f": "0", "initial_value": "sin(pi*x)"}
    })json");
    const LoadedRun run = load_config(cfg.path.string(), {});
    CHECK(run.problem.mesh()->kind() == MeshKind::SpaceTimeCylinder);
    // with f = 0 the data is the initial profile replicated over time levels
    const auto& x = run.problem.mesh()->axis(0).coordinates;
    const int nx = run.problem.mesh()->axis(0).size();
    for (int m = 0; m < run.problem.mesh()->axis(1).size(); ++m) {
        for (int i = 0; i < nx; ++i) {
            CHECK(run.f.values()[m * nx + i] ==
                  doctest::Approx(std::sin(std::numbers::pi * x[static_cast<std::size_t>(i)])));
        }
    }
}

TEST_CASE("config: amplitude scaling and sweep rescaling") {
    TempConfig cfg(R"json({
      "problem": {"family": "elliptic", "g": "u", "g_u": "1", "n": 16, "reaction_floor": 1.0},
      "rhs": {"source": "expression", "f": "sin(pi*x)", "amplitude": 2.0}
    })json");
    const LoadedRun run = load_config(cfg.path.string(), {});
    const StateVector rescaled = scaled_rhs(run, 6.0);
    CHECK(rescaled.norm() == doctest::Approx(3.0 * run.f.norm()));
}

TEST_CASE("config: seed override wins") {
    TempConfig cfg(R"json({
      "problem": {"family": "elliptic", "g": "u", "g_u": "1", "n": 16, "reaction_floor": 1.0},
      "rhs": {"source": "expression", "f": "sin(pi*x)"},
      "certificate": {"radius": 1.0, "seed": 11}
    })json");
    CHECK(load_config(cfg.path.string(), {}).certify.seed == 11);
    CHECK(load_config(cfg.path.string(), 99).certify.seed == 99);
}

TEST_CASE("report json round-trips its summary statistics") {
    EllipticProblemSpec spec;
    spec.g = [](double, double, double u) { return u + 0.1 * u * u * u; };
    spec.g_u = [](double, double, double u) { return 1.0 + 0.3 * u * u; };
    spec.n = 24;
    spec.reaction_floor = 1.0;
    auto problem = make_elliptic_problem(spec);
    const auto& x = problem.mesh()->axis(0).coordinates;
    Eigen::VectorXd exact(24);
    for (int i = 0; i < 24; ++i) {
        exact[i] = 0.4 * std::sin(std::numbers::pi * x[static_cast<std::size_t>(i)]);
    }
    const StateVector f = manufacture_rhs(problem, problem.make_state(exact));
    const IterationReport report = run_fixed_point(problem, f, f, {});

    const nlohmann::json doc = report_to_json(report);
    const nlohmann::json reread = nlohmann::json::parse(doc.dump(2));
    CHECK(reread.at("iterations").get<int>() == report.iterations());
    CHECK(reread.at("termination").get<std::string>() == to_string(report.termination));
    CHECK(reread.at("final_residual").get<double>() == report.residual_norms.back());
    CHECK(reread.at("step_norms").get<std::vector<double>>() == report.step_norms);
}

TEST_CASE("csv formatting is stable") {
    CHECK(csv_number(0.5) == "0.5");
    CHECK(csv_number(1e-10) == "1e-10");
    // shortest round-trip representation parses back to the same double
    const double v = 0.1 + 0.2;
    CHECK(std::stod(csv_number(v)) == v);

    IterationReport report;
    report.step_norms = {1.0, 0.25};
    report.residual_norms = {2.0, 0.5, 0.125};
    report.ratios = {0.25};
    const std::string csv = report_to_csv(report);
    CHECK(csv == "n,step_norm,residual_norm,ratio\n"
                 "0,,2,\n"
                 "1,1,0.5,\n"
                 "2,0.25,0.125,0.25\n");
}

TEST_CASE("certificate json carries verdicts and methods") {
    Certificate cert;
    cert.p = 0.1;
    cert.s = 2.0;
    cert.ps = 0.2;
    cert.inverse_bound = 0.125;
    cert.inverse_bound_finite = true;
    cert.q = 0.01;
    cert.Q = 0.04;
    cert.R = 1.0;
    cert.S_radius = 0.5;
    cert.invertibility_holds = true;
    cert.contraction_holds = true;
    cert.s_method = "dense-power-iteration";
    cert.q_method = "dense-power-iteration";
    const nlohmann::json doc = certificate_to_json(cert);
    CHECK(doc.at("verdicts").at("invertibility_holds").get<bool>());
    CHECK(doc.at("constants").at("inverse_bound").get<double>() == 0.125);
    CHECK(doc.at("estimation").at("nature").get<std::string>() == "sampled-lower-bound");

    Certificate infinite = cert;
    infinite.inverse_bound_finite = false;
    CHECK(certificate_to_json(infinite).at("constants").at("inverse_bound").is_null());
}
