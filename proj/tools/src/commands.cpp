#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

#include "reports.hpp"

namespace glin::tool {

namespace {

using nlohmann::json;

int exit_code_of(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::ConvergedStep:
        case TerminationReason::ConvergedResidual:
            return kExitOk;
        case TerminationReason::MaxIterations:
            return kExitMaxIterations;
        case TerminationReason::Diverged:
            return kExitDiverged;
        case TerminationReason::SingularOperator:
            return kExitSingular;
    }
    return kExitOk;
}

std::string out_path(const CliOptions& cli, const std::string& name) {
    std::filesystem::create_directories(cli.out_dir);
    return (std::filesystem::path(cli.out_dir) / name).string();
}

void info(const CliOptions& cli, const std::string& line) {
    if (!cli.quiet) {
        std::cout << line << "\n";
    }
}

}  // namespace

int cmd_solve(const CliOptions& cli) {
    const LoadedRun run = load_config(cli.config_path, cli.seed);
    const IterationReport report = run_fixed_point(run.problem, run.f, run.u0, run.iteration);

    json doc = report_to_json(report);
    doc["command"] = "solve";
    doc["family"] = run.family;
    write_json_file(out_path(cli, "report.json"), doc);
    write_text_file(out_path(cli, "table.csv"), report_to_csv(report));

    info(cli, "solve: " + to_string(report.termination) + " after " +
                  std::to_string(report.iterations()) + " iterations");
    return exit_code_of(report.termination);
}

int cmd_certify(const CliOptions& cli) {
    const LoadedRun run = load_config(cli.config_path, cli.seed);
    if (!run.has_certificate) {
        throw ConfigError("certify needs a 'certificate' section with a radius",
                          "certificate");
    }
    const Certificate cert = certify_problem(run.problem, run.f, run.u0,
                                             run.certificate_radius, run.certify);

    json doc = certificate_to_json(cert);
    doc["command"] = "certify";
    doc["family"] = run.family;

    // the admissible-contraction interval for this radius (reported so the
    // user can iterate on R)
    try {
        const auto L0 = linearize_by_quadrature(run.problem, run.u0,
                                                gauss_legendre(run.iteration.quadrature_order));
        const ContractionInterval interval =
            feasible_contraction(run.u0, run.f, run.certificate_radius, L0, run.solve);
        doc["feasible_interval"] = {{"q_max", interval.q_max},
                                    {"Q_of_R", interval.Q_of_R},
                                    {"feasible", interval.feasible}};
    } catch (const InvalidArgumentError&) {
        doc["feasible_interval"] = nullptr;  // R <= |u0| or f = 0
    }

    write_json_file(out_path(cli, "report.json"), doc);

    const bool ok = cert.invertibility_holds && cert.contraction_holds;
    info(cli, std::string("certify: invertibility ") +
                  (cert.invertibility_holds ? "holds" : "fails") + ", contraction " +
                  (cert.contraction_holds ? "holds" : "fails"));
    return ok ? kExitOk : kExitCertificateFailed;
}

int cmd_compare(const CliOptions& cli) {
    const LoadedRun run = load_config(cli.config_path, cli.seed);
    if (run.compare_methods.empty()) {
        throw ConfigError("compare needs a 'compare.methods' list", "compare.methods");
    }

    std::string csv = "method,iterations,final_residual,wall_time_ms,termination\n";
    json rows = json::array();
    int exit_code = kExitOk;

    for (const std::string& method : run.compare_methods) {
        const auto start = std::chrono::steady_clock::now();
        json row;
        row["method"] = method;
        try {
            IterationReport report =
                (method == "global")   ? run_fixed_point(run.problem, run.f, run.u0, run.iteration)
                : (method == "newton") ? newton_solve(run.problem, run.f, run.u0, run.iteration)
                                       : picard_solve(run.problem, run.f, run.u0, run.iteration);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            const double final_residual =
                report.residual_norms.empty() ? 0.0 : report.residual_norms.back();
            csv += method + "," + std::to_string(report.iterations()) + "," +
                   csv_number(final_residual) + "," + csv_number(ms) + "," +
                   to_string(report.termination) + "\n";
            row["report"] = report_to_json(report);
            row["wall_time_ms"] = ms;
            exit_code = std::max(exit_code, exit_code_of(report.termination));
        } catch (const UnsupportedOperationError&) {
            // structural mismatch (e.g. picard outside identity-plus-integral
            // families) marks the row and leaves the exit code to the rest
            csv += method + ",,,,unsupported\n";
            row["unsupported"] = true;
        }
        rows.push_back(row);
    }

    json doc;
    doc["command"] = "compare";
    doc["family"] = run.family;
    doc["rows"] = rows;
    write_json_file(out_path(cli, "report.json"), doc);
    write_text_file(out_path(cli, "table.csv"), csv);
    info(cli, "compare: " + std::to_string(run.compare_methods.size()) + " methods");
    return exit_code;
}

int cmd_sweep(const CliOptions& cli) {
    const LoadedRun run = load_config(cli.config_path, cli.seed);
    if (run.sweep_values.empty()) {
        throw ConfigError("sweep needs a 'sweep' section with a value grid", "sweep.values");
    }

    // The inverse-map Lipschitz constant does not depend on the data f, so
    // one estimate serves the whole amplitude grid.
    double q_certified = std::numeric_limits<double>::quiet_NaN();
    if (run.has_certificate) {
        q_certified = estimate_inverse_lipschitz(
            run.problem, run.certificate_radius, run.certify.pairs,
            gauss_legendre(run.iteration.quadrature_order), run.certify);
    }

    std::vector<double> values = run.sweep_values;
    std::sort(values.begin(), values.end());

    std::string csv = "param,converged,iterations,Q_hat,certified_Q\n";
    json rows = json::array();
    for (double amplitude : values) {
        const StateVector f = scaled_rhs(run, amplitude);
        StateVector u0 = run.u0;
        if (run.u0.values() == run.f.values()) {
            u0 = f;  // default guess tracks the scaled data
        }
        const IterationReport report = run_fixed_point(run.problem, f, u0, run.iteration);

        std::string q_hat_cell;
        json row;
        row["param"] = amplitude;
        row["termination"] = to_string(report.termination);
        row["iterations"] = report.iterations();
        if (report.step_norms.size() >= 3) {
            const double q_hat = empirical_contraction(report);
            q_hat_cell = csv_number(q_hat);
            row["Q_hat"] = q_hat;
        }
        std::string certified_cell;
        if (run.has_certificate) {
            const double certified_Q = q_certified * f.norm();
            certified_cell = csv_number(certified_Q);
            row["certified_Q"] = certified_Q;
        }
        csv += csv_number(amplitude);
        csv += ',';
        csv += report.converged() ? "true" : "false";
        csv += ',';
        csv += std::to_string(report.iterations());
        csv += ',';
        csv += q_hat_cell;
        csv += ',';
        csv += certified_cell;
        csv += '\n';
        rows.push_back(row);
    }

    json doc;
    doc["command"] = "sweep";
    doc["family"] = run.family;
    doc["parameter"] = run.sweep_parameter;
    if (run.has_certificate) {
        doc["q_certified"] = q_certified;
    }
    doc["rows"] = rows;
    write_json_file(out_path(cli, "report.json"), doc);
    write_text_file(out_path(cli, "table.csv"), csv);
    info(cli, "sweep: " + std::to_string(values.size()) + " rows");
    return kExitOk;
}

}  // namespace glin::tool
