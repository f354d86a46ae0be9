#include "reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "glin/errors.hpp"

namespace glin::tool {

using nlohmann::json;

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write file '" + path + "'");
    }
    out << text;
}

void write_json_file(const std::string& path, const json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

json report_to_json(const IterationReport& report) {
    json doc;
    doc["method"] = report.method;
    doc["termination"] = to_string(report.termination);
    doc["iterations"] = report.iterations();
    doc["step_norms"] = report.step_norms;
    doc["residual_norms"] = report.residual_norms;
    doc["ratios"] = report.ratios;
    doc["iterate_norms"] = report.iterate_norms;
    doc["final_residual"] =
        report.residual_norms.empty() ? 0.0 : report.residual_norms.back();
    if (report.final_state) {
        doc["final_norm"] = report.final_state->norm();
    }
    if (report.ball_radius) {
        json ball;
        ball["radius"] = *report.ball_radius;
        bool all = true;
        for (bool b : report.in_ball) {
            all = all && b;
        }
        ball["all_inside"] = all;
        doc["ball"] = ball;
    }
    if (!report.note.empty()) {
        doc["note"] = report.note;
    }
    return doc;
}

std::string report_to_csv(const IterationReport& report) {
    std::string csv = "n,step_norm,residual_norm,ratio\n";
    if (!report.residual_norms.empty()) {
        csv += "0,," + csv_number(report.residual_norms.front()) + ",\n";
    }
    for (std::size_t n = 0; n < report.step_norms.size(); ++n) {
        csv += std::to_string(n + 1);
        csv += ',';
        csv += csv_number(report.step_norms[n]);
        csv += ',';
        if (n + 1 < report.residual_norms.size()) {
            csv += csv_number(report.residual_norms[n + 1]);
        }
        csv += ',';
        if (n >= 1 && n - 1 < report.ratios.size()) {
            csv += csv_number(report.ratios[n - 1]);
        }
        csv += '\n';
    }
    return csv;
}

json certificate_to_json(const Certificate& cert) {
    json constants;
    constants["p"] = cert.p;
    constants["s"] = cert.s;
    constants["ps"] = cert.ps;
    if (cert.inverse_bound_finite) {
        constants["inverse_bound"] = cert.inverse_bound;
    } else {
        constants["inverse_bound"] = nullptr;  // infinite
    }
    constants["q"] = cert.q;
    constants["Q"] = cert.Q;
    constants["R"] = cert.R;
    constants["S_radius"] = std::isfinite(cert.S_radius) ? json(cert.S_radius) : json(nullptr);
    constants["first_step_norm"] = cert.first_step_norm;
    constants["f_norm"] = cert.f_norm;
    constants["u0_norm"] = cert.u0_norm;

    json verdicts;
    verdicts["invertibility_holds"] = cert.invertibility_holds;
    verdicts["contraction_holds"] = cert.contraction_holds;

    json estimation;
    estimation["samples"] = cert.sample_count;
    estimation["t_samples"] = cert.t_sample_count;
    estimation["pairs"] = cert.pair_count;
    estimation["seed"] = cert.seed;
    estimation["norm"] = to_string(cert.norm_kind);
    estimation["s_method"] = cert.s_method;
    estimation["q_method"] = cert.q_method;
    // sampled maxima under-estimate the true suprema; verdicts are empirical
    estimation["nature"] = "sampled-lower-bound";

    json doc;
    doc["constants"] = constants;
    doc["verdicts"] = verdicts;
    doc["estimation"] = estimation;
    return doc;
}

}  // namespace glin::tool
