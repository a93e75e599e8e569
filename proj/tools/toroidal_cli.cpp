/*
   Copyright 2026 The toroidal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Batch driver for the verification suites and folding queries.  Every run
// produces a machine-readable JSON report (stdout, and --out when given);
// exit code 0 means every requested check passed, 1 means some check failed,
// 2 means the input was rejected.

#include <CLI11.hpp>

#include <ctime>
#include <fstream>
#include <iostream>

#include "toroidal/report.hpp"

namespace toroidal {

struct JobSpec {
    std::string suite;
    std::string label;
    std::string mu;
    long window = 3;
    long height = 6;
    long degree = 3;
    std::vector<std::string> sigmas;
    std::vector<long> periods;
    std::string out;
    bool dump_table = false;
};

namespace {

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

FiniteType parse_finite_label(const std::string& label) {
    auto fail = [&] { throw InputError("unrecognized finite type label: " + label); };
    if (label.size() < 3 || label[1] != '_') fail();
    int n = 0;
    for (std::size_t i = 2; i < label.size(); ++i) {
        if (!isdigit(static_cast<unsigned char>(label[i]))) fail();
        n = n * 10 + (label[i] - '0');
    }
    return FiniteType{label[0], n};
}

void emit(const JobSpec& job, Json& report, bool pass) {
    report["pass"] = pass;
    std::string text = report.dump(2);
    std::cout << text << "\n";
    if (!job.out.empty()) {
        std::ofstream f(job.out);
        if (!f) throw Error("cannot write report to " + job.out);
        f << text << "\n";
    }
}

Json report_header(const JobSpec& job) {
    Json report;
    report["schema"] = 1;
    report["generated_at"] = timestamp_utc();
    report["suite"] = job.suite;
    report["label"] = job.label;
    if (!job.mu.empty()) report["mu"] = job.mu;
    return report;
}

int run_fold(const JobSpec& job) {
    GcmData gcm = parse_affine(job.label);
    Perm mu = perm_parse(job.mu, gcm.size());
    FoldedData fd = fold(gcm, mu);
    Json report = report_header(job);
    report["data"] = to_json(fd);
    Json checks = Json::array();
    checks.push_back({{"name", "folded-matrix-affine"}, {"pass", true}, {"label", fd.folded_label}});
    report["checks"] = std::move(checks);
    emit(job, report, true);
    return 0;
}

int run_roots(const JobSpec& job) {
    TwistContext ctx = TwistContext::build(job.label, job.mu);
    MryVerifier verifier(ctx);
    auto predicted = predict_phi(ctx.fd, job.height, job.degree);
    auto audit = verifier.dimension_audit(job.height, job.degree);
    Json report = report_header(job);
    report["params"] = {{"height", job.height}, {"degree", job.degree}};
    Json pred = Json::array();
    for (const auto& g : predicted) {
        Json row;
        row["alpha"] = g.alpha;
        row["p"] = g.p;
        pred.push_back(std::move(row));
    }
    Json rows = Json::array();
    std::size_t failures = 0;
    for (const auto& row : audit) {
        if (!row.ok) ++failures;
        rows.push_back(to_json(row));
    }
    report["data"] = {{"predicted", std::move(pred)}, {"audit", std::move(rows)}};
    Json checks = Json::array();
    checks.push_back({{"name", "dimension-audit"},
                      {"cells", audit.size()},
                      {"failures", failures},
                      {"pass", failures == 0}});
    report["checks"] = std::move(checks);
    bool pass = failures == 0;
    emit(job, report, pass);
    return pass ? 0 : 1;
}

int run_mry(const JobSpec& job) {
    TwistContext ctx = TwistContext::build(job.label, job.mu);
    MryVerifier verifier(ctx);
    auto reports = verifier.sweep(job.window);
    Json report = report_header(job);
    report["params"] = {{"window", job.window}};
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_tag;  // tag -> (cells, failures)
    std::map<std::string, Json> witness;
    bool printed_always_matches = true;
    for (const auto& r : reports) {
        auto& [cells, failures] = per_tag[r.tag];
        ++cells;
        if (!r.holds) {
            ++failures;
            if (!witness.count(r.tag)) witness[r.tag] = to_json(ctx.T, r);
        }
        if (r.printed_rhs_matches && !*r.printed_rhs_matches) printed_always_matches = false;
    }
    GcheckReport gc = verifier.check_folded_serre();
    Json checks = Json::array();
    bool pass = true;
    for (const auto& [tag, counts] : per_tag) {
        Json c;
        c["name"] = tag;
        c["cells"] = counts.first;
        c["failures"] = counts.second;
        c["pass"] = counts.second == 0;
        if (witness.count(tag)) c["witness"] = witness[tag];
        if (counts.second) pass = false;
        checks.push_back(std::move(c));
    }
    {
        Json c;
        c["name"] = "folded-serre";
        c["pass"] = gc.holds;
        Json kappa = Json::array();
        for (const auto& k : gc.kappa) kappa.push_back(to_string(k));
        c["cartan_scalars"] = std::move(kappa);
        if (!gc.holds) {
            c["witness"] = gc.witness;
            pass = false;
        }
        checks.push_back(std::move(c));
    }
    report["checks"] = std::move(checks);
    report["t2_note"] =
        std::string("the printed (T2) coefficient (two factors of m) ") +
        (printed_always_matches ? "coincided with" : "differs from") +
        " the computed bracket on this sweep; the single-m coefficient matched everywhere it was checked";
    emit(job, report, pass);
    return pass ? 0 : 1;
}

int run_affine_check(const JobSpec& job) {
    Json report = report_header(job);
    Json checks = Json::array();
    bool pass = true;
    std::string detail;
    try {
        AffineAlgebra A = AffineAlgebra::build(job.label);
        report["data"] = {{"finite_type", A.gcm.xn.str()},
                          {"twist_order", A.r},
                          {"dim_gdot", A.g.dim()},
                          {"conductor", A.field->conductor()}};
        if (job.dump_table) report["data"]["table"] = to_json(A.g);
    } catch (const ConstructionError& e) {
        pass = false;
        detail = e.what();
    }
    Json c;
    c["name"] = "affine-serre-relations";
    c["pass"] = pass;
    if (!pass) c["witness"] = detail;
    checks.push_back(std::move(c));
    report["checks"] = std::move(checks);
    emit(job, report, pass);
    return pass ? 0 : 1;
}

int run_uce(const JobSpec& job) {
    FiniteType t = parse_finite_label(job.label);
    auto F = CycField::get(1);
    GenericAlgebra k = GenericAlgebra::from_lie_table(build_simple(t, F));
    UceResult r = uce_finite(k);
    Json report = report_header(job);
    report["data"] = {{"dim", k.dim},
                      {"uce_dim", r.algebra.dim},
                      {"kernel_dim", r.kernel_dim},
                      {"perfect", r.input_perfect},
                      {"centerless", r.input_centerless}};
    Json checks = Json::array();
    bool pass = r.kernel_central;
    checks.push_back({{"name", "kernel-central"}, {"pass", r.kernel_central}});
    std::size_t image = rank_of(r.u_columns, CycOps{F});
    bool surj = image == k.derived_dim();
    pass = pass && surj;
    checks.push_back({{"name", "u-image-is-derived-subalgebra"}, {"pass", surj}});
    if (r.input_perfect && r.input_centerless) {
        checks.push_back({{"name", "kernel-is-center"}, {"pass", r.kernel_is_center}});
        pass = pass && r.kernel_is_center;
    }
    report["checks"] = std::move(checks);
    emit(job, report, pass);
    return pass ? 0 : 1;
}

int run_multiloop(const JobSpec& job) {
    FiniteType t = parse_finite_label(job.label);
    if (job.sigmas.size() != job.periods.size() || job.sigmas.empty())
        throw InputError("multiloop needs matching --sigma/--period lists");
    long conductor = 1;
    for (long m : job.periods) {
        if (m < 1) throw InputError("periods must be positive");
        conductor = std::lcm(conductor, m);
    }
    auto F = CycField::get(conductor);
    LieTable T = build_simple(t, F);
    GenericAlgebra k = GenericAlgebra::from_lie_table(T);
    std::vector<Matrix<CycNum>> sigmas;
    for (std::size_t s = 0; s < job.sigmas.size(); ++s) {
        // Finite diagram nodes are 1-based in cycle notation.
        Perm one_based = perm_parse(job.sigmas[s], t.n + 1);
        if (one_based[0] != 0) throw InputError("finite node 0 does not exist; nodes are 1..n");
        Perm perm(static_cast<std::size_t>(t.n));
        for (int i = 1; i <= t.n; ++i) perm[static_cast<std::size_t>(i - 1)] = one_based[static_cast<std::size_t>(i)] - 1;
        sigmas.push_back(build_nu(T, perm, job.periods[s]).m);
    }
    MultiloopSlice slice = multiloop_build(k, sigmas, job.periods);
    Json report = report_header(job);
    report["params"] = {{"sigmas", job.sigmas}, {"periods", job.periods}};
    report["data"] = to_json(slice);
    Json checks = Json::array();
    checks.push_back({{"name", "fixed-point-characterization"}, {"pass", slice.fixed_point_consistent}});
    bool sums = slice.total == static_cast<std::size_t>(k.dim);
    checks.push_back({{"name", "eigenspace-dimension-sum"}, {"pass", sums}});
    report["checks"] = std::move(checks);
    bool pass = slice.fixed_point_consistent && sums;
    emit(job, report, pass);
    return pass ? 0 : 1;
}

int run(const JobSpec& job) {
    if (job.suite == "fold") return run_fold(job);
    if (job.suite == "roots") return run_roots(job);
    if (job.suite == "mry") return run_mry(job);
    if (job.suite == "affine-check") return run_affine_check(job);
    if (job.suite == "uce") return run_uce(job);
    if (job.suite == "multiloop") return run_multiloop(job);
    throw InputError("unknown suite: " + job.suite);
}

}  // namespace
}  // namespace toroidal

int main(int argc, char** argv) {
    toroidal::JobSpec job;
    CLI::App app{"exact computations in twisted toroidal Lie algebras"};
    app.require_subcommand(1);

    auto* fold_cmd = app.add_subcommand("fold", "fold an affine GCM along a diagram automorphism");
    fold_cmd->add_option("label", job.label, "affine label, e.g. A_3^(1)")->required();
    fold_cmd->add_option("--mu", job.mu, "automorphism in cycle notation, e.g. \"(1 3)\"")->required();

    auto* roots_cmd = app.add_subcommand("roots", "predicted non-isotropic roots and the graded dimension audit");
    roots_cmd->add_option("label", job.label)->required();
    roots_cmd->add_option("--mu", job.mu)->required();
    roots_cmd->add_option("--height", job.height, "height bound (default 6)");
    roots_cmd->add_option("--degree", job.degree, "t1-degree bound (default 3)");

    auto* mry_cmd = app.add_subcommand("mry", "verify the MRY relations (T0)-(T7) on the realized generators");
    mry_cmd->add_option("label", job.label)->required();
    mry_cmd->add_option("--mu", job.mu)->required();
    mry_cmd->add_option("--window", job.window, "degree window for the sweep (default 3)");

    auto* affine_cmd = app.add_subcommand("affine-check", "self-check the affine Serre relations of a realization");
    affine_cmd->add_option("label", job.label)->required();
    affine_cmd->add_flag("--dump-table", job.dump_table, "embed the full structure-constant table in the report");

    auto* uce_cmd = app.add_subcommand("uce", "universal central extension of a finite simple algebra");
    uce_cmd->add_option("label", job.label, "finite type, e.g. A_2")->required();

    auto* ml_cmd = app.add_subcommand("multiloop", "multiloop eigenspace dimensions of a finite simple algebra");
    ml_cmd->add_option("label", job.label, "finite type, e.g. A_3")->required();
    ml_cmd->add_option("--sigma", job.sigmas, "diagram automorphism (1-based cycle notation); repeatable");
    ml_cmd->add_option("--period", job.periods, "declared period per automorphism; repeatable");

    for (auto* cmd : {fold_cmd, roots_cmd, mry_cmd, affine_cmd, uce_cmd, ml_cmd})
        cmd->add_option("--out", job.out, "write the JSON report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }
    job.suite = app.get_subcommands().front()->get_name();

    try {
        return toroidal::run(job);
    } catch (const toroidal::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const toroidal::ConductorError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const toroidal::WindowError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const toroidal::Error& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    }
}
