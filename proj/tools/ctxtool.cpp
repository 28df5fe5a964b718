// Command-line surface over the contextuality toolkit: scenario validation,
// vertex enumeration, model classification, Bell constructions, quantum
// realization certificates, Naimark dilation reports, and Dykstra searches.
// All I/O is JSON; output is byte-identical for identical inputs and seeds.
//
// Exit codes: 0 success, 1 negative domain verdict (failed validation,
// non-trivial certificate under --expect-trivial, non-convergence), 2 bad
// input (unreadable or malformed files, unknown flags).

#include "ctx/analysis.hpp"
#include "ctx/bell.hpp"
#include "ctx/json_io.hpp"
#include "ctx/linalg.hpp"
#include "ctx/naimark.hpp"
#include "ctx/quantum.hpp"
#include "ctx/scenario.hpp"
#include "ctx/search.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using ctx::io::json;

struct CommonOpts {
    std::string output = "-";
    bool pretty = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("-o,--output", c.output, "Output path (default: stdout)");
    cmd->add_flag("--pretty", c.pretty, "Indent the emitted JSON");
}

ctx::ContextualityScenario load_scenario(const std::string& path) {
    return ctx::io::scenario_from_json(ctx::io::load_json(path));
}

std::string dir_of(const std::string& path) {
    if (path == "-") return ".";
    return std::filesystem::path(path).parent_path().string();
}

// Accepts either a model file or a behavior file; behaviors are relabeled
// onto the scenario through the Bell construction, which must reproduce the
// given scenario's vertex set.
ctx::ProbabilisticModel load_model_for(const ctx::ContextualityScenario& H,
                                       const std::string& path) {
    const json j = ctx::io::load_json(path);
    if (j.is_object() && j.contains("table")) {
        const ctx::BellBehavior b = ctx::io::behavior_from_json(j);
        const ctx::BellScenario bs = ctx::bell_scenario(b.structure);
        if (bs.scenario.vertices != H.vertices)
            throw std::runtime_error(path +
                                     ": behavior structure does not match the given scenario");
        return ctx::behavior_to_model(bs, b);
    }
    auto [scenario, model] = ctx::io::model_from_json(j, H, dir_of(path));
    return model;
}

int emit_report(const json& j, const CommonOpts& c, bool ok) {
    ctx::io::emit_json(j, c.output, c.pretty);
    return ok ? 0 : 1;
}

// Realizations are gated at the caller's working tolerance, so iterative
// search output (residuals near its convergence tolerance) stays usable.
ctx::QuantumTolerances gate_tolerances(double tol) {
    ctx::QuantumTolerances t;
    t.psd = std::max(t.psd, tol);
    t.sum = std::max(t.sum, tol);
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextuality scenario toolkit"};
    app.require_subcommand(1);
    int status = 0;

    auto* validate = app.add_subcommand("validate", "Check a scenario (and optionally a model)");
    std::string v_scenario, v_model;
    CommonOpts v_opts;
    validate->add_option("scenario", v_scenario, "Scenario JSON")->required();
    validate->add_option("model", v_model, "Model JSON");
    add_common(validate, v_opts);
    validate->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(v_scenario);
        const ctx::ValidationReport sr = ctx::validate_scenario(H);
        json out{{"scenario", ctx::io::validation_to_json(sr)}};
        bool ok = sr.ok;
        if (!v_model.empty()) {
            const ctx::ProbabilisticModel p = load_model_for(H, v_model);
            const ctx::ValidationReport mr = ctx::validate_model(H, p);
            out["model"] = ctx::io::validation_to_json(mr);
            ok = ok && mr.ok;
        }
        status = emit_report(out, v_opts, ok);
    });

    auto* nullspace = app.add_subcommand("nullspace", "Kernel basis of the incidence matrix");
    std::string n_scenario;
    CommonOpts n_opts;
    nullspace->add_option("scenario", n_scenario, "Scenario JSON")->required();
    add_common(nullspace, n_opts);
    nullspace->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(n_scenario);
        const auto basis = ctx::null_space(ctx::incidence_matrix(H));
        json rows = json::array();
        for (const auto& vec : basis) {
            json row = json::array();
            for (const auto& q : vec) row.push_back(ctx::format_rational(q));
            rows.push_back(std::move(row));
        }
        status = emit_report(json{{"dimension", basis.size()}, {"basis", std::move(rows)}},
                             n_opts, true);
    });

    auto* vertices = app.add_subcommand("vertices", "Enumerate extremal models");
    std::string x_scenario, x_method = "dd";
    CommonOpts x_opts;
    vertices->add_option("scenario", x_scenario, "Scenario JSON")->required();
    vertices->add_option("--method", x_method, "dd | support")
        ->check(CLI::IsMember({"dd", "support"}));
    add_common(vertices, x_opts);
    vertices->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(x_scenario);
        const auto models = ctx::enumerate_extremal(
            H, x_method == "dd" ? ctx::ExtremalMethod::DoubleDescription
                                : ctx::ExtremalMethod::Support);
        status = emit_report(ctx::io::models_to_json(H, models), x_opts, true);
    });

    auto* det = app.add_subcommand("deterministic", "Enumerate deterministic models");
    std::string d_scenario;
    CommonOpts d_opts;
    det->add_option("scenario", d_scenario, "Scenario JSON")->required();
    add_common(det, d_opts);
    det->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(d_scenario);
        const auto dets = ctx::enumerate_deterministic(H);
        std::vector<ctx::ProbabilisticModel> models;
        json supports = json::array();
        for (const auto& dm : dets) {
            models.push_back(ctx::deterministic_to_model(H, dm));
            json sup = json::array();
            for (auto v : dm.support) sup.push_back(H.vertices[v]);
            supports.push_back(std::move(sup));
        }
        json out = ctx::io::models_to_json(H, models);
        out["supports"] = std::move(supports);
        status = emit_report(out, d_opts, true);
    });

    auto* classify = app.add_subcommand("classify", "Classify a model");
    std::string c_scenario, c_model;
    CommonOpts c_opts;
    classify->add_option("scenario", c_scenario, "Scenario JSON")->required();
    classify->add_option("model", c_model, "Model JSON")->required();
    add_common(classify, c_opts);
    classify->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(c_scenario);
        const ctx::ProbabilisticModel p = load_model_for(H, c_model);
        const ctx::ClassificationReport rep = ctx::classify_model(H, p);
        status = emit_report(ctx::io::classification_to_json(H, rep), c_opts, true);
    });

    auto* bell = app.add_subcommand("bell", "Build a Bell scenario hypergraph");
    std::string b_structure, b_scenario_out, b_labeling_out;
    CommonOpts b_opts;
    bell->add_option("structure", b_structure, "Structure JSON")->required();
    bell->add_option("--scenario-out", b_scenario_out, "Write the bare scenario here");
    bell->add_option("--labeling-out", b_labeling_out, "Write the vertex labeling here");
    add_common(bell, b_opts);
    bell->callback([&] {
        const ctx::BellStructure s = ctx::io::structure_from_json(ctx::io::load_json(b_structure));
        const ctx::BellScenario bs = ctx::bell_scenario(s);
        const json scenario = ctx::io::scenario_to_json(bs.scenario);
        const json labeling = ctx::io::labeling_to_json(bs);
        if (!b_scenario_out.empty()) ctx::io::emit_json(scenario, b_scenario_out, b_opts.pretty);
        if (!b_labeling_out.empty()) ctx::io::emit_json(labeling, b_labeling_out, b_opts.pretty);
        if (b_scenario_out.empty() && b_labeling_out.empty())
            ctx::io::emit_json(json{{"scenario", scenario}, {"labeling", labeling}},
                               b_opts.output, b_opts.pretty);
        status = 0;
    });

    auto* prbox = app.add_subcommand("prbox", "Emit the PR box behavior");
    CommonOpts p_opts;
    add_common(prbox, p_opts);
    prbox->callback(
        [&] { status = emit_report(ctx::io::behavior_to_json(ctx::pr_box()), p_opts, true); });

    auto* certify = app.add_subcommand("certify", "Triviality certificate for a realization");
    std::string t_scenario, t_model, t_realization;
    double t_tol = 1e-6;
    int t_rank = -1;
    bool t_expect = false;
    CommonOpts t_opts;
    certify->add_option("scenario", t_scenario, "Scenario JSON")->required();
    certify->add_option("model", t_model, "Target model JSON")->required();
    certify->add_option("realization", t_realization, "Realization JSON")->required();
    certify->add_option("--tol", t_tol, "Certificate residual tolerance");
    certify->add_option("--rank", t_rank, "Force the state support rank instead of detecting it");
    certify->add_flag("--expect-trivial", t_expect, "Exit 1 unless the verdict is trivial");
    add_common(certify, t_opts);
    certify->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(t_scenario);
        const ctx::ProbabilisticModel p = load_model_for(H, t_model);
        const ctx::QuantumRealization R =
            ctx::io::realization_from_json(H, ctx::io::load_json(t_realization));
        const ctx::ValidationReport vr = ctx::validate_realization(H, R, gate_tolerances(t_tol));
        if (!vr.ok) {
            status =
                emit_report(json{{"realization", ctx::io::validation_to_json(vr)}}, t_opts, false);
            return;
        }
        const ctx::TrivialityCertificate cert =
            t_rank >= 0 ? ctx::certify_trivial_with_rank(H, ctx::model_to_doubles(p), R,
                                                         static_cast<std::size_t>(t_rank), t_tol)
                        : ctx::certify_trivial(H, p, R, t_tol);
        status = emit_report(ctx::io::certificate_to_json(H, cert), t_opts,
                             !t_expect || cert.trivial);
    });

    auto* projective = app.add_subcommand("projective", "Per-vertex idempotence check");
    std::string j_scenario, j_realization;
    double j_tol = 1e-9;
    CommonOpts j_opts;
    projective->add_option("scenario", j_scenario, "Scenario JSON")->required();
    projective->add_option("realization", j_realization, "Realization JSON")->required();
    projective->add_option("--tol", j_tol, "Idempotence residual tolerance");
    add_common(projective, j_opts);
    projective->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(j_scenario);
        const ctx::QuantumRealization R =
            ctx::io::realization_from_json(H, ctx::io::load_json(j_realization));
        const ctx::ValidationReport vr = ctx::validate_realization(H, R, gate_tolerances(j_tol));
        if (!vr.ok) {
            status =
                emit_report(json{{"realization", ctx::io::validation_to_json(vr)}}, j_opts, false);
            return;
        }
        status = emit_report(
            ctx::io::projectivity_to_json(H, ctx::is_projective_realization(R, j_tol)), j_opts,
            true);
    });

    auto* dilate = app.add_subcommand(
        "dilate", "Per-edge Naimark dilations and their cross-edge consistency");
    std::string l_scenario, l_realization;
    double l_tol = 1e-9;
    CommonOpts l_opts;
    dilate->add_option("scenario", l_scenario, "Scenario JSON")->required();
    dilate->add_option("realization", l_realization, "Realization JSON")->required();
    dilate->add_option("--tol", l_tol, "Projector agreement tolerance");
    add_common(dilate, l_opts);
    dilate->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(l_scenario);
        const ctx::QuantumRealization R =
            ctx::io::realization_from_json(H, ctx::io::load_json(l_realization));
        const ctx::ValidationReport vr = ctx::validate_realization(H, R, gate_tolerances(l_tol));
        if (!vr.ok) {
            status =
                emit_report(json{{"realization", ctx::io::validation_to_json(vr)}}, l_opts, false);
            return;
        }
        const auto rep =
            ctx::check_dilation_consistency(H, R, ctx::canonical_outcome_order(H), l_tol);
        status = emit_report(ctx::io::dilation_report_to_json(H, rep), l_opts, true);
    });

    auto* search = app.add_subcommand("search", "Dykstra search for a realization");
    std::string s_scenario, s_model, s_state = "mixed", s_rho;
    std::vector<double> s_spectrum;
    std::size_t s_dim = 2;
    int s_maxiter = 20000;
    double s_tol = 1e-8;
    std::uint64_t s_seed = 0;
    CommonOpts s_opts;
    search->add_option("scenario", s_scenario, "Scenario JSON")->required();
    search->add_option("model", s_model, "Target model JSON")->required();
    search->add_option("--dim", s_dim, "Hilbert space dimension");
    search->add_option("--seed", s_seed, "Effect initialization seed");
    search->add_option("--max-iter", s_maxiter, "Iteration cap");
    search->add_option("--tol", s_tol, "Convergence tolerance");
    search->add_option("--state", s_state, "mixed | spectrum | matrix")
        ->check(CLI::IsMember({"mixed", "spectrum", "matrix"}));
    search->add_option("--spectrum", s_spectrum, "State eigenvalues (with --state spectrum)");
    search->add_option("--rho", s_rho, "State matrix JSON (with --state matrix)");
    add_common(search, s_opts);
    search->callback([&] {
        const ctx::ContextualityScenario H = load_scenario(s_scenario);
        const ctx::ProbabilisticModel p = load_model_for(H, s_model);
        ctx::SearchConfig cfg;
        cfg.dim = s_dim;
        cfg.max_iterations = s_maxiter;
        cfg.tolerance = s_tol;
        cfg.seed = s_seed;
        if (s_state == "mixed") {
            cfg.state = ctx::StateChoice::MaximallyMixed;
        } else if (s_state == "spectrum") {
            cfg.state = ctx::StateChoice::Spectrum;
            cfg.spectrum = s_spectrum;
        } else {
            cfg.state = ctx::StateChoice::Matrix;
            cfg.rho = ctx::io::cmatrix_from_json(ctx::io::load_json(s_rho));
        }
        const ctx::SearchResult res = ctx::dykstra_find_realization(H, p, cfg);
        json out = ctx::io::search_result_to_json(H, res);
        if (res.converged)
            out["certificate"] =
                ctx::io::certificate_to_json(H, ctx::certify_trivial(H, p, res.realization));
        status = emit_report(out, s_opts, res.converged);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}
