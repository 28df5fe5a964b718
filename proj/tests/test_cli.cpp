#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ctx/json_io.hpp"
#include "ctx/quantum.hpp"
#include "testutil.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CmdResult {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path sandbox() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ctxtool-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_tool(const std::string& args) {
    const fs::path out = sandbox() / "stdout.txt";
    const fs::path err = sandbox() / "stderr.txt";
    const std::string cmd = std::string(CTXTOOL_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    CmdResult r;
    r.status = WEXITSTATUS(raw);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = sandbox() / name;
    std::ofstream(p) << text;
    return p;
}

fs::path write_json(const std::string& name, const json& j) {
    return write_file(name, j.dump());
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate: verdicts and exit codes") {
    const auto tri = write_json("triangle.json",
                                ctx::io::scenario_to_json(testutil::triangle()));
    auto r = run_tool("validate " + tri.string());
    CHECK(r.status == 0);
    CHECK(json::parse(r.out)["scenario"]["ok"] == true);

    const auto bad = write_json(
        "bad.json", json{{"vertices", {"0", "1"}}, {"edges", {{"0"}}}});
    r = run_tool("validate " + bad.string());
    CHECK(r.status == 1);
    CHECK(json::parse(r.out)["scenario"]["ok"] == false);
}

TEST_CASE("malformed input exits 2 with a line reference") {
    const auto broken = write_file("broken.json", "{\n  \"vertices\": [\n");
    const auto r = run_tool("validate " + broken.string());
    CHECK(r.status == 2);
    CHECK(r.err.find("broken.json:") != std::string::npos);

    CHECK(run_tool("validate /nonexistent/x.json").status == 2);
    CHECK(run_tool("frobnicate x.json").status == 2);

    const auto tri = write_json("triangle2.json",
                                ctx::io::scenario_to_json(testutil::triangle()));
    CHECK(run_tool("validate " + tri.string() + " --no-such-flag").status == 2);
}

TEST_CASE("nullspace and vertices on the triangle") {
    const auto tri = write_json("tri.json", ctx::io::scenario_to_json(testutil::triangle()));
    auto r = run_tool("nullspace " + tri.string());
    CHECK(r.status == 0);
    CHECK(json::parse(r.out)["dimension"] == 0);

    auto dd = run_tool("vertices " + tri.string() + " --method dd");
    auto sup = run_tool("vertices " + tri.string() + " --method support");
    CHECK(dd.status == 0);
    CHECK(dd.out == sup.out);  // canonical order makes them byte-identical
    const json parsed = json::parse(dd.out);
    CHECK(parsed["count"] == 1);
    CHECK(parsed["models"][0]["values"]["0"] == "1/2");

    // determinism: byte-identical reruns
    CHECK(run_tool("vertices " + tri.string() + " --method dd").out == dd.out);
}

TEST_CASE("bell / prbox / classify pipeline") {
    const auto structure = write_json("structure.json",
                                      json{{"settings", {2, 2}},
                                           {"outcomes", {{2, 2}, {2, 2}}}});
    const fs::path chsh = sandbox() / "chsh.json";
    const fs::path labels = sandbox() / "labels.json";
    auto r = run_tool("bell " + structure.string() + " --scenario-out " + chsh.string() +
                      " --labeling-out " + labels.string());
    REQUIRE(r.status == 0);
    CHECK(run_tool("validate " + chsh.string()).status == 0);
    CHECK(json::parse(slurp(labels)).size() == 16);

    const fs::path prbox = sandbox() / "prbox.json";
    r = run_tool("prbox -o " + prbox.string());
    REQUIRE(r.status == 0);

    r = run_tool("classify " + chsh.string() + " " + prbox.string());
    REQUIRE(r.status == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["valid"] == true);
    CHECK(rep["extremal"] == true);
    CHECK(rep["classical"] == false);
    CHECK(rep["indeterministic"] == true);

    r = run_tool("deterministic " + chsh.string());
    CHECK(json::parse(r.out)["count"] == 16);

    r = run_tool("vertices " + chsh.string() + " --method dd");
    CHECK(json::parse(r.out)["count"] == 24);
}

TEST_CASE("vertices output is consumable as model files") {
    const auto tri = write_json("tri3.json", ctx::io::scenario_to_json(testutil::triangle()));
    const auto r = run_tool("vertices " + tri.string() + " --method dd");
    REQUIRE(r.status == 0);
    const json models = json::parse(r.out)["models"];
    const auto model = write_json("tri_vertex.json", models[0]);
    const auto c = run_tool("classify " + tri.string() + " " + model.string());
    REQUIRE(c.status == 0);
    CHECK(json::parse(c.out)["extremal"] == true);
}

TEST_CASE("certify round trip with expectation flags") {
    const auto chsh_bs = testutil::chsh();
    const auto scen = write_json("chsh2.json", ctx::io::scenario_to_json(chsh_bs.scenario));
    const auto pr_model = ctx::behavior_to_model(chsh_bs, ctx::pr_box());
    const auto model = write_json(
        "pr_model.json", ctx::io::model_to_json(chsh_bs.scenario, pr_model, json()));

    auto R = ctx::make_trivial_realization(chsh_bs.scenario, pr_model, 2, 2);
    const auto realization =
        write_json("trivial.json", ctx::io::realization_to_json(chsh_bs.scenario, R));
    auto r = run_tool("certify " + scen.string() + " " + model.string() + " " +
                      realization.string() + " --expect-trivial");
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["trivial"] == true);

    // Breaking completeness should trip validation (exit 1, report emitted).
    R.effects[0](0, 0) += 0.2;
    const auto broken =
        write_json("broken_real.json", ctx::io::realization_to_json(chsh_bs.scenario, R));
    r = run_tool("certify " + scen.string() + " " + model.string() + " " + broken.string() +
                 " --expect-trivial");
    CHECK(r.status == 1);
    CHECK(json::parse(r.out).contains("realization"));
}

TEST_CASE("search emits a certificate and re-consumable realization") {
    const auto tri = write_json("tri4.json", ctx::io::scenario_to_json(testutil::triangle()));
    const auto model = write_json("tri_model.json",
                                  json{{"values", {{"0", "1/2"}, {"1", "1/2"}, {"2", "1/2"}}}});
    auto r = run_tool("search " + tri.string() + " " + model.string() + " --dim 2 --seed 7");
    REQUIRE(r.status == 0);
    const json out = json::parse(r.out);
    CHECK(out["converged"] == true);
    CHECK(out["certificate"]["trivial"] == true);

    // Re-consume the emitted realization through certify.
    const auto emitted = write_json("found.json", out["realization"]);
    r = run_tool("certify " + tri.string() + " " + model.string() + " " + emitted.string() +
                 " --expect-trivial");
    CHECK(r.status == 0);
}

TEST_CASE("search determinism across reruns") {
    const auto tri = write_json("tri5.json", ctx::io::scenario_to_json(testutil::triangle()));
    const auto model = write_json("tri_model5.json",
                                  json{{"values", {{"0", "1/2"}, {"1", "1/2"}, {"2", "1/2"}}}});
    const auto a = run_tool("search " + tri.string() + " " + model.string() + " --dim 3 --seed 9");
    const auto b = run_tool("search " + tri.string() + " " + model.string() + " --dim 3 --seed 9");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto c = run_tool("search " + tri.string() + " " + model.string() + " --dim 3 --seed 10");
    CHECK(a.out != c.out);
}

TEST_CASE("projective and dilate") {
    const auto tri_s = testutil::triangle();
    const auto tri = write_json("tri6.json", ctx::io::scenario_to_json(tri_s));
    ctx::QuantumRealization R;
    R.dim = 1;
    R.rho = ctx::CMat::identity(1);
    R.effects.assign(3, ctx::CMat::identity(1) * ctx::Complex(0.5));
    const auto realization = write_json("scalar.json", ctx::io::realization_to_json(tri_s, R));

    auto r = run_tool("projective " + tri.string() + " " + realization.string());
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["projective"] == false);

    r = run_tool("dilate " + tri.string() + " " + realization.string());
    REQUIRE(r.status == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["all_consistent"] == false);
    bool found_sqrt2 = false;
    for (const auto& m : rep["shared"])
        if (std::abs(m["mismatch"].get<double>() - std::sqrt(2.0)) <= 1e-9) found_sqrt2 = true;
    CHECK(found_sqrt2);
}

TEST_CASE("stdin input") {
    const json tri = ctx::io::scenario_to_json(testutil::triangle());
    const fs::path out = sandbox() / "stdin_out.txt";
    const std::string cmd = "echo '" + tri.dump() + "' | " + std::string(CTXTOOL_PATH) +
                            " validate - > " + out.string() + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(raw) == 0);
    CHECK(json::parse(slurp(out))["scenario"]["ok"] == true);
}

TEST_SUITE_END();
