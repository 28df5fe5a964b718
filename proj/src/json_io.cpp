#include "ctx/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ctx::io {

namespace {

std::string require_string(const json& j, const char* what) {
    if (!j.is_string()) throw std::runtime_error(std::string(what) + " must be a string");
    return j.get<std::string>();
}

}  // namespace

json scenario_to_json(const ContextualityScenario& H) {
    json edges = json::array();
    for (const auto& e : H.edges) {
        json edge = json::array();
        for (auto v : e) edge.push_back(H.vertices[v]);
        edges.push_back(std::move(edge));
    }
    return json{{"vertices", H.vertices}, {"edges", std::move(edges)}};
}

ContextualityScenario scenario_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw std::runtime_error("scenario file needs \"vertices\" and \"edges\"");
    std::vector<std::string> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(require_string(v, "vertex label"));
    std::vector<std::vector<std::string>> edges;
    for (const auto& e : j.at("edges")) {
        std::vector<std::string> edge;
        for (const auto& v : e) edge.push_back(require_string(v, "edge member"));
        edges.push_back(std::move(edge));
    }
    return make_scenario(std::move(vertices), edges);
}

json model_to_json(const ContextualityScenario& H, const ProbabilisticModel& p,
                   const json& scenario_ref) {
    json values = json::object();
    for (std::size_t v = 0; v < H.vertex_count(); ++v)
        values[H.vertices[v]] = format_rational(p.values[v]);
    json out{{"values", std::move(values)}};
    if (!scenario_ref.is_null()) out["scenario"] = scenario_ref;
    return out;
}

std::pair<ContextualityScenario, ProbabilisticModel> model_from_json(
    const json& j, const std::optional<ContextualityScenario>& scenario,
    const std::string& base_dir) {
    if (!j.is_object() || !j.contains("values"))
        throw std::runtime_error("model file needs \"values\"");

    ContextualityScenario H;
    if (scenario) {
        H = *scenario;
    } else if (j.contains("scenario")) {
        const json& ref = j.at("scenario");
        if (ref.is_string()) {
            const std::filesystem::path p =
                std::filesystem::path(base_dir) / ref.get<std::string>();
            H = scenario_from_json(load_json(p.string()));
        } else {
            H = scenario_from_json(ref);
        }
    } else {
        throw std::runtime_error("model file has no scenario and none was supplied");
    }

    ProbabilisticModel p;
    p.values.assign(H.vertex_count(), Rational(0));
    std::vector<bool> seen(H.vertex_count(), false);
    for (const auto& [label, value] : j.at("values").items()) {
        const std::size_t v = H.index_of(label);
        p.values[v] = parse_rational(require_string(value, "model value"));
        seen[v] = true;
    }
    for (std::size_t v = 0; v < H.vertex_count(); ++v)
        if (!seen[v])
            throw std::runtime_error("model file missing value for vertex \"" + H.vertices[v] +
                                     "\"");
    return {std::move(H), std::move(p)};
}

json structure_to_json(const BellStructure& s) {
    return json{{"parties", s.parties()}, {"settings", s.settings}, {"outcomes", s.outcomes}};
}

BellStructure structure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("settings") || !j.contains("outcomes"))
        throw std::runtime_error("structure needs \"settings\" and \"outcomes\"");
    BellStructure s;
    s.settings = j.at("settings").get<std::vector<int>>();
    s.outcomes = j.at("outcomes").get<std::vector<std::vector<int>>>();
    if (j.contains("parties") && j.at("parties").get<int>() != s.parties())
        throw std::runtime_error("structure \"parties\" disagrees with \"settings\" length");
    s.check();
    return s;
}

namespace {

std::vector<int> parse_tuple(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stoi(item));
    return out;
}

std::string tuple_key(const std::vector<int>& x, const std::vector<int>& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << ";";
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
    return os.str();
}

}  // namespace

json behavior_to_json(const BellBehavior& b) {
    json table = json::object();
    for (const auto& x : joint_settings(b.structure)) {
        const auto radices = outcome_radices(b.structure, x);
        for (const auto& a : enumerate_tuples(radices))
            table[tuple_key(x, a)] = format_rational(
                b.table[setting_index(b.structure, x)][outcome_index(b.structure, x, a)]);
    }
    json out = structure_to_json(b.structure);
    out["table"] = std::move(table);
    return out;
}

BellBehavior behavior_from_json(const json& j) {
    BellBehavior b;
    b.structure = structure_from_json(j);
    if (!j.contains("table")) throw std::runtime_error("behavior file needs \"table\"");

    const auto settings = joint_settings(b.structure);
    b.table.resize(settings.size());
    std::size_t expected = 0;
    for (std::size_t xi = 0; xi < settings.size(); ++xi) {
        std::size_t count = 1;
        for (int r : outcome_radices(b.structure, settings[xi]))
            count *= static_cast<std::size_t>(r);
        b.table[xi].assign(count, Rational(0));
        expected += count;
    }

    std::size_t filled = 0;
    for (const auto& [key, value] : j.at("table").items()) {
        const auto semi = key.find(';');
        if (semi == std::string::npos)
            throw std::runtime_error("behavior table key \"" + key + "\" lacks ';'");
        const std::vector<int> x = parse_tuple(key.substr(0, semi));
        const std::vector<int> a = parse_tuple(key.substr(semi + 1));
        b.table[setting_index(b.structure, x)][outcome_index(b.structure, x, a)] =
            parse_rational(require_string(value, "behavior entry"));
        ++filled;
    }
    if (filled != expected)
        throw std::runtime_error("behavior table has " + std::to_string(filled) +
                                 " entries, expected " + std::to_string(expected));
    return b;
}

json labeling_to_json(const BellScenario& bs) {
    json out = json::object();
    for (std::size_t v = 0; v < bs.labeling.entries.size(); ++v) {
        const auto& e = bs.labeling.entries[v];
        out[bs.scenario.vertices[v]] = json{{"outcomes", e.outcomes}, {"settings", e.settings}};
    }
    return out;
}

json cmatrix_to_json(const CMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat cmatrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("matrix must be a nonempty array");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).size();
    CMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (row.size() != cols) throw std::runtime_error("matrix rows have unequal lengths");
        for (std::size_t k = 0; k < cols; ++k) {
            const json& z = row.at(k);
            if (!z.is_array() || z.size() != 2)
                throw std::runtime_error("matrix entries must be [re, im] pairs");
            m(i, k) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return m;
}

json realization_to_json(const ContextualityScenario& H, const QuantumRealization& R) {
    json effects = json::object();
    for (std::size_t v = 0; v < H.vertex_count(); ++v)
        effects[H.vertices[v]] = cmatrix_to_json(R.effects[v]);
    return json{{"dim", R.dim}, {"rho", cmatrix_to_json(R.rho)}, {"effects", std::move(effects)}};
}

QuantumRealization realization_from_json(const ContextualityScenario& H, const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rho") || !j.contains("effects"))
        throw std::runtime_error("realization file needs \"dim\", \"rho\", \"effects\"");
    QuantumRealization R;
    R.dim = j.at("dim").get<std::size_t>();
    R.rho = cmatrix_from_json(j.at("rho"));
    R.effects.assign(H.vertex_count(), CMat());
    std::vector<bool> seen(H.vertex_count(), false);
    for (const auto& [label, m] : j.at("effects").items()) {
        const std::size_t v = H.index_of(label);
        R.effects[v] = cmatrix_from_json(m);
        seen[v] = true;
    }
    for (std::size_t v = 0; v < H.vertex_count(); ++v)
        if (!seen[v])
            throw std::runtime_error("realization missing effect for vertex \"" + H.vertices[v] +
                                     "\"");
    return R;
}

json validation_to_json(const ValidationReport& r) {
    return json{{"ok", r.ok}, {"problems", r.problems}};
}

json classification_to_json(const ContextualityScenario& H, const ClassificationReport& r) {
    json support = json::array();
    for (auto v : r.support) support.push_back(H.vertices[v]);
    json out{{"valid", r.valid},
             {"deterministic", r.deterministic},
             {"classical", r.classical},
             {"extremal", r.extremal},
             {"indeterministic", r.indeterministic},
             {"support", std::move(support)}};
    if (r.decomposition) {
        json weights = json::array();
        json components = json::array();
        for (std::size_t k = 0; k < r.decomposition->weights.size(); ++k) {
            weights.push_back(format_rational(r.decomposition->weights[k]));
            json comp = json::array();
            for (auto v : r.decomposition->components[k].support) comp.push_back(H.vertices[v]);
            components.push_back(std::move(comp));
        }
        out["decomposition"] = json{{"weights", std::move(weights)},
                                    {"components", std::move(components)}};
    }
    return out;
}

json certificate_to_json(const ContextualityScenario& H, const TrivialityCertificate& c) {
    json per_vertex = json::object();
    for (std::size_t v = 0; v < H.vertex_count(); ++v)
        per_vertex[H.vertices[v]] = json{{"support_deviation", c.support_dev[v]},
                                         {"offdiagonal_norm", c.offdiag_dev[v]},
                                         {"zero_probability", static_cast<bool>(c.zero_vertex[v])}};
    return json{{"trivial", c.trivial},
                {"rank", c.rank},
                {"max_residual", c.max_residual},
                {"tolerance", c.tolerance},
                {"borderline_rank", c.borderline_rank},
                {"vertices", std::move(per_vertex)}};
}

json projectivity_to_json(const ContextualityScenario& H, const ProjectivityReport& r) {
    json per_vertex = json::object();
    for (std::size_t v = 0; v < H.vertex_count(); ++v)
        per_vertex[H.vertices[v]] = json{{"residual", r.residuals[v]},
                                         {"projective", static_cast<bool>(r.projective[v])}};
    return json{{"projective", r.all}, {"vertices", std::move(per_vertex)}};
}

json dilation_report_to_json(const ContextualityScenario& H,
                             const DilationConsistencyReport& r) {
    json shared = json::array();
    for (const auto& m : r.shared)
        shared.push_back(json{{"vertex", H.vertices[m.vertex]},
                              {"edge_a", m.edge_a},
                              {"edge_b", m.edge_b},
                              {"mismatch", m.mismatch},
                              {"consistent", m.consistent}});
    return json{{"common_dim", r.common_dim},
                {"all_consistent", r.all_consistent},
                {"shared", std::move(shared)}};
}

json search_result_to_json(const ContextualityScenario& H, const SearchResult& r) {
    return json{{"converged", r.converged},
                {"iterations", r.iterations},
                {"affine_residual", r.affine_residual},
                {"psd_residual", r.psd_residual},
                {"realization", realization_to_json(H, r.realization)}};
}

json models_to_json(const ContextualityScenario& H,
                    const std::vector<ProbabilisticModel>& models) {
    json list = json::array();
    for (const auto& m : models) list.push_back(model_to_json(H, m, json()));
    return json{{"count", models.size()}, {"models", std::move(list)}};
}

json load_json(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open \"" + path + "\"");
        return json::parse(in);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for a readable message
        std::size_t line = 1;
        if (path != "-") {
            std::ifstream in(path);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
                if (text[i] == '\n') ++line;
        }
        throw std::runtime_error(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

void emit_json(const json& j, const std::string& out_path, bool pretty) {
    const std::string text = pretty ? j.dump(2) : j.dump();
    if (out_path.empty() || out_path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write \"" + out_path + "\"");
    out << text << "\n";
}

}  // namespace ctx::io
