#include "hoselm/serialize.hpp"

#include "hoselm/errors.hpp"

#include <fstream>

namespace hoselm {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols) {
        throw FormatError("model file: matrix payload does not match its shape");
    }
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j2 = 0; j2 < cols; ++j2) m(i, j2) = data[k++].get<double>();
    return m;
}

json norm_to_json(const NormParams& p) { return {{"lo", p.lo}, {"hi", p.hi}, {"eps", p.eps}}; }

NormParams norm_from_json(const json& j) {
    return {j.at("lo").get<double>(), j.at("hi").get<double>(), j.at("eps").get<double>()};
}

}  // namespace

json config_to_json(const PipelineConfig& cfg) {
    return {{"nodes", cfg.nodes},
            {"hidden", cfg.neurons},
            {"lambda", cfg.lambda},
            {"gamma", cfg.gamma},
            {"operator", std::string(to_string(cfg.op))},
            {"coeff", cfg.c},
            {"classifier_nodes", cfg.classifier_nodes},
            {"mode", std::string(to_string(cfg.mode))},
            {"chunk_size", cfg.chunk_size},
            {"variable_chunks", cfg.variable_chunks},
            {"seed", cfg.seed}};
}

void merge_config(const json& j, PipelineConfig& cfg) {
    if (j.contains("nodes")) cfg.nodes = j["nodes"].get<Eigen::Index>();
    if (j.contains("hidden")) cfg.neurons = j["hidden"].get<Eigen::Index>();
    if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
    if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
    if (j.contains("operator")) cfg.op = parse_combine_op(j["operator"].get<std::string>());
    if (j.contains("coeff")) cfg.c = j["coeff"].get<double>();
    if (j.contains("classifier_nodes")) {
        cfg.classifier_nodes = j["classifier_nodes"].get<std::size_t>();
    }
    if (j.contains("mode")) cfg.mode = parse_train_mode(j["mode"].get<std::string>());
    if (j.contains("chunk_size")) cfg.chunk_size = j["chunk_size"].get<Eigen::Index>();
    if (j.contains("variable_chunks")) cfg.variable_chunks = j["variable_chunks"].get<bool>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<Seed>();
}

json model_to_json(const HOselmModel& m) {
    json extractors = json::array();
    for (const auto& group : m.extractors) {
        json nodes = json::array();
        for (const auto& n : group) {
            nodes.push_back({{"weights", matrix_to_json(n.weights)}, {"bias", n.bias}});
        }
        extractors.push_back(std::move(nodes));
    }
    json readout;
    if (const auto* cls = std::get_if<ClassifierModel>(&m.readout)) {
        json nodes = json::array();
        for (const auto& n : cls->nodes) {
            nodes.push_back({{"weights", matrix_to_json(n.weights)},
                             {"bias", n.bias},
                             {"step", n.step},
                             {"norm_e", norm_to_json(n.norm_e)},
                             {"norm_out", norm_to_json(n.norm_out)}});
        }
        readout = {{"kind", "classifier"},
                   {"coeff", cls->c},
                   {"dim", cls->dim},
                   {"classes", cls->classes},
                   {"nodes", std::move(nodes)}};
    } else {
        const auto& s = std::get<OselmState>(m.readout);
        readout = {{"kind", "oselm"},
                   {"coeff", s.c},
                   {"seen", s.seen},
                   {"p", matrix_to_json(s.p)},
                   {"beta", matrix_to_json(s.beta)}};
    }
    return {{"format", "hoselm-model"},
            {"version", kModelFormatVersion},
            {"config", config_to_json(m.config)},
            {"classes", m.classes},
            {"group_dims", m.group_dims},
            {"combine", {{"operator", std::string(to_string(m.combine.op))},
                         {"gamma", m.combine.gamma}}},
            {"extractors", std::move(extractors)},
            {"readout", std::move(readout)}};
}

HOselmModel model_from_json(const json& j) {
    try {
        if (j.at("format").get<std::string>() != "hoselm-model") {
            throw FormatError("model file: unexpected format tag");
        }
        const int version = j.at("version").get<int>();
        if (version != kModelFormatVersion) {
            throw FormatError("model file: unsupported version " + std::to_string(version));
        }
        HOselmModel m;
        merge_config(j.at("config"), m.config);
        m.classes = j.at("classes").get<Eigen::Index>();
        m.group_dims = j.at("group_dims").get<std::vector<Eigen::Index>>();
        m.combine.op = parse_combine_op(j.at("combine").at("operator").get<std::string>());
        m.combine.gamma = j.at("combine").at("gamma").get<double>();
        for (const auto& group : j.at("extractors")) {
            std::vector<SubnetNode> nodes;
            for (const auto& n : group) {
                nodes.push_back({matrix_from_json(n.at("weights")), n.at("bias").get<double>()});
            }
            m.extractors.push_back(std::move(nodes));
        }
        if (m.extractors.size() != m.group_dims.size()) {
            throw FormatError("model file: extractor count does not match group count");
        }
        const json& r = j.at("readout");
        const auto kind = r.at("kind").get<std::string>();
        if (kind == "classifier") {
            ClassifierModel cls;
            cls.c = r.at("coeff").get<double>();
            cls.dim = r.at("dim").get<Eigen::Index>();
            cls.classes = r.at("classes").get<Eigen::Index>();
            for (const auto& n : r.at("nodes")) {
                cls.nodes.push_back({matrix_from_json(n.at("weights")), n.at("bias").get<double>(),
                                     n.at("step").get<double>(), norm_from_json(n.at("norm_e")),
                                     norm_from_json(n.at("norm_out"))});
            }
            m.readout = std::move(cls);
        } else if (kind == "oselm") {
            OselmState s;
            s.c = r.at("coeff").get<double>();
            s.seen = r.at("seen").get<std::size_t>();
            s.p = matrix_from_json(r.at("p"));
            s.beta = matrix_from_json(r.at("beta"));
            m.readout = std::move(s);
        } else {
            throw FormatError("model file: unknown readout kind '" + kind + "'");
        }
        return m;
    } catch (const json::exception& e) {
        throw FormatError(std::string("model file: ") + e.what());
    }
}

void save_model(const HOselmModel& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << model_to_json(m).dump(1) << '\n';
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

HOselmModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw FormatError("model file '" + path.string() + "': " + e.what());
    }
    return model_from_json(j);
}

}  // namespace hoselm
