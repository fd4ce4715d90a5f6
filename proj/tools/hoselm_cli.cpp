// Command-line front end: synthetic data, training, prediction and benchmarks.

#include "hoselm/bench.hpp"
#include "hoselm/errors.hpp"
#include "hoselm/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

namespace {

using namespace hoselm;

// Flags that override pipeline fields. Unset flags leave the config-file (or
// default) value in place.
struct PipelineFlags {
    std::optional<Eigen::Index> nodes;
    std::optional<Eigen::Index> hidden;
    std::optional<double> lambda;
    std::optional<double> gamma;
    std::optional<std::string> op;
    std::optional<double> coeff;
    std::optional<std::size_t> classifier_nodes;
    std::optional<std::string> mode;
    std::optional<Eigen::Index> chunk_size;
    bool variable_chunks = false;
    std::optional<Seed> seed;

    void add_to(CLI::App& app, bool with_mode) {
        app.add_option("--nodes", nodes, "Subnetwork nodes per feature group (L)");
        app.add_option("--hidden", hidden, "Neurons per subnetwork node (d)");
        app.add_option("--lambda", lambda, "Feedback damping for node refinement");
        app.add_option("--gamma", gamma, "Combination weight");
        app.add_option("--operator", op, "Combination operator")
            ->check(CLI::IsMember({"plus", "concat"}));
        app.add_option("--coeff", coeff, "Ridge coefficient C");
        app.add_option("--classifier-nodes", classifier_nodes, "Classifier nodes (L_p)");
        if (with_mode) {
            app.add_option("--mode", mode, "Readout training mode")
                ->check(CLI::IsMember({"batch", "sequential"}));
        }
        app.add_option("--chunk-size", chunk_size, "Chunk length for sequential learning");
        app.add_flag("--variable-chunks", variable_chunks,
                     "Draw chunk lengths after the first from [1, 2*chunk-1]");
        app.add_option("--seed", seed, "Random seed");
    }

    void apply(PipelineConfig& cfg) const {
        if (nodes) cfg.nodes = *nodes;
        if (hidden) cfg.neurons = *hidden;
        if (lambda) cfg.lambda = *lambda;
        if (gamma) cfg.gamma = *gamma;
        if (op) cfg.op = parse_combine_op(*op);
        if (coeff) cfg.c = *coeff;
        if (classifier_nodes) cfg.classifier_nodes = *classifier_nodes;
        if (mode) cfg.mode = parse_train_mode(*mode);
        if (chunk_size) cfg.chunk_size = *chunk_size;
        if (variable_chunks) cfg.variable_chunks = true;
        if (seed) cfg.seed = *seed;
    }
};

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("config '" + path + "': " + e.what());
    }
}

void print_metrics(std::ostream& os, const EvaluationResult& r) {
    os << std::fixed << std::setprecision(6) << "mean_per_class_rate " << r.mean_per_class_rate
       << "\naccuracy " << r.accuracy << '\n';
    for (int c : r.absent_classes) os << "class " << c << " absent from labels\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical online-sequential extreme learning machine"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Write a synthetic Gaussian-blob CSV");
    SynthSpec synth_spec;
    Seed synth_seed = 0;
    std::string synth_out;
    synth->add_option("--classes", synth_spec.classes, "Number of classes")->capture_default_str();
    synth->add_option("--per-class", synth_spec.per_class, "Samples per class")
        ->capture_default_str();
    synth->add_option("--dim", synth_spec.dim, "Feature dimension")->capture_default_str();
    synth->add_option("--spread", synth_spec.spread, "Cluster standard deviation")
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Output CSV")->required();

    // shared data flags for train / predict
    struct DataFlags {
        std::string data;
        std::string groups;
        int label_col = -1;
        bool header = false;
    };

    // train
    auto* train = app.add_subcommand("train", "Fit a model on a labelled CSV");
    DataFlags train_data;
    PipelineFlags train_flags;
    std::string train_config;
    std::string train_out;
    train->add_option("--data", train_data.data, "Training CSV (one sample per row)")->required();
    train->add_option("--groups", train_data.groups, "Feature group column ranges, e.g. 0:8,8:16");
    train->add_option("--label-col", train_data.label_col, "Label column (negative counts from end)")
        ->capture_default_str();
    train->add_flag("--header", train_data.header, "Skip the first line");
    train->add_option("--config", train_config, "JSON config; flags override its values");
    train_flags.add_to(*train, true);
    train->add_option("--out", train_out, "Model file")->required();

    // predict
    auto* predict = app.add_subcommand("predict", "Label a CSV with a trained model");
    DataFlags pred_data;
    bool unlabeled = false;
    std::string model_path;
    std::string pred_out;
    predict->add_option("--model", model_path, "Model file")->required();
    predict->add_option("--data", pred_data.data, "CSV to label")->required();
    predict->add_option("--groups", pred_data.groups, "Feature group column ranges");
    predict->add_option("--label-col", pred_data.label_col, "Label column, used for metrics")
        ->capture_default_str();
    predict->add_flag("--unlabeled", unlabeled, "The CSV has no label column");
    predict->add_flag("--header", pred_data.header, "Skip the first line");
    predict->add_option("--out", pred_out, "Write predicted labels here (default stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "Run repeated split/fit/evaluate experiments");
    PipelineFlags bench_flags;
    std::string bench_config;
    std::optional<std::string> bench_data;
    std::optional<std::string> bench_groups;
    std::optional<int> bench_label_col;
    bool bench_header = false;
    std::optional<int> synth_classes;
    std::optional<std::size_t> synth_per_class;
    std::optional<Eigen::Index> synth_dim;
    std::optional<double> synth_spread;
    std::optional<std::size_t> repetitions;
    std::optional<double> train_fraction;
    std::optional<std::size_t> per_class;
    bool no_stratify = false;
    std::optional<std::vector<std::string>> methods;
    bool no_timing = false;
    std::optional<std::string> dataset_name;
    std::string bench_out;
    std::string bench_format = "json";
    bench->add_option("--config", bench_config, "JSON config; flags override its values");
    bench->add_option("--data", bench_data, "CSV data set (synthetic blobs when omitted)");
    bench->add_option("--groups", bench_groups, "Feature group column ranges");
    bench->add_option("--label-col", bench_label_col, "Label column");
    bench->add_flag("--header", bench_header, "Skip the first CSV line");
    bench->add_option("--synth-classes", synth_classes, "Synthetic classes");
    bench->add_option("--synth-per-class", synth_per_class, "Synthetic samples per class");
    bench->add_option("--synth-dim", synth_dim, "Synthetic feature dimension");
    bench->add_option("--synth-spread", synth_spread, "Synthetic cluster spread");
    bench->add_option("--repetitions", repetitions, "Number of random splits");
    bench->add_option("--train-fraction", train_fraction, "Training fraction per split");
    bench->add_option("--per-class", per_class, "Fixed training samples per class");
    bench->add_flag("--no-stratify", no_stratify, "Fraction split ignores classes");
    bench->add_option("--methods", methods, "batch and/or sequential")
        ->delimiter(',')
        ->check(CLI::IsMember({"batch", "sequential"}));
    bench->add_flag("--no-timing", no_timing, "Report zero timings (byte-reproducible output)");
    bench->add_option("--dataset", dataset_name, "Name recorded in the report");
    bench_flags.add_to(*bench, false);
    bench->add_option("--out", bench_out, "Report file")->required();
    bench->add_option("--format", bench_format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            const Dataset blobs = synth_blobs(synth_spec.classes, synth_spec.per_class,
                                              synth_spec.dim, synth_spec.spread, synth_seed);
            // Rows are shuffled so that any prefix chunk mixes the classes.
            std::vector<std::size_t> order(blobs.labels.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            Rng rng(derive_seed(synth_seed, 1));
            std::shuffle(order.begin(), order.end(), rng.engine());
            write_csv(select(blobs, order), synth_out);
            return 0;
        }

        if (train->parsed()) {
            PipelineConfig cfg;
            if (!train_config.empty()) merge_config(read_json(train_config), cfg);
            train_flags.apply(cfg);
            const Dataset data = load_csv(train_data.data, parse_column_ranges(train_data.groups),
                                          train_data.label_col, train_data.header);
            const Matrix t = one_hot(data.labels, data.classes());
            const auto start = std::chrono::steady_clock::now();
            const HOselmModel model = fit_model(data.groups, t, cfg);
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            save_model(model, train_out);
            EvaluationResult r = evaluate(model, data.groups, t);
            std::cout << "trained " << to_string(cfg.mode) << " model on " << data.samples()
                      << " samples in " << std::fixed << std::setprecision(3) << seconds
                      << " s\n";
            print_metrics(std::cout, r);
            return 0;
        }

        if (predict->parsed()) {
            const HOselmModel model = load_model(model_path);
            std::optional<int> label_col;
            if (!unlabeled) label_col = pred_data.label_col;
            const Dataset data = load_csv(pred_data.data, parse_column_ranges(pred_data.groups),
                                          label_col, pred_data.header);
            const std::vector<int> labels = predict_labels(model, data.groups);
            std::ofstream file;
            if (!pred_out.empty()) {
                file.open(pred_out);
                if (!file) throw IoError("cannot open '" + pred_out + "' for writing");
            }
            std::ostream& out = pred_out.empty() ? std::cout : file;
            for (int l : labels) out << l << '\n';
            if (!data.labels.empty()) {
                const auto r = compute_metrics(data.labels, labels, static_cast<int>(model.classes));
                print_metrics(pred_out.empty() ? std::cerr : std::cout, r);
            }
            return 0;
        }

        if (bench->parsed()) {
            RunConfig cfg;
            if (!bench_config.empty()) merge_run_config(read_json(bench_config), cfg);
            if (bench_data) cfg.data = *bench_data;
            if (bench_groups) cfg.groups = parse_column_ranges(*bench_groups);
            if (bench_label_col) cfg.label_col = *bench_label_col;
            if (bench_header) cfg.header = true;
            if (synth_classes) cfg.synth.classes = *synth_classes;
            if (synth_per_class) cfg.synth.per_class = *synth_per_class;
            if (synth_dim) cfg.synth.dim = *synth_dim;
            if (synth_spread) cfg.synth.spread = *synth_spread;
            if (repetitions) cfg.repetitions = *repetitions;
            if (train_fraction) {
                cfg.split.fraction = *train_fraction;
                cfg.split.per_class.reset();
            }
            if (per_class) cfg.split.per_class = *per_class;
            if (no_stratify) cfg.split.stratified = false;
            if (methods) {
                cfg.methods.clear();
                for (const auto& m : *methods) cfg.methods.push_back(parse_train_mode(m));
            }
            if (no_timing) cfg.timing = false;
            if (dataset_name) cfg.dataset_name = *dataset_name;
            bench_flags.apply(cfg.pipeline);
            if (bench_flags.seed) cfg.seed = *bench_flags.seed;

            const MetricsReport report = run_benchmark(cfg);
            emit_report(report, bench_out, parse_report_format(bench_format));
            for (const auto& a : report.aggregate) {
                std::cout << a.method << " " << report.dataset << " mean_per_class_rate "
                          << std::fixed << std::setprecision(4) << a.mean_rate << " +/- "
                          << a.std_rate << " over " << a.repetitions << " repetition(s)\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
