// Acceptance suite: runs every exit criterion and prints one PASS/FAIL line
// per criterion. Exit status is non-zero if any criterion fails.

#include "hoselm/bench.hpp"
#include "hoselm/classifier.hpp"
#include "hoselm/dataset.hpp"
#include "hoselm/metrics.hpp"
#include "hoselm/numeric.hpp"
#include "hoselm/pipeline.hpp"
#include "hoselm/elm.hpp"
#include "hoselm/oselm.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

#include <chrono>
#include <filesystem>
#include <limits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace hoselm;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit;  // seconds, <= 0 when unbounded
    std::function<Outcome()> run;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. Four Penrose conditions on 200 random matrices up to 50x50.
Outcome pinv_suite() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<Eigen::Index> dim(1, 50);
    double worst = 0.0;
    int deficient = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index r = dim(rng);
        const Eigen::Index c = dim(rng);
        Matrix a;
        if (trial % 2 == 1 && std::min(r, c) > 1) {
            std::uniform_int_distribution<Eigen::Index> rk(1, std::min(r, c) - 1);
            a = oracle::random_rank(rng, r, c, rk(rng));
            ++deficient;
        } else {
            a = oracle::random_matrix(rng, r, c);
        }
        const Matrix ap = pinv(a);
        const Matrix aap = a * ap;
        const Matrix apa = ap * a;
        worst = std::max({worst, (a * ap * a - a).norm() / a.norm(),
                          (ap * a * ap - ap).norm() / ap.norm(),
                          (aap - aap.transpose()).norm() / aap.norm(),
                          (apa - apa.transpose()).norm() / apa.norm()});
    }
    return {worst <= 1e-9, "worst relative residual " + fmt(worst) + " (" +
                               std::to_string(deficient) + " rank-deficient)"};
}

struct ElmProblem {
    Matrix h;
    Matrix t;
};

// Sigmoid hidden map of a random ELM layer over random inputs.
ElmProblem elm_problem(std::mt19937_64& rng) {
    std::uniform_int_distribution<Eigen::Index> hidden(1, 20);
    std::uniform_int_distribution<Eigen::Index> samples(1, 60);
    std::uniform_int_distribution<Eigen::Index> targets(1, 4);
    std::uniform_int_distribution<Eigen::Index> inputs(1, 8);
    const Eigen::Index n = inputs(rng);
    const Eigen::Index l = hidden(rng);
    const Eigen::Index m = samples(rng);
    const auto layer = init_hidden(n, l, rng());
    return {hidden_activations(layer, oracle::random_matrix(rng, n, m)),
            oracle::random_matrix(rng, targets(rng), m)};
}

std::vector<Eigen::Index> random_chunks(std::mt19937_64& rng, Eigen::Index m) {
    std::vector<Eigen::Index> sizes;
    Eigen::Index pos = 0;
    while (pos < m) {
        std::uniform_int_distribution<Eigen::Index> len(1, m - pos);
        sizes.push_back(len(rng));
        pos += sizes.back();
    }
    return sizes;
}

Matrix stream_beta(const ElmProblem& p, const std::vector<Eigen::Index>& sizes, double c) {
    Eigen::Index pos = sizes.front();
    OselmState s = os_boot(p.h.leftCols(pos), p.t.leftCols(pos), c);
    for (std::size_t k = 1; k < sizes.size(); ++k) {
        os_update_inplace(s, p.h.middleCols(pos, sizes[k]), p.t.middleCols(pos, sizes[k]));
        pos += sizes[k];
    }
    return s.beta;
}

// 2. Sequential readout equals the ridge batch solution.
Outcome oselm_batch() {
    std::mt19937_64 rng(202);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const ElmProblem p = elm_problem(rng);
        const Matrix beta = stream_beta(p, random_chunks(rng, p.h.cols()), 100.0);
        worst = std::max(worst, oracle::rel(beta, oracle::ridge_batch(p.h, p.t, 100.0)));
    }
    return {worst <= 1e-6, "worst relative deviation " + fmt(worst)};
}

// 3. Two chunkings of one stream agree.
Outcome partition_invariance() {
    std::mt19937_64 rng(303);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const ElmProblem p = elm_problem(rng);
        const Matrix a = stream_beta(p, random_chunks(rng, p.h.cols()), 100.0);
        const Matrix b = stream_beta(p, random_chunks(rng, p.h.cols()), 100.0);
        worst = std::max(worst, oracle::rel(a, b));
    }
    return {worst <= 1e-6, "worst relative deviation " + fmt(worst)};
}

// 4. Residual monotonicity and step-size optimality against a grid search.
Outcome classifier_monotone() {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> dim(2, 15);
    std::uniform_int_distribution<int> samples(10, 60);
    std::uniform_int_distribution<int> classes(2, 5);
    double worst_increase = -std::numeric_limits<double>::infinity();
    double worst_step = 0.0;
    std::size_t nodes = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = dim(rng);
        const int m = samples(rng);
        const int k = classes(rng);
        const Matrix h = oracle::random_matrix(rng, d, m);
        Matrix t = Matrix::Zero(k, m);
        std::uniform_int_distribution<int> lab(0, k - 1);
        for (int j = 0; j < m; ++j) t(lab(rng), j) = 1.0;

        const ClassifierTrace trace = fit_classifier_traced(h, t, 8, 100.0);
        for (std::size_t c = 0; c < trace.model.nodes.size(); ++c) {
            ++nodes;
            const Matrix& prev = trace.residuals[c];
            worst_increase =
                std::max(worst_increase, trace.residuals[c + 1].norm() - prev.norm());

            const ClassifierNode& node = trace.model.nodes[c];
            const Matrix v = node_output(node, h);
            if (prev.isZero(0.0) || v.squaredNorm() == 0.0) continue;
            // |beta*| <= |e| / |V| by Cauchy-Schwarz, so the grid brackets it.
            const double bound = prev.norm() / v.norm();
            constexpr int points = 10000;
            const double spacing = 2.0 * bound / points;
            double best_beta = -bound;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= points; ++i) {
                const double beta = -bound + spacing * i;
                const double f = (prev - beta * v).squaredNorm();
                if (f < best) {
                    best = f;
                    best_beta = beta;
                }
            }
            const double closed = (prev - node.step * v).squaredNorm();
            if (closed > best * (1.0 + 1e-12) + 1e-12) worst_step = std::max(worst_step, 1.0);
            // the grid optimum lies within one spacing of the closed form
            worst_step = std::max(worst_step, std::abs(best_beta - node.step) - spacing);
        }
    }
    const bool pass = worst_increase <= 1e-9 && worst_step <= 1e-6;
    return {pass, std::to_string(nodes) + " nodes, max norm increase " + fmt(worst_increase) +
                      ", max step deviation beyond grid spacing " + fmt(worst_step)};
}

// 5. Interpolation with as many hidden neurons as samples.
Outcome elm_interpolation() {
    double worst = 0.0;
    for (Seed seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(505 + seed);
        const Matrix x = oracle::random_matrix(rng, 6, 30);
        const Matrix t = oracle::random_matrix(rng, 3, 30);
        const auto layer = init_hidden(6, 30, seed);
        const Matrix h = hidden_activations(layer, x);
        const OutputWeights w = fit_output(h, t);
        worst = std::max(worst, (w.beta.transpose() * h - t).norm() / t.norm());
    }
    return {worst <= 1e-4, "worst relative training residual " + fmt(worst) + " over 10 draws"};
}

// 6. Desk-scale end-to-end benchmark.
Outcome synthetic_benchmark() {
    constexpr double spread = 0.2;
    const Dataset data = synth_blobs(3, 400, 16, spread, 606);
    SplitSpec spec;
    spec.per_class = 200;
    const Split parts = split(data, spec, 607);

    // nearest-class-mean oracle fitted on the training half
    Matrix means = Matrix::Zero(16, 3);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(3);
    for (Eigen::Index j = 0; j < parts.train.samples(); ++j) {
        const int c = parts.train.labels[static_cast<std::size_t>(j)];
        means.col(c) += parts.train.groups[0].x.col(j);
        counts(c) += 1.0;
    }
    for (int c = 0; c < 3; ++c) means.col(c) /= counts(c);
    std::vector<int> ncm;
    for (Eigen::Index j = 0; j < parts.test.samples(); ++j) {
        Eigen::Index best = 0;
        (means.colwise() - parts.test.groups[0].x.col(j)).colwise().squaredNorm().minCoeff(&best);
        ncm.push_back(static_cast<int>(best));
    }
    const double ncm_rate = oracle::mean_per_class(parts.test.labels, ncm, 3);

    PipelineConfig cfg;
    cfg.nodes = 3;
    cfg.neurons = 100;
    cfg.c = 100.0;
    cfg.classifier_nodes = 10;
    cfg.chunk_size = 60;
    cfg.seed = 608;
    const Matrix t_train = one_hot(parts.train.labels, 3);
    const Matrix t_test = one_hot(parts.test.labels, 3);

    cfg.mode = TrainMode::batch;
    const double batch =
        evaluate(fit_model(parts.train.groups, t_train, cfg), parts.test.groups, t_test)
            .mean_per_class_rate;
    cfg.mode = TrainMode::sequential;
    const double seq =
        evaluate(fit_model(parts.train.groups, t_train, cfg), parts.test.groups, t_test)
            .mean_per_class_rate;

    const bool pass = ncm_rate >= 0.99 && batch >= 0.95 && seq >= batch - 0.02;
    return {pass, "nearest-mean " + fmt(ncm_rate) + ", batch " + fmt(batch) + ", sequential " +
                      fmt(seq)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 7. Two CLI bench runs with one seed produce identical report bytes.
Outcome determinism(const std::string& cli) {
    TempDir dir;
    bool same = true;
    std::string detail;
    for (const std::string format : {"json", "csv"}) {
        for (int run = 0; run < 2; ++run) {
            const std::string out = (dir / ("r" + std::to_string(run) + "." + format)).string();
            const std::string cmd = "\"" + cli + "\" bench --seed 77 --repetitions 2 --no-timing" +
                                    " --format " + format + " --out \"" + out + "\" > /dev/null";
            if (std::system(cmd.c_str()) != 0) return {false, "CLI failed: " + cmd};
        }
        const std::string a = slurp(dir / ("r0." + format));
        const std::string b = slurp(dir / ("r1." + format));
        same = same && !a.empty() && a == b;
        if (!detail.empty()) detail += ", ";
        detail += format + " " + std::to_string(a.size()) + " bytes " + (a == b ? "identical" : "differ");
    }
    return {same, detail};
}

// 8. Mean per-class rate equals a brute-force confusion count.
Outcome metric_correctness() {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> classes(2, 12);
    std::uniform_int_distribution<int> length(1, 300);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = classes(rng);
        const int m = length(rng);
        std::uniform_int_distribution<int> lab(0, k - 1);
        std::vector<int> truth(static_cast<std::size_t>(m));
        std::vector<int> pred(static_cast<std::size_t>(m));
        for (auto& v : truth) v = lab(rng);
        for (auto& v : pred) v = lab(rng);
        const EvaluationResult r = compute_metrics(truth, pred, k);
        if (r.mean_per_class_rate != oracle::mean_per_class(truth, pred, k) ||
            r.confusion != oracle::confusion(truth, pred, k)) {
            ++mismatches;
        }
    }

    // and through a fitted model's evaluate()
    const Dataset data = synth_blobs(4, 30, 6, 0.6, 809);
    const Matrix t = one_hot(data.labels, 4);
    PipelineConfig cfg;
    cfg.neurons = 10;
    const HOselmModel model = fit_model(data.groups, t, cfg);
    const EvaluationResult r = evaluate(model, data.groups, t);
    const auto pred = predict_labels(model, data.groups);
    const bool via_model = r.mean_per_class_rate == oracle::mean_per_class(data.labels, pred, 4);

    return {mismatches == 0 && via_model,
            std::to_string(mismatches) + " mismatches in 1000 label sets; evaluate() " +
                (via_model ? "matches" : "differs") + " on a fitted model"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : HOSELM_CLI_PATH;
    const std::vector<Criterion> criteria{
        {1, "pseudoinverse Penrose conditions", 5.0, pinv_suite},
        {2, "OS-ELM equals ridge batch", 5.0, oselm_batch},
        {3, "chunk-partition invariance", 0.0, partition_invariance},
        {4, "classifier residual monotonicity", 0.0, classifier_monotone},
        {5, "ELM interpolation", 0.0, elm_interpolation},
        {6, "synthetic end-to-end benchmark", 30.0, synthetic_benchmark},
        {7, "bench determinism", 0.0, [&cli] { return determinism(cli); }},
        {8, "metric correctness", 0.0, metric_correctness},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && secs >= c.time_limit) {
            o.pass = false;
            o.detail += "; exceeded " + fmt(c.time_limit) + " s";
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " ("
                  << fmt(secs) << " s): " << o.detail << '\n';
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
