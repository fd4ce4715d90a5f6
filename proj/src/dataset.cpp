#include "hoselm/dataset.hpp"

#include "hoselm/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

namespace hoselm {

int Dataset::classes() const noexcept {
    if (labels.empty()) return 0;
    return *std::max_element(labels.begin(), labels.end()) + 1;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::size_t parse_index(std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw InvalidParameter("bad column index '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::vector<ColumnRange> parse_column_ranges(std::string_view text) {
    std::vector<ColumnRange> out;
    text = trim(text);
    if (text.empty()) return out;
    for (std::string_view part : split_fields(text)) {
        const std::size_t colon = part.find(':');
        if (colon == std::string_view::npos) {
            throw InvalidParameter("column range '" + std::string(part) + "' is not begin:end");
        }
        out.push_back({parse_index(trim(part.substr(0, colon))),
                       parse_index(trim(part.substr(colon + 1)))});
    }
    return out;
}

Dataset load_csv(const std::filesystem::path& path, std::span<const ColumnRange> ranges,
                 std::optional<int> label_col, bool skip_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::size_t width = 0;
    // width means "no label column"
    std::size_t label_index = 0;
    std::string line;
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        ++row_no;
        if (skip_header && row_no == 1) continue;
        if (trim(line).empty() || trim(line).front() == '#') continue;
        const auto fields = split_fields(line);
        if (width == 0) {
            width = fields.size();
            label_index = width;
            if (label_col) {
                const long resolved =
                    *label_col < 0 ? static_cast<long>(width) + *label_col : *label_col;
                if (resolved < 0 || resolved >= static_cast<long>(width)) {
                    throw InvalidParameter("label column " + std::to_string(*label_col) +
                                           " out of range for " + std::to_string(width) +
                                           " columns");
                }
                label_index = static_cast<std::size_t>(resolved);
            }
        } else if (fields.size() != width) {
            throw FormatError("ragged row " + std::to_string(row_no) + ": " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(width));
        }
        std::vector<double> values(width, 0.0);
        for (std::size_t c = 0; c < width; ++c) {
            const std::string_view f = fields[c];
            if (c == label_index) {
                int label = 0;
                const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), label);
                if (ec != std::errc() || ptr != f.data() + f.size() || label < 0) {
                    throw ParseError("malformed label '" + std::string(f) + "'", row_no, c);
                }
                labels.push_back(label);
                continue;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v)) {
                throw ParseError("malformed number '" + std::string(f) + "'", row_no, c);
            }
            values[c] = v;
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) throw FormatError("'" + path.string() + "' contains no samples");

    // Column lists per group; no ranges means every non-label column.
    std::vector<std::vector<std::size_t>> group_cols;
    std::vector<std::string> names;
    if (ranges.empty()) {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < width; ++c) {
            if (c != label_index) cols.push_back(c);
        }
        if (cols.empty()) throw FormatError("'" + path.string() + "' has no feature columns");
        group_cols.push_back(std::move(cols));
        names.emplace_back("features");
    } else {
        std::vector<bool> used(width, false);
        for (const auto& r : ranges) {
            if (r.begin >= r.end || r.end > width) {
                throw InvalidParameter("column range " + std::to_string(r.begin) + ":" +
                                       std::to_string(r.end) + " out of bounds");
            }
            std::vector<std::size_t> cols;
            for (std::size_t c = r.begin; c < r.end; ++c) {
                if (c == label_index) {
                    throw InvalidParameter("column range overlaps the label column");
                }
                if (used[c]) throw InvalidParameter("column ranges overlap");
                used[c] = true;
                cols.push_back(c);
            }
            group_cols.push_back(std::move(cols));
            names.push_back("cols" + std::to_string(r.begin) + "-" + std::to_string(r.end));
        }
    }

    Dataset data;
    data.labels = std::move(labels);
    const auto m = static_cast<Eigen::Index>(rows.size());
    for (std::size_t g = 0; g < group_cols.size(); ++g) {
        const auto& cols = group_cols[g];
        Matrix x(static_cast<Eigen::Index>(cols.size()), m);
        for (Eigen::Index j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < cols.size(); ++k) {
                x(static_cast<Eigen::Index>(k), j) = rows[static_cast<std::size_t>(j)][cols[k]];
            }
        }
        data.groups.push_back({std::move(x), names[g]});
    }
    return data;
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    char buf[64];
    for (Eigen::Index j = 0; j < data.samples(); ++j) {
        const char* sep = "";
        for (const auto& g : data.groups) {
            for (Eigen::Index i = 0; i < g.x.rows(); ++i) {
                const auto res = std::to_chars(buf, buf + sizeof buf, g.x(i, j),
                                               std::chars_format::general, 17);
                out << sep;
                out.write(buf, res.ptr - buf);
                sep = ",";
            }
        }
        if (!data.labels.empty()) out << sep << data.labels[static_cast<std::size_t>(j)];
        out << '\n';
    }
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Matrix one_hot(std::span<const int> labels, int classes) {
    if (classes < 1) throw InvalidParameter("one_hot: class count must be >= 1");
    Matrix t = Matrix::Zero(classes, static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= classes) {
            throw InvalidInput("one_hot: label " + std::to_string(labels[i]) + " at index " +
                               std::to_string(i) + " outside [0, " + std::to_string(classes) +
                               ")");
        }
        t(labels[i], static_cast<Eigen::Index>(i)) = 1.0;
    }
    return t;
}

Dataset select(const Dataset& data, std::span<const std::size_t> index) {
    Dataset out;
    out.labels.reserve(index.size());
    for (std::size_t i : index) out.labels.push_back(data.labels[i]);
    for (const auto& g : data.groups) {
        Matrix x(g.x.rows(), static_cast<Eigen::Index>(index.size()));
        for (std::size_t k = 0; k < index.size(); ++k) {
            x.col(static_cast<Eigen::Index>(k)) = g.x.col(static_cast<Eigen::Index>(index[k]));
        }
        out.groups.push_back({std::move(x), g.name});
    }
    return out;
}

Split split(const Dataset& data, const SplitSpec& spec, Seed seed) {
    if (!spec.per_class && !(spec.fraction > 0.0 && spec.fraction < 1.0)) {
        throw InvalidParameter("split: fraction must lie in (0, 1)");
    }
    if (spec.per_class && *spec.per_class < 1) {
        throw InvalidParameter("split: per-class count must be >= 1");
    }
    Rng rng(seed);
    const std::size_t m = data.labels.size();
    std::vector<std::size_t> train;

    if (spec.per_class || spec.stratified) {
        const int k = data.classes();
        std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < m; ++i) {
            by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);
        }
        for (std::size_t c = 0; c < by_class.size(); ++c) {
            auto& members = by_class[c];
            std::shuffle(members.begin(), members.end(), rng.engine());
            std::size_t take = 0;
            if (spec.per_class) {
                take = *spec.per_class;
                if (take > members.size()) {
                    throw InvalidParameter("split: class " + std::to_string(c) + " has " +
                                           std::to_string(members.size()) +
                                           " samples, fewer than the requested " +
                                           std::to_string(take));
                }
            } else {
                take = static_cast<std::size_t>(
                    std::llround(spec.fraction * static_cast<double>(members.size())));
            }
            train.insert(train.end(), members.begin(),
                         members.begin() + static_cast<std::ptrdiff_t>(take));
        }
    } else {
        std::vector<std::size_t> all(m);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng.engine());
        const auto take =
            static_cast<std::size_t>(std::llround(spec.fraction * static_cast<double>(m)));
        train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take));
    }
    std::shuffle(train.begin(), train.end(), rng.engine());

    std::vector<bool> in_train(m, false);
    for (std::size_t i : train) in_train[i] = true;
    std::vector<std::size_t> test;
    for (std::size_t i = 0; i < m; ++i) {
        if (!in_train[i]) test.push_back(i);
    }
    if (train.empty() || test.empty()) {
        throw InvalidParameter("split: a partition would be empty");
    }
    Split s;
    s.train = select(data, train);
    s.test = select(data, test);
    s.train_index = std::move(train);
    s.test_index = std::move(test);
    return s;
}

Dataset synth_blobs(int classes, std::size_t per_class, Eigen::Index dim, double spread,
                    Seed seed) {
    if (classes < 1 || per_class < 1 || dim < 1) {
        throw InvalidParameter("synth_blobs: counts must be >= 1");
    }
    if (classes > dim) throw InvalidParameter("synth_blobs: need dim >= classes");
    if (!(spread > 0.0) || !std::isfinite(spread)) {
        throw InvalidParameter("synth_blobs: spread must be positive");
    }
    Rng rng(seed);
    const auto m = static_cast<Eigen::Index>(per_class) * classes;
    Dataset data;
    Matrix x(dim, m);
    data.labels.reserve(static_cast<std::size_t>(m));
    Eigen::Index j = 0;
    for (int c = 0; c < classes; ++c) {
        for (std::size_t s = 0; s < per_class; ++s, ++j) {
            for (Eigen::Index i = 0; i < dim; ++i) {
                x(i, j) = (i == c ? 1.0 : 0.0) + rng.normal(0.0, spread);
            }
            data.labels.push_back(c);
        }
    }
    data.groups.push_back({std::move(x), "synth"});
    return data;
}

}  // namespace hoselm
