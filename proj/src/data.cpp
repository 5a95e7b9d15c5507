#include "fedrep/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fedrep/errors.hpp"
#include "fedrep/rng.hpp"

namespace fedrep {

namespace {

constexpr std::uint64_t kTagHospitalDeal = 0xda1;
constexpr std::uint64_t kTagFoldDeal = 0xf01d;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view token, const std::string& context) {
    token = trim(token);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw FormatError(context + ": cannot parse number '" + std::string(token) + "'");
    return out;
}

std::vector<double> parse_csv_row(const std::string& line, const std::string& context) {
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
        std::size_t comma = line.find(',', start);
        std::size_t end = comma == std::string::npos ? line.size() : comma;
        row.push_back(parse_double(std::string_view(line).substr(start, end - start), context));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return row;
}

std::vector<std::string> read_nonempty_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view t = trim(line);
        if (!t.empty()) lines.emplace_back(t);
    }
    return lines;
}

std::vector<int> load_labels(const std::string& labels_file, std::size_t expected) {
    auto lines = read_nonempty_lines(labels_file);
    if (lines.empty()) throw FormatError(labels_file + ": labels file is empty");
    if (lines.size() != expected)
        throw FormatError(labels_file + ": " + std::to_string(lines.size()) + " labels for " +
                          std::to_string(expected) + " samples");
    std::vector<int> labels;
    labels.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        double v = parse_double(lines[i], labels_file + " line " + std::to_string(i + 1));
        if (v != 0.0 && v != 1.0)
            throw FormatError(labels_file + " line " + std::to_string(i + 1) +
                              ": label must be 0 or 1");
        labels.push_back(static_cast<int>(v));
    }
    return labels;
}

std::size_t exact_sqrt(std::size_t n, const std::string& context) {
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r != n)
        throw FormatError(context + ": row length " + std::to_string(n) +
                          " is not a perfect square");
    return r;
}

} // namespace

void GraphSample::validate(double tol) const {
    if (adjacency.rows() != adjacency.cols())
        throw DomainError("GraphSample " + subject_id + ": adjacency not square, " +
                          adjacency.shape_string());
    if (label != 0 && label != 1)
        throw DomainError("GraphSample " + subject_id + ": label must be 0 or 1");
    const std::size_t n = adjacency.rows();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(adjacency(i, i)) > tol)
            throw DomainError("GraphSample " + subject_id + ": nonzero diagonal at node " +
                              std::to_string(i));
        for (std::size_t j = 0; j < n; ++j) {
            if (adjacency(i, j) < 0.0)
                throw DomainError("GraphSample " + subject_id + ": negative edge weight");
            if (std::abs(adjacency(i, j) - adjacency(j, i)) > tol)
                throw DomainError("GraphSample " + subject_id + ": asymmetric beyond tolerance");
        }
    }
}

std::size_t Dataset::count_label(int label) const {
    std::size_t n = 0;
    for (const auto& s : samples)
        if (s.label == label) ++n;
    return n;
}

std::vector<const GraphSample*> HospitalPartition::train_fold(std::size_t h,
                                                              int held_out_fold) const {
    std::vector<const GraphSample*> out;
    for (std::size_t i = 0; i < hospitals[h].samples.size(); ++i)
        if (fold_of[h][i] != held_out_fold) out.push_back(&hospitals[h].samples[i]);
    return out;
}

std::vector<const GraphSample*> HospitalPartition::validation_fold(std::size_t h,
                                                                   int held_out_fold) const {
    std::vector<const GraphSample*> out;
    for (std::size_t i = 0; i < hospitals[h].samples.size(); ++i)
        if (fold_of[h][i] == held_out_fold) out.push_back(&hospitals[h].samples[i]);
    return out;
}

Dataset load_connectomes(const std::string& matrix_file, const std::string& labels_file,
                         std::vector<std::string>* warnings) {
    auto lines = read_nonempty_lines(matrix_file);
    if (lines.empty()) throw FormatError(matrix_file + ": no samples");

    Dataset ds;
    ds.name = matrix_file;
    for (std::size_t s = 0; s < lines.size(); ++s) {
        const std::string context = matrix_file + " line " + std::to_string(s + 1);
        std::vector<double> row = parse_csv_row(lines[s], context);
        std::size_t n = exact_sqrt(row.size(), context);
        if (s == 0) {
            ds.node_count = n;
        } else if (n != ds.node_count) {
            throw FormatError(context + ": expected " +
                              std::to_string(ds.node_count * ds.node_count) + " values, got " +
                              std::to_string(row.size()));
        }
        for (double v : row)
            if (v < 0.0) throw FormatError(context + ": negative edge weight");

        DenseMatrix a(n, n, std::move(row));
        double worst_asym = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                worst_asym = std::max(worst_asym, std::abs(a(i, j) - a(j, i)));
        if (worst_asym > 0.0) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    double m = (a(i, j) + a(j, i)) / 2.0;
                    a(i, j) = m;
                    a(j, i) = m;
                }
            if (worst_asym > 1e-9 && warnings)
                warnings->push_back(context + ": asymmetric input (max deviation " +
                                    std::to_string(worst_asym) + "), symmetrized as (A+A^T)/2");
        }
        for (std::size_t i = 0; i < n; ++i) a(i, i) = 0.0;

        GraphSample sample{std::move(a), 0, "sample-" + std::to_string(s)};
        ds.samples.push_back(std::move(sample));
    }

    auto labels = load_labels(labels_file, ds.samples.size());
    for (std::size_t s = 0; s < labels.size(); ++s) ds.samples[s].label = labels[s];
    return ds;
}

DenseMatrix image_to_graph(const std::vector<double>& pixels, std::size_t side) {
    if (pixels.size() != side * side)
        throw FormatError("image_to_graph: expected " + std::to_string(side * side) +
                          " pixels, got " + std::to_string(pixels.size()));
    const std::size_t n = side * side;
    DenseMatrix a(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
            double w = std::abs(pixels[p] - pixels[q]) / 255.0;
            a(p, q) = w;
            a(q, p) = w;
        }
    return a;
}

std::vector<double> downsample_image(const std::vector<double>& pixels, std::size_t side,
                                     std::size_t factor) {
    if (factor == 0 || side % factor != 0)
        throw ParameterError("downsample_image: factor " + std::to_string(factor) +
                             " does not divide side " + std::to_string(side));
    if (pixels.size() != side * side)
        throw FormatError("downsample_image: expected " + std::to_string(side * side) +
                          " pixels, got " + std::to_string(pixels.size()));
    if (factor == 1) return pixels;
    const std::size_t out_side = side / factor;
    std::vector<double> out(out_side * out_side, 0.0);
    for (std::size_t bi = 0; bi < out_side; ++bi)
        for (std::size_t bj = 0; bj < out_side; ++bj) {
            double sum = 0.0;
            for (std::size_t i = 0; i < factor; ++i)
                for (std::size_t j = 0; j < factor; ++j)
                    sum += pixels[(bi * factor + i) * side + (bj * factor + j)];
            out[bi * out_side + bj] = sum / static_cast<double>(factor * factor);
        }
    return out;
}

Dataset load_images(const std::string& image_file, const std::string& labels_file,
                    std::size_t side, std::size_t downsample_factor) {
    auto lines = read_nonempty_lines(image_file);
    if (lines.empty()) throw FormatError(image_file + ": no samples");

    Dataset ds;
    ds.name = image_file;
    for (std::size_t s = 0; s < lines.size(); ++s) {
        const std::string context = image_file + " line " + std::to_string(s + 1);
        std::vector<double> pixels = parse_csv_row(lines[s], context);
        if (pixels.size() != side * side)
            throw FormatError(context + ": expected " + std::to_string(side * side) +
                              " pixels, got " + std::to_string(pixels.size()));
        std::size_t eff_side = side;
        if (downsample_factor > 1) {
            pixels = downsample_image(pixels, side, downsample_factor);
            eff_side = side / downsample_factor;
        }
        GraphSample sample{image_to_graph(pixels, eff_side), 0, "sample-" + std::to_string(s)};
        if (s == 0) ds.node_count = sample.node_count();
        ds.samples.push_back(std::move(sample));
    }

    auto labels = load_labels(labels_file, ds.samples.size());
    for (std::size_t s = 0; s < labels.size(); ++s) ds.samples[s].label = labels[s];
    return ds;
}

HospitalPartition partition_hospitals(const Dataset& dataset, std::size_t hospital_count,
                                      std::uint64_t seed) {
    if (hospital_count == 0) throw ParameterError("partition_hospitals: hospital count must be >= 1");
    const std::size_t min_per_class = hospital_count * HospitalPartition::kFolds;
    for (int label : {0, 1}) {
        std::size_t have = dataset.count_label(label);
        if (have < min_per_class)
            throw PartitionError("partition_hospitals: class " + std::to_string(label) + " has " +
                                 std::to_string(have) + " samples, needs at least " +
                                 std::to_string(min_per_class) + " (hospitals x folds)");
    }

    // Shuffle each class, then deal samples to hospitals with one rotating
    // pointer across both classes: total sizes and per-class counts both stay
    // within 1 of each other.
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < dataset.samples.size(); ++i)
        by_class[dataset.samples[i].label].push_back(i);
    std::mt19937_64 rng(derive_seed(seed, kTagHospitalDeal));
    shuffle(by_class[0], rng);
    shuffle(by_class[1], rng);

    HospitalPartition part;
    part.hospitals.resize(hospital_count);
    for (std::size_t h = 0; h < hospital_count; ++h) {
        part.hospitals[h].name = dataset.name + "/hospital-" + std::to_string(h);
        part.hospitals[h].node_count = dataset.node_count;
    }
    std::size_t deal = 0;
    for (const auto& cls : by_class)
        for (std::size_t idx : cls)
            part.hospitals[(deal++) % hospital_count].samples.push_back(dataset.samples[idx]);

    // Per-hospital stratified 3-fold labels, again with a rotating pointer
    // across classes. A seeded per-class shuffle decouples fold membership
    // from the deal order.
    part.fold_of.resize(hospital_count);
    for (std::size_t h = 0; h < hospital_count; ++h) {
        const Dataset& hosp = part.hospitals[h];
        part.fold_of[h].assign(hosp.samples.size(), 0);
        std::mt19937_64 fold_rng(derive_seed(seed, kTagFoldDeal, h));
        std::size_t fold_deal = 0;
        for (int label : {0, 1}) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < hosp.samples.size(); ++i)
                if (hosp.samples[i].label == label) members.push_back(i);
            shuffle(members, fold_rng);
            for (std::size_t i : members)
                part.fold_of[h][i] = static_cast<int>((fold_deal++) % HospitalPartition::kFolds);
        }
    }
    return part;
}

SyntheticDataset synth_planted(std::size_t node_count, std::size_t sample_count,
                               const std::set<std::size_t>& planted_nodes,
                               double signal_strength, double noise, std::uint64_t seed) {
    if (planted_nodes.empty()) throw ParameterError("synth_planted: planted node set is empty");
    if (node_count < 2) throw ParameterError("synth_planted: need at least 2 nodes");
    for (std::size_t p : planted_nodes)
        if (p >= node_count)
            throw ParameterError("synth_planted: planted node " + std::to_string(p) +
                                 " outside [0, " + std::to_string(node_count) + ")");
    if (signal_strength < 0.0 || noise < 0.0)
        throw ParameterError("synth_planted: signal and noise must be non-negative");

    std::vector<bool> planted(node_count, false);
    for (std::size_t p : planted_nodes) planted[p] = true;

    std::mt19937_64 rng(mix64(seed));
    SyntheticDataset out;
    out.planted_nodes = planted_nodes;
    out.data.name = "synthetic";
    out.data.node_count = node_count;
    for (std::size_t s = 0; s < sample_count; ++s) {
        int label = static_cast<int>(s % 2);
        DenseMatrix a(node_count, node_count);
        for (std::size_t i = 0; i < node_count; ++i)
            for (std::size_t j = i + 1; j < node_count; ++j) {
                double w = noise > 0.0 ? noise * uniform01(rng) : 0.0;
                if (label == 1 && (planted[i] || planted[j])) w += signal_strength;
                a(i, j) = w;
                a(j, i) = w;
            }
        out.data.samples.push_back({std::move(a), label, "synth-" + std::to_string(s)});
    }
    return out;
}

void write_connectome_files(const Dataset& dataset, const std::string& matrix_file,
                            const std::string& labels_file) {
    std::ofstream mf(matrix_file);
    if (!mf) throw IoError("cannot write file: " + matrix_file);
    char buf[40];
    for (const auto& sample : dataset.samples) {
        const auto& v = sample.adjacency.values();
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
            if (i) mf << ',';
            mf << buf;
        }
        mf << '\n';
    }
    if (!mf.good()) throw IoError("write failed: " + matrix_file);

    std::ofstream lf(labels_file);
    if (!lf) throw IoError("cannot write file: " + labels_file);
    for (const auto& sample : dataset.samples) lf << sample.label << '\n';
    if (!lf.good()) throw IoError("write failed: " + labels_file);
}

} // namespace fedrep
