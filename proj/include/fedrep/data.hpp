#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fedrep/matrix.hpp"

namespace fedrep {

/// One subject: an N x N weighted adjacency matrix plus a binary label.
struct GraphSample {
    DenseMatrix adjacency;
    int label = 0;
    std::string subject_id;

    std::size_t node_count() const { return adjacency.rows(); }

    /// Enforces the sample invariants: square, symmetric within tol,
    /// zero diagonal, non-negative, label in {0, 1}.
    void validate(double tol = 1e-9) const;
};

struct Dataset {
    std::vector<GraphSample> samples;
    std::string name;
    std::size_t node_count = 0;

    std::size_t size() const { return samples.size(); }
    std::size_t count_label(int label) const;
};

/// Disjoint hospital datasets with per-hospital 3-fold assignments.
struct HospitalPartition {
    std::vector<Dataset> hospitals;
    // fold_of[h][i] in {0,1,2}: fold of sample i within hospital h.
    std::vector<std::vector<int>> fold_of;

    static constexpr int kFolds = 3;

    std::size_t hospital_count() const { return hospitals.size(); }

    /// Samples of hospital h outside `held_out_fold` (the two training folds).
    std::vector<const GraphSample*> train_fold(std::size_t h, int held_out_fold) const;
    /// Samples of hospital h inside `held_out_fold` (the validation fold).
    std::vector<const GraphSample*> validation_fold(std::size_t h, int held_out_fold) const;
};

/// Loads a dataset from a connectome matrix file (one sample per line, N^2
/// comma-separated values, row-major) and a labels file (one 0/1 per line).
/// Asymmetric inputs are symmetrized as (A + A^T)/2 with a warning appended
/// to `warnings`; diagonals are zeroed.
Dataset load_connectomes(const std::string& matrix_file, const std::string& labels_file,
                         std::vector<std::string>* warnings = nullptr);

/// Loads an image-table file (one image per line, side^2 comma-separated
/// intensities in [0, 255]) and converts every image to a pixel-pair graph.
/// `downsample_factor` > 1 block-averages the image first.
Dataset load_images(const std::string& image_file, const std::string& labels_file,
                    std::size_t side, std::size_t downsample_factor = 1);

/// Fully connected weighted graph over the pixels of a square image:
/// edge(p, q) = |I_p - I_q| / 255 for p != q, diagonal 0.
DenseMatrix image_to_graph(const std::vector<double>& pixels, std::size_t side);

/// Block-mean pooling by `factor`, which must divide `side`.
std::vector<double> downsample_image(const std::vector<double>& pixels, std::size_t side,
                                     std::size_t factor);

/// Stratified shuffle-then-deal split into `hospital_count` disjoint local
/// datasets plus per-hospital stratified 3-fold labels. Deterministic for a
/// fixed seed. Requires each class to hold at least hospital_count * 3
/// samples.
HospitalPartition partition_hospitals(const Dataset& dataset, std::size_t hospital_count,
                                      std::uint64_t seed);

struct SyntheticDataset {
    Dataset data;
    std::set<std::size_t> planted_nodes; // ground truth
};

/// Synthetic planted-biomarker generator. Class-1 samples carry edges
/// incident to the planted nodes up-weighted by `signal_strength`; both
/// classes then receive symmetric uniform noise in [0, noise). Labels
/// alternate so classes stay balanced. Deterministic for a fixed seed.
SyntheticDataset synth_planted(std::size_t node_count, std::size_t sample_count,
                               const std::set<std::size_t>& planted_nodes,
                               double signal_strength, double noise, std::uint64_t seed);

/// Writes a dataset back out in the connectome file format (matrix + labels).
void write_connectome_files(const Dataset& dataset, const std::string& matrix_file,
                            const std::string& labels_file);

} // namespace fedrep
