#pragma once

#include <cstddef>
#include <vector>

namespace smad {

/// Distances closer than this are treated as ties; ties merge the pair whose
/// smallest members come first.
inline constexpr double kLinkageTieTolerance = 1e-12;

/// Square distance matrix in row-major order.
struct DistanceMatrix {
    std::size_t size = 0;
    std::vector<double> values;

    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : size(n), values(n * n, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return values[i * size + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
};

/// Average-linkage agglomerative clustering. Merging stops once the closest pair of
/// clusters is farther apart than `merge_threshold`. Clusters are returned with sorted
/// members, ordered by their smallest member.
std::vector<std::vector<std::size_t>> agglomerate_average_linkage(const DistanceMatrix& distances,
                                                                  double merge_threshold);

} // namespace smad
