#include "smad/clustering.hpp"

#include <algorithm>
#include <limits>

namespace smad {

std::vector<std::vector<std::size_t>> agglomerate_average_linkage(const DistanceMatrix& distances,
                                                                  double merge_threshold) {
    const std::size_t n = distances.size;
    std::vector<std::vector<std::size_t>> clusters(n);
    for (std::size_t i = 0; i < n; ++i) {
        clusters[i] = {i};
    }
    // linkage_sum[i][j] holds the sum of member-pair distances between clusters i and j.
    std::vector<double> linkage_sum = distances.values;

    while (clusters.size() > 1) {
        const std::size_t c = clusters.size();
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        std::size_t best_j = 0;
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t j = i + 1; j < c; ++j) {
                const double average = linkage_sum[i * n + j] /
                                       static_cast<double>(clusters[i].size() * clusters[j].size());
                // Clusters are kept ordered by their smallest member, so scanning (i, j)
                // lexicographically and replacing only on a strict improvement keeps the
                // earliest pair among ties.
                if (average < best - kLinkageTieTolerance) {
                    best = average;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best > merge_threshold + kLinkageTieTolerance) {
            break;
        }
        clusters[best_i].insert(clusters[best_i].end(), clusters[best_j].begin(), clusters[best_j].end());
        std::sort(clusters[best_i].begin(), clusters[best_i].end());
        for (std::size_t k = 0; k < c; ++k) {
            linkage_sum[best_i * n + k] += linkage_sum[best_j * n + k];
            linkage_sum[k * n + best_i] = linkage_sum[best_i * n + k];
        }
        // Remove cluster best_j by shifting rows and columns after it.
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(best_j));
        for (std::size_t row = 0; row < c; ++row) {
            for (std::size_t col = best_j; col + 1 < c; ++col) {
                linkage_sum[row * n + col] = linkage_sum[row * n + col + 1];
            }
        }
        for (std::size_t row = best_j; row + 1 < c; ++row) {
            for (std::size_t col = 0; col + 1 < c; ++col) {
                linkage_sum[row * n + col] = linkage_sum[(row + 1) * n + col];
            }
        }
    }
    return clusters;
}

} // namespace smad
