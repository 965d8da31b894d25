#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stclust {

// Dense symmetric similarity matrix with unit diagonal.
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t a, std::size_t b) const { return values_[a * n_ + b]; }
  // Sets both (a, b) and (b, a).
  void set(std::size_t a, std::size_t b, double v);
  std::span<const double> row(std::size_t a) const {
    return std::span<const double>(values_).subspan(a * n_, n_);
  }

  // Throws std::invalid_argument on asymmetry, a non-unit diagonal, or a value
  // outside [0, 1].
  void validate() const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

// Cluster ids follow the usual convention: 0..n-1 are the items, n + t is the
// cluster created by merge t.
struct Merge {
  std::size_t left;
  std::size_t right;
  double similarity;
  std::size_t size;
};

struct Dendrogram {
  std::size_t num_items = 0;
  std::vector<Merge> merges;
};

// Each inner vector is a sorted member list; clusters are ordered by their
// smallest member.
using FlatClustering = std::vector<std::vector<std::size_t>>;

// Average-linkage (UPGMA) agglomeration, most similar pair first.
//
// A cluster is identified by its smallest item. Among equally similar pairs
// the one with the smallest (lower id, higher id) is merged first. The
// recorded left cluster is the one holding the lower id.
Dendrogram upgma(const SimilarityMatrix& matrix);

// Partition after n - k merges.
FlatClustering cut(const Dendrogram& dendrogram, std::size_t k);

// cut(d, k) for k = n, n-1, ..., 1.
std::vector<FlatClustering> all_levels(const Dendrogram& dendrogram);

}  // namespace stclust
