#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stclust/hac.hpp"

namespace stclust {

// Gold class assignment of a document collection.
class GoldStandard {
 public:
  explicit GoldStandard(const std::vector<std::string>& labels);

  std::size_t num_docs() const { return class_of_.size(); }
  std::size_t num_classes() const { return names_.size(); }
  std::size_t class_of(std::size_t doc) const { return class_of_.at(doc); }
  const std::vector<std::string>& class_names() const { return names_; }
  const std::vector<std::size_t>& class_sizes() const { return sizes_; }

 private:
  std::vector<std::size_t> class_of_;
  std::vector<std::string> names_;
  std::vector<std::size_t> sizes_;
};

// counts[i][j] = documents of class i in cluster j.
class ContingencyTable {
 public:
  ContingencyTable(std::vector<std::vector<std::size_t>> counts,
                   std::vector<std::size_t> class_sizes);

  std::size_t num_classes() const { return counts_.size(); }
  std::size_t num_clusters() const { return cluster_sizes_.size(); }
  std::size_t count(std::size_t i, std::size_t j) const { return counts_[i][j]; }
  std::size_t class_size(std::size_t i) const { return class_sizes_[i]; }
  std::size_t cluster_size(std::size_t j) const { return cluster_sizes_[j]; }
  // Documents in the collection, sum of class sizes.
  std::size_t n() const { return n_; }
  // Sum of cluster sizes; exceeds n when clusters overlap.
  std::size_t total_assignments() const { return total_; }

 private:
  std::vector<std::vector<std::size_t>> counts_;
  std::vector<std::size_t> class_sizes_;
  std::vector<std::size_t> cluster_sizes_;
  std::size_t n_ = 0;
  std::size_t total_ = 0;
};

// Clusters hold document indices; a document may appear in several clusters.
ContingencyTable contingency(const FlatClustering& clustering, const GoldStandard& gold);

// F = sum_i n_i/n * max_j F(i, j), F(i, j) the harmonic mean of
// prec = c_ij/c_j and rec = c_ij/n_i (0 when c_ij = 0).
double f_measure(const ContingencyTable& table);

// sum_j c_j/N * max_i c_ij/c_j with N the sum of cluster sizes.
double purity(const ContingencyTable& table);

// sum_j c_j/N * E_j, E_j = -sum_i p_ij log2 p_ij over class proportions in cluster j.
double entropy(const ContingencyTable& table);

}  // namespace stclust
