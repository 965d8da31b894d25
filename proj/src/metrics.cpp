#include "stclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace stclust {

GoldStandard::GoldStandard(const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> index;
  for (const auto& l : labels) index.emplace(l, 0);
  for (auto& [name, idx] : index) {
    idx = names_.size();
    names_.push_back(name);
  }
  sizes_.assign(names_.size(), 0);
  class_of_.reserve(labels.size());
  for (const auto& l : labels) {
    const std::size_t c = index.at(l);
    class_of_.push_back(c);
    ++sizes_[c];
  }
}

ContingencyTable::ContingencyTable(std::vector<std::vector<std::size_t>> counts,
                                   std::vector<std::size_t> class_sizes)
    : counts_(std::move(counts)), class_sizes_(std::move(class_sizes)) {
  if (counts_.size() != class_sizes_.size())
    throw std::invalid_argument("contingency table: class count mismatch");
  const std::size_t k = counts_.empty() ? 0 : counts_.front().size();
  cluster_sizes_.assign(k, 0);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i].size() != k) throw std::invalid_argument("contingency table: ragged rows");
    for (std::size_t j = 0; j < k; ++j) cluster_sizes_[j] += counts_[i][j];
    n_ += class_sizes_[i];
  }
  for (std::size_t c : cluster_sizes_) total_ += c;
}

ContingencyTable contingency(const FlatClustering& clustering, const GoldStandard& gold) {
  std::vector<std::vector<std::size_t>> counts(gold.num_classes(),
                                               std::vector<std::size_t>(clustering.size(), 0));
  for (std::size_t j = 0; j < clustering.size(); ++j) {
    for (std::size_t doc : clustering[j]) {
      if (doc >= gold.num_docs())
        throw std::out_of_range("contingency: document " + std::to_string(doc) +
                                " has no gold label");
      ++counts[gold.class_of(doc)][j];
    }
  }
  return ContingencyTable(std::move(counts), gold.class_sizes());
}

double f_measure(const ContingencyTable& t) {
  if (t.n() == 0) throw std::invalid_argument("f_measure: empty table");
  double total = 0.0;
  for (std::size_t i = 0; i < t.num_classes(); ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < t.num_clusters(); ++j) {
      const std::size_t c = t.count(i, j);
      if (c == 0) continue;
      const double prec = static_cast<double>(c) / static_cast<double>(t.cluster_size(j));
      const double rec = static_cast<double>(c) / static_cast<double>(t.class_size(i));
      best = std::max(best, 2.0 * prec * rec / (prec + rec));
    }
    total += static_cast<double>(t.class_size(i)) * best;
  }
  return total / static_cast<double>(t.n());
}

namespace {

void require_nonempty_clusters(const ContingencyTable& t, const char* who) {
  if (t.total_assignments() == 0) throw std::invalid_argument(std::string(who) + ": empty table");
  for (std::size_t j = 0; j < t.num_clusters(); ++j)
    if (t.cluster_size(j) == 0)
      throw std::invalid_argument(std::string(who) + ": cluster " + std::to_string(j) +
                                  " is empty");
}

}  // namespace

double purity(const ContingencyTable& t) {
  require_nonempty_clusters(t, "purity");
  const auto total = static_cast<double>(t.total_assignments());
  // c_j/N * max_i c_ij/c_j summed over j is sum_j max_i c_ij / N.
  std::size_t dominant = 0;
  for (std::size_t j = 0; j < t.num_clusters(); ++j) {
    std::size_t top = 0;
    for (std::size_t i = 0; i < t.num_classes(); ++i) top = std::max(top, t.count(i, j));
    dominant += top;
  }
  return static_cast<double>(dominant) / total;
}

double entropy(const ContingencyTable& t) {
  require_nonempty_clusters(t, "entropy");
  const auto total = static_cast<double>(t.total_assignments());
  double sum = 0.0;
  for (std::size_t j = 0; j < t.num_clusters(); ++j) {
    const auto cj = static_cast<double>(t.cluster_size(j));
    double e = 0.0;
    for (std::size_t i = 0; i < t.num_classes(); ++i) {
      const std::size_t c = t.count(i, j);
      if (c == 0) continue;
      const double p = static_cast<double>(c) / cj;
      e -= p * std::log2(p);
    }
    sum += cj * e;
  }
  return sum / total;
}

}  // namespace stclust
