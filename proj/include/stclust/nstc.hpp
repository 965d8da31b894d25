#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stclust/corpus.hpp"
#include "stclust/gst.hpp"
#include "stclust/hac.hpp"

namespace stclust {

// Sparse tf-idf vector over suffix tree phrase nodes, sorted by node id.
struct FeatureVector {
  std::string doc_id;
  std::vector<std::pair<NodeId, double>> weights;

  bool empty() const { return weights.empty(); }
};

// (1 + ln tf) * ln(1 + N / df); zero when tf = 0.
double tfidf_weight(std::uint32_t tf, std::size_t df, std::size_t num_docs);

struct PhraseFeatures {
  GeneralizedSuffixTree tree;
  std::vector<NodeId> feature_nodes;
  std::vector<FeatureVector> vectors;
};

// Feature space: tree nodes shared by at least min_df documents.
PhraseFeatures build_feature_vectors(const Corpus& corpus, std::size_t min_df = 2);

// Same, over a tree already built from the corpus word lists.
std::vector<FeatureVector> feature_vectors_from_tree(const GeneralizedSuffixTree& tree,
                                                     const Corpus& corpus,
                                                     const std::vector<NodeId>& feature_nodes);

// Word lists of the corpus in document order.
std::vector<std::vector<std::string>> word_sequences(const Corpus& corpus);

// dot(u, v) / sqrt(|u|^2 |v|^2), clamped to [0, 1]. 0 if either vector is
// empty; a pair of empty vectors also bumps degenerate_cosine_count().
double cosine_similarity(const FeatureVector& u, const FeatureVector& v);
std::uint64_t degenerate_cosine_count();
void reset_degenerate_cosine_count();

// Pairwise cosine matrix. Rows are split across threads; each entry is
// computed independently so the result does not depend on the thread count.
SimilarityMatrix cosine_matrix(const std::vector<FeatureVector>& vectors, unsigned threads = 0);

struct NstcOptions {
  std::size_t min_df = 2;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct NstcResult {
  Dendrogram dendrogram;
  std::size_t num_features = 0;
  std::size_t empty_vectors = 0;
  std::size_t tree_nodes = 0;
  // Wall-clock seconds per stage, in execution order.
  std::vector<std::pair<std::string, double>> stage_seconds;
};

NstcResult run_nstc(const Corpus& corpus, const NstcOptions& options = {});

}  // namespace stclust
