#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "stclust/corpus.hpp"
#include "stclust/gst.hpp"
#include "stclust/hac.hpp"

namespace stclust {

// Unordered pair stored with first < second.
using WordPair = std::pair<std::string, std::string>;

// Documents a pair must co-occur in: ceil(min_support * num_docs), at least 1.
std::size_t support_threshold(double min_support, std::size_t num_docs);

// Apriori over document-level presence: frequent single words first, then
// pairs of frequent words co-occurring in at least support_threshold documents.
// Sorted lexicographically.
std::vector<WordPair> frequent_two_word_sets(const Corpus& corpus, double min_support);

// Words taking part in at least one frequent pair.
std::unordered_set<std::string> frequent_words(const std::vector<WordPair>& pairs);

struct CompactDocument {
  std::string doc_id;
  std::vector<std::string> words;
};

std::vector<CompactDocument> compact_documents(const Corpus& corpus,
                                               const std::unordered_set<std::string>& ws);

struct ClusterCandidate {
  std::vector<std::string> sequence;
  std::vector<DocIndex> docs;  // sorted
};

// Every node with a phrase of at least two words shared by at least two
// documents. Sorted by (length desc, sequence).
std::vector<ClusterCandidate> candidate_clusters(const GeneralizedSuffixTree& tree);

// Word-level Levenshtein distance.
std::size_t k_mismatch_distance(std::span<const std::string> a, std::span<const std::string> b);

struct MergedCluster {
  std::vector<std::string> representative;
  std::vector<DocIndex> docs;  // sorted
};

// Longest remaining candidate absorbs every remaining candidate within
// distance k; repeat until none remain. Candidates are ordered by (length
// desc, sequence) first, so input order does not matter.
std::vector<MergedCluster> merge_candidates(std::vector<ClusterCandidate> candidates,
                                            std::size_t k);

// |A & B| / min(|A|, |B|) over sorted document lists.
double overlap_coefficient(std::span<const DocIndex> a, std::span<const DocIndex> b);

struct CfwsOptions {
  double min_support = 0.05;
  std::size_t k = 2;
};

struct CfwsResult {
  // HAC items: merged clusters in creation order, then one singleton per
  // document left out of every merged cluster.
  std::vector<MergedCluster> items;
  std::size_t num_merged = 0;
  Dendrogram dendrogram;
  std::size_t frequent_pairs = 0;
  std::size_t frequent_word_count = 0;
  std::size_t candidates = 0;
  std::vector<std::string> diagnostics;
  std::vector<std::pair<std::string, double>> stage_seconds;
};

CfwsResult run_cfws(const Corpus& corpus, const CfwsOptions& options = {});

}  // namespace stclust
