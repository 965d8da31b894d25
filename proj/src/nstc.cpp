#include "stclust/nstc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "stage_clock.hpp"

namespace stclust {

namespace {

std::atomic<std::uint64_t> g_degenerate{0};

double squared_norm(const FeatureVector& v) {
  double s = 0.0;
  for (const auto& [id, w] : v.weights) s += w * w;
  return s;
}

double dot(const FeatureVector& u, const FeatureVector& v) {
  double s = 0.0;
  auto a = u.weights.begin();
  auto b = v.weights.begin();
  while (a != u.weights.end() && b != v.weights.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      s += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

double cosine_from_parts(double d, double nu, double nv) {
  // sqrt(x * x) == x exactly, so identical vectors give exactly 1.
  return std::clamp(d / std::sqrt(nu * nv), 0.0, 1.0);
}

}  // namespace

double tfidf_weight(std::uint32_t tf, std::size_t df, std::size_t num_docs) {
  if (tf == 0) return 0.0;
  if (df == 0 || num_docs == 0) throw std::invalid_argument("tfidf_weight: df and N must be > 0");
  return (1.0 + std::log(static_cast<double>(tf))) *
         std::log(1.0 + static_cast<double>(num_docs) / static_cast<double>(df));
}

std::vector<std::vector<std::string>> word_sequences(const Corpus& corpus) {
  std::vector<std::vector<std::string>> seqs;
  seqs.reserve(corpus.size());
  for (const auto& d : corpus.documents()) seqs.push_back(d.words);
  return seqs;
}

std::vector<FeatureVector> feature_vectors_from_tree(const GeneralizedSuffixTree& tree,
                                                     const Corpus& corpus,
                                                     const std::vector<NodeId>& feature_nodes) {
  if (tree.num_docs() != corpus.size())
    throw std::invalid_argument("feature vectors: tree and corpus disagree on document count");
  std::vector<FeatureVector> vectors(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d) vectors[d].doc_id = corpus[d].id;
  std::vector<NodeId> sorted = feature_nodes;
  std::sort(sorted.begin(), sorted.end());
  for (NodeId id : sorted) {
    const auto& occ = tree.node(id).doc_occurrences;
    for (const auto& [doc, tf] : occ)
      vectors[doc].weights.push_back({id, tfidf_weight(tf, occ.size(), corpus.size())});
  }
  return vectors;
}

PhraseFeatures build_feature_vectors(const Corpus& corpus, std::size_t min_df) {
  if (corpus.empty()) throw std::invalid_argument("build_feature_vectors: empty corpus");
  PhraseFeatures out{GeneralizedSuffixTree::build(word_sequences(corpus)), {}, {}};
  out.feature_nodes = out.tree.nodes_with_min_doc_support(min_df);
  out.vectors = feature_vectors_from_tree(out.tree, corpus, out.feature_nodes);
  return out;
}

double cosine_similarity(const FeatureVector& u, const FeatureVector& v) {
  if (u.empty() || v.empty()) {
    if (u.empty() && v.empty()) g_degenerate.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return cosine_from_parts(dot(u, v), squared_norm(u), squared_norm(v));
}

std::uint64_t degenerate_cosine_count() { return g_degenerate.load(); }
void reset_degenerate_cosine_count() { g_degenerate.store(0); }

SimilarityMatrix cosine_matrix(const std::vector<FeatureVector>& vectors, unsigned threads) {
  const std::size_t n = vectors.size();
  SimilarityMatrix m(n);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = squared_norm(vectors[i]);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::atomic<std::size_t> next_row{0};
  std::atomic<std::uint64_t> degenerate{0};
  auto worker = [&] {
    for (std::size_t i = next_row.fetch_add(1); i < n; i = next_row.fetch_add(1)) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double s = 0.0;
        if (vectors[i].empty() || vectors[j].empty()) {
          if (vectors[i].empty() && vectors[j].empty()) degenerate.fetch_add(1);
        } else {
          s = cosine_from_parts(dot(vectors[i], vectors[j]), norms[i], norms[j]);
        }
        // Distinct (i, j) cells per thread; no two threads write the same entry.
        m.set(i, j, s);
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  g_degenerate.fetch_add(degenerate.load(), std::memory_order_relaxed);
  return m;
}

NstcResult run_nstc(const Corpus& corpus, const NstcOptions& options) {
  if (corpus.empty()) throw std::invalid_argument("run_nstc: empty corpus");
  NstcResult r;
  detail::StageClock clock(r.stage_seconds);
  const auto tree = GeneralizedSuffixTree::build(word_sequences(corpus));
  clock.lap("suffix-tree");
  const auto nodes = tree.nodes_with_min_doc_support(options.min_df);
  const auto vectors = feature_vectors_from_tree(tree, corpus, nodes);
  clock.lap("features");
  r.num_features = nodes.size();
  r.tree_nodes = tree.num_nodes();
  r.empty_vectors = static_cast<std::size_t>(
      std::count_if(vectors.begin(), vectors.end(), [](const auto& v) { return v.empty(); }));
  SimilarityMatrix m = cosine_matrix(vectors, options.threads);
  clock.lap("similarity");
  r.dendrogram = upgma(m);
  clock.lap("upgma");
  return r;
}

}  // namespace stclust
