#include "stclust/cfws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "stage_clock.hpp"
#include "stclust/simd.hpp"

namespace stclust {

std::size_t support_threshold(double min_support, std::size_t num_docs) {
  if (!(min_support > 0.0 && min_support <= 1.0))
    throw std::invalid_argument("min_support must be in (0, 1]");
  // Tolerance keeps e.g. 0.07 * 100 from rounding up to 8.
  const double raw = min_support * static_cast<double>(num_docs);
  const auto t = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::max<std::size_t>(t, 1);
}

std::vector<WordPair> frequent_two_word_sets(const Corpus& corpus, double min_support) {
  if (corpus.empty()) throw std::invalid_argument("frequent_two_word_sets: empty corpus");
  const std::size_t threshold = support_threshold(min_support, corpus.size());

  // Distinct words per document, as sorted strings.
  std::vector<std::vector<std::string>> doc_words;
  doc_words.reserve(corpus.size());
  std::map<std::string, std::size_t> df;
  for (const auto& d : corpus.documents()) {
    std::vector<std::string> w = d.words;
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    for (const auto& x : w) ++df[x];
    doc_words.push_back(std::move(w));
  }

  // Level 1: frequent single words, numbered in lexicographic order.
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::string> frequent;
  for (const auto& [w, count] : df) {
    if (count < threshold) continue;
    index.emplace(w, static_cast<std::uint32_t>(frequent.size()));
    frequent.push_back(w);
  }

  // Level 2: count pairs of frequent words per document.
  std::unordered_map<std::uint64_t, std::size_t> pair_count;
  std::vector<std::uint32_t> ids;
  for (const auto& w : doc_words) {
    ids.clear();
    for (const auto& x : w)
      if (auto it = index.find(x); it != index.end()) ids.push_back(it->second);
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        ++pair_count[(static_cast<std::uint64_t>(ids[a]) << 32) | ids[b]];
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> keep;
  for (const auto& [key, count] : pair_count)
    if (count >= threshold)
      keep.emplace_back(static_cast<std::uint32_t>(key >> 32),
                        static_cast<std::uint32_t>(key & 0xffffffffu));
  std::sort(keep.begin(), keep.end());
  std::vector<WordPair> out;
  out.reserve(keep.size());
  for (auto [a, b] : keep) out.emplace_back(frequent[a], frequent[b]);
  return out;
}

std::unordered_set<std::string> frequent_words(const std::vector<WordPair>& pairs) {
  std::unordered_set<std::string> ws;
  for (const auto& [a, b] : pairs) {
    ws.insert(a);
    ws.insert(b);
  }
  return ws;
}

std::vector<CompactDocument> compact_documents(const Corpus& corpus,
                                               const std::unordered_set<std::string>& ws) {
  std::vector<CompactDocument> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus.documents()) {
    CompactDocument c{d.id, {}};
    for (const auto& w : d.words)
      if (ws.contains(w)) c.words.push_back(w);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

bool candidate_before(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

}  // namespace

std::vector<ClusterCandidate> candidate_clusters(const GeneralizedSuffixTree& tree) {
  std::vector<ClusterCandidate> out;
  for (NodeId id = 1; id < tree.num_nodes(); ++id) {
    const SuffixTreeNode& n = tree.node(id);
    if (n.doc_support() < 2 || tree.phrase_length(id) < 2) continue;
    ClusterCandidate c;
    c.sequence = tree.phrase_of(id);
    c.docs.reserve(n.doc_occurrences.size());
    for (const auto& [doc, count] : n.doc_occurrences) c.docs.push_back(doc);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return candidate_before(a.sequence, b.sequence);
  });
  return out;
}

namespace {

template <typename T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// levenshtein(a, b) <= k, stopping once a whole DP row exceeds k.
bool within_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     std::size_t k, std::vector<std::size_t>& prev, std::vector<std::size_t>& cur) {
  const std::size_t la = a.size(), lb = b.size();
  if ((la > lb ? la - lb : lb - la) > k) return false;
  prev.resize(lb + 1);
  cur.resize(lb + 1);
  for (std::size_t j = 0; j <= lb; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= la; ++i) {
    cur[0] = i;
    std::size_t row_min = cur[0];
    for (std::size_t j = 1; j <= lb; ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
      row_min = std::min(row_min, cur[j]);
    }
    if (row_min > k) return false;
    std::swap(prev, cur);
  }
  return prev[lb] <= k;
}

std::vector<DocIndex> sorted_union(const std::vector<DocIndex>& a, const std::vector<DocIndex>& b) {
  std::vector<DocIndex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

std::size_t k_mismatch_distance(std::span<const std::string> a, std::span<const std::string> b) {
  return levenshtein(a, b);
}

std::vector<MergedCluster> merge_candidates(std::vector<ClusterCandidate> candidates,
                                            std::size_t k) {
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return candidate_before(a.sequence, b.sequence);
  });

  // Intern words so the distance loop compares integers.
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> seqs(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c)
    for (const auto& w : candidates[c].sequence)
      seqs[c].push_back(ids.emplace(w, static_cast<std::uint32_t>(ids.size())).first->second);

  std::vector<MergedCluster> out;
  std::vector<bool> taken(candidates.size(), false);
  std::vector<std::size_t> prev, cur;
  for (std::size_t head = 0; head < candidates.size(); ++head) {
    if (taken[head]) continue;
    taken[head] = true;
    MergedCluster m{candidates[head].sequence, candidates[head].docs};
    for (std::size_t other = head + 1; other < candidates.size(); ++other) {
      if (taken[other]) continue;
      if (!within_distance(seqs[head], seqs[other], k, prev, cur)) continue;
      taken[other] = true;
      m.docs = sorted_union(m.docs, candidates[other].docs);
    }
    out.push_back(std::move(m));
  }
  return out;
}

double overlap_coefficient(std::span<const DocIndex> a, std::span<const DocIndex> b) {
  if (a.empty() || b.empty()) return 0.0;
  std::size_t common = 0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x < *y) {
      ++x;
    } else if (*y < *x) {
      ++y;
    } else {
      ++common;
      ++x;
      ++y;
    }
  }
  return static_cast<double>(common) / static_cast<double>(std::min(a.size(), b.size()));
}

namespace {

SimilarityMatrix overlap_matrix(const std::vector<MergedCluster>& items, std::size_t num_docs) {
  const std::size_t words = (num_docs + 63) / 64;
  std::vector<std::uint64_t> bits(items.size() * words, 0);
  for (std::size_t i = 0; i < items.size(); ++i)
    for (DocIndex d : items[i].docs) bits[i * words + d / 64] |= std::uint64_t{1} << (d % 64);
  auto row = [&](std::size_t i) {
    return std::span<const std::uint64_t>(bits).subspan(i * words, words);
  };

  SimilarityMatrix m(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const std::size_t smaller = std::min(items[i].docs.size(), items[j].docs.size());
      if (smaller == 0) continue;
      const auto common = simd::and_popcount(row(i), row(j));
      m.set(i, j, static_cast<double>(common) / static_cast<double>(smaller));
    }
  }
  return m;
}

}  // namespace

CfwsResult run_cfws(const Corpus& corpus, const CfwsOptions& options) {
  if (corpus.empty()) throw std::invalid_argument("run_cfws: empty corpus");
  CfwsResult r;
  detail::StageClock clock(r.stage_seconds);

  const auto pairs = frequent_two_word_sets(corpus, options.min_support);
  const auto ws = frequent_words(pairs);
  r.frequent_pairs = pairs.size();
  r.frequent_word_count = ws.size();
  clock.lap("apriori");

  std::vector<MergedCluster> merged;
  if (ws.empty()) {
    r.diagnostics.push_back("no frequent two-word set at min_support " +
                            std::to_string(options.min_support) +
                            "; every document is its own cluster");
  } else {
    const auto compact = compact_documents(corpus, ws);
    std::vector<std::vector<std::string>> seqs;
    seqs.reserve(compact.size());
    for (const auto& c : compact) seqs.push_back(c.words);
    clock.lap("compact");
    const auto tree = GeneralizedSuffixTree::build(seqs);
    clock.lap("suffix-tree");
    auto candidates = candidate_clusters(tree);
    r.candidates = candidates.size();
    clock.lap("candidates");
    merged = merge_candidates(std::move(candidates), options.k);
    clock.lap("k-mismatch-merge");
    if (merged.empty())
      r.diagnostics.push_back("no cluster candidate; every document is its own cluster");
  }

  r.num_merged = merged.size();
  std::vector<bool> covered(corpus.size(), false);
  for (const auto& m : merged)
    for (DocIndex d : m.docs) covered[d] = true;
  r.items = std::move(merged);
  for (DocIndex d = 0; d < corpus.size(); ++d)
    if (!covered[d]) r.items.push_back({corpus[d].words, {d}});

  const SimilarityMatrix m = overlap_matrix(r.items, corpus.size());
  clock.lap("similarity");
  r.dendrogram = upgma(m);
  clock.lap("upgma");
  return r;
}

}  // namespace stclust
