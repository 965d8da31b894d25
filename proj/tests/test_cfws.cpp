#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "stclust/cfws.hpp"

using namespace stclust;

namespace {

using Words = std::vector<std::string>;

Corpus make_corpus(const std::vector<Words>& docs) {
  std::vector<ProcessedDocument> out;
  for (std::size_t i = 0; i < docs.size(); ++i)
    out.push_back({"d" + std::to_string(i), i % 2 ? "odd" : "even", docs[i]});
  return Corpus::from_documents(std::move(out));
}

bool contains_run(const Words& doc, const Words& run) {
  return std::search(doc.begin(), doc.end(), run.begin(), run.end()) != doc.end();
}

}  // namespace

TEST_CASE("support threshold") {
  CHECK(support_threshold(0.05, 100) == 5);
  CHECK(support_threshold(0.07, 100) == 7);
  CHECK(support_threshold(0.06, 150) == 9);
  CHECK(support_threshold(0.05, 10) == 1);
  CHECK(support_threshold(0.05, 1) == 1);
  CHECK(support_threshold(1.0, 4) == 4);
  CHECK_THROWS_AS(support_threshold(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(support_threshold(1.5, 4), std::invalid_argument);
}

TEST_CASE("frequent two-word sets") {
  SUBCASE("worked example") {
    const Corpus c = make_corpus({{"a", "b", "c"}, {"a", "b"}, {"a", "c"}, {"d"}});
    const auto pairs = frequent_two_word_sets(c, 0.5);  // threshold 2
    CHECK(pairs == std::vector<WordPair>{{"a", "b"}, {"a", "c"}});
    const auto ws = frequent_words(pairs);
    CHECK(ws == std::unordered_set<std::string>{"a", "b", "c"});
  }
  SUBCASE("repeats inside one document count once") {
    const Corpus c = make_corpus({{"x", "x", "y", "y"}, {"x"}});
    CHECK(frequent_two_word_sets(c, 1.0).empty());
    CHECK(frequent_two_word_sets(c, 0.5) == std::vector<WordPair>{{"x", "y"}});
  }
  SUBCASE("a word never pairs with itself") {
    const Corpus c = make_corpus({{"x", "x"}, {"x", "x"}});
    CHECK(frequent_two_word_sets(c, 0.5).empty());
  }
  SUBCASE("empty corpus") {
    CHECK_THROWS_AS(frequent_two_word_sets(Corpus{}, 0.5), std::invalid_argument);
  }
  SUBCASE("agrees with brute force") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      const auto docs = oracle::random_docs(rng, 12, 8, 7);
      const double ms = std::uniform_real_distribution<double>(0.05, 0.8)(rng);
      const auto got = frequent_two_word_sets(make_corpus(docs), ms);
      const auto want = oracle::frequent_pairs(docs, support_threshold(ms, docs.size()));
      CHECK(std::set<WordPair>(got.begin(), got.end()) == want);
      CHECK(std::is_sorted(got.begin(), got.end()));
    }
  }
}

TEST_CASE("compact documents keep frequent words in order") {
  const Corpus c = make_corpus({{"a", "x", "b", "a"}, {"y", "z"}, {}});
  const auto out = compact_documents(c, {"a", "b"});
  REQUIRE(out.size() == 3);
  CHECK(out[0].doc_id == "d0");
  CHECK(out[0].words == Words{"a", "b", "a"});
  CHECK(out[1].words.empty());
  CHECK(out[2].words.empty());
}

TEST_CASE("cluster candidates") {
  SUBCASE("shared two-word phrase") {
    const auto t = GeneralizedSuffixTree::build({{"cat", "dog", "run"}, {"cat", "dog"}});
    const auto c = candidate_clusters(t);
    REQUIRE(c.size() == 1);
    CHECK(c[0].sequence == Words{"cat", "dog"});
    CHECK(c[0].docs == std::vector<DocIndex>{0, 1});
  }
  SUBCASE("single shared words are not candidates") {
    const auto t = GeneralizedSuffixTree::build({{"a", "b"}, {"b", "a"}});
    CHECK(candidate_clusters(t).empty());
  }
  SUBCASE("ordered by length then sequence, every sequence present in its docs") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto docs = oracle::random_docs(rng, 6, 10, 3);
      const auto t = GeneralizedSuffixTree::build(docs);
      const auto c = candidate_clusters(t);
      for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c[i].sequence.size() >= 2);
        CHECK(c[i].docs.size() >= 2);
        CHECK(std::is_sorted(c[i].docs.begin(), c[i].docs.end()));
        for (DocIndex d = 0; d < docs.size(); ++d) {
          const bool listed = std::binary_search(c[i].docs.begin(), c[i].docs.end(), d);
          CHECK(listed == contains_run(docs[d], c[i].sequence));
        }
        if (i > 0) {
          const auto& p = c[i - 1].sequence;
          const auto& q = c[i].sequence;
          CHECK((p.size() > q.size() || (p.size() == q.size() && p < q)));
        }
      }
    }
  }
}

TEST_CASE("k-mismatch distance") {
  const Words abc{"a", "b", "c"}, abd{"a", "b", "d"}, ab{"a", "b"}, empty{};
  CHECK(k_mismatch_distance(abc, abc) == 0);
  CHECK(k_mismatch_distance(abc, abd) == 1);
  CHECK(k_mismatch_distance(abc, ab) == 1);
  CHECK(k_mismatch_distance(abc, empty) == 3);
  CHECK(k_mismatch_distance(Words{"x", "a", "b"}, ab) == 1);
  CHECK(k_mismatch_distance(Words{"a", "b"}, Words{"b", "a"}) == 2);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto docs = oracle::random_docs(rng, 3, 7, 3);
    const Words& a = docs[0];
    const Words& b = docs.size() > 1 ? docs[1] : empty;
    const Words& c = docs.size() > 2 ? docs[2] : empty;
    const auto ab_d = k_mismatch_distance(a, b);
    CHECK(ab_d == oracle::edit_distance(a, b));
    CHECK(ab_d == k_mismatch_distance(b, a));
    CHECK(ab_d <= k_mismatch_distance(a, c) + k_mismatch_distance(c, b));
  }
}

TEST_CASE("merging candidates") {
  const ClusterCandidate big{{"a", "b", "c"}, {0, 1}};
  const ClusterCandidate near{{"a", "b", "d"}, {2, 3}};
  const ClusterCandidate far{{"x", "y"}, {4, 5}};

  SUBCASE("k=1 merges one substitution") {
    const auto m = merge_candidates({far, near, big}, 1);
    REQUIRE(m.size() == 2);
    CHECK(m[0].representative == Words{"a", "b", "c"});
    CHECK(m[0].docs == std::vector<DocIndex>{0, 1, 2, 3});
    CHECK(m[1].representative == Words{"x", "y"});
  }
  SUBCASE("k=0 merges nothing distinct") {
    const auto m = merge_candidates({big, near, far}, 0);
    CHECK(m.size() == 3);
  }
  SUBCASE("input order does not matter") {
    const auto m1 = merge_candidates({big, near, far}, 2);
    const auto m2 = merge_candidates({far, big, near}, 2);
    REQUIRE(m1.size() == m2.size());
    for (std::size_t i = 0; i < m1.size(); ++i) {
      CHECK(m1[i].representative == m2[i].representative);
      CHECK(m1[i].docs == m2[i].docs);
    }
  }
  SUBCASE("union of documents is preserved on random candidate sets") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const auto docs = oracle::random_docs(rng, 8, 10, 3);
      const auto candidates = candidate_clusters(GeneralizedSuffixTree::build(docs));
      std::set<DocIndex> before;
      for (const auto& c : candidates) before.insert(c.docs.begin(), c.docs.end());
      for (std::size_t k : {0u, 1u, 2u}) {
        const auto merged = merge_candidates(candidates, k);
        std::set<DocIndex> after;
        for (const auto& m : merged) {
          CHECK(std::is_sorted(m.docs.begin(), m.docs.end()));
          after.insert(m.docs.begin(), m.docs.end());
        }
        CHECK(before == after);
        CHECK(merged.size() <= candidates.size());
        if (k == 0) CHECK(merged.size() == candidates.size());
      }
    }
  }
}

TEST_CASE("overlap coefficient") {
  const std::vector<DocIndex> a{0, 1, 2, 3}, b{2, 3, 9}, c{7};
  CHECK(overlap_coefficient(a, b) == doctest::Approx(2.0 / 3.0));
  CHECK(overlap_coefficient(b, a) == overlap_coefficient(a, b));
  CHECK(overlap_coefficient(a, c) == 0.0);
  CHECK(overlap_coefficient(a, a) == 1.0);
  CHECK(overlap_coefficient(std::vector<DocIndex>{2}, a) == 1.0);
  CHECK(overlap_coefficient(std::vector<DocIndex>{}, a) == 0.0);
}

TEST_CASE("run_cfws") {
  SUBCASE("every document is covered by some item") {
    const auto syn = generate_synthetic({3, 10, 30, 20, 30, 0.4, 3});
    const auto r = run_cfws(syn.corpus, {0.1, 2});
    std::vector<bool> seen(syn.corpus.size(), false);
    for (std::size_t i = 0; i < r.items.size(); ++i) {
      for (DocIndex d : r.items[i].docs) seen[d] = true;
      if (i >= r.num_merged) CHECK(r.items[i].docs.size() == 1);
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    CHECK(r.dendrogram.num_items == r.items.size());
    CHECK(r.dendrogram.merges.size() == r.items.size() - 1);
    CHECK(r.diagnostics.empty());
  }
  SUBCASE("identical documents give one cluster") {
    const Words w{"alpha", "beta", "gamma", "delta"};
    const auto r = run_cfws(make_corpus({w, w, w, w}), {0.5, 2});
    REQUIRE(r.num_merged == 1);
    CHECK(r.items.size() == 1);
    CHECK(r.items[0].representative == w);
    CHECK(r.items[0].docs == std::vector<DocIndex>{0, 1, 2, 3});
    CHECK(r.dendrogram.merges.empty());
  }
  SUBCASE("no frequent pair leaves singletons and a diagnostic") {
    const auto r = run_cfws(make_corpus({{"a", "b"}, {"c", "d"}, {"a", "c"}}), {1.0, 2});
    CHECK(r.frequent_pairs == 0);
    CHECK(r.num_merged == 0);
    CHECK(r.items.size() == 3);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].find("no frequent two-word set") != std::string::npos);
  }
  SUBCASE("stage timings are reported in order") {
    const auto syn = generate_synthetic({2, 8, 20, 15, 20, 0.3, 1});
    const auto r = run_cfws(syn.corpus);
    std::vector<std::string> names;
    for (const auto& [name, s] : r.stage_seconds) {
      names.push_back(name);
      CHECK(s >= 0.0);
    }
    CHECK(names == std::vector<std::string>{"apriori", "compact", "suffix-tree", "candidates",
                                            "k-mismatch-merge", "similarity", "upgma"});
  }
  SUBCASE("empty corpus") { CHECK_THROWS_AS(run_cfws(Corpus{}), std::invalid_argument); }
}
