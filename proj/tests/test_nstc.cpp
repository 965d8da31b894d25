#include <cmath>
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "stclust/bench.hpp"
#include "stclust/nstc.hpp"

using namespace stclust;

namespace {

Corpus make_corpus(const std::vector<std::pair<std::string, std::vector<std::string>>>& docs) {
  std::vector<ProcessedDocument> out;
  for (std::size_t i = 0; i < docs.size(); ++i)
    out.push_back({"d" + std::to_string(i), docs[i].first, docs[i].second});
  return Corpus::from_documents(std::move(out));
}

FeatureVector vec(std::vector<std::pair<NodeId, double>> w) { return {"x", std::move(w)}; }

}  // namespace

TEST_CASE("tf-idf weight") {
  CHECK(tfidf_weight(1, 2, 2) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(tfidf_weight(1, 2, 2) == std::log(2.0));
  CHECK(tfidf_weight(0, 2, 2) == 0.0);
  CHECK(tfidf_weight(3, 1, 4) == doctest::Approx((1 + std::log(3.0)) * std::log(5.0)));
  // A phrase in every document still carries weight ln 2.
  CHECK(tfidf_weight(1, 10, 10) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("feature vectors only use phrases shared by two documents") {
  const Corpus c = make_corpus({{"A", {"x", "y", "z"}}, {"A", {"x", "y", "w"}}, {"B", {"q"}}});
  const auto f = build_feature_vectors(c);
  REQUIRE(f.vectors.size() == 3);
  for (NodeId id : f.feature_nodes) CHECK(f.tree.node(id).doc_support() >= 2);
  // "x y", "y" are the shared phrases; "x" alone ends mid-edge of "x y".
  std::set<std::vector<std::string>> phrases;
  for (NodeId id : f.feature_nodes) phrases.insert(f.tree.phrase_of(id));
  CHECK(phrases == std::set<std::vector<std::string>>{{"x", "y"}, {"y"}});
  CHECK(f.vectors[2].empty());
  CHECK(f.vectors[0].weights.size() == 2);
  for (const auto& [id, w] : f.vectors[0].weights) {
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
    CHECK(w == tfidf_weight(1, 2, 3));
  }
  CHECK(std::is_sorted(f.vectors[0].weights.begin(), f.vectors[0].weights.end()));
  CHECK_THROWS_AS(build_feature_vectors(Corpus{}), std::invalid_argument);
}

TEST_CASE("identical documents get identical vectors") {
  const Corpus c = make_corpus({{"A", {"a", "b", "c"}}, {"A", {"a", "b", "c"}}, {"B", {"c", "d"}}});
  const auto f = build_feature_vectors(c);
  CHECK(f.vectors[0].weights == f.vectors[1].weights);
  CHECK(cosine_similarity(f.vectors[0], f.vectors[1]) == 1.0);
}

TEST_CASE("cosine similarity") {
  CHECK(cosine_similarity(vec({{1, 0.3}, {4, 2.0}}), vec({{1, 0.3}, {4, 2.0}})) == 1.0);
  CHECK(cosine_similarity(vec({{1, 1.0}}), vec({{2, 1.0}})) == 0.0);
  CHECK(cosine_similarity(vec({{1, 1.0}, {2, 1.0}}), vec({{1, 1.0}, {3, 1.0}})) ==
        doctest::Approx(0.5).epsilon(1e-15));
  reset_degenerate_cosine_count();
  CHECK(cosine_similarity(vec({}), vec({{1, 1.0}})) == 0.0);
  CHECK(degenerate_cosine_count() == 0);
  CHECK(cosine_similarity(vec({}), vec({})) == 0.0);
  CHECK(degenerate_cosine_count() == 1);
}

TEST_CASE("cosine properties on random non-negative vectors") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  auto random_vec = [&] {
    FeatureVector v{"r", {}};
    for (NodeId id = 0; id < 12; ++id)
      if (rng() % 2) v.weights.push_back({id, u(rng)});
    return v;
  };
  for (int i = 0; i < 500; ++i) {
    const auto a = random_vec(), b = random_vec();
    const double s = cosine_similarity(a, b);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(s == cosine_similarity(b, a));
    auto scaled = a;
    const double factor = u(rng);
    for (auto& [id, w] : scaled.weights) w *= factor;
    CHECK(cosine_similarity(scaled, b) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("cosine matrix does not depend on thread count") {
  const auto syn = generate_synthetic({3, 12, 30, 20, 25, 0.3, 4});
  const auto f = build_feature_vectors(syn.corpus);
  const auto one = cosine_matrix(f.vectors, 1);
  const auto four = cosine_matrix(f.vectors, 4);
  for (std::size_t i = 0; i < one.size(); ++i)
    for (std::size_t j = 0; j < one.size(); ++j) CHECK(one(i, j) == four(i, j));
  CHECK_NOTHROW(one.validate());
}

TEST_CASE("run_nstc") {
  SUBCASE("separable two-class corpus is recovered at K=2") {
    const auto syn = generate_synthetic({2, 15, 30, 25, 40, 0.0, 2});
    const auto r = run_nstc(syn.corpus);
    const GoldStandard gold(syn.corpus.labels());
    const auto t = contingency(cut(r.dendrogram, 2), gold);
    CHECK(f_measure(t) == 1.0);
  }
  SUBCASE("single document") {
    const auto r = run_nstc(make_corpus({{"A", {"a"}}}));
    CHECK(r.dendrogram.num_items == 1);
    CHECK(r.dendrogram.merges.empty());
  }
  SUBCASE("duplicates merge at 1.0 before any cross pair") {
    const auto syn = generate_synthetic({2, 4, 20, 15, 20, 0.3, 8});
    std::vector<ProcessedDocument> docs;
    for (const auto& d : syn.corpus.documents()) {
      docs.push_back(d);
      docs.push_back(d);
      docs.back().id += "-copy";
    }
    const auto r = run_nstc(Corpus::from_documents(docs));
    const std::size_t pairs = syn.corpus.size();
    for (std::size_t t = 0; t < pairs; ++t) {
      const auto& m = r.dendrogram.merges[t];
      CHECK(m.similarity == 1.0);
      CHECK(m.left % 2 == 0);
      CHECK(m.right == m.left + 1);
    }
  }
  SUBCASE("empty corpus") { CHECK_THROWS_AS(run_nstc(Corpus{}), std::invalid_argument); }
  SUBCASE("scaling all weights of one document leaves the dendrogram unchanged") {
    const auto syn = generate_synthetic({3, 6, 20, 15, 20, 0.4, 12});
    auto f = build_feature_vectors(syn.corpus);
    const auto base = upgma(cosine_matrix(f.vectors, 1));
    for (auto& [id, w] : f.vectors[3].weights) w *= 4.0;  // power of two keeps it exact
    const auto scaled = upgma(cosine_matrix(f.vectors, 1));
    REQUIRE(base.merges.size() == scaled.merges.size());
    for (std::size_t t = 0; t < base.merges.size(); ++t) {
      CHECK(base.merges[t].left == scaled.merges[t].left);
      CHECK(base.merges[t].right == scaled.merges[t].right);
    }
  }
}
