// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance <path-to-bench-binary> <scratch-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stclust/bench.hpp"
#include "stclust/cfws.hpp"
#include "stclust/gst.hpp"
#include "stclust/hac.hpp"
#include "stclust/metrics.hpp"

using namespace stclust;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    o.pass = false;
    o.detail += " (too slow, limit " + std::to_string(limit_seconds) + " s)";
  }
  if (!o.pass) ++failures;
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << "  " << name << "  [" << std::fixed << std::setprecision(3)
       << secs << " s]  " << o.detail;
  std::cout << line.str() << std::endl;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string num(double x, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

Corpus corpus_of(const std::vector<oracle::Words>& docs) {
  std::vector<ProcessedDocument> out;
  for (std::size_t i = 0; i < docs.size(); ++i) out.push_back({"d" + std::to_string(i), "x", docs[i]});
  return Corpus::from_documents(std::move(out));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(std::move(cells));
  }
  return rows;
}

Outcome metric_oracle() {
  const GoldStandard gold({"A", "A", "B", "B"});
  const auto t = contingency({{0, 1, 2}, {3}}, gold);
  const double h = -(2.0 / 3.0) * std::log2(2.0 / 3.0) - (1.0 / 3.0) * std::log2(1.0 / 3.0);
  const double want_f = 0.5 * 0.8 + 0.5 * (2.0 / 3.0);
  const double f = f_measure(t), p = purity(t), e = entropy(t);
  if (!near(f, want_f, 1e-9) || !near(p, 0.75, 1e-9) || !near(e, 0.75 * h, 1e-9))
    return {false, "worked example gave F=" + num(f) + " purity=" + num(p) + " entropy=" + num(e)};

  std::mt19937 rng(1000);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t classes = 1 + rng() % 4, clusters = 1 + rng() % 4;
    std::vector<std::vector<std::size_t>> c(classes, std::vector<std::size_t>(clusters));
    std::vector<std::size_t> sizes(classes);
    for (std::size_t i = 0; i < classes; ++i) {
      std::size_t row = 0;
      for (auto& x : c[i]) row += (x = rng() % 8);
      sizes[i] = std::max<std::size_t>(row, 1);
    }
    for (std::size_t j = 0; j < clusters; ++j) c[rng() % classes][j] += 1;
    for (std::size_t i = 0; i < classes; ++i) {
      std::size_t row = 0;
      for (auto x : c[i]) row += x;
      sizes[i] = std::max(sizes[i], row);
    }
    const ContingencyTable table(c, sizes);
    const auto o = oracle::metrics_from_formulas(c, sizes);
    worst = std::max({worst, std::abs(f_measure(table) - o.f), std::abs(purity(table) - o.purity),
                      std::abs(entropy(table) - o.entropy)});
  }
  return {worst <= 1e-12, "F=" + num(f, 4) + " purity=" + num(p, 4) + " entropy=" + num(e, 4) +
                              "; 1000 random tables, max |diff| = " + sci(worst)};
}

Outcome suffix_tree_oracle() {
  std::mt19937 rng(555);
  std::size_t phrases = 0;
  for (int round = 0; round < 500; ++round) {
    const auto docs = oracle::random_docs(rng, 8, 12, 1 + rng() % 5);
    const auto want = oracle::substring_counts(docs);
    const auto got = oracle::tree_counts(GeneralizedSuffixTree::build(docs));
    if (got != want) return {false, "corpus " + std::to_string(round) + " differs"};
    phrases += want.size();
  }
  return {true, "500 corpora, " + std::to_string(phrases) + " distinct phrases matched"};
}

Outcome upgma_oracle() {
  std::mt19937 rng(777);
  std::size_t merges = 0;
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 1 + rng() % 7;
    SimilarityMatrix m(n);
    // Every fourth matrix is quantized so ties are exercised too.
    const bool coarse = round % 4 == 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        m.set(i, j, coarse ? static_cast<double>(rng() % 3) / 2.0 : u(rng));
    const auto got = oracle::dendrogram_members(upgma(m));
    const auto want = oracle::brute_upgma(m);
    if (got.size() != want.size()) return {false, "merge count differs at matrix " + std::to_string(round)};
    for (std::size_t t = 0; t < got.size(); ++t)
      if (got[t].left != want[t].left || got[t].right != want[t].right ||
          !near(got[t].similarity, want[t].similarity, 1e-12))
        return {false, "merge " + std::to_string(t) + " differs at matrix " + std::to_string(round)};
    merges += got.size();
  }
  return {true, "500 matrices, " + std::to_string(merges) + " merges matched"};
}

Outcome edit_distance_properties() {
  std::mt19937 rng(10000);
  auto seq = [&] {
    oracle::Words w(rng() % 9);
    for (auto& x : w) x = std::string(1, static_cast<char>('a' + rng() % 4));
    return w;
  };
  for (int trial = 0; trial < 10000; ++trial) {
    const auto a = seq(), b = seq(), c = seq();
    const auto ab = k_mismatch_distance(a, b);
    if (ab != k_mismatch_distance(b, a)) return {false, "symmetry broken at trial " + std::to_string(trial)};
    if (k_mismatch_distance(a, a) != 0 || (ab == 0) != (a == b))
      return {false, "identity broken at trial " + std::to_string(trial)};
    if (ab > k_mismatch_distance(a, c) + k_mismatch_distance(c, b))
      return {false, "triangle inequality broken at trial " + std::to_string(trial)};
    if (trial % 10 == 0 && ab != oracle::edit_distance(a, b))
      return {false, "disagrees with recurrence at trial " + std::to_string(trial)};
  }
  return {true, "10000 triples: symmetry, identity, triangle inequality"};
}

Outcome apriori_equivalence() {
  std::mt19937 rng(200);
  std::size_t pairs = 0;
  for (int round = 0; round < 200; ++round) {
    const auto docs = oracle::random_docs(rng, 20, 10, 3 + rng() % 8);
    const double ms = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
    const auto got = frequent_two_word_sets(corpus_of(docs), ms);
    const auto want = oracle::frequent_pairs(docs, support_threshold(ms, docs.size()));
    if (std::set<WordPair>(got.begin(), got.end()) != want || got.size() != want.size())
      return {false, "corpus " + std::to_string(round) + " differs"};
    pairs += got.size();
  }
  return {true, "200 corpora, " + std::to_string(pairs) + " frequent pairs matched"};
}

Outcome separability() {
  ExperimentConfig c;
  c.datasets = {"separable-3x30"};
  const auto r = run_benchmark(c);
  const CellResult* n = r.cell("separable-3x30", Algorithm::kNstc);
  const CellResult* f = r.cell("separable-3x30", Algorithm::kCfws);
  if (!n || !f || !n->ok || !f->ok) return {false, "a pipeline failed"};
  const std::string detail = "NSTC F=" + num(n->best_f, 4) + " at K=" + std::to_string(n->best_k) +
                             "; CFWS F=" + num(f->best_f, 4) + " at K=" + std::to_string(f->best_k) +
                             " minsup=" + num(f->best_min_support.value_or(0), 2);
  return {n->best_f >= 0.95 && f->best_f >= 0.95, detail};
}

Outcome protocol(const std::string& bench, const fs::path& scratch) {
  const fs::path a = scratch / "run-a", b = scratch / "run-b";
  fs::remove_all(a);
  fs::remove_all(b);
  for (const auto& dir : {a, b}) {
    const std::string cmd = "\"" + bench + "\" run --out \"" + dir.string() + "\" > \"" +
                            (dir.string() + ".log") + "\" 2>&1";
    if (const int rc = std::system(cmd.c_str()); rc != 0)
      return {false, "bench run exited with " + std::to_string(rc) + "; see " + dir.string() + ".log"};
  }
  const auto presets = benchmark_preset_names();
  for (const char* table : {"fscore", "purity", "entropy"}) {
    const auto rows = csv_rows(a / (std::string(table) + ".csv"));
    if (rows.size() != 7) return {false, std::string(table) + ".csv has " + std::to_string(rows.size()) + " lines"};
    if (rows[0] != std::vector<std::string>{"dataset", "NSTC", "CFWS"})
      return {false, std::string(table) + ".csv header is wrong"};
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (rows[r].size() != 3 || rows[r][0] != presets[r - 1])
        return {false, std::string(table) + ".csv row " + std::to_string(r) + " is malformed"};
      if (rows[r][1] == "error" || rows[r][2] == "error")
        return {false, std::string(table) + ".csv row " + std::to_string(r) + " has a failed cell"};
      if (std::string(table) != "fscore" && rows[r][2] != "overlap")
        return {false, std::string(table) + ".csv CFWS cell is not marked overlap"};
      if (std::string(table) == "fscore" && rows[r][2] == "overlap")
        return {false, "fscore.csv CFWS cell is marked overlap"};
    }
    for (const char* ext : {".csv", ".txt"}) {
      const std::string name = std::string(table) + ext;
      if (slurp(a / name).empty() || slurp(a / name) != slurp(b / name))
        return {false, name + " differs between reruns"};
    }
  }
  return {true, "3 tables x {csv,txt}, 6 rows x 2 columns, CFWS purity/entropy = overlap, reruns byte-identical"};
}

Outcome timing_observation(const fs::path& scratch) {
  const std::string dataset = "ohsumed-style-6x150";
  const auto rows = csv_rows(scratch / "run-a" / "timing.csv");
  std::map<std::string, std::map<std::string, double>> per;  // algorithm -> stage -> seconds
  std::map<std::string, double> total;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 5 || rows[r][0] != dataset) continue;
    const double s = std::stod(rows[r][4]);
    per[rows[r][1]][rows[r][3]] += s;
    total[rows[r][1]] += s;
  }
  if (per.size() != 2) return {false, "timing.csv lacks rows for both pipelines on " + dataset};
  std::ostringstream d;
  d << dataset << " (1050 docs)";
  for (const auto& [alg, stages] : per) {
    d << "\n      " << alg << " total " << num(total[alg], 3) << " s:";
    for (const auto& [stage, s] : stages) d << ' ' << stage << '=' << num(s, 3);
  }
  d << "\n      (reported only; CFWS/NSTC ratio " << num(total["CFWS"] / std::max(total["NSTC"], 1e-9), 2)
    << ", summed over the min_support sweep)";
  return {true, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <bench-binary> <scratch-dir>\n";
    return 2;
  }
  const std::string bench = argv[1];
  const fs::path scratch = argv[2];
  fs::create_directories(scratch);

  criterion("metric oracle (worked example 1e-9, 1000 random tables 1e-12)", 5.0, metric_oracle);
  criterion("suffix tree oracle (500 random corpora)", 30.0, suffix_tree_oracle);
  criterion("UPGMA oracle (500 random matrices, n <= 7)", 10.0, upgma_oracle);
  criterion("edit distance metric properties (10000 random triples)", 0.0, edit_distance_properties);
  criterion("apriori equivalence (200 random corpora, <= 20 docs)", 0.0, apriori_equivalence);
  criterion("end-to-end separability (separable-3x30, both F >= 0.95)", 60.0, separability);
  criterion("protocol reproduction (bench run over six presets, twice)", 0.0,
            [&] { return protocol(bench, scratch); });
  criterion("timing observation (per-stage wall clock, not asserted)", 0.0,
            [&] { return timing_observation(scratch); });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
