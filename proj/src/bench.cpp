#include "stclust/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "stclust/nstc.hpp"
#include "stclust/simd.hpp"

namespace stclust {

namespace {

constexpr const char* kVersion = "stclust 1.0.0";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size()) throw std::invalid_argument(key + ": not a number: '" + v + "'");
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument(key + ": not a non-negative integer: '" + v + "'");
  return std::stoull(v);
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string percent(double support) {
  std::ostringstream os;
  os << std::setprecision(6) << support * 100.0 << '%';
  return os.str();
}

}  // namespace

std::string algorithm_name(Algorithm a) { return a == Algorithm::kNstc ? "NSTC" : "CFWS"; }

void ExperimentConfig::validate() const {
  if (datasets.empty()) throw std::invalid_argument("no dataset configured");
  if (algorithms.empty()) throw std::invalid_argument("no algorithm selected");
  for (double s : min_supports)
    if (!(s > 0.0 && s <= 1.0))
      throw std::invalid_argument("min_support " + std::to_string(s) + " outside (0, 1]");
  if (std::find(algorithms.begin(), algorithms.end(), Algorithm::kCfws) != algorithms.end() &&
      min_supports.empty())
    throw std::invalid_argument("CFWS selected without any min_support value");
  if (min_df < 1) throw std::invalid_argument("min_df must be >= 1");
  for (const auto& f : formats)
    if (f != "csv" && f != "txt") throw std::invalid_argument("unknown format '" + f + "'");
}

void apply_config_value(ExperimentConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "dataset") {
    c.datasets = split_list(v);
  } else if (key == "algorithm") {
    if (v == "nstc")
      c.algorithms = {Algorithm::kNstc};
    else if (v == "cfws")
      c.algorithms = {Algorithm::kCfws};
    else if (v == "both")
      c.algorithms = {Algorithm::kNstc, Algorithm::kCfws};
    else
      throw std::invalid_argument("algorithm: expected nstc, cfws or both, got '" + v + "'");
  } else if (key == "min_support") {
    c.min_supports.clear();
    for (const auto& s : split_list(v)) c.min_supports.push_back(parse_double(key, s));
  } else if (key == "k_mismatch") {
    c.k_mismatch = parse_uint(key, v);
  } else if (key == "min_df") {
    c.min_df = parse_uint(key, v);
  } else if (key == "seed") {
    c.seed = parse_uint(key, v);
  } else if (key == "out") {
    c.out_dir = v;
  } else if (key == "format") {
    c.formats = split_list(v);
  } else if (key == "stoplist") {
    c.stoplist = v;
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_config(in, std::move(base));
}

HierarchyScore evaluate_hierarchy(const Dendrogram& d,
                                  const std::vector<std::vector<DocIndex>>& item_docs,
                                  const GoldStandard& gold) {
  const std::size_t items = d.num_items;
  if (item_docs.size() != items) throw std::invalid_argument("evaluate_hierarchy: item count mismatch");
  if (items == 0) throw std::invalid_argument("evaluate_hierarchy: empty hierarchy");
  const std::size_t n = gold.num_docs();
  const std::size_t words = (n + 63) / 64;
  const std::size_t classes = gold.num_classes();

  std::vector<std::vector<std::uint64_t>> class_mask(classes, std::vector<std::uint64_t>(words, 0));
  for (std::size_t doc = 0; doc < n; ++doc)
    class_mask[gold.class_of(doc)][doc / 64] |= std::uint64_t{1} << (doc % 64);

  const std::size_t total_nodes = items + d.merges.size();
  std::vector<std::vector<std::uint64_t>> bits(total_nodes);
  std::vector<std::vector<std::size_t>> counts(total_nodes);
  auto fill_counts = [&](std::size_t node) {
    counts[node].resize(classes);
    for (std::size_t i = 0; i < classes; ++i)
      counts[node][i] = static_cast<std::size_t>(simd::and_popcount(bits[node], class_mask[i]));
  };
  for (std::size_t it = 0; it < items; ++it) {
    bits[it].assign(words, 0);
    for (DocIndex doc : item_docs[it]) {
      if (doc >= n) throw std::out_of_range("evaluate_hierarchy: document without gold label");
      bits[it][doc / 64] |= std::uint64_t{1} << (doc % 64);
    }
    fill_counts(it);
  }

  std::vector<std::size_t> active(items);
  for (std::size_t i = 0; i < items; ++i) active[i] = i;

  auto table_of = [&](const std::vector<std::size_t>& nodes) {
    std::vector<std::vector<std::size_t>> c(classes, std::vector<std::size_t>(nodes.size()));
    for (std::size_t j = 0; j < nodes.size(); ++j)
      for (std::size_t i = 0; i < classes; ++i) c[i][j] = counts[nodes[j]][i];
    return ContingencyTable(std::move(c), gold.class_sizes());
  };

  HierarchyScore s;
  s.f_per_level.reserve(items);
  std::vector<std::size_t> best_nodes;
  for (std::size_t level = 0; level < items; ++level) {
    if (level > 0) {
      const Merge& m = d.merges[level - 1];
      const std::size_t node = items + level - 1;
      bits[node] = bits[m.left];
      for (std::size_t w = 0; w < words; ++w) bits[node][w] |= bits[m.right][w];
      fill_counts(node);
      std::erase_if(active, [&](std::size_t x) { return x == m.left || x == m.right; });
      active.push_back(node);
    }
    // Items may cover no document only if a caller passes empty items.
    std::vector<std::size_t> nonempty;
    for (std::size_t x : active)
      if (std::any_of(counts[x].begin(), counts[x].end(), [](std::size_t c) { return c > 0; }))
        nonempty.push_back(x);
    const double f = f_measure(table_of(nonempty));
    s.f_per_level.push_back(f);
    if (level == 0 || f > s.best_f) {
      s.best_f = f;
      s.best_level = level;
      s.clusters_at_best = nonempty.size();
      best_nodes = nonempty;
    }
  }

  std::size_t assigned = 0;
  for (std::size_t x : best_nodes) {
    std::vector<std::size_t> docs;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t v = bits[x][w];
      while (v) {
        docs.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(v)));
        v &= v - 1;
      }
    }
    assigned += docs.size();
    s.best_clustering.push_back(std::move(docs));
  }
  std::sort(s.best_clustering.begin(), s.best_clustering.end());
  s.overlapping_at_best = assigned > n;
  return s;
}

const CellResult* BenchmarkReport::cell(const std::string& dataset, Algorithm a) const {
  for (const auto& c : cells)
    if (c.dataset == dataset && c.algorithm == a) return &c;
  return nullptr;
}

namespace {

struct LoadedDataset {
  std::string label;
  Corpus corpus;
  double seconds = 0.0;
};

LoadedDataset load_dataset(const std::string& spec, const ExperimentConfig& config,
                           const StopList& stoplist) {
  const auto t0 = std::chrono::steady_clock::now();
  LoadedDataset out;
  if (auto preset = synthetic_preset(spec)) {
    if (config.seed) preset->seed = *config.seed;
    out.label = spec;
    out.corpus = generate_synthetic(*preset).corpus;
  } else {
    const std::filesystem::path p(spec);
    if (!std::filesystem::exists(p))
      throw std::runtime_error("dataset '" + spec + "' is neither a preset nor an existing file");
    out.label = p.stem().string();
    out.corpus = load_corpus(p, stoplist);
  }
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

void add_timings(CellResult& cell, const std::vector<std::pair<std::string, double>>& stages,
                 std::optional<double> support) {
  for (const auto& [name, secs] : stages) cell.timings.push_back({name, support, secs});
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CellResult run_nstc_cell(const LoadedDataset& ds, const GoldStandard& gold,
                         const ExperimentConfig& config) {
  CellResult cell;
  cell.dataset = ds.label;
  cell.algorithm = Algorithm::kNstc;
  cell.timings.push_back({"load", std::nullopt, ds.seconds});
  NstcOptions opt;
  opt.min_df = config.min_df;
  const NstcResult r = run_nstc(ds.corpus, opt);
  add_timings(cell, r.stage_seconds, std::nullopt);
  if (r.empty_vectors > 0)
    cell.diagnostics.push_back(std::to_string(r.empty_vectors) +
                               " documents have no shared phrase (empty feature vector)");

  std::vector<std::vector<DocIndex>> item_docs(ds.corpus.size());
  for (DocIndex i = 0; i < ds.corpus.size(); ++i) item_docs[i] = {i};
  HierarchyScore score;
  const double secs = timed([&] { score = evaluate_hierarchy(r.dendrogram, item_docs, gold); });
  cell.timings.push_back({"evaluate", std::nullopt, secs});

  cell.ok = true;
  cell.best_f = score.best_f;
  cell.best_k = score.clusters_at_best;
  const ContingencyTable t = contingency(score.best_clustering, gold);
  cell.purity = purity(t);
  cell.entropy = entropy(t);
  return cell;
}

CellResult run_cfws_cell(const LoadedDataset& ds, const GoldStandard& gold,
                         const ExperimentConfig& config) {
  CellResult cell;
  cell.dataset = ds.label;
  cell.algorithm = Algorithm::kCfws;
  cell.overlap = true;
  cell.timings.push_back({"load", std::nullopt, ds.seconds});
  bool have = false;
  for (double support : config.min_supports) {
    CfwsOptions opt;
    opt.min_support = support;
    opt.k = config.k_mismatch;
    const CfwsResult r = run_cfws(ds.corpus, opt);
    add_timings(cell, r.stage_seconds, support);
    for (const auto& msg : r.diagnostics) cell.diagnostics.push_back(percent(support) + ": " + msg);

    std::vector<std::vector<DocIndex>> item_docs;
    item_docs.reserve(r.items.size());
    for (const auto& it : r.items) item_docs.push_back(it.docs);
    HierarchyScore score;
    const double secs = timed([&] { score = evaluate_hierarchy(r.dendrogram, item_docs, gold); });
    cell.timings.push_back({"evaluate", support, secs});
    if (!have || score.best_f > cell.best_f) {
      have = true;
      cell.best_f = score.best_f;
      cell.best_k = score.clusters_at_best;
      cell.best_min_support = support;
    }
  }
  cell.ok = have;
  return cell;
}

}  // namespace

BenchmarkReport run_benchmark(const ExperimentConfig& config) {
  config.validate();
  BenchmarkReport report;
  report.config = config;
  const StopList stoplist = config.stoplist ? load_stoplist(*config.stoplist) : default_stoplist();

  for (const auto& spec : config.datasets) {
    LoadedDataset ds;
    std::string load_error;
    try {
      ds = load_dataset(spec, config, stoplist);
      if (ds.corpus.empty()) load_error = "dataset is empty";
    } catch (const std::exception& e) {
      load_error = e.what();
      ds.label = spec;
    }
    report.datasets.push_back(ds.label);
    report.dataset_sizes.push_back(ds.corpus.size());

    for (Algorithm a : config.algorithms) {
      CellResult cell;
      if (!load_error.empty()) {
        cell.dataset = ds.label;
        cell.algorithm = a;
        cell.overlap = a == Algorithm::kCfws;
        cell.error = "load failed: " + load_error;
      } else {
        try {
          const GoldStandard gold(ds.corpus.labels());
          cell = a == Algorithm::kNstc ? run_nstc_cell(ds, gold, config)
                                       : run_cfws_cell(ds, gold, config);
          const auto empties = ds.corpus.empty_documents().size();
          if (empties > 0)
            cell.diagnostics.push_back(std::to_string(empties) +
                                       " documents are empty after preprocessing");
        } catch (const std::exception& e) {
          cell.dataset = ds.label;
          cell.algorithm = a;
          cell.overlap = a == Algorithm::kCfws;
          cell.ok = false;
          cell.error = e.what();
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

namespace {

enum class Metric { kF, kPurity, kEntropy };

std::string cell_text(const CellResult* c, Metric m) {
  if (c == nullptr) return "n/a";
  if (!c->ok) return "error";
  switch (m) {
    case Metric::kF:
      return fixed(c->best_f);
    case Metric::kPurity:
      if (c->overlap || !c->purity) return "overlap";
      return fixed(*c->purity);
    case Metric::kEntropy:
      if (c->overlap || !c->entropy) return "overlap";
      return fixed(*c->entropy);
  }
  return "n/a";
}

void write_csv_table(const std::filesystem::path& p, const BenchmarkReport& r, Metric m) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << "dataset";
  for (Algorithm a : r.config.algorithms) out << ',' << algorithm_name(a);
  out << '\n';
  for (const auto& ds : r.datasets) {
    out << ds;
    for (Algorithm a : r.config.algorithms) out << ',' << cell_text(r.cell(ds, a), m);
    out << '\n';
  }
}

void write_txt_table(const std::filesystem::path& p, const BenchmarkReport& r, Metric m,
                     const std::string& title) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"dataset"};
  for (Algorithm a : r.config.algorithms) header.push_back(algorithm_name(a));
  rows.push_back(header);
  for (std::size_t d = 0; d < r.datasets.size(); ++d) {
    std::vector<std::string> row{r.datasets[d] + " (" + std::to_string(r.dataset_sizes[d]) + ")"};
    for (Algorithm a : r.config.algorithms) {
      const CellResult* c = r.cell(r.datasets[d], a);
      std::string text = cell_text(c, m);
      if (m == Metric::kF && c != nullptr && c->ok) {
        text += " (K=" + std::to_string(c->best_k);
        if (c->best_min_support) text += ", minsup=" + percent(*c->best_min_support);
        text += ")";
      }
      row.push_back(std::move(text));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << title << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width[c])) << rows[i][c];
      if (c + 1 < rows[i].size()) out << "  ";
    }
    out << '\n';
    if (i == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c ? 2 : 0);
      out << std::string(total, '-') << '\n';
    }
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_tables(const BenchmarkReport& r,
                                               const std::filesystem::path& dir,
                                               const std::vector<std::string>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  const std::pair<Metric, const char*> tables[] = {
      {Metric::kF, "fscore"}, {Metric::kPurity, "purity"}, {Metric::kEntropy, "entropy"}};
  const char* titles[] = {"F-score by dataset", "Purity by dataset", "Entropy by dataset"};
  for (const auto& f : formats) {
    for (std::size_t t = 0; t < 3; ++t) {
      const auto p = dir / (std::string(tables[t].second) + "." + f);
      if (f == "csv")
        write_csv_table(p, r, tables[t].first);
      else if (f == "txt")
        write_txt_table(p, r, tables[t].first, titles[t]);
      else
        throw std::invalid_argument("unknown format '" + f + "'");
      written.push_back(p);
    }
  }

  {
    const auto p = dir / "details.csv";
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << "dataset,algorithm,status,best_f,best_k,best_min_support,purity,entropy,diagnostics\n";
    for (const auto& c : r.cells) {
      out << c.dataset << ',' << algorithm_name(c.algorithm) << ',' << (c.ok ? "ok" : "error")
          << ',' << (c.ok ? fixed(c.best_f, 6) : "") << ',' << (c.ok ? std::to_string(c.best_k) : "")
          << ',' << (c.best_min_support ? fixed(*c.best_min_support, 4) : "") << ','
          << (c.purity && !c.overlap ? fixed(*c.purity, 6) : (c.overlap ? "overlap" : "")) << ','
          << (c.entropy && !c.overlap ? fixed(*c.entropy, 6) : (c.overlap ? "overlap" : "")) << ',';
      std::string diag = c.error;
      for (const auto& msg : c.diagnostics) diag += (diag.empty() ? "" : "; ") + msg;
      std::replace(diag.begin(), diag.end(), ',', ';');
      std::replace(diag.begin(), diag.end(), '"', '\'');
      out << '"' << diag << "\"\n";
    }
    written.push_back(p);
  }

  {
    const auto p = dir / "timing.csv";
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << "dataset,algorithm,min_support,stage,seconds\n";
    for (const auto& c : r.cells)
      for (const auto& t : c.timings)
        out << c.dataset << ',' << algorithm_name(c.algorithm) << ','
            << (t.min_support ? fixed(*t.min_support, 4) : "") << ',' << t.stage << ','
            << fixed(t.seconds, 6) << '\n';
    written.push_back(p);
  }

  {
    const auto p = dir / "run-metadata.txt";
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    const auto& c = r.config;
    out << "version = " << kVersion << '\n';
#ifdef __VERSION__
    out << "compiler = " << __VERSION__ << '\n';
#endif
    out << "simd = " << simd::isa_name(simd::active_isa()) << '\n';
    out << "dataset = ";
    for (std::size_t i = 0; i < c.datasets.size(); ++i) out << (i ? "," : "") << c.datasets[i];
    out << "\nalgorithm = ";
    for (std::size_t i = 0; i < c.algorithms.size(); ++i)
      out << (i ? "," : "") << algorithm_name(c.algorithms[i]);
    out << "\nmin_support = ";
    for (std::size_t i = 0; i < c.min_supports.size(); ++i)
      out << (i ? "," : "") << c.min_supports[i];
    out << "\nk_mismatch = " << c.k_mismatch << '\n';
    out << "min_df = " << c.min_df << '\n';
    out << "seed = " << (c.seed ? std::to_string(*c.seed) : std::string("preset")) << '\n';
    out << "stoplist = " << (c.stoplist ? c.stoplist->string() : std::string("bundled")) << '\n';
    out << "tfidf = (1 + ln tf) * ln(1 + N / df)\n";
    out << "cfws_cluster_similarity = overlap coefficient, UPGMA\n";
    out << "entropy_log_base = 2\n";
    for (std::size_t d = 0; d < r.datasets.size(); ++d)
      out << "documents." << r.datasets[d] << " = " << r.dataset_sizes[d] << '\n';
    written.push_back(p);
  }
  return written;
}

}  // namespace stclust
