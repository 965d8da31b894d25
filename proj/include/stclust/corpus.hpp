#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace stclust {

using StopList = std::unordered_set<std::string>;

// A document as it appears on disk: stable id, gold class, raw text.
struct RawDocument {
  std::string id;
  std::string label;
  std::string text;

  bool operator==(const RawDocument&) const = default;
};

// A document after tokenization, stopword removal and stemming.
struct ProcessedDocument {
  std::string id;
  std::string label;
  std::vector<std::string> words;

  bool operator==(const ProcessedDocument&) const = default;
};

// Ordered collection of processed documents with its class structure.
// Construct through Corpus::from_documents so the class sizes stay in sync.
class Corpus {
 public:
  Corpus() = default;

  static Corpus from_documents(std::vector<ProcessedDocument> docs);

  const std::vector<ProcessedDocument>& documents() const { return docs_; }
  std::size_t size() const { return docs_.size(); }
  bool empty() const { return docs_.empty(); }
  const ProcessedDocument& operator[](std::size_t i) const { return docs_[i]; }

  // Class label -> n_i, ordered by label.
  const std::map<std::string, std::size_t>& class_sizes() const { return class_sizes_; }
  std::vector<std::string> labels() const;

  // Indices of documents whose word list is empty after preprocessing.
  std::vector<std::size_t> empty_documents() const;

  bool operator==(const Corpus& other) const { return docs_ == other.docs_; }

 private:
  std::vector<ProcessedDocument> docs_;
  std::map<std::string, std::size_t> class_sizes_;
};

class LoadError : public std::runtime_error {
 public:
  LoadError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Maximal runs of ASCII letters, lowercased. Everything else separates tokens,
// so digit runs never survive.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopList& stoplist);

// Porter (1980) suffix stripping, as in the reference C implementation.
std::string stem(std::string_view word);

// The bundled English stop list.
const StopList& default_stoplist();

// One lowercase word per line; blank lines ignored.
StopList load_stoplist(const std::filesystem::path& path);

ProcessedDocument preprocess(const RawDocument& doc, const StopList& stoplist);

// Line-delimited JSON records {"id": ..., "label": ..., "text": ...}.
std::vector<RawDocument> read_raw_documents(std::istream& in);
std::vector<RawDocument> read_raw_documents(const std::filesystem::path& path);
void write_raw_documents(std::ostream& out, const std::vector<RawDocument>& docs);

Corpus preprocess_all(const std::vector<RawDocument>& docs, const StopList& stoplist);

Corpus load_corpus(const std::filesystem::path& path,
                   const StopList& stoplist = default_stoplist());

// Processed documents rendered back to records whose text is the word list.
std::vector<RawDocument> to_records(const Corpus& corpus);

struct SyntheticParams {
  std::size_t num_classes = 3;
  std::size_t docs_per_class = 30;
  std::size_t shared_vocab_size = 50;
  std::size_t class_vocab_size = 40;
  std::size_t doc_length = 80;
  double overlap_fraction = 0.2;
  std::uint64_t seed = 7;
};

struct SyntheticCorpus {
  std::vector<RawDocument> raw;
  Corpus corpus;
  std::vector<std::string> shared_vocab;
  std::vector<std::vector<std::string>> class_vocab;
  std::vector<std::vector<std::vector<std::string>>> class_phrases;
};

// Deterministic for a fixed seed. Every generated word is a fixed point of the
// preprocessing pipeline, so `corpus` spells exactly the generated text.
SyntheticCorpus generate_synthetic(const SyntheticParams& params);

// Named dataset shapes: ohsumed-style-6x150, ohsumed-style-3x100,
// rcv1-style-6x60, rcv1-style-3x100, rcv1-specific-6x60, rcv1-specific-3x100,
// plus separable-3x30 (no shared words) for sanity runs.
std::optional<SyntheticParams> synthetic_preset(std::string_view name);
std::vector<std::string> benchmark_preset_names();

}  // namespace stclust
