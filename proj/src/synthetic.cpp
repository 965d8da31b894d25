#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "stclust/corpus.hpp"

namespace stclust {

namespace {

constexpr std::size_t kPhrasesPerClass = 4;
constexpr double kPhraseInclusion = 0.8;

// std::uniform_int_distribution is implementation-defined; draw bounded
// integers directly from the engine so corpora are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Pronounceable pseudo-words that survive tokenization, stopword removal and
// stemming unchanged.
class WordFactory {
 public:
  explicit WordFactory(Rng& rng) : rng_(rng) {}

  std::string next() {
    static constexpr std::string_view kOnset = "bdfgklmnprstvz";
    static constexpr std::string_view kVowel = "aiou";
    static constexpr std::string_view kCoda = "kmnrt";
    while (true) {
      std::string w;
      const std::size_t syllables = 2 + rng_.below(2);
      for (std::size_t s = 0; s < syllables; ++s) {
        w.push_back(kOnset[rng_.below(kOnset.size())]);
        w.push_back(kVowel[rng_.below(kVowel.size())]);
      }
      w.push_back(kCoda[rng_.below(kCoda.size())]);
      if (used_.contains(w)) continue;
      if (default_stoplist().contains(w) || stem(w) != w) continue;
      used_.insert(w);
      return w;
    }
  }

 private:
  Rng& rng_;
  std::set<std::string> used_;
};

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticParams& p) {
  if (p.num_classes == 0 || p.docs_per_class == 0 || p.shared_vocab_size == 0 ||
      p.class_vocab_size == 0 || p.doc_length == 0)
    throw std::invalid_argument("synthetic corpus: all counts must be positive");
  if (!(p.overlap_fraction >= 0.0 && p.overlap_fraction < 1.0))
    throw std::invalid_argument("synthetic corpus: overlap_fraction must be in [0, 1)");

  Rng rng(p.seed);
  WordFactory words(rng);
  SyntheticCorpus out;

  out.shared_vocab.reserve(p.shared_vocab_size);
  for (std::size_t i = 0; i < p.shared_vocab_size; ++i) out.shared_vocab.push_back(words.next());

  out.class_vocab.resize(p.num_classes);
  out.class_phrases.resize(p.num_classes);
  for (std::size_t c = 0; c < p.num_classes; ++c) {
    for (std::size_t i = 0; i < p.class_vocab_size; ++i) out.class_vocab[c].push_back(words.next());
    for (std::size_t k = 0; k < kPhrasesPerClass; ++k) {
      std::vector<std::string> phrase(2 + rng.below(3));
      for (auto& w : phrase) w = out.class_vocab[c][rng.below(p.class_vocab_size)];
      out.class_phrases[c].push_back(std::move(phrase));
    }
  }

  const auto shared_count =
      static_cast<std::size_t>(std::llround(p.overlap_fraction * static_cast<double>(p.doc_length)));

  for (std::size_t c = 0; c < p.num_classes; ++c) {
    const std::string label = "class" + std::to_string(c + 1);
    for (std::size_t d = 0; d < p.docs_per_class; ++d) {
      std::vector<const std::vector<std::string>*> chosen;
      for (const auto& ph : out.class_phrases[c])
        if (rng.unit() < kPhraseInclusion) chosen.push_back(&ph);
      if (chosen.empty()) chosen.push_back(&out.class_phrases[c][rng.below(kPhrasesPerClass)]);

      // Filler words; shared positions are picked by a partial shuffle.
      std::vector<std::string> filler(p.doc_length);
      std::vector<std::size_t> slots(p.doc_length);
      for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
      for (std::size_t i = 0; i < shared_count; ++i)
        std::swap(slots[i], slots[i + rng.below(slots.size() - i)]);
      std::vector<bool> shared(p.doc_length, false);
      for (std::size_t i = 0; i < shared_count; ++i) shared[slots[i]] = true;
      for (std::size_t i = 0; i < p.doc_length; ++i)
        filler[i] = shared[i] ? out.shared_vocab[rng.below(p.shared_vocab_size)]
                              : out.class_vocab[c][rng.below(p.class_vocab_size)];

      // Each chosen phrase replaces filler at a random offset.
      std::vector<std::string> text_words;
      std::size_t pos = 0;
      std::vector<std::size_t> cuts;
      for (std::size_t i = 0; i < chosen.size(); ++i) cuts.push_back(rng.below(p.doc_length + 1));
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        for (; pos < cuts[i]; ++pos) text_words.push_back(filler[pos]);
        for (const auto& w : *chosen[i]) text_words.push_back(w);
      }
      for (; pos < p.doc_length; ++pos) text_words.push_back(filler[pos]);

      std::string text;
      for (const auto& w : text_words) {
        if (!text.empty()) text.push_back(' ');
        text += w;
      }
      out.raw.push_back({"c" + std::to_string(c + 1) + "d" + std::to_string(d + 1), label,
                         std::move(text)});
    }
  }

  out.corpus = preprocess_all(out.raw, default_stoplist());
  return out;
}

std::optional<SyntheticParams> synthetic_preset(std::string_view name) {
  // {classes, docs/class, shared vocab, class vocab, length, overlap, seed}
  if (name == "ohsumed-style-6x150") return SyntheticParams{6, 175, 600, 500, 90, 0.9, 1262};
  if (name == "ohsumed-style-3x100") return SyntheticParams{3, 100, 600, 500, 90, 0.9, 1473};
  if (name == "rcv1-style-6x60") return SyntheticParams{6, 60, 600, 500, 80, 0.9, 12};
  if (name == "rcv1-style-3x100") return SyntheticParams{3, 100, 600, 500, 80, 0.9, 21};
  if (name == "rcv1-specific-6x60") return SyntheticParams{6, 60, 600, 300, 80, 0.85, 151};
  if (name == "rcv1-specific-3x100") return SyntheticParams{3, 100, 600, 300, 80, 0.85, 411};
  if (name == "separable-3x30") return SyntheticParams{3, 30, 50, 40, 80, 0.0, 7};
  return std::nullopt;
}

std::vector<std::string> benchmark_preset_names() {
  return {"ohsumed-style-6x150", "ohsumed-style-3x100", "rcv1-style-6x60",
          "rcv1-style-3x100",    "rcv1-specific-6x60",  "rcv1-specific-3x100"};
}

}  // namespace stclust
