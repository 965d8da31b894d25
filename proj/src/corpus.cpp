#include "stclust/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace stclust {

namespace {

bool is_ascii_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char to_lower_ascii(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

Corpus Corpus::from_documents(std::vector<ProcessedDocument> docs) {
  Corpus c;
  c.docs_ = std::move(docs);
  for (const auto& d : c.docs_) ++c.class_sizes_[d.label];
  return c;
}

std::vector<std::string> Corpus::labels() const {
  std::vector<std::string> out;
  out.reserve(docs_.size());
  for (const auto& d : docs_) out.push_back(d.label);
  return out;
}

std::vector<std::size_t> Corpus::empty_documents() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < docs_.size(); ++i)
    if (docs_[i].words.empty()) out.push_back(i);
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (is_ascii_alpha(c)) {
      cur.push_back(to_lower_ascii(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopList& stoplist) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!stoplist.contains(t)) out.push_back(t);
  return out;
}

const StopList& default_stoplist() {
  static const StopList list = [] {
    static constexpr const char* kWords[] = {
#include "stopwords_en.inc"
    };
    return StopList(std::begin(kWords), std::end(kWords));
  }();
  return list;
}

StopList load_stoplist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file " + path.string());
  StopList list;
  std::string line;
  while (std::getline(in, line)) {
    auto words = tokenize(line);
    for (auto& w : words) list.insert(std::move(w));
  }
  return list;
}

ProcessedDocument preprocess(const RawDocument& doc, const StopList& stoplist) {
  ProcessedDocument out{doc.id, doc.label, {}};
  for (const auto& tok : tokenize(doc.text)) {
    if (stoplist.contains(tok)) continue;
    std::string s = stem(tok);
    // A stem can itself land on the stop list ("using" -> "us").
    if (s.empty() || stoplist.contains(s)) continue;
    out.words.push_back(std::move(s));
  }
  return out;
}

std::vector<RawDocument> read_raw_documents(std::istream& in) {
  std::vector<RawDocument> docs;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }))
      continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw LoadError(lineno, std::string("malformed record: ") + e.what());
    }
    if (!rec.is_object()) throw LoadError(lineno, "malformed record: not an object");
    auto field = [&](const char* key, bool required) -> std::string {
      auto it = rec.find(key);
      if (it == rec.end()) {
        if (required) throw LoadError(lineno, std::string("missing field '") + key + "'");
        return {};
      }
      if (!it->is_string())
        throw LoadError(lineno, std::string("field '") + key + "' is not a string");
      return it->get<std::string>();
    };
    RawDocument d{field("id", true), field("label", true), field("text", true)};
    if (d.id.empty()) throw LoadError(lineno, "empty id");
    if (d.label.empty()) throw LoadError(lineno, "empty label for id '" + d.id + "'");
    if (auto [it, fresh] = seen.emplace(d.id, lineno); !fresh)
      throw LoadError(lineno, "duplicate id '" + d.id + "' (first seen on line " +
                                  std::to_string(it->second) + ")");
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<RawDocument> read_raw_documents(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path.string());
  return read_raw_documents(in);
}

void write_raw_documents(std::ostream& out, const std::vector<RawDocument>& docs) {
  for (const auto& d : docs) {
    nlohmann::ordered_json rec;
    rec["id"] = d.id;
    rec["label"] = d.label;
    rec["text"] = d.text;
    out << rec.dump() << '\n';
  }
}

Corpus preprocess_all(const std::vector<RawDocument>& docs, const StopList& stoplist) {
  std::vector<ProcessedDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(preprocess(d, stoplist));
  return Corpus::from_documents(std::move(out));
}

Corpus load_corpus(const std::filesystem::path& path, const StopList& stoplist) {
  return preprocess_all(read_raw_documents(path), stoplist);
}

std::vector<RawDocument> to_records(const Corpus& corpus) {
  std::vector<RawDocument> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus.documents()) {
    std::string text;
    for (const auto& w : d.words) {
      if (!text.empty()) text.push_back(' ');
      text += w;
    }
    out.push_back({d.id, d.label, std::move(text)});
  }
  return out;
}

}  // namespace stclust
