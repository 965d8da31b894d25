#include "stclust/gst.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace stclust {

GeneralizedSuffixTree GeneralizedSuffixTree::build(
    const std::vector<std::vector<std::string>>& docs) {
  GeneralizedSuffixTree t;
  std::unordered_map<std::string, Token> ids;
  t.docs_.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::vector<Token> seq;
    seq.reserve(docs[d].size() + 1);
    for (const auto& w : docs[d]) {
      auto [it, fresh] = ids.emplace(w, static_cast<Token>(t.vocab_.size()));
      if (fresh) t.vocab_.push_back(w);
      seq.push_back(it->second);
    }
    seq.push_back(-static_cast<Token>(d) - 1);
    t.docs_.push_back(std::move(seq));
  }

  SuffixTreeNode root;
  root.id = 0;
  t.nodes_.push_back(std::move(root));
  for (DocIndex d = 0; d < t.docs_.size(); ++d)
    for (std::uint32_t i = 0; i < t.docs_[d].size(); ++i) t.insert_suffix(d, i);
  t.accumulate_occurrences();
  return t;
}

const SuffixTreeNode& GeneralizedSuffixTree::node(NodeId id) const {
  if (id >= nodes_.size()) throw std::out_of_range("suffix tree: node " + std::to_string(id));
  return nodes_[id];
}

std::size_t GeneralizedSuffixTree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin() + 1, nodes_.end(), [](const auto& n) { return n.is_leaf(); }));
}

std::span<const Token> GeneralizedSuffixTree::edge_tokens(NodeId id) const {
  const EdgeSpan& e = node(id).edge;
  return std::span<const Token>(docs_[e.doc]).subspan(e.start, e.length());
}

NodeId GeneralizedSuffixTree::find_child(NodeId parent, Token first) const {
  const auto& ch = nodes_[parent].children;
  auto it = std::lower_bound(ch.begin(), ch.end(), first,
                             [](const auto& p, Token t) { return p.first < t; });
  return (it != ch.end() && it->first == first) ? it->second : kNoNode;
}

namespace {

void set_child(std::vector<std::pair<Token, NodeId>>& ch, Token first, NodeId child) {
  auto it = std::lower_bound(ch.begin(), ch.end(), first,
                             [](const auto& p, Token t) { return p.first < t; });
  if (it != ch.end() && it->first == first)
    it->second = child;
  else
    ch.insert(it, {first, child});
}

}  // namespace

void GeneralizedSuffixTree::insert_suffix(DocIndex d, std::uint32_t start) {
  const auto& seq = docs_[d];
  const auto len = static_cast<std::uint32_t>(seq.size());
  NodeId cur = root();
  std::uint32_t pos = start;

  auto add_leaf = [&](NodeId parent, std::uint32_t from) {
    SuffixTreeNode leaf;
    leaf.id = static_cast<NodeId>(nodes_.size());
    leaf.parent = parent;
    leaf.edge = {d, from, len};
    leaf.depth = nodes_[parent].depth + (len - from);
    set_child(nodes_[parent].children, seq[from], leaf.id);
    nodes_.push_back(std::move(leaf));
  };

  while (true) {
    const NodeId child = find_child(cur, seq[pos]);
    if (child == kNoNode) {
      add_leaf(cur, pos);
      return;
    }
    const EdgeSpan e = nodes_[child].edge;
    const auto& edge_seq = docs_[e.doc];
    std::uint32_t k = 1;
    // The per-document terminator guarantees a mismatch before either side ends.
    while (k < e.length() && edge_seq[e.start + k] == seq[pos + k]) ++k;
    if (k == e.length()) {
      cur = child;
      pos += k;
      continue;
    }

    SuffixTreeNode mid;
    mid.id = static_cast<NodeId>(nodes_.size());
    mid.parent = cur;
    mid.edge = {e.doc, e.start, e.start + k};
    mid.depth = nodes_[cur].depth + k;
    mid.children.push_back({edge_seq[e.start + k], child});
    set_child(nodes_[cur].children, seq[pos], mid.id);
    nodes_[child].parent = mid.id;
    nodes_[child].edge.start = e.start + k;
    nodes_.push_back(std::move(mid));
    add_leaf(nodes_.size() - 1, pos + k);
    return;
  }
}

void GeneralizedSuffixTree::accumulate_occurrences() {
  // Iterative post-order: split nodes get larger ids than their children, so
  // id order is not a topological order.
  std::vector<std::pair<NodeId, bool>> stack{{root(), false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    SuffixTreeNode& n = nodes_[id];
    if (n.is_leaf()) {
      if (id != root()) n.doc_occurrences = {{n.edge.doc, 1}};
      continue;
    }
    if (!expanded) {
      stack.push_back({id, true});
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
        stack.push_back({it->second, false});
      continue;
    }
    std::vector<std::pair<DocIndex, std::uint32_t>> acc;
    for (const auto& [tok, c] : n.children) {
      const auto& src = nodes_[c].doc_occurrences;
      std::vector<std::pair<DocIndex, std::uint32_t>> merged;
      merged.reserve(acc.size() + src.size());
      auto a = acc.begin();
      auto b = src.begin();
      while (a != acc.end() || b != src.end()) {
        if (b == src.end() || (a != acc.end() && a->first < b->first)) {
          merged.push_back(*a++);
        } else if (a == acc.end() || b->first < a->first) {
          merged.push_back(*b++);
        } else {
          merged.push_back({a->first, a->second + b->second});
          ++a;
          ++b;
        }
      }
      acc = std::move(merged);
    }
    n.doc_occurrences = std::move(acc);
  }
}

std::vector<Token> GeneralizedSuffixTree::phrase_tokens(NodeId id) const {
  std::vector<NodeId> path;
  for (NodeId cur = id; cur != root(); cur = node(cur).parent) path.push_back(cur);
  std::vector<Token> out;
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    for (Token t : edge_tokens(*it))
      if (!is_terminator(t)) out.push_back(t);
  return out;
}

std::vector<std::string> GeneralizedSuffixTree::phrase_of(NodeId id) const {
  std::vector<std::string> out;
  for (Token t : phrase_tokens(id)) out.push_back(word(t));
  return out;
}

std::uint32_t GeneralizedSuffixTree::phrase_length(NodeId id) const {
  const SuffixTreeNode& n = node(id);
  return n.is_leaf() && id != root() ? n.depth - 1 : n.depth;
}

std::vector<NodeId> GeneralizedSuffixTree::nodes_with_min_doc_support(std::size_t m) const {
  if (m == 0) throw std::invalid_argument("minimum document support must be >= 1");
  std::vector<NodeId> out;
  for (NodeId id = 1; id < nodes_.size(); ++id)
    if (nodes_[id].doc_support() >= m) out.push_back(id);
  return out;
}

std::uint32_t GeneralizedSuffixTree::doc_term_frequency(NodeId id, DocIndex d) const {
  if (d >= docs_.size()) throw std::out_of_range("suffix tree: document " + std::to_string(d));
  const auto& occ = node(id).doc_occurrences;
  auto it = std::lower_bound(occ.begin(), occ.end(), d,
                             [](const auto& p, DocIndex x) { return p.first < x; });
  return (it != occ.end() && it->first == d) ? it->second : 0;
}

void GeneralizedSuffixTree::dump(std::ostream& out) const {
  std::vector<std::pair<NodeId, std::size_t>> stack{{root(), 0}};
  while (!stack.empty()) {
    auto [id, level] = stack.back();
    stack.pop_back();
    const auto& n = nodes_[id];
    out << std::string(2 * level, ' ') << '[';
    bool first = true;
    for (const auto& w : phrase_of(id)) {
      if (!first) out << ' ';
      out << w;
      first = false;
    }
    if (n.is_leaf() && id != root()) out << " $" << n.edge.doc;
    out << "] docs=" << n.doc_support();
    for (const auto& [d, c] : n.doc_occurrences) out << ' ' << d << ':' << c;
    out << '\n';
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back({it->second, level + 1});
  }
}

}  // namespace stclust
