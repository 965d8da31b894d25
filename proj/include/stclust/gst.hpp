#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace stclust {

// Word ids are non-negative; document d's terminator is -(d + 1).
using Token = std::int32_t;
using NodeId = std::uint32_t;
using DocIndex = std::uint32_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

inline bool is_terminator(Token t) { return t < 0; }

// Half-open span [start, end) of one document's token sequence (terminator
// included at position len).
struct EdgeSpan {
  DocIndex doc = 0;
  std::uint32_t start = 0;
  std::uint32_t end = 0;

  std::uint32_t length() const { return end - start; }
};

struct SuffixTreeNode {
  NodeId id = kNoNode;
  NodeId parent = kNoNode;
  EdgeSpan edge;
  // Tokens from the root to the end of the incoming edge.
  std::uint32_t depth = 0;
  // Sorted by first token of the child edge.
  std::vector<std::pair<Token, NodeId>> children;
  // (document, number of that document's suffixes below this node), sorted by document.
  std::vector<std::pair<DocIndex, std::uint32_t>> doc_occurrences;

  bool is_leaf() const { return children.empty(); }
  std::size_t doc_support() const { return doc_occurrences.size(); }
};

// Word-level generalized suffix tree.
//
// Built by inserting every suffix of every document from the root, splitting
// edges on mismatch. That costs O(sum over documents of L * h) word comparisons
// where h is the average matched depth, O(sum L^2) in the worst case
// (repetitive documents), and O(total nodes * docs per node) memory for the
// occurrence lists. Fine at the scale of a few thousand documents.
class GeneralizedSuffixTree {
 public:
  static GeneralizedSuffixTree build(const std::vector<std::vector<std::string>>& docs);

  NodeId root() const { return 0; }
  const SuffixTreeNode& node(NodeId id) const;
  const std::vector<SuffixTreeNode>& nodes() const { return nodes_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_docs() const { return docs_.size(); }
  std::size_t num_leaves() const;

  std::span<const Token> document_tokens(DocIndex d) const { return docs_.at(d); }
  std::span<const Token> edge_tokens(NodeId id) const;
  const std::string& word(Token t) const { return vocab_.at(static_cast<std::size_t>(t)); }

  // Root-to-node concatenation of edge labels without terminators.
  std::vector<std::string> phrase_of(NodeId id) const;
  std::vector<Token> phrase_tokens(NodeId id) const;
  // Phrase length in words, terminator excluded.
  std::uint32_t phrase_length(NodeId id) const;

  // Non-root nodes whose phrase occurs in at least m distinct documents, by id.
  std::vector<NodeId> nodes_with_min_doc_support(std::size_t m) const;

  // Occurrences of phrase_of(id) in document d.
  std::uint32_t doc_term_frequency(NodeId id, DocIndex d) const;

  // One line per node, indented by depth: phrase, doc support, per-document counts.
  void dump(std::ostream& out) const;

 private:
  std::vector<std::vector<Token>> docs_;
  std::vector<std::string> vocab_;
  std::vector<SuffixTreeNode> nodes_;

  NodeId find_child(NodeId parent, Token first) const;
  void insert_suffix(DocIndex d, std::uint32_t start);
  void accumulate_occurrences();
};

}  // namespace stclust
