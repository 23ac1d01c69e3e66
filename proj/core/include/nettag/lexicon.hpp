#ifndef NETTAG_LEXICON_HPP
#define NETTAG_LEXICON_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nettag/corpus.hpp"
#include "nettag/tagset.hpp"

namespace nettag {

// Per-tag probability (or activation) vector, indexed by the tagset.
using TagProbVector = std::vector<double>;

// Relative-frequency estimate with low-probability tags removed and the
// survivors renormalized. If every tag falls below the threshold the
// argmax tag is kept with probability 1 (ties broken by lowest index).
TagProbVector mle_probabilities(const std::vector<uint64_t>& counts,
                                double prune_threshold = 0.01);

class FullformLexicon {
 public:
  void insert(std::string word, TagProbVector probs);
  const TagProbVector* find(const std::string& word) const;
  size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, TagProbVector>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, TagProbVector> entries_;
};

FullformLexicon build_fullform(const WordTagCounts& counts,
                               size_t tagset_size,
                               double prune_threshold = 0.01);

// Node of the suffix tree. Suffix characters are Unicode code points,
// stored along root-to-leaf paths in reverse word order. Children are
// kept sorted by code point with the default child last.
struct SuffixNode {
  enum class Kind { Root, Char, Default };

  Kind kind = Kind::Char;
  char32_t label = 0;  // meaningful only when kind == Char
  std::vector<uint64_t> freqs;
  std::vector<std::unique_ptr<SuffixNode>> children;
  std::optional<TagProbVector> probs;  // present exactly on pruned-tree leaves

  bool is_leaf() const { return children.empty(); }
  std::unique_ptr<SuffixNode> clone() const;
  SuffixNode* find_child(char32_t c) const;
  SuffixNode* default_child() const;
  size_t node_count() const;
};

// Builds the unpruned tree from open-class word/tag counts. Words shorter
// than max_suffix_len contribute their whole form.
std::unique_ptr<SuffixNode> build_suffix_tree(const WordTagCounts& counts,
                                              const TagSet& tagset,
                                              size_t max_suffix_len = 5);

// Entropy in bits of the tag distribution at a node.
double node_information(const std::vector<uint64_t>& freqs);

// Frequency-weighted entropy reduction of a child over its parent.
// May be negative; zero when the child total is zero.
double information_gain(const std::vector<uint64_t>& parent_freqs,
                        const std::vector<uint64_t>& child_freqs);

// Bottom-up gain-threshold pruning. Removed leaves are absorbed into the
// parent's default child; a default child left as the only child is
// dropped and the parent cascades upward as a new leaf. Surviving leaves
// receive normalized probability vectors.
void prune_suffix_tree(SuffixNode& root, double gain_threshold = 10.0);

// Root frequencies minus all pruned-tree leaf frequencies, clamped at
// zero and normalized; falls back to the root distribution if the
// residual is all-zero.
TagProbVector build_default_entry(const SuffixNode& pruned_root);

struct LexiconParams {
  double prune_threshold = 0.01;
  size_t max_suffix_len = 5;
  double gain_threshold = 10.0;
};

// Three-tier lexicon: fullform map, pruned suffix tree, default entry.
// Immutable once built; lookup is a pure read.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(FullformLexicon fullform, std::unique_ptr<SuffixNode> suffix_tree,
          TagProbVector default_entry, TagSet tagset);
  Lexicon(const Lexicon& other);
  Lexicon& operator=(const Lexicon& other);
  Lexicon(Lexicon&&) = default;
  Lexicon& operator=(Lexicon&&) = default;

  static Lexicon build(const WordTagCounts& counts, const TagSet& tagset,
                       const LexiconParams& params = {});

  // Cascade: exact fullform, lowercased fullform, suffix-tree walk,
  // default entry. Total for non-empty words.
  const TagProbVector& lookup(const std::string& word) const;

  const TagSet& tagset() const { return tagset_; }
  const FullformLexicon& fullform() const { return fullform_; }
  const SuffixNode& suffix_tree() const { return *suffix_tree_; }
  const TagProbVector& default_entry() const { return default_entry_; }

  // `netlex 1` text format; deterministic, 9-significant-digit reals.
  void save(std::ostream& out) const;
  static Lexicon load(std::istream& in);

 private:
  FullformLexicon fullform_;
  std::unique_ptr<SuffixNode> suffix_tree_;
  TagProbVector default_entry_;
  TagSet tagset_;
};

}  // namespace nettag

#endif
