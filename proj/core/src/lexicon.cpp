#include "nettag/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "nettag/error.hpp"
#include "nettag/text.hpp"

namespace nettag {

namespace {

TagProbVector normalize(const std::vector<uint64_t>& freqs) {
  uint64_t total = std::accumulate(freqs.begin(), freqs.end(), uint64_t{0});
  TagProbVector probs(freqs.size(), 0.0);
  if (total == 0) return probs;
  for (size_t i = 0; i < freqs.size(); ++i)
    probs[i] = static_cast<double>(freqs[i]) / static_cast<double>(total);
  return probs;
}

}  // namespace

TagProbVector mle_probabilities(const std::vector<uint64_t>& counts,
                                double prune_threshold) {
  uint64_t total = std::accumulate(counts.begin(), counts.end(), uint64_t{0});
  if (total == 0) throw ArgumentError("mle_probabilities: all counts zero");
  TagProbVector probs(counts.size(), 0.0);
  double surviving = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    double p = static_cast<double>(counts[i]) / static_cast<double>(total);
    if (p < prune_threshold) p = 0.0;
    probs[i] = p;
    surviving += p;
  }
  if (surviving == 0.0) {
    size_t best =
        std::max_element(counts.begin(), counts.end()) - counts.begin();
    probs[best] = 1.0;
    return probs;
  }
  for (double& p : probs) p /= surviving;
  return probs;
}

void FullformLexicon::insert(std::string word, TagProbVector probs) {
  entries_[std::move(word)] = std::move(probs);
}

const TagProbVector* FullformLexicon::find(const std::string& word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

FullformLexicon build_fullform(const WordTagCounts& counts, size_t tagset_size,
                               double prune_threshold) {
  FullformLexicon lex;
  for (const auto& [word, row] : counts) {
    if (row.size() != tagset_size)
      throw ArgumentError("tag count row size mismatch for word: " + word);
    lex.insert(word, mle_probabilities(row, prune_threshold));
  }
  return lex;
}

std::unique_ptr<SuffixNode> SuffixNode::clone() const {
  auto copy = std::make_unique<SuffixNode>();
  copy->kind = kind;
  copy->label = label;
  copy->freqs = freqs;
  copy->probs = probs;
  copy->children.reserve(children.size());
  for (const auto& child : children) copy->children.push_back(child->clone());
  return copy;
}

SuffixNode* SuffixNode::find_child(char32_t c) const {
  for (const auto& child : children)
    if (child->kind == Kind::Char && child->label == c) return child.get();
  return nullptr;
}

SuffixNode* SuffixNode::default_child() const {
  for (const auto& child : children)
    if (child->kind == Kind::Default) return child.get();
  return nullptr;
}

size_t SuffixNode::node_count() const {
  size_t n = 1;
  for (const auto& child : children) n += child->node_count();
  return n;
}

namespace {

// Keeps children ordered by code point, default child last.
SuffixNode* get_or_add_child(SuffixNode& node, char32_t c, size_t n_tags) {
  auto pos = node.children.begin();
  for (; pos != node.children.end(); ++pos) {
    if ((*pos)->kind == SuffixNode::Kind::Default) break;
    if ((*pos)->label == c) return pos->get();
    if ((*pos)->label > c) break;
  }
  auto child = std::make_unique<SuffixNode>();
  child->kind = SuffixNode::Kind::Char;
  child->label = c;
  child->freqs.assign(n_tags, 0);
  return node.children.insert(pos, std::move(child))->get();
}

SuffixNode* get_or_add_default(SuffixNode& node, size_t n_tags) {
  if (SuffixNode* d = node.default_child()) return d;
  auto child = std::make_unique<SuffixNode>();
  child->kind = SuffixNode::Kind::Default;
  child->freqs.assign(n_tags, 0);
  node.children.push_back(std::move(child));
  return node.children.back().get();
}

}  // namespace

std::unique_ptr<SuffixNode> build_suffix_tree(const WordTagCounts& counts,
                                              const TagSet& tagset,
                                              size_t max_suffix_len) {
  if (!tagset.has_open_class())
    throw ConfigError("suffix tree requires at least one open-class tag");
  auto root = std::make_unique<SuffixNode>();
  root->kind = SuffixNode::Kind::Root;
  root->freqs.assign(tagset.size(), 0);
  for (const auto& [word, row] : counts) {
    std::vector<char32_t> cps;  // decoded lazily, only for open-class words
    for (size_t tag = 0; tag < row.size(); ++tag) {
      if (row[tag] == 0 || !tagset.is_open_class(tag)) continue;
      if (cps.empty()) cps = utf8_decode(word);
      size_t depth = std::min(max_suffix_len, cps.size());
      uint64_t freq = row[tag];
      root->freqs[tag] += freq;
      SuffixNode* node = root.get();
      for (size_t d = 0; d < depth; ++d) {
        node = get_or_add_child(*node, cps[cps.size() - 1 - d], tagset.size());
        node->freqs[tag] += freq;
      }
    }
  }
  return root;
}

double node_information(const std::vector<uint64_t>& freqs) {
  uint64_t total = std::accumulate(freqs.begin(), freqs.end(), uint64_t{0});
  if (total == 0) throw ArgumentError("node_information: zero total");
  double info = 0.0;
  for (uint64_t f : freqs) {
    if (f == 0) continue;
    double p = static_cast<double>(f) / static_cast<double>(total);
    info -= p * std::log2(p);
  }
  return info;
}

double information_gain(const std::vector<uint64_t>& parent_freqs,
                        const std::vector<uint64_t>& child_freqs) {
  uint64_t child_total =
      std::accumulate(child_freqs.begin(), child_freqs.end(), uint64_t{0});
  if (child_total == 0) return 0.0;
  uint64_t parent_total =
      std::accumulate(parent_freqs.begin(), parent_freqs.end(), uint64_t{0});
  if (parent_total == 0)
    throw ArgumentError("information_gain: zero parent total");
  return static_cast<double>(child_total) *
         (node_information(parent_freqs) - node_information(child_freqs));
}

namespace {

// Post-order pruning pass. Children are pruned first, so any node that
// collapses to a leaf is gain-checked by its parent on the way up, which
// realizes the upward cascade in a single traversal. Default children are
// absorbers and are never gain-checked themselves.
void prune_node(SuffixNode& node, double gain_threshold) {
  for (auto& child : node.children) prune_node(*child, gain_threshold);

  std::vector<std::unique_ptr<SuffixNode>> kept;
  kept.reserve(node.children.size());
  std::vector<uint64_t> absorbed(node.freqs.size(), 0);
  bool any_absorbed = false;
  for (auto& child : node.children) {
    bool removable = child->kind == SuffixNode::Kind::Char &&
                     child->is_leaf() &&
                     information_gain(node.freqs, child->freqs) < gain_threshold;
    if (removable) {
      for (size_t i = 0; i < absorbed.size(); ++i)
        absorbed[i] += child->freqs[i];
      any_absorbed = true;
    } else {
      kept.push_back(std::move(child));
    }
  }
  node.children = std::move(kept);
  if (any_absorbed) {
    SuffixNode* def = get_or_add_default(node, absorbed.size());
    for (size_t i = 0; i < absorbed.size(); ++i) def->freqs[i] += absorbed[i];
  }
  if (node.children.size() == 1 &&
      node.children[0]->kind == SuffixNode::Kind::Default &&
      node.children[0]->is_leaf()) {
    // The default child's freqs are already contained in the parent's.
    node.children.clear();
  }
}

void attach_leaf_probs(SuffixNode& node) {
  if (node.is_leaf()) {
    node.probs = normalize(node.freqs);
    return;
  }
  node.probs.reset();
  for (auto& child : node.children) attach_leaf_probs(*child);
}

void sum_leaf_freqs(const SuffixNode& node, std::vector<uint64_t>& acc) {
  if (node.is_leaf()) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += node.freqs[i];
    return;
  }
  for (const auto& child : node.children) sum_leaf_freqs(*child, acc);
}

}  // namespace

void prune_suffix_tree(SuffixNode& root, double gain_threshold) {
  prune_node(root, gain_threshold);
  attach_leaf_probs(root);
}

TagProbVector build_default_entry(const SuffixNode& pruned_root) {
  std::vector<uint64_t> leaf_sum(pruned_root.freqs.size(), 0);
  sum_leaf_freqs(pruned_root, leaf_sum);
  std::vector<uint64_t> residual(pruned_root.freqs.size(), 0);
  bool any = false;
  for (size_t i = 0; i < residual.size(); ++i) {
    residual[i] =
        pruned_root.freqs[i] > leaf_sum[i] ? pruned_root.freqs[i] - leaf_sum[i]
                                           : 0;
    any = any || residual[i] > 0;
  }
  return normalize(any ? residual : pruned_root.freqs);
}

Lexicon::Lexicon(FullformLexicon fullform,
                 std::unique_ptr<SuffixNode> suffix_tree,
                 TagProbVector default_entry, TagSet tagset)
    : fullform_(std::move(fullform)),
      suffix_tree_(std::move(suffix_tree)),
      default_entry_(std::move(default_entry)),
      tagset_(std::move(tagset)) {}

Lexicon::Lexicon(const Lexicon& other)
    : fullform_(other.fullform_),
      suffix_tree_(other.suffix_tree_ ? other.suffix_tree_->clone() : nullptr),
      default_entry_(other.default_entry_),
      tagset_(other.tagset_) {}

Lexicon& Lexicon::operator=(const Lexicon& other) {
  if (this != &other) {
    fullform_ = other.fullform_;
    suffix_tree_ = other.suffix_tree_ ? other.suffix_tree_->clone() : nullptr;
    default_entry_ = other.default_entry_;
    tagset_ = other.tagset_;
  }
  return *this;
}

Lexicon Lexicon::build(const WordTagCounts& counts, const TagSet& tagset,
                       const LexiconParams& params) {
  FullformLexicon fullform =
      build_fullform(counts, tagset.size(), params.prune_threshold);
  auto tree = build_suffix_tree(counts, tagset, params.max_suffix_len);
  prune_suffix_tree(*tree, params.gain_threshold);
  TagProbVector default_entry = build_default_entry(*tree);
  return Lexicon(std::move(fullform), std::move(tree),
                 std::move(default_entry), tagset);
}

const TagProbVector& Lexicon::lookup(const std::string& word) const {
  if (word.empty()) throw ArgumentError("lookup: empty word");
  if (const TagProbVector* p = fullform_.find(word)) return *p;
  std::string lower = to_lower(word);
  if (lower != word)
    if (const TagProbVector* p = fullform_.find(lower)) return *p;
  std::vector<char32_t> cps = utf8_decode(word);
  const SuffixNode* node = suffix_tree_.get();
  for (size_t d = 0; d < cps.size(); ++d) {
    const SuffixNode* next = node->find_child(cps[cps.size() - 1 - d]);
    if (!next) next = node->default_child();
    if (!next) return default_entry_;
    node = next;
    if (node->is_leaf()) return *node->probs;
  }
  return default_entry_;  // characters exhausted at an internal node
}

namespace {

constexpr int kLexDigits = 9;

void write_probs(std::ostream& out, const TagProbVector& probs) {
  for (size_t i = 0; i < probs.size(); ++i) {
    if (i) out << ',';
    out << format_real(probs[i], kLexDigits);
  }
}

void write_freqs(std::ostream& out, const std::vector<uint64_t>& freqs) {
  for (size_t i = 0; i < freqs.size(); ++i) {
    if (i) out << ',';
    out << freqs[i];
  }
}

void write_node(std::ostream& out, const SuffixNode& node, size_t depth) {
  out << depth << '\t';
  switch (node.kind) {
    case SuffixNode::Kind::Root: out << "<ROOT>"; break;
    case SuffixNode::Kind::Default: out << "<DEFAULT>"; break;
    case SuffixNode::Kind::Char: out << utf8_encode(node.label); break;
  }
  out << '\t';
  write_freqs(out, node.freqs);
  if (node.probs) {
    out << '\t';
    write_probs(out, *node.probs);
  }
  out << '\n';
  for (const auto& child : node.children) write_node(out, *child, depth + 1);
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

TagProbVector parse_probs(const std::string& field, size_t n, size_t line_no) {
  std::vector<std::string> parts = split_fields(field, ',');
  if (parts.size() != n)
    throw ParseError("lexicon line " + std::to_string(line_no) +
                     ": expected " + std::to_string(n) + " probabilities");
  TagProbVector probs(n);
  for (size_t i = 0; i < n; ++i) {
    char* end = nullptr;
    probs[i] = std::strtod(parts[i].c_str(), &end);
    if (end == parts[i].c_str() || *end != '\0')
      throw ParseError("lexicon line " + std::to_string(line_no) +
                       ": bad real '" + parts[i] + "'");
  }
  return probs;
}

std::vector<uint64_t> parse_freqs(const std::string& field, size_t n,
                                  size_t line_no) {
  std::vector<std::string> parts = split_fields(field, ',');
  if (parts.size() != n)
    throw ParseError("lexicon line " + std::to_string(line_no) +
                     ": expected " + std::to_string(n) + " frequencies");
  std::vector<uint64_t> freqs(n);
  for (size_t i = 0; i < n; ++i) {
    char* end = nullptr;
    freqs[i] = std::strtoull(parts[i].c_str(), &end, 10);
    if (end == parts[i].c_str() || *end != '\0')
      throw ParseError("lexicon line " + std::to_string(line_no) +
                       ": bad frequency '" + parts[i] + "'");
  }
  return freqs;
}

}  // namespace

void Lexicon::save(std::ostream& out) const {
  out << "netlex 1\n";
  out << "[tagset]\n";
  tagset_.save(out);
  out << "[fullform]\n";
  std::map<std::string, const TagProbVector*> sorted;
  for (const auto& [word, probs] : fullform_.entries())
    sorted.emplace(word, &probs);
  for (const auto& [word, probs] : sorted) {
    out << word << '\t';
    write_probs(out, *probs);
    out << '\n';
  }
  out << "[suffixtree]\n";
  write_node(out, *suffix_tree_, 0);
  out << "[default]\n";
  write_probs(out, default_entry_);
  out << '\n';
}

Lexicon Lexicon::load(std::istream& in) {
  std::string line;
  size_t line_no = 1;
  if (!std::getline(in, line) || line != "netlex 1")
    throw FormatError("unknown lexicon file version (expected 'netlex 1')");

  enum class Section { None, Tagset, Fullform, SuffixTree, Default };
  Section section = Section::None;

  std::vector<std::string> tag_names;
  std::vector<std::string> open_tags;
  FullformLexicon fullform;
  std::unique_ptr<SuffixNode> root;
  std::vector<SuffixNode*> stack;  // stack[d] = last node seen at depth d
  TagProbVector default_entry;
  TagSet tagset;
  size_t n = 0;
  bool tagset_built = false;

  auto finish_tagset = [&] {
    if (tagset_built) return;
    tagset = TagSet(tag_names, open_tags);
    n = tagset.size();
    tagset_built = true;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "[tagset]") { section = Section::Tagset; continue; }
    if (line == "[fullform]") { finish_tagset(); section = Section::Fullform; continue; }
    if (line == "[suffixtree]") { finish_tagset(); section = Section::SuffixTree; continue; }
    if (line == "[default]") { finish_tagset(); section = Section::Default; continue; }
    switch (section) {
      case Section::None:
        throw ParseError("lexicon line " + std::to_string(line_no) +
                         ": content before any section");
      case Section::Tagset: {
        size_t tab = line.find('\t');
        if (tab == std::string::npos) {
          tag_names.push_back(line);
        } else {
          if (line.substr(tab + 1) != "open")
            throw ParseError("lexicon line " + std::to_string(line_no) +
                             ": bad tagset flag");
          tag_names.push_back(line.substr(0, tab));
          open_tags.push_back(line.substr(0, tab));
        }
        break;
      }
      case Section::Fullform: {
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
          throw ParseError("lexicon line " + std::to_string(line_no) +
                           ": expected word<TAB>probs");
        fullform.insert(line.substr(0, tab),
                        parse_probs(line.substr(tab + 1), n, line_no));
        break;
      }
      case Section::SuffixTree: {
        std::vector<std::string> fields = split_fields(line, '\t');
        if (fields.size() != 3 && fields.size() != 4)
          throw ParseError("lexicon line " + std::to_string(line_no) +
                           ": expected 3 or 4 node fields");
        char* end = nullptr;
        size_t depth = std::strtoull(fields[0].c_str(), &end, 10);
        if (end == fields[0].c_str() || *end != '\0')
          throw ParseError("lexicon line " + std::to_string(line_no) +
                           ": bad depth");
        auto node = std::make_unique<SuffixNode>();
        if (fields[1] == "<ROOT>") {
          node->kind = SuffixNode::Kind::Root;
        } else if (fields[1] == "<DEFAULT>") {
          node->kind = SuffixNode::Kind::Default;
        } else {
          std::vector<char32_t> cps = utf8_decode(fields[1]);
          if (cps.size() != 1)
            throw ParseError("lexicon line " + std::to_string(line_no) +
                             ": node label must be a single character");
          node->kind = SuffixNode::Kind::Char;
          node->label = cps[0];
        }
        node->freqs = parse_freqs(fields[2], n, line_no);
        if (fields.size() == 4)
          node->probs = parse_probs(fields[3], n, line_no);
        SuffixNode* raw = node.get();
        if (depth == 0) {
          if (root)
            throw ParseError("lexicon line " + std::to_string(line_no) +
                             ": duplicate root node");
          root = std::move(node);
          stack.assign(1, raw);
        } else {
          if (depth > stack.size())
            throw ParseError("lexicon line " + std::to_string(line_no) +
                             ": node depth skips a level");
          stack.resize(depth);
          stack.back()->children.push_back(std::move(node));
          stack.push_back(raw);
        }
        break;
      }
      case Section::Default:
        default_entry = parse_probs(line, n, line_no);
        break;
    }
  }
  finish_tagset();
  if (!root) throw ParseError("lexicon file has no suffix tree");
  if (default_entry.empty())
    throw ParseError("lexicon file has no default entry");
  return Lexicon(std::move(fullform), std::move(root),
                 std::move(default_entry), std::move(tagset));
}

}  // namespace nettag
