#ifndef NETTAG_CORPUS_HPP
#define NETTAG_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nettag/tagset.hpp"

namespace nettag {

struct Token {
  std::string word;  // surface form, no whitespace
  size_t tag;        // index into the corpus tagset
};

using Sentence = std::vector<Token>;

// Immutable after construction; safe to share between readers.
class TaggedCorpus {
 public:
  TaggedCorpus() = default;
  TaggedCorpus(std::vector<Sentence> sentences, TagSet tagset);

  const std::vector<Sentence>& sentences() const { return sentences_; }
  const TagSet& tagset() const { return tagset_; }
  size_t token_count() const { return token_count_; }

 private:
  std::vector<Sentence> sentences_;
  TagSet tagset_;
  size_t token_count_ = 0;
};

// Vertical format: one `word<TAB>tag` per line, blank line ends a
// sentence, `#` comment lines allowed before the first token line.
// With a supplied tagset every tag is validated against it; otherwise the
// tagset is derived from the data (sorted, no open-class flags).
TaggedCorpus parse_corpus(std::istream& in, const TagSet* tagset = nullptr);

void write_corpus(const TaggedCorpus& corpus, std::ostream& out);

// Splits off the last whole sentences covering at least test_tokens
// tokens. Both halves keep the original sentence order.
std::pair<TaggedCorpus, TaggedCorpus> split_corpus(const TaggedCorpus& corpus,
                                                   size_t test_tokens);

// counts[word][tag index] = occurrences of that word/tag pair.
using WordTagCounts = std::map<std::string, std::vector<uint64_t>>;

WordTagCounts count_word_tags(const TaggedCorpus& corpus);

}  // namespace nettag

#endif
