#include "nettag/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "nettag/error.hpp"

namespace nettag {

TaggedCorpus::TaggedCorpus(std::vector<Sentence> sentences, TagSet tagset)
    : sentences_(std::move(sentences)), tagset_(std::move(tagset)) {
  for (const Sentence& s : sentences_) {
    if (s.empty()) throw ArgumentError("empty sentence in corpus");
    for (const Token& t : s) {
      if (t.tag >= tagset_.size())
        throw ArgumentError("token tag index out of range");
    }
    token_count_ += s.size();
  }
}

namespace {

struct RawToken {
  std::string word;
  std::string tag;
  size_t line_no;
};

bool has_whitespace(const std::string& s) {
  return s.find_first_of(" \t\n\r\v\f") != std::string::npos;
}

}  // namespace

TaggedCorpus parse_corpus(std::istream& in, const TagSet* tagset) {
  std::vector<std::vector<RawToken>> raw_sentences;
  std::vector<RawToken> current;
  std::string line;
  size_t line_no = 0;
  bool seen_token = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!current.empty()) {
        raw_sentences.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    if (!seen_token && line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected exactly two tab-separated fields");
    std::string word = line.substr(0, tab);
    std::string tag = line.substr(tab + 1);
    if (word.empty() || has_whitespace(word))
      throw ParseError("line " + std::to_string(line_no) + ": bad word field");
    if (tag.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty tag field");
    seen_token = true;
    current.push_back({std::move(word), std::move(tag), line_no});
  }
  if (!current.empty()) raw_sentences.push_back(std::move(current));

  TagSet ts;
  if (tagset) {
    ts = *tagset;
  } else {
    std::set<std::string> names;
    for (const auto& s : raw_sentences)
      for (const auto& t : s) names.insert(t.tag);
    ts = TagSet(std::vector<std::string>(names.begin(), names.end()), {});
  }

  std::vector<Sentence> sentences;
  sentences.reserve(raw_sentences.size());
  for (const auto& raw : raw_sentences) {
    Sentence s;
    s.reserve(raw.size());
    for (const auto& t : raw) {
      auto idx = ts.index(t.tag);
      if (!idx)
        throw ParseError("line " + std::to_string(t.line_no) + ": tag '" +
                         t.tag + "' not in tagset");
      s.push_back({t.word, *idx});
    }
    sentences.push_back(std::move(s));
  }
  return TaggedCorpus(std::move(sentences), std::move(ts));
}

void write_corpus(const TaggedCorpus& corpus, std::ostream& out) {
  const TagSet& ts = corpus.tagset();
  for (const Sentence& s : corpus.sentences()) {
    for (const Token& t : s) out << t.word << '\t' << ts.name(t.tag) << '\n';
    out << '\n';
  }
}

std::pair<TaggedCorpus, TaggedCorpus> split_corpus(const TaggedCorpus& corpus,
                                                   size_t test_tokens) {
  size_t total = corpus.token_count();
  if (test_tokens == 0 || test_tokens >= total)
    throw ArgumentError("test_tokens must be in (0, total token count)");
  const auto& sentences = corpus.sentences();
  size_t acc = 0;
  size_t cut = sentences.size();
  while (cut > 0 && acc < test_tokens) {
    --cut;
    acc += sentences[cut].size();
  }
  if (cut == 0)
    throw ArgumentError("split would leave an empty training set");
  std::vector<Sentence> train(sentences.begin(), sentences.begin() + cut);
  std::vector<Sentence> test(sentences.begin() + cut, sentences.end());
  return {TaggedCorpus(std::move(train), corpus.tagset()),
          TaggedCorpus(std::move(test), corpus.tagset())};
}

WordTagCounts count_word_tags(const TaggedCorpus& corpus) {
  WordTagCounts counts;
  size_t n = corpus.tagset().size();
  for (const Sentence& s : corpus.sentences()) {
    for (const Token& t : s) {
      auto& row = counts[t.word];
      if (row.empty()) row.assign(n, 0);
      ++row[t.tag];
    }
  }
  return counts;
}

}  // namespace nettag
