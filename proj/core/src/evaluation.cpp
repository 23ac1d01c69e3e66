#include "nettag/evaluation.hpp"

#include <algorithm>
#include <ostream>

#include "nettag/error.hpp"
#include "nettag/text.hpp"

namespace nettag {

EvalReport evaluate(const TaggedCorpus& gold,
                    const std::vector<std::vector<TagDecision>>& decisions) {
  if (gold.token_count() == 0)
    throw ArgumentError("evaluate: empty gold corpus");
  if (decisions.size() != gold.sentences().size())
    throw ArgumentError("evaluate: sentence count mismatch");
  EvalReport report;
  uint64_t correct_with_alt = 0;
  for (size_t s = 0; s < decisions.size(); ++s) {
    const Sentence& sent = gold.sentences()[s];
    if (decisions[s].size() != sent.size())
      throw ArgumentError("evaluate: token count mismatch in sentence " +
                          std::to_string(s + 1));
    for (size_t i = 0; i < sent.size(); ++i) {
      const TagDecision& d = decisions[s][i];
      size_t g = sent[i].tag;
      ++report.token_count;
      ++report.confusion[{g, d.primary_tag}];
      bool primary_ok = d.primary_tag == g;
      if (primary_ok) ++report.correct;
      if (d.alternative_tag) ++report.ambiguous_count;
      if (primary_ok || (d.alternative_tag && *d.alternative_tag == g))
        ++correct_with_alt;
    }
  }
  report.accuracy = static_cast<double>(report.correct) /
                    static_cast<double>(report.token_count);
  report.accuracy_with_alternatives = static_cast<double>(correct_with_alt) /
                                      static_cast<double>(report.token_count);
  return report;
}

std::set<size_t> error_positions(
    const TaggedCorpus& gold,
    const std::vector<std::vector<TagDecision>>& decisions) {
  std::set<size_t> errors;
  size_t pos = 0;
  for (size_t s = 0; s < gold.sentences().size(); ++s) {
    const Sentence& sent = gold.sentences()[s];
    for (size_t i = 0; i < sent.size(); ++i, ++pos)
      if (decisions[s][i].primary_tag != sent[i].tag) errors.insert(pos);
  }
  return errors;
}

double error_overlap(const std::set<size_t>& errors_a,
                     const std::set<size_t>& errors_b) {
  if (errors_a.empty() || errors_b.empty()) return 0.0;
  size_t common = 0;
  for (size_t p : errors_a) common += errors_b.count(p);
  return static_cast<double>(common) /
         static_cast<double>(std::min(errors_a.size(), errors_b.size()));
}

uint64_t parameter_count(size_t tagset_size, const ContextConfig& context,
                         size_t hidden) {
  if (tagset_size == 0) throw ArgumentError("parameter_count: empty tagset");
  uint64_t n = tagset_size;
  uint64_t slots = context.slots();
  if (hidden == 0) return slots * n * n;
  return slots * n * hidden + static_cast<uint64_t>(hidden) * n;
}

uint64_t bias_count(size_t tagset_size, size_t hidden) {
  return hidden == 0 ? tagset_size : hidden + tagset_size;
}

std::vector<std::pair<size_t, double>> learning_curve(
    const TaggedCorpus& train_corpus, const std::vector<size_t>& sizes,
    const CurveParams& params, const TaggedCorpus& eval_corpus) {
  std::vector<std::pair<size_t, double>> points;
  for (size_t size : sizes) {
    if (size == 0 || size > train_corpus.token_count())
      throw ArgumentError("learning_curve: size out of range");
    // First whole sentences covering at least `size` tokens.
    std::vector<Sentence> subset;
    size_t acc = 0;
    for (const Sentence& s : train_corpus.sentences()) {
      if (acc >= size) break;
      subset.push_back(s);
      acc += s.size();
    }
    TaggedCorpus sub(std::move(subset), train_corpus.tagset());

    Lexicon lexicon = Lexicon::build(count_word_tags(sub), sub.tagset(),
                                     params.lexicon);
    NetworkShape shape{params.context.slots() * sub.tagset().size(), 0,
                       sub.tagset().size()};
    TaggerModel model{Network::init(shape, params.schedule.hyperparams.seed,
                                    params.init_range),
                      std::move(lexicon), params.context};
    train(model, sub, params.schedule);

    std::vector<std::vector<TagDecision>> decisions;
    for (const Sentence& s : eval_corpus.sentences()) {
      std::vector<std::string> words;
      for (const Token& t : s) words.push_back(t.word);
      decisions.push_back(tag_sentence(model, words, params.alt_margin));
    }
    EvalReport report = evaluate(eval_corpus, decisions);
    points.emplace_back(size, report.accuracy);
  }
  return points;
}

namespace {
constexpr int kReportDigits = 9;
}

void write_report_text(const EvalReport& report, const TagSet& tagset,
                       std::ostream& out) {
  double ambiguous_rate = static_cast<double>(report.ambiguous_count) /
                          static_cast<double>(report.token_count);
  out << "tokens                      " << report.token_count << '\n';
  out << "correct                     " << report.correct << '\n';
  out << "accuracy                    "
      << format_real(100.0 * report.accuracy, 6) << " %\n";
  out << "accuracy with alternatives  "
      << format_real(100.0 * report.accuracy_with_alternatives, 6) << " %\n";
  out << "ambiguously tagged          "
      << format_real(100.0 * ambiguous_rate, 6) << " % ("
      << report.ambiguous_count << " tokens)\n";
  out << '\n' << "confusion (gold -> predicted), errors only:\n";
  for (const auto& [pair, count] : report.confusion) {
    if (pair.first == pair.second) continue;
    out << "  " << tagset.name(pair.first) << " -> "
        << tagset.name(pair.second) << "  " << count << '\n';
  }
}

void write_report_kv(const EvalReport& report, std::ostream& out) {
  double ambiguous_rate = static_cast<double>(report.ambiguous_count) /
                          static_cast<double>(report.token_count);
  out << "tokens\t" << report.token_count << '\n';
  out << "correct\t" << report.correct << '\n';
  out << "accuracy\t" << format_real(report.accuracy, kReportDigits) << '\n';
  out << "accuracy_with_alternatives\t"
      << format_real(report.accuracy_with_alternatives, kReportDigits) << '\n';
  out << "ambiguous_count\t" << report.ambiguous_count << '\n';
  out << "ambiguous_rate\t" << format_real(ambiguous_rate, kReportDigits)
      << '\n';
}

void write_confusion(const EvalReport& report, const TagSet& tagset,
                     std::ostream& out) {
  for (const auto& [pair, count] : report.confusion)
    out << tagset.name(pair.first) << '\t' << tagset.name(pair.second) << '\t'
        << count << '\n';
}

}  // namespace nettag
