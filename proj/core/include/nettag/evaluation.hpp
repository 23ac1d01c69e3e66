#ifndef NETTAG_EVALUATION_HPP
#define NETTAG_EVALUATION_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "nettag/corpus.hpp"
#include "nettag/lexicon.hpp"
#include "nettag/tagger.hpp"

namespace nettag {

struct EvalReport {
  uint64_t token_count = 0;
  uint64_t correct = 0;
  double accuracy = 0.0;
  uint64_t ambiguous_count = 0;  // tokens with an alternative emitted
  double accuracy_with_alternatives = 0.0;
  // (gold tag, predicted primary tag) -> count
  std::map<std::pair<size_t, size_t>, uint64_t> confusion;

  bool operator==(const EvalReport& other) const = default;
};

// Compares per-token decisions against the gold corpus. A token counts
// toward accuracy_with_alternatives when the primary OR the alternative
// matches gold.
EvalReport evaluate(const TaggedCorpus& gold,
                    const std::vector<std::vector<TagDecision>>& decisions);

// Positions where the primary tag disagrees with gold, numbered over the
// flattened token stream.
std::set<size_t> error_positions(
    const TaggedCorpus& gold,
    const std::vector<std::vector<TagDecision>>& decisions);

// |A intersect B| / min(|A|, |B|); 0 when either set is empty.
double error_overlap(const std::set<size_t>& errors_a,
                     const std::set<size_t>& errors_b);

// Trainable weight count excluding biases: (p+1+f)*n*n without a hidden
// layer, (p+1+f)*n*h + h*n with one.
uint64_t parameter_count(size_t tagset_size, const ContextConfig& context,
                         size_t hidden);

// Bias weights, reported separately in the audit line.
uint64_t bias_count(size_t tagset_size, size_t hidden);

struct CurveParams {
  ContextConfig context{2, 1};  // the reduced context used for the curve
  LexiconParams lexicon;
  TrainingSchedule schedule;
  double init_range = 0.1;
  double alt_margin = 0.1;
};

// One (size, accuracy) point per requested training size. Each point
// trains a fresh seeded model (lexicon rebuilt too) on the first `size`
// tokens' worth of whole sentences.
std::vector<std::pair<size_t, double>> learning_curve(
    const TaggedCorpus& train_corpus, const std::vector<size_t>& sizes,
    const CurveParams& params, const TaggedCorpus& eval_corpus);

void write_report_text(const EvalReport& report, const TagSet& tagset,
                       std::ostream& out);
// Line-oriented key<TAB>value file.
void write_report_kv(const EvalReport& report, std::ostream& out);
// gold<TAB>pred<TAB>count lines.
void write_confusion(const EvalReport& report, const TagSet& tagset,
                     std::ostream& out);

}  // namespace nettag

#endif
