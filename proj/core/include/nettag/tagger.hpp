#ifndef NETTAG_TAGGER_HPP
#define NETTAG_TAGGER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nettag/corpus.hpp"
#include "nettag/lexicon.hpp"
#include "nettag/network.hpp"

namespace nettag {

struct ContextConfig {
  size_t preceding = 3;
  size_t following = 2;

  size_t slots() const { return preceding + 1 + following; }
};

// The network plus everything needed to drive it. The network input is
// one tag-probability slot per context position; slots outside the
// sentence stay all-zero, and recurrent feedback resets at each sentence
// start.
struct TaggerModel {
  Network network;
  Lexicon lexicon;
  ContextConfig context;

  const TagSet& tagset() const { return lexicon.tagset(); }
  size_t input_size() const { return context.slots() * tagset().size(); }
  void check_consistent() const;
};

// lambda-weighted average of the target and the actual network output;
// the teacher-forcing blend fed back as left context during training.
std::vector<double> blended_feedback(std::span<const double> target,
                                     std::span<const double> actual_output,
                                     double lambda);

// Builds the network input for one position: slots [-p..-1] take the
// given feedback vectors (zero past the sentence start), slot 0 and the
// following slots take lexicon vectors (zero past the sentence end).
std::vector<double> assemble_input(
    const TaggerModel& model, const std::vector<std::string>& sentence_words,
    size_t position, const std::vector<std::vector<double>>& left_feedback);

struct TrainingSchedule {
  uint64_t total_cycles = 0;    // one cycle = one word position processed
  uint64_t forcing_cycles = 0;  // linear decay span of the forcing weight
  uint64_t log_interval = 10000;
  TrainingHyperparams hyperparams;

  // max(0, 1 - c/forcing_cycles); zero throughout when forcing_cycles is 0.
  double forcing_weight(uint64_t cycle) const;
};

struct TrainingLogEntry {
  uint64_t cycle;
  double mean_squared_error;
};

// Trains in corpus order, looping over the corpus until total_cycles
// positions have been processed. Left context feeds back the blend of
// target and actual output at the current forcing weight.
std::vector<TrainingLogEntry> train(TaggerModel& model,
                                    const TaggedCorpus& corpus,
                                    const TrainingSchedule& schedule);

struct TagDecision {
  size_t primary_tag;
  double primary_score;
  std::optional<size_t> alternative_tag;
  std::optional<double> alternative_score;
  std::vector<double> full_scores;  // raw activations, unnormalized
};

// Argmax decode with an optional alternative tag when the runner-up
// activation is within alt_margin of the winner. Ties break toward the
// lower tag index.
TagDecision select_tags(const std::vector<double>& output,
                        double alt_margin = 0.1);

// Greedy left-to-right tagging; left context uses raw network outputs.
std::vector<TagDecision> tag_sentence(const TaggerModel& model,
                                      const std::vector<std::string>& words,
                                      double alt_margin = 0.1);

}  // namespace nettag

#endif
