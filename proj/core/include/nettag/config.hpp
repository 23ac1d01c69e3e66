#ifndef NETTAG_CONFIG_HPP
#define NETTAG_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "nettag/evaluation.hpp"
#include "nettag/lexicon.hpp"
#include "nettag/network.hpp"
#include "nettag/tagger.hpp"

namespace nettag {

// The full run configuration. Loadable from a flat `key = value` file;
// unknown keys are rejected so typos cannot silently fall back to
// defaults.
struct RunConfig {
  // paths
  std::string corpus_path;
  std::string tagset_path;
  std::string lexicon_path;
  std::string model_path;
  std::string output_path;

  // context
  size_t preceding = 3;
  size_t following = 2;
  size_t hidden = 0;

  // network training
  double learning_rate = 0.1;
  double momentum = 0.9;
  double error_threshold = 0.1;
  uint64_t seed = 1;
  double init_range = 0.1;
  uint64_t total_cycles = 0;
  uint64_t forcing_cycles = 0;  // 0 with total_cycles set -> total/2
  bool forcing_cycles_set = false;
  uint64_t log_interval = 10000;

  // lexicon
  size_t max_suffix_len = 5;
  double gain_threshold = 10.0;
  double prune_threshold = 0.01;

  // tagging
  double alt_margin = 0.1;
  bool emit_scores = false;

  void apply(const std::string& key, const std::string& value);
  void load_file(std::istream& in);
  void validate() const;
  void print_resolved(std::ostream& out) const;

  ContextConfig context() const { return {preceding, following}; }
  LexiconParams lexicon_params() const {
    return {prune_threshold, max_suffix_len, gain_threshold};
  }
  TrainingHyperparams hyperparams() const {
    return {learning_rate, momentum, error_threshold, seed};
  }
  TrainingSchedule schedule() const;
};

}  // namespace nettag

#endif
