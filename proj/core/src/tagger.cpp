#include "nettag/tagger.hpp"

#include <cmath>

#include "nettag/error.hpp"

namespace nettag {

void TaggerModel::check_consistent() const {
  if (network.shape().input_size != input_size() ||
      network.shape().output_size != tagset().size())
    throw ConfigError("network shape inconsistent with tagset and context");
}

std::vector<double> blended_feedback(std::span<const double> target,
                                     std::span<const double> actual_output,
                                     double lambda) {
  if (target.size() != actual_output.size())
    throw ArgumentError("blended_feedback: length mismatch");
  std::vector<double> out(target.size());
  for (size_t j = 0; j < out.size(); ++j)
    out[j] = lambda * target[j] + (1.0 - lambda) * actual_output[j];
  return out;
}

std::vector<double> assemble_input(
    const TaggerModel& model, const std::vector<std::string>& sentence_words,
    size_t position, const std::vector<std::vector<double>>& left_feedback) {
  const size_t n = model.tagset().size();
  const size_t p = model.context.preceding;
  const size_t f = model.context.following;
  if (position >= sentence_words.size())
    throw ArgumentError("assemble_input: position outside sentence");
  std::vector<double> input(model.input_size(), 0.0);

  // Slots [-p..-1]: recurrent feedback, zero past the sentence start.
  for (size_t k = 0; k < p; ++k) {
    size_t offset_back = p - k;  // slot k covers position - offset_back
    if (offset_back > position) continue;
    size_t src = position - offset_back;
    if (src >= left_feedback.size() || left_feedback[src].size() != n)
      throw ArgumentError("assemble_input: missing or misshaped feedback");
    std::copy(left_feedback[src].begin(), left_feedback[src].end(),
              input.begin() + k * n);
  }

  // Slots [0..f]: lexical probability vectors, zero past the sentence end.
  for (size_t k = 0; k <= f; ++k) {
    size_t src = position + k;
    if (src >= sentence_words.size()) break;
    const TagProbVector& probs = model.lexicon.lookup(sentence_words[src]);
    std::copy(probs.begin(), probs.end(), input.begin() + (p + k) * n);
  }
  return input;
}

double TrainingSchedule::forcing_weight(uint64_t cycle) const {
  if (forcing_cycles == 0) return 0.0;
  double lambda = 1.0 - static_cast<double>(cycle) /
                            static_cast<double>(forcing_cycles);
  return lambda > 0.0 ? lambda : 0.0;
}

std::vector<TrainingLogEntry> train(TaggerModel& model,
                                    const TaggedCorpus& corpus,
                                    const TrainingSchedule& schedule) {
  model.check_consistent();
  if (corpus.token_count() == 0)
    throw ArgumentError("train: empty corpus");
  const size_t n = model.tagset().size();
  const bool hidden = model.network.has_hidden_layer();
  const TrainingHyperparams& hp = schedule.hyperparams;

  std::vector<TrainingLogEntry> log;
  uint64_t cycle = 0;
  double err_sum = 0.0;
  uint64_t err_count = 0;

  std::vector<std::string> words;
  std::vector<std::vector<double>> feedback;
  std::vector<double> target(n);

  while (cycle < schedule.total_cycles) {
    for (const Sentence& sentence : corpus.sentences()) {
      if (cycle >= schedule.total_cycles) break;
      words.clear();
      for (const Token& t : sentence) words.push_back(t.word);
      feedback.assign(sentence.size(), {});
      for (size_t pos = 0;
           pos < sentence.size() && cycle < schedule.total_cycles; ++pos) {
        double lambda = schedule.forcing_weight(cycle);
        std::vector<double> input =
            assemble_input(model, words, pos, feedback);
        ForwardResult fr = model.network.forward(input);

        std::fill(target.begin(), target.end(), 0.0);
        target[sentence[pos].tag] = 1.0;

        std::vector<double> out_d =
            output_deltas(target, fr.output, hp.error_threshold);
        std::vector<double> hid_d;
        if (hidden)
          hid_d = hidden_deltas(fr.hidden, out_d, model.network.weights(1));
        model.network.update(input, fr.hidden, out_d, hid_d, hp);

        // Stored once per position, reused as left context downstream.
        feedback[pos] = blended_feedback(target, fr.output, lambda);

        double se = 0.0;
        for (size_t j = 0; j < n; ++j) {
          double e = target[j] - fr.output[j];
          se += e * e;
        }
        err_sum += se;
        ++err_count;
        ++cycle;
        if (schedule.log_interval > 0 && cycle % schedule.log_interval == 0) {
          double mse = err_sum / static_cast<double>(err_count);
          if (!std::isfinite(mse))
            throw NumericError("non-finite training error; aborting");
          log.push_back({cycle, mse});
          err_sum = 0.0;
          err_count = 0;
        }
      }
    }
  }
  return log;
}

TagDecision select_tags(const std::vector<double>& output, double alt_margin) {
  if (output.empty()) throw ArgumentError("select_tags: empty output");
  size_t best = 0;
  for (size_t j = 1; j < output.size(); ++j)
    if (output[j] > output[best]) best = j;
  TagDecision d;
  d.primary_tag = best;
  d.primary_score = output[best];
  d.full_scores = output;
  if (output.size() > 1) {
    size_t second = best == 0 ? 1 : 0;
    for (size_t j = 0; j < output.size(); ++j) {
      if (j == best) continue;
      if (output[j] > output[second]) second = j;
    }
    if (d.primary_score - output[second] < alt_margin) {
      d.alternative_tag = second;
      d.alternative_score = output[second];
    }
  }
  return d;
}

std::vector<TagDecision> tag_sentence(const TaggerModel& model,
                                      const std::vector<std::string>& words,
                                      double alt_margin) {
  if (words.empty()) throw ArgumentError("tag_sentence: empty sentence");
  std::vector<std::vector<double>> feedback(words.size());
  std::vector<TagDecision> decisions;
  decisions.reserve(words.size());
  for (size_t pos = 0; pos < words.size(); ++pos) {
    std::vector<double> input = assemble_input(model, words, pos, feedback);
    ForwardResult fr = model.network.forward(input);
    feedback[pos] = fr.output;  // raw outputs; no teacher at tagging time
    decisions.push_back(select_tags(fr.output, alt_margin));
  }
  return decisions;
}

}  // namespace nettag
