#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "nettag/corpus.hpp"
#include "nettag/lexicon.hpp"
#include "nettag/network.hpp"
#include "nettag/tagger.hpp"
#include "synthetic.hpp"

using namespace nettag;

namespace {

struct Fixture {
  TaggedCorpus corpus;
  Lexicon lexicon;
  TaggerModel model;
  std::vector<std::string> words;

  static Fixture make() {
    synthetic::Process process = synthetic::make_process();
    TaggedCorpus corpus = synthetic::sample_corpus(process, 20000, 99);
    Lexicon lexicon = Lexicon::build(count_word_tags(corpus),
                                     corpus.tagset(), LexiconParams{});
    ContextConfig context{3, 2};
    NetworkShape shape{context.slots() * corpus.tagset().size(), 0,
                       corpus.tagset().size()};
    TaggerModel model{Network::init(shape, 7, 0.1), lexicon, context};
    std::vector<std::string> words;
    for (const Token& t : corpus.sentences().front()) words.push_back(t.word);
    return Fixture{std::move(corpus), std::move(lexicon), std::move(model),
                   std::move(words)};
  }
};

const Fixture& fixture() {
  static Fixture f = Fixture::make();
  return f;
}

void BM_LexiconLookup(benchmark::State& state) {
  const Fixture& f = fixture();
  std::mt19937 rng(3);
  std::vector<std::string> probe;
  for (const Sentence& s : f.corpus.sentences())
    for (const Token& t : s) {
      probe.push_back(t.word);
      if (probe.size() == 4096) goto done;
    }
done:
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.lexicon.lookup(probe[i++ & 4095]));
  }
}
BENCHMARK(BM_LexiconLookup);

void BM_ForwardPass(benchmark::State& state) {
  const Fixture& f = fixture();
  std::vector<double> input(f.model.network.shape().input_size, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.model.network.forward(input));
  }
}
BENCHMARK(BM_ForwardPass);

void BM_TrainingCycle(benchmark::State& state) {
  const Fixture& f = fixture();
  TaggerModel model = f.model;
  TrainingSchedule schedule;
  schedule.forcing_cycles = 1;
  schedule.log_interval = 1u << 30;
  for (auto _ : state) {
    state.PauseTiming();
    schedule.total_cycles = 256;
    TaggerModel fresh = f.model;
    state.ResumeTiming();
    train(fresh, f.corpus, schedule);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_TrainingCycle)->Unit(benchmark::kMillisecond);

void BM_TagSentence(benchmark::State& state) {
  const Fixture& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tag_sentence(f.model, f.words, 0.1));
  }
}
BENCHMARK(BM_TagSentence);

}  // namespace

BENCHMARK_MAIN();
