// Command-line front end: build-lexicon, train, tag, eval,
// learning-curve and inspect subcommands over one flat config.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nettag/config.hpp"
#include "nettag/corpus.hpp"
#include "nettag/error.hpp"
#include "nettag/evaluation.hpp"
#include "nettag/lexicon.hpp"
#include "nettag/network.hpp"
#include "nettag/tagger.hpp"
#include "nettag/text.hpp"

namespace fs = std::filesystem;
using namespace nettag;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file: " + path);
  return in;
}

// Invalid runs must never leave partial outputs behind: write to a
// temp file next to the target and rename on success.
void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot write output file: " + path);
    writer(out);
    out.flush();
    if (!out) throw ConfigError("write failed: " + path);
  }
  fs::rename(tmp, target);
}

TagSet load_tagset(const RunConfig& cfg) {
  std::ifstream in = open_input(cfg.tagset_path);
  return TagSet::load(in);
}

TaggedCorpus load_corpus(const RunConfig& cfg, const TagSet* tagset) {
  std::ifstream in = open_input(cfg.corpus_path);
  return parse_corpus(in, tagset);
}

Lexicon load_lexicon(const RunConfig& cfg) {
  std::ifstream in = open_input(cfg.lexicon_path);
  return Lexicon::load(in);
}

int cmd_build_lexicon(const RunConfig& cfg) {
  TagSet tagset = load_tagset(cfg);
  if (!tagset.has_open_class())
    throw ConfigError("tagset declares no open-class tags");
  TaggedCorpus corpus = load_corpus(cfg, &tagset);
  Lexicon lexicon = Lexicon::build(count_word_tags(corpus), tagset,
                                   cfg.lexicon_params());
  write_file(cfg.lexicon_path.empty() ? cfg.output_path : cfg.lexicon_path,
             [&](std::ostream& out) { lexicon.save(out); });
  std::cout << "fullform entries: " << lexicon.fullform().size() << '\n';
  std::cout << "suffix tree nodes: " << lexicon.suffix_tree().node_count()
            << '\n';
  std::cout << "default entry:";
  for (size_t i = 0; i < tagset.size(); ++i)
    if (lexicon.default_entry()[i] > 0)
      std::cout << ' ' << tagset.name(i) << '='
                << format_real(lexicon.default_entry()[i], 4);
  std::cout << '\n';
  return 0;
}

int cmd_train(const RunConfig& cfg) {
  Lexicon lexicon = load_lexicon(cfg);
  TaggedCorpus corpus = load_corpus(cfg, &lexicon.tagset());
  NetworkShape shape{cfg.context().slots() * lexicon.tagset().size(),
                     cfg.hidden, lexicon.tagset().size()};
  TaggerModel model{Network::init(shape, cfg.seed, cfg.init_range),
                    std::move(lexicon), cfg.context()};
  auto log = train(model, corpus, cfg.schedule());
  for (const auto& entry : log)
    std::cout << "cycle " << entry.cycle << "  mse "
              << format_real(entry.mean_squared_error, 6) << '\n';
  write_file(cfg.model_path,
             [&](std::ostream& out) { model.network.save(out); });
  return 0;
}

std::vector<std::vector<std::string>> read_word_sentences(std::istream& in) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  std::string line;
  bool seen_token = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!current.empty()) {
        sentences.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    if (!seen_token && line[0] == '#') continue;
    seen_token = true;
    current.push_back(line);
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

int cmd_tag(const RunConfig& cfg, const std::string& input_path) {
  Lexicon lexicon = load_lexicon(cfg);
  std::ifstream model_in = open_input(cfg.model_path);
  Network network = Network::load(model_in);
  TaggerModel model{std::move(network), std::move(lexicon), cfg.context()};
  model.check_consistent();

  std::ifstream in = open_input(input_path);
  auto sentences = read_word_sentences(in);
  const TagSet& tagset = model.tagset();
  write_file(cfg.output_path, [&](std::ostream& out) {
    for (const auto& words : sentences) {
      auto decisions = tag_sentence(model, words, cfg.alt_margin);
      for (size_t i = 0; i < words.size(); ++i) {
        const TagDecision& d = decisions[i];
        out << words[i] << '\t' << tagset.name(d.primary_tag);
        if (d.alternative_tag)
          out << '\t' << tagset.name(*d.alternative_tag);
        if (cfg.emit_scores) {
          out << '\t';
          for (size_t j = 0; j < d.full_scores.size(); ++j) {
            if (j) out << ',';
            out << format_real(d.full_scores[j], 9);
          }
        }
        out << '\n';
      }
      out << '\n';
    }
  });
  return 0;
}

// Reads a tagged output file back into decisions, checking word-for-word
// alignment with the gold corpus.
std::vector<std::vector<TagDecision>> read_decisions(
    std::istream& in, const TaggedCorpus& gold) {
  const TagSet& tagset = gold.tagset();
  std::vector<std::vector<TagDecision>> decisions;
  std::vector<TagDecision> current;
  std::string line;
  size_t line_no = 0;
  size_t sent = 0;
  size_t pos = 0;
  auto flush = [&] {
    if (current.empty()) return;
    if (sent >= gold.sentences().size() ||
        current.size() != gold.sentences()[sent].size())
      throw ParseError("line " + std::to_string(line_no) +
                       ": sentence does not align with gold corpus");
    decisions.push_back(std::move(current));
    current.clear();
    ++sent;
    pos = 0;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() < 2)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected word and tag");
    if (sent >= gold.sentences().size() ||
        pos >= gold.sentences()[sent].size() ||
        gold.sentences()[sent][pos].word != fields[0])
      throw ParseError("line " + std::to_string(line_no) +
                       ": word does not align with gold corpus");
    TagDecision d;
    auto primary = tagset.index(fields[1]);
    if (!primary)
      throw ParseError("line " + std::to_string(line_no) + ": unknown tag '" +
                       fields[1] + "'");
    d.primary_tag = *primary;
    d.primary_score = 1.0;
    // A third field is an alternative tag unless it contains commas
    // (score lists from --scores mode).
    if (fields.size() >= 3 && fields[2].find(',') == std::string::npos &&
        !fields[2].empty()) {
      auto alt = tagset.index(fields[2]);
      if (!alt)
        throw ParseError("line " + std::to_string(line_no) +
                         ": unknown alternative tag '" + fields[2] + "'");
      d.alternative_tag = *alt;
      d.alternative_score = 0.0;
    }
    current.push_back(std::move(d));
    ++pos;
  }
  flush();
  if (sent != gold.sentences().size())
    throw ParseError("tagged file has fewer sentences than gold corpus");
  return decisions;
}

int cmd_eval(const RunConfig& cfg, const std::string& gold_path,
             const std::string& tagged_path) {
  std::ifstream gold_in = open_input(gold_path);
  TaggedCorpus gold = parse_corpus(gold_in);
  std::ifstream tagged_in = open_input(tagged_path);
  auto decisions = read_decisions(tagged_in, gold);
  EvalReport report = evaluate(gold, decisions);

  std::string base = cfg.output_path.empty() ? "report" : cfg.output_path;
  write_file(base + ".txt", [&](std::ostream& out) {
    write_report_text(report, gold.tagset(), out);
  });
  write_file(base + ".tsv",
             [&](std::ostream& out) { write_report_kv(report, out); });
  write_file(base + ".confusion.tsv", [&](std::ostream& out) {
    write_confusion(report, gold.tagset(), out);
  });
  write_report_text(report, gold.tagset(), std::cout);
  return 0;
}

int cmd_learning_curve(const RunConfig& cfg, const std::string& sizes_arg,
                       size_t test_tokens) {
  TagSet tagset = load_tagset(cfg);
  TaggedCorpus corpus = load_corpus(cfg, &tagset);
  auto [train_set, eval_set] = split_corpus(corpus, test_tokens);

  std::vector<size_t> sizes;
  std::stringstream ss(sizes_arg);
  std::string item;
  while (std::getline(ss, item, ','))
    sizes.push_back(std::stoull(item));
  if (sizes.empty()) throw ConfigError("no learning-curve sizes given");

  CurveParams params;
  params.context = cfg.context();
  params.lexicon = cfg.lexicon_params();
  params.schedule = cfg.schedule();
  params.init_range = cfg.init_range;
  params.alt_margin = cfg.alt_margin;
  auto points = learning_curve(train_set, sizes, params, eval_set);
  write_file(cfg.output_path.empty() ? "curve.tsv" : cfg.output_path,
             [&](std::ostream& out) {
               for (const auto& [size, acc] : points)
                 out << size << '\t' << format_real(acc, 9) << '\n';
             });
  for (const auto& [size, acc] : points)
    std::cout << size << '\t' << format_real(acc, 9) << '\n';
  return 0;
}

int cmd_inspect(const RunConfig& cfg, const std::string& word) {
  Lexicon lexicon = load_lexicon(cfg);
  const TagSet& tagset = lexicon.tagset();
  auto print_vector = [&](const TagProbVector& v) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] > 0)
        std::cout << ' ' << tagset.name(i) << '=' << format_real(v[i], 4);
    std::cout << '\n';
  };

  if (const TagProbVector* p = lexicon.fullform().find(word)) {
    std::cout << "fullform hit:";
    print_vector(*p);
    return 0;
  }
  std::string lower = to_lower(word);
  if (lower != word) {
    if (const TagProbVector* p = lexicon.fullform().find(lower)) {
      std::cout << "fullform hit (lowercased):";
      print_vector(*p);
      return 0;
    }
  }
  std::cout << "suffix tree walk (characters from the end of '" << word
            << "'):\n";
  std::vector<char32_t> cps = utf8_decode(word);
  const SuffixNode* node = &lexicon.suffix_tree();
  for (size_t d = 0; d < cps.size(); ++d) {
    char32_t c = cps[cps.size() - 1 - d];
    const SuffixNode* next = node->find_child(c);
    bool via_default = false;
    if (!next) {
      next = node->default_child();
      via_default = next != nullptr;
    }
    if (!next) {
      std::cout << "  no branch for '" << utf8_encode(c)
                << "' -> default entry:";
      print_vector(lexicon.default_entry());
      return 0;
    }
    node = next;
    std::cout << "  depth " << d + 1 << ": "
              << (via_default ? "<DEFAULT>" : utf8_encode(c));
    if (node->is_leaf()) {
      std::cout << " (leaf):";
      print_vector(*node->probs);
      return 0;
    }
    std::cout << '\n';
  }
  std::cout << "  characters exhausted at internal node -> default entry:";
  print_vector(lexicon.default_entry());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neural part-of-speech tagger"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  // Collected as strings so that file-loaded values and explicit flags
  // share one override path (flags win).
  std::vector<std::pair<std::string, std::string>> overrides;
  auto add_option = [&](CLI::App* cmd, const std::string& key,
                        const std::string& desc) {
    cmd->add_option_function<std::string>(
        "--" + key,
        [&overrides, key](const std::string& v) {
          overrides.emplace_back(key, v);
        },
        desc);
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key = value config file");
    for (const char* key :
         {"corpus", "tagset", "lexicon", "model", "output", "preceding",
          "following", "hidden", "learning_rate", "momentum",
          "error_threshold", "seed", "init_range", "total_cycles",
          "forcing_cycles", "log_interval", "max_suffix_len",
          "gain_threshold", "prune_threshold", "alt_margin", "scores"})
      add_option(cmd, key, "config key " + std::string(key));
  };

  CLI::App* build = app.add_subcommand("build-lexicon",
                                       "build the three-tier lexicon");
  CLI::App* train_cmd = app.add_subcommand("train", "train the network");
  CLI::App* tag_cmd = app.add_subcommand("tag", "tag a word file");
  std::string tag_input;
  tag_cmd->add_option("input", tag_input, "one word per line, blank = EOS")
      ->required();
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate tagged output");
  std::string gold_path, tagged_path;
  eval_cmd->add_option("gold", gold_path, "gold vertical corpus")->required();
  eval_cmd->add_option("tagged", tagged_path, "tagged output file")
      ->required();
  CLI::App* curve_cmd =
      app.add_subcommand("learning-curve", "accuracy vs training size");
  std::string sizes_arg;
  size_t curve_test_tokens = 0;
  curve_cmd->add_option("--sizes", sizes_arg, "comma-separated token counts")
      ->required();
  curve_cmd->add_option("--test-tokens", curve_test_tokens,
                        "tokens held out for evaluation")
      ->required();
  CLI::App* inspect_cmd =
      app.add_subcommand("inspect", "dump the suffix-trie path for a word");
  std::string inspect_word;
  inspect_cmd->add_option("word", inspect_word, "word to look up")->required();

  for (CLI::App* cmd :
       {build, train_cmd, tag_cmd, eval_cmd, curve_cmd, inspect_cmd})
    add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file: " + config_path);
      cfg.load_file(in);
    }
    for (const auto& [key, value] : overrides) cfg.apply(key, value);
    cfg.validate();
    std::cout << "# resolved config\n";
    {
      std::ostringstream resolved;
      cfg.print_resolved(resolved);
      std::istringstream lines(resolved.str());
      std::string l;
      while (std::getline(lines, l)) std::cout << "#   " << l << '\n';
    }

    if (*build) return cmd_build_lexicon(cfg);
    if (*train_cmd) return cmd_train(cfg);
    if (*tag_cmd) return cmd_tag(cfg, tag_input);
    if (*eval_cmd) return cmd_eval(cfg, gold_path, tagged_path);
    if (*curve_cmd)
      return cmd_learning_curve(cfg, sizes_arg, curve_test_tokens);
    if (*inspect_cmd) return cmd_inspect(cfg, inspect_word);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
