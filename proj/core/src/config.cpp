#include "nettag/config.hpp"

#include <cstdlib>
#include <istream>
#include <ostream>

#include "nettag/error.hpp"
#include "nettag/text.hpp"

namespace nettag {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("config key '" + key + "': bad number '" + value + "'");
  return v;
}

uint64_t parse_uint(const std::string& key, const std::string& value) {
  char* end = nullptr;
  unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' ||
      value.find('-') != std::string::npos)
    throw ConfigError("config key '" + key + "': bad count '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "': bad boolean '" + value + "'");
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value) {
  if (key == "corpus") corpus_path = value;
  else if (key == "tagset") tagset_path = value;
  else if (key == "lexicon") lexicon_path = value;
  else if (key == "model") model_path = value;
  else if (key == "output") output_path = value;
  else if (key == "preceding") preceding = parse_uint(key, value);
  else if (key == "following") following = parse_uint(key, value);
  else if (key == "hidden") hidden = parse_uint(key, value);
  else if (key == "learning_rate") learning_rate = parse_double(key, value);
  else if (key == "momentum") momentum = parse_double(key, value);
  else if (key == "error_threshold") error_threshold = parse_double(key, value);
  else if (key == "seed") seed = parse_uint(key, value);
  else if (key == "init_range") init_range = parse_double(key, value);
  else if (key == "total_cycles") total_cycles = parse_uint(key, value);
  else if (key == "forcing_cycles") {
    forcing_cycles = parse_uint(key, value);
    forcing_cycles_set = true;
  }
  else if (key == "log_interval") log_interval = parse_uint(key, value);
  else if (key == "max_suffix_len") max_suffix_len = parse_uint(key, value);
  else if (key == "gain_threshold") gain_threshold = parse_double(key, value);
  else if (key == "prune_threshold") prune_threshold = parse_double(key, value);
  else if (key == "alt_margin") alt_margin = parse_double(key, value);
  else if (key == "scores") emit_scores = parse_bool(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::load_file(std::istream& in) {
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    apply(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

void RunConfig::validate() const {
  if (learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
  if (momentum < 0.0 || momentum >= 1.0)
    throw ConfigError("momentum must be in [0, 1)");
  if (error_threshold < 0.0)
    throw ConfigError("error_threshold must be >= 0");
  if (init_range < 0.0) throw ConfigError("init_range must be >= 0");
  if (max_suffix_len == 0) throw ConfigError("max_suffix_len must be > 0");
  if (prune_threshold < 0.0 || prune_threshold > 1.0)
    throw ConfigError("prune_threshold must be in [0, 1]");
  if (alt_margin < 0.0) throw ConfigError("alt_margin must be >= 0");
  if (forcing_cycles_set && forcing_cycles > total_cycles)
    throw ConfigError("forcing_cycles must be <= total_cycles");
}

TrainingSchedule RunConfig::schedule() const {
  TrainingSchedule s;
  s.total_cycles = total_cycles;
  s.forcing_cycles = forcing_cycles_set ? forcing_cycles : total_cycles / 2;
  s.log_interval = log_interval;
  s.hyperparams = hyperparams();
  return s;
}

void RunConfig::print_resolved(std::ostream& out) const {
  out << "corpus = " << corpus_path << '\n';
  out << "tagset = " << tagset_path << '\n';
  out << "lexicon = " << lexicon_path << '\n';
  out << "model = " << model_path << '\n';
  out << "output = " << output_path << '\n';
  out << "preceding = " << preceding << '\n';
  out << "following = " << following << '\n';
  out << "hidden = " << hidden << '\n';
  out << "learning_rate = " << format_real(learning_rate, 17) << '\n';
  out << "momentum = " << format_real(momentum, 17) << '\n';
  out << "error_threshold = " << format_real(error_threshold, 17) << '\n';
  out << "seed = " << seed << '\n';
  out << "init_range = " << format_real(init_range, 17) << '\n';
  out << "total_cycles = " << total_cycles << '\n';
  out << "forcing_cycles = "
      << (forcing_cycles_set ? forcing_cycles : total_cycles / 2) << '\n';
  out << "log_interval = " << log_interval << '\n';
  out << "max_suffix_len = " << max_suffix_len << '\n';
  out << "gain_threshold = " << format_real(gain_threshold, 17) << '\n';
  out << "prune_threshold = " << format_real(prune_threshold, 17) << '\n';
  out << "alt_margin = " << format_real(alt_margin, 17) << '\n';
  out << "scores = " << (emit_scores ? "true" : "false") << '\n';
}

}  // namespace nettag
