// End-to-end checks of the command-line interface and its file formats.
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const char* kToyCorpus =
    "The\tDT\n"
    "dog\tNN\n"
    "runs\tVB\n"
    "\n"
    "The\tDT\n"
    "cat\tNN\n"
    "sleeps\tVB\n"
    "\n";

const char* kToyTagset = "DT\nNN\topen\nVB\topen\n";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("nettag_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  std::string cmd = std::string(NETTAG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("build-lexicon / train / tag / eval pipeline") {
  TempDir dir;
  write(dir.file("corpus.tsv"), kToyCorpus);
  write(dir.file("tagset.txt"), kToyTagset);
  write(dir.file("words.txt"), "The\ndog\nsleeps\n\n");

  std::string common = "--corpus " + dir.file("corpus.tsv") + " --tagset " +
                       dir.file("tagset.txt") + " --lexicon " +
                       dir.file("lex.txt");
  REQUIRE(run("build-lexicon " + common) == 0);
  CHECK(slurp(dir.file("lex.txt")).rfind("netlex 1\n", 0) == 0);

  REQUIRE(run("train " + common + " --model " + dir.file("model.txt") +
              " --total_cycles 300 --seed 5") == 0);
  CHECK(slurp(dir.file("model.txt")).rfind("netmodel 1\n", 0) == 0);

  REQUIRE(run("tag " + dir.file("words.txt") + " " + common + " --model " +
              dir.file("model.txt") + " --output " + dir.file("out.tsv")) ==
          0);
  std::string tagged = slurp(dir.file("out.tsv"));
  CHECK(tagged.find("The\t") == 0);
  // one line per word plus the sentence-boundary blank
  CHECK(std::count(tagged.begin(), tagged.end(), '\n') == 4);

  REQUIRE(run("eval " + dir.file("corpus.tsv") + " " + dir.file("corpus.tsv") +
              " --output " + dir.file("report")) == 0);
  std::string kv = slurp(dir.file("report.tsv"));
  CHECK(kv.find("accuracy\t1\n") != std::string::npos);
  CHECK(fs::exists(dir.file("report.txt")));
  CHECK(fs::exists(dir.file("report.confusion.tsv")));
}

TEST_CASE("identical inputs give byte-identical outputs") {
  TempDir dir;
  write(dir.file("corpus.tsv"), kToyCorpus);
  write(dir.file("tagset.txt"), kToyTagset);
  std::string common = "--corpus " + dir.file("corpus.tsv") + " --tagset " +
                       dir.file("tagset.txt");
  REQUIRE(run("build-lexicon " + common + " --lexicon " + dir.file("a.lex")) ==
          0);
  REQUIRE(run("build-lexicon " + common + " --lexicon " + dir.file("b.lex")) ==
          0);
  CHECK(slurp(dir.file("a.lex")) == slurp(dir.file("b.lex")));

  std::string lex = " --lexicon " + dir.file("a.lex");
  REQUIRE(run("train " + common + lex + " --model " + dir.file("m1.txt") +
              " --total_cycles 200 --seed 9") == 0);
  REQUIRE(run("train " + common + lex + " --model " + dir.file("m2.txt") +
              " --total_cycles 200 --seed 9") == 0);
  CHECK(slurp(dir.file("m1.txt")) == slurp(dir.file("m2.txt")));
}

TEST_CASE("train with zero cycles writes the seeded initialization") {
  TempDir dir;
  write(dir.file("corpus.tsv"), kToyCorpus);
  write(dir.file("tagset.txt"), kToyTagset);
  std::string common = "--corpus " + dir.file("corpus.tsv") + " --tagset " +
                       dir.file("tagset.txt") + " --lexicon " +
                       dir.file("lex.txt");
  REQUIRE(run("build-lexicon " + common) == 0);
  REQUIRE(run("train " + common + " --model " + dir.file("m.txt") +
              " --total_cycles 0 --seed 3") == 0);
  CHECK(slurp(dir.file("m.txt")).rfind("netmodel 1\n18 0 3\n", 0) == 0);
}

TEST_CASE("empty tag input produces empty output and exit 0") {
  TempDir dir;
  write(dir.file("corpus.tsv"), kToyCorpus);
  write(dir.file("tagset.txt"), kToyTagset);
  write(dir.file("empty.txt"), "");
  std::string common = "--corpus " + dir.file("corpus.tsv") + " --tagset " +
                       dir.file("tagset.txt") + " --lexicon " +
                       dir.file("lex.txt");
  REQUIRE(run("build-lexicon " + common) == 0);
  REQUIRE(run("train " + common + " --model " + dir.file("m.txt") +
              " --total_cycles 0") == 0);
  REQUIRE(run("tag " + dir.file("empty.txt") + " " + common + " --model " +
              dir.file("m.txt") + " --output " + dir.file("out.tsv")) == 0);
  CHECK(slurp(dir.file("out.tsv")).empty());
}

TEST_CASE("exit codes distinguish config and input errors") {
  TempDir dir;
  write(dir.file("corpus.tsv"), kToyCorpus);
  write(dir.file("closed.txt"), "DT\nNN\nVB\n");  // no open-class tags
  // configuration error -> exit 1
  CHECK(run("build-lexicon --corpus " + dir.file("corpus.tsv") + " --tagset " +
            dir.file("closed.txt") + " --lexicon " + dir.file("lex.txt")) ==
        1);
  // malformed corpus -> exit 2
  write(dir.file("bad.tsv"), "no tab here\n");
  write(dir.file("tagset.txt"), kToyTagset);
  CHECK(run("build-lexicon --corpus " + dir.file("bad.tsv") + " --tagset " +
            dir.file("tagset.txt") + " --lexicon " + dir.file("lex.txt")) ==
        2);
  // unknown model version -> exit 2
  write(dir.file("badmodel.txt"), "netmodel 7\n1 0 1\n");
  write(dir.file("words.txt"), "The\n");
  CHECK(run("build-lexicon --corpus " + dir.file("corpus.tsv") + " --tagset " +
            dir.file("tagset.txt") + " --lexicon " + dir.file("lex.txt")) ==
        0);
  CHECK(run("tag " + dir.file("words.txt") + " --lexicon " + dir.file("lex.txt") +
            " --model " + dir.file("badmodel.txt") + " --output " +
            dir.file("out.tsv")) == 2);
  // misaligned eval files -> exit 2
  write(dir.file("short.tsv"), "The\tDT\n\n");
  CHECK(run("eval " + dir.file("corpus.tsv") + " " + dir.file("short.tsv") +
            " --output " + dir.file("report")) == 2);
}

TEST_CASE("failed runs leave no partial output files") {
  TempDir dir;
  write(dir.file("bad.tsv"), "no tab here\n");
  write(dir.file("tagset.txt"), kToyTagset);
  CHECK(run("build-lexicon --corpus " + dir.file("bad.tsv") + " --tagset " +
            dir.file("tagset.txt") + " --lexicon " + dir.file("lex.txt")) ==
        2);
  CHECK(!fs::exists(dir.file("lex.txt")));
  CHECK(!fs::exists(dir.file("lex.txt.tmp")));
}

TEST_CASE("inspect walks the suffix trie") {
  TempDir dir;
  write(dir.file("corpus.tsv"), kToyCorpus);
  write(dir.file("tagset.txt"), kToyTagset);
  std::string common = "--corpus " + dir.file("corpus.tsv") + " --tagset " +
                       dir.file("tagset.txt") + " --lexicon " +
                       dir.file("lex.txt");
  REQUIRE(run("build-lexicon " + common) == 0);
  CHECK(run("inspect dog --lexicon " + dir.file("lex.txt")) == 0);
  CHECK(run("inspect warbles --lexicon " + dir.file("lex.txt")) == 0);
}

TEST_CASE("learning-curve writes size/accuracy pairs") {
  TempDir dir;
  std::ostringstream corpus;
  for (int i = 0; i < 60; ++i) corpus << kToyCorpus;
  write(dir.file("corpus.tsv"), corpus.str());
  write(dir.file("tagset.txt"), kToyTagset);
  REQUIRE(run("learning-curve --corpus " + dir.file("corpus.tsv") +
              " --tagset " + dir.file("tagset.txt") +
              " --sizes 30,120 --test-tokens 60 --total_cycles 500"
              " --output " + dir.file("curve.tsv")) == 0);
  std::string curve = slurp(dir.file("curve.tsv"));
  CHECK(curve.find("30\t") == 0);
  CHECK(curve.find("\n120\t") != std::string::npos);
}
