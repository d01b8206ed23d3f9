// Acceptance suite: one line per criterion, "PASS" or "FAIL (reason)".
// Exits nonzero when any criterion fails. Criteria:
//   1 golden generation     — the three flagship sentences, byte-exact, < 1 s
//   2 golden traces         — level-2 firing sequences and level-3 paradigm outcomes
//   3 corpus F-measure      — full fixture suite >= 0.90 aggregate, flagships 1.0
//   4 property suite        — round-trip, determinism, progress, termination,
//                             LCS oracle, F symmetry/bounds, affix length law
//   5 rule-language coverage— the shipped grammar and rule spelling corpus parse
//   6 CLI contract          — exit codes 0/1/2 on scripted scenarios

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "unlgen/engine.hpp"
#include "unlgen/eval.hpp"
#include "unlgen/fixtures.hpp"
#include "unlgen/grammar.hpp"
#include "unlgen/lexicon.hpp"
#include "unlgen/morphology.hpp"
#include "unlgen/text.hpp"
#include "unlgen/unl.hpp"

#ifndef UNLGEN_SOURCE_DIR
#error "acceptance suite needs UNLGEN_SOURCE_DIR"
#endif
#ifndef UNLGEN_CLI_PATH
#error "acceptance suite needs UNLGEN_CLI_PATH"
#endif

namespace fs = std::filesystem;
using namespace unlgen;
using Clock = std::chrono::steady_clock;

namespace {

struct Context {
  fixtures::FixtureSuite suite;
  lexicon::Lexicon lexicon;
  grammar::Grammar grammar;
};

Context load_context() {
  Context ctx;
  ctx.suite = fixtures::load_fixture_suite(fs::path(UNLGEN_SOURCE_DIR) / "fixtures");
  ctx.lexicon =
      lexicon::parse_dictionary(text::read_text_file(ctx.suite.dictionary_path))
          .lexicon;
  ctx.grammar =
      grammar::parse_grammar(text::read_text_file(ctx.suite.grammar_path)).grammar;
  return ctx;
}

engine::GenerateResult run_case(const Context& ctx, const fixtures::GoldenCase& gc,
                                int trace_level = 0) {
  auto doc = unl::parse_document(gc.unl_text);
  engine::EngineCaps caps;
  caps.trace_level = trace_level;
  return engine::generate(doc, ctx.lexicon, ctx.grammar, caps);
}

const fixtures::GoldenCase& find_case(const Context& ctx, const std::string& name) {
  for (const auto& gc : ctx.suite.cases)
    if (gc.name == name) return gc;
  throw std::runtime_error("missing fixture case " + name);
}

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// criterion 1: golden generation
// ---------------------------------------------------------------------------

void criterion_golden_generation(const Context& ctx) {
  auto start = Clock::now();
  const struct {
    const char* name;
    const char* expected;
  } golden[] = {
      {"verb_present_perfect", "ਉਹ ਪਹੁੰਚ ਚੁੱਕਾ ਹੈ"},
      {"pronoun_reciprocal", "ਉਹ ਇਕ ਦੂਜੇ ਨੂੰ ਪਿਆਰ ਕਰਦੇ ਹਨ"},
      {"determiner_multal_possessive", "ਉਹਨਾਂ ਦੀਆਂ ਬਹੁਤ ਕਿਤਾਬਾਂ"},
  };
  for (const auto& g : golden) {
    auto result = run_case(ctx, find_case(ctx, g.name));
    require(result.text == text::nfc(g.expected),
            std::string(g.name) + " produced '" + result.text + "'");
    require(!result.cap_exceeded && !result.unresolved_relations,
            std::string(g.name) + " did not converge cleanly");
  }
  double elapsed = seconds_since(start);
  require(elapsed < 1.0, "golden generation took " + std::to_string(elapsed) + " s");
}

// ---------------------------------------------------------------------------
// criterion 2: golden traces
// ---------------------------------------------------------------------------

void criterion_golden_traces(const Context& ctx) {
  const struct {
    const char* name;
    std::vector<std::size_t> sequence;
  } golden[] = {
      {"verb_present_perfect", {0, 1, 3, 4, 14, 19, 19}},
      {"pronoun_reciprocal", {1, 13, 15, 16, 19}},
      {"determiner_multal_possessive", {1, 2, 17, 18, 19, 19}},
  };
  for (const auto& g : golden) {
    const auto& gc = find_case(ctx, g.name);
    require(gc.has_trace, std::string(g.name) + " has no frozen trace");
    require(gc.expected_rule_sequence == g.sequence,
            std::string(g.name) + " frozen trace diverged from the recorded sequence");
    auto result = run_case(ctx, gc, 2);
    std::vector<std::size_t> fired;
    for (const auto& ev : result.events) fired.push_back(ev.rule_index);
    require(fired == g.sequence, std::string(g.name) + " fired a different sequence");
    std::vector<std::string> firing_lines;
    for (const auto& line : result.trace)
      if (!line.empty() && line[0] == '#') firing_lines.push_back(line);
    require(firing_lines == gc.expected_trace_lines,
            std::string(g.name) + " level-2 trace lines changed");
  }

  // level 3 records the silent paradigm outcomes: the pronoun stays bare in
  // the verb and pronoun sentences
  for (const char* name : {"verb_present_perfect", "pronoun_reciprocal"}) {
    auto result = run_case(ctx, find_case(ctx, name), 3);
    bool silent_pronoun = false;
    for (const auto& ev : result.events)
      for (const auto& rec : ev.inflections)
        if (!rec.matched_case && rec.before == "ਉਹ" && rec.after == "ਉਹ")
          silent_pronoun = true;
    require(silent_pronoun, std::string(name) + " lost the no-append outcome");
    bool rendered = false;
    for (const auto& line : result.trace)
      if (line.find("flx: no case matched") != std::string::npos) rendered = true;
    require(rendered, std::string(name) + " did not render the no-append outcome");
  }
}

// ---------------------------------------------------------------------------
// criterion 3: corpus F-measure
// ---------------------------------------------------------------------------

void criterion_f_measure(const Context& ctx) {
  require(ctx.suite.cases.size() >= 12,
          "fixture suite has only " + std::to_string(ctx.suite.cases.size()) +
              " cases");
  std::vector<eval::SentencePair> pairs;
  for (const auto& gc : ctx.suite.cases)
    pairs.push_back({gc.name, run_case(ctx, gc).text, gc.expected_output});
  auto report = eval::evaluate_corpus(pairs);
  require(report.aggregate_f >= 0.90,
          "aggregate F " + std::to_string(report.aggregate_f) + " < 0.90");
  for (const char* name :
       {"verb_present_perfect", "pronoun_reciprocal", "determiner_multal_possessive"}) {
    for (const auto& s : report.per_sentence)
      if (s.id == name)
        require(s.f == 1.0, std::string(name) + " scored " + std::to_string(s.f));
  }
}

// ---------------------------------------------------------------------------
// criterion 4: property suite
// ---------------------------------------------------------------------------

void property_roundtrip() {
  std::mt19937 rng(424242);
  for (int i = 0; i < 1000; ++i) {
    std::string textv = test_support::random_unl_text(rng);
    auto doc = unl::parse_document(textv);
    auto again = unl::parse_document(unl::serialize(doc));
    require(unl::serialize(doc) == unl::serialize(again),
            "round-trip mismatch on fuzzed document " + std::to_string(i));
  }
}

void property_determinism(const Context& ctx) {
  for (const auto& gc : ctx.suite.cases) {
    auto a = run_case(ctx, gc, 3);
    auto b = run_case(ctx, gc, 3);
    require(a.text == b.text && a.trace == b.trace,
            gc.name + " generation is not deterministic");
  }
}

void property_progress(const Context& ctx) {
  for (const auto& gc : ctx.suite.cases) {
    auto result = run_case(ctx, gc);
    require(result.firing_count > 0 && result.firing_count < 50,
            gc.name + " fired " + std::to_string(result.firing_count) + " times");
    for (const auto& ev : result.events)
      require(ev.before_hash != ev.after_hash,
              gc.name + " step " + std::to_string(ev.step) + " changed nothing");
  }
}

void property_termination() {
  auto g = grammar::parse_grammar("(%x,A):=(%x,-A,+B);\n(%x,B):=(%x,-B,+A);");
  auto dict = lexicon::parse_dictionary("[ex] \"x\" (A);\n[wy] \"y\" (C);\n");
  auto doc = unl::parse_document("{unl}\nagt(x:01, y:02)\n{/unl}");
  std::vector<Diagnostic> diags;
  auto state = engine::init_state(doc, dict.lexicon, diags);
  engine::EngineCaps caps;
  caps.max_firings = 10;
  auto outcome = engine::run(std::move(state), g.grammar, caps);
  require(outcome.cap_exceeded, "cyclic grammar did not report the cap");
  require(outcome.firing_count == 10,
          "cyclic grammar fired " + std::to_string(outcome.firing_count) +
              " instead of exactly 10");
}

void property_lcs_oracle() {
  // exhaustive to length 4 over three symbols, then a seeded sample to 8
  std::vector<std::vector<std::string>> all = {{}};
  std::vector<std::vector<std::string>> frontier = {{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& prefix : frontier)
      for (char c : {'a', 'b', 'c'}) {
        auto e = prefix;
        e.push_back(std::string(1, c));
        next.push_back(e);
        all.push_back(e);
      }
    frontier = std::move(next);
  }
  for (const auto& a : all)
    for (const auto& b : all)
      require(eval::lcs_length(a, b) == test_support::lcs_bruteforce(a, b),
              "LCS oracle disagreement (exhaustive)");
  std::mt19937 rng(31337);
  for (int i = 0; i < 30000; ++i) {
    auto a = test_support::random_tokens(rng, 8);
    auto b = test_support::random_tokens(rng, 8);
    require(eval::lcs_length(a, b) == test_support::lcs_bruteforce(a, b),
            "LCS oracle disagreement (sampled)");
  }
}

void property_f_symmetry() {
  std::mt19937 rng(777);
  const auto join = [](const std::vector<std::string>& toks) {
    std::string out;
    for (const auto& t : toks) {
      if (!out.empty()) out += " ";
      out += t;
    }
    return out;
  };
  for (int i = 0; i < 10000; ++i) {
    std::string a = join(test_support::random_tokens(rng, 6));
    std::string b = join(test_support::random_tokens(rng, 6));
    double ab = eval::f_measure(a, b);
    require(ab == eval::f_measure(b, a), "F-measure asymmetry");
    require(ab >= 0.0 && ab <= 1.0, "F-measure out of bounds");
  }
}

void property_affix_law() {
  std::mt19937 rng(2718);
  for (int i = 0; i < 5000; ++i) {
    std::string surface = test_support::random_gurmukhi(rng, 12);
    std::string append = test_support::random_gurmukhi(rng, 6);
    std::size_t len = text::scalar_count(surface);
    std::uniform_int_distribution<std::size_t> strip(0, len);
    grammar::AffixOp op{static_cast<int>(strip(rng)), append};
    std::string result = morphology::apply_affix(surface, op);
    require(text::scalar_count(result) ==
                len - static_cast<std::size_t>(op.strip) + text::scalar_count(append),
            "affix length law violated");
  }
}

void criterion_properties(const Context& ctx) {
  const struct {
    const char* name;
    std::function<void()> run;
  } properties[] = {
      {"round-trip", [] { property_roundtrip(); }},
      {"determinism", [&] { property_determinism(ctx); }},
      {"progress", [&] { property_progress(ctx); }},
      {"termination", [] { property_termination(); }},
      {"lcs-oracle", [] { property_lcs_oracle(); }},
      {"f-symmetry", [] { property_f_symmetry(); }},
      {"affix-law", [] { property_affix_law(); }},
  };
  for (const auto& p : properties) {
    auto start = Clock::now();
    p.run();
    double elapsed = seconds_since(start);
    if (elapsed >= 10.0)
      throw Failure(std::string(p.name) + " took " + std::to_string(elapsed) + " s");
  }
}

// ---------------------------------------------------------------------------
// criterion 5: rule-language coverage
// ---------------------------------------------------------------------------

void criterion_rule_language(const Context& ctx) {
  auto parsed =
      grammar::parse_grammar(text::read_text_file(ctx.suite.grammar_path));
  require(parsed.grammar.trules.size() == 20,
          "shipped grammar rule count changed: " +
              std::to_string(parsed.grammar.trules.size()));

  static const char* corpus[] = {
      R"grm((%x,M2):=(%x,- M2,+FLX(AGT:=0>"ਨੂੰ"));)grm",
      R"grm(agt(%a,V,@present,@perfect, ^PRS;%b,R):= agt(%a,+PER,+PRS,-@present;%b) ;)grm",
      R"grm(agt(%a,^MCL;%b,R,@male):= agt(%a,+MCL,- NUM,+NUM=SNG; %b,-@male);)grm",
      R"grm(agt(%a,V;%b,R):=(%b)(" ")(%a);)grm",
      R"grm(({N V D J R},FLX,^inflected,%x):=(!FLX,-FLX,+inflected,%x);)grm",
      R"grm(({N V D},FLX,^inflected,%x):=(!FLX,-FLX,+inflected,%x);)grm",
      R"grm(agt(%a,V,@reciprocal;%b,@3,@pl):=(%b)(" ")(%a,PER=3PS,+PLR);)grm",
      R"grm((V,@reciprocal,%x):= ("ਇਕ ਦੂਜੇ ਨੂੰ")(%x,-@reciprocal);)grm",
      R"grm((V,@present,ATE=INF,PER=3PS,NUM=PLR,%x):=(%x,@present)("ਕਰਦੇ ਹਨ");)grm",
      R"grm((%x,M2):=(%x,-M2,+FLX(SNG:=0>""; PLR:=0>"ਨਾਂ"));)grm",
      R"grm((%x,M3):=(%x,M3,+FLX(SNG:=0>""; PLR:=0>"ਾਂ"));)grm",
      R"grm(pos(%a,FEM,N,@multal;%b,@3,@pl,POD):= (%b,+PLR)(" ਦੀਆਂ ") (%a);)grm",
      R"grm((N,@multal,%a):= ("ਬਹੁਤ ") (%a,-@multal,-NUM, +NUM=PLR);)grm",
      R"grm((%x,M7):=(%x,-M7,+FLX(PST&SNG&MCL&^PGS&^ANT:=0>"ਗਿਆ ਸੀ"; PST&SNG&FEM&^PGS&^ANT:=0>"ਗਈ ਸੀ"; PST&PLR&FEM&^ANT:=0>"ਗਈਆਂ ਸਨ"; PST&PLR&MCL:=0>" ਗਏ ਸਨ"; PRs&SNG&MCL&^PGS&^PER:= 0>"ਦਾ ਹੈ"; PRs&SNG&FEM&^PGS&^PER:= 0>"ਦੀ ਹੈ"; PRs&PLR&FEM:=0>" ਦਿਆ ਹਨ"; PRs&PLR&MCL:=0>" ਦੇ ਹਨ"; PRs&SNG&FEM&^PGS&^PER:= 0>"ਦੀ ਹੈ"; PRs&PLR&FEM:=0>" ਦਿਆ ਹਨ"; PRs&PLR&MCL:=0>" ਦੇ ਹਨ"; PRs&SNG&MCL&PGS:=0>" ਰਿਹਾ ਹੈ"; PRs&SNG&FEM&PGS:=0>" ਰਹੀ ਹੈ"; PRs&PLR&FEM&PGS:=0>" ਰਹੀਆਂ ਹਨ"; PRs&PLR&MCL&PGS:=0>" ਰਹੇ ਹਨ"; PST&SNG&MCL&PGS:=0>" ਰਿਹਾ ਸੀ"; PST&SNG&FEM&PGS:=0>" ਰਹੀ ਸੀ"; PST&PLR&FEM&PGS:=0>" ਰਹੀਆਂ ਸਨ"; PST&PLR&MCL&PGS:=0>" ਰਹੇ ਸਨ"; {PST&MCL&SNG&ANT}:=0>" ਚੁੱਕਾ ਸੀ"; {PST&FEM&SNG&ANT}:=0> "ਚੁੱਕੀ ਸੀ"; {PST&MCL&PLR&ANT}:=0>" ਚੁੱਕੇ ਸਨ"; {PST&FEM&PLR&ANT}:=0>" ਚੁੱਕੀਆਂ ਸਨ"; {PER&PRs&MCL&SNG}:=0>" ਚੁੱਕਾ ਹੈ"; {PER&PRS&FEM&SNG}:=0>" ਚੁੱਕੀ ਹੈ"; {PER&FUT&MCL&SNG}:=0>" ਚੁੱਕਾ ਹੋਵੇਗਾ"; {PER&FUT&FEM&SNG}:=0>" ਚੁੱਕੀ ਹੋਵੇਗੀ"; {FUT&MCL&PGS&SNG}:=0>" ਚਿਹਾ ਹੋਵੇਗਾ"; {FUT&FEM&PGS&SNG}:=0>" ਚਿਹਾ ਹੋਵੇਗੀ";{FUT&MCL&SNG} :=0>"ੇਗਾ"; FUT&FEM&SNG&^PGS&^PER& ^RES:=0>"ੇਗੀ";));)grm",
  };
  for (const char* textv : corpus) {
    auto one = grammar::parse_grammar(textv);
    require(one.grammar.trules.size() == 1,
            "rule did not parse: " + std::string(textv).substr(0, 40));
  }
}

// ---------------------------------------------------------------------------
// criterion 6: CLI contract
// ---------------------------------------------------------------------------

int run_shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_cli(const Context& ctx) {
  fs::path dir = fs::temp_directory_path() / "unlgen_acceptance";
  fs::create_directories(dir);
  std::string cli = UNLGEN_CLI_PATH;
  std::string fixture_flags = " --dict " + ctx.suite.dictionary_path.string() +
                              " --grammar " + ctx.suite.grammar_path.string();

  fs::path unl = fs::path(UNLGEN_SOURCE_DIR) / "fixtures" / "cases" /
                 "verb_present_perfect.unl";
  int clean = run_shell(cli + " generate --unl " + unl.string() + fixture_flags +
                        " > " + (dir / "ok.txt").string() + " 2> /dev/null");
  require(clean == 0, "clean run exited " + std::to_string(clean));
  require(text::read_text_file(dir / "ok.txt") == "ਉਹ ਪਹੁੰਚ ਚੁੱਕਾ ਹੈ\n",
          "clean run printed the wrong sentence");

  fs::path bad_grm = dir / "broken.grm";
  text::write_text_file(bad_grm, "(%x,V):=(%x,+FLX(;\n");
  int broken = run_shell(cli + " generate --unl " + unl.string() + " --dict " +
                         ctx.suite.dictionary_path.string() + " --grammar " +
                         bad_grm.string() + " > /dev/null 2> /dev/null");
  require(broken == 1, "malformed grammar exited " + std::to_string(broken));

  fs::path loop_unl = dir / "loop.unl";
  fs::path loop_dic = dir / "loop.dic";
  fs::path loop_grm = dir / "loop.grm";
  text::write_text_file(loop_unl, "{unl}\nagt(x:01, y:02)\n{/unl}\n");
  text::write_text_file(loop_dic, "[ex] \"x\" (A);\n[wy] \"y\" (C);\n");
  text::write_text_file(loop_grm, "(%x,A):=(%x,-A,+B);\n(%x,B):=(%x,-B,+A);\n");
  int capped = run_shell(cli + " generate --unl " + loop_unl.string() + " --dict " +
                         loop_dic.string() + " --grammar " + loop_grm.string() +
                         " --max-firings 10 > /dev/null 2> /dev/null");
  require(capped == 2, "capped loop exited " + std::to_string(capped));
}

}  // namespace

int main() {
  int failures = 0;
  Context ctx;
  try {
    ctx = load_context();
  } catch (const std::exception& e) {
    std::cout << "criterion 0 (fixture load): FAIL (" << e.what() << ")\n";
    return 1;
  }

  const struct {
    int number;
    const char* name;
    std::function<void()> run;
  } criteria[] = {
      {1, "golden generation", [&] { criterion_golden_generation(ctx); }},
      {2, "golden traces", [&] { criterion_golden_traces(ctx); }},
      {3, "corpus F-measure", [&] { criterion_f_measure(ctx); }},
      {4, "property suite", [&] { criterion_properties(ctx); }},
      {5, "rule-language coverage", [&] { criterion_rule_language(ctx); }},
      {6, "CLI contract", [&] { criterion_cli(ctx); }},
  };
  for (const auto& c : criteria) {
    try {
      c.run();
      std::cout << "criterion " << c.number << " (" << c.name << "): PASS\n";
    } catch (const std::exception& e) {
      std::cout << "criterion " << c.number << " (" << c.name << "): FAIL ("
                << e.what() << ")\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
