// unlgen — batch deconversion of UNL semantic networks into natural-language
// text, driven by a dictionary and a transformation grammar.
//
// Exit codes: 0 success, 1 input error, 2 generation incomplete (firing cap
// or unresolved relations). Generated text and scores go to stdout; traces
// and diagnostics go to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "unlgen/engine.hpp"
#include "unlgen/eval.hpp"
#include "unlgen/grammar.hpp"
#include "unlgen/lexicon.hpp"
#include "unlgen/text.hpp"
#include "unlgen/unl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitIncomplete = 2;

int env_trace_level() {
  const char* env = std::getenv("UNLGEN_TRACE");
  if (!env) return 0;
  try {
    int level = std::stoi(env);
    return std::clamp(level, 0, 4);
  } catch (...) {
    return 0;
  }
}

void print_diagnostics(const std::vector<unlgen::Diagnostic>& diags,
                       const std::string& file) {
  for (const auto& d : diags)
    std::cerr << file << ":" << d.format() << "\n";
}

struct GenerateOptions {
  std::string unl_path;
  std::string dict_path;
  std::string grammar_path;
  std::string out_path;
  std::string trace_out;
  int trace_level = env_trace_level();
  int max_firings = 1000;
  bool keep_spaces = false;
};

int cmd_generate(const GenerateOptions& opt) {
  using namespace unlgen;

  std::vector<unl::Document> docs;
  lexicon::Lexicon lex;
  grammar::Grammar grm;
  try {
    docs = unl::parse_file(text::read_text_file(opt.unl_path));
    auto dict = lexicon::parse_dictionary(text::read_text_file(opt.dict_path));
    print_diagnostics(dict.diagnostics, opt.dict_path);
    lex = std::move(dict.lexicon);
    auto parsed = grammar::parse_grammar(text::read_text_file(opt.grammar_path));
    print_diagnostics(parsed.diagnostics, opt.grammar_path);
    grm = std::move(parsed.grammar);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!opt.out_path.empty()) {
    out_file.open(opt.out_path, std::ios::binary);
    if (!out_file) {
      std::cerr << "error: cannot open output file " << opt.out_path << "\n";
      return kExitInputError;
    }
    out = &out_file;
  }
  std::ofstream trace_file;
  std::ostream* trace = &std::cerr;
  if (!opt.trace_out.empty()) {
    trace_file.open(opt.trace_out, std::ios::binary);
    if (!trace_file) {
      std::cerr << "error: cannot open trace file " << opt.trace_out << "\n";
      return kExitInputError;
    }
    trace = &trace_file;
  }

  engine::EngineCaps caps;
  caps.max_firings = opt.max_firings;
  caps.trace_level = opt.trace_level;
  caps.collapse_spaces = !opt.keep_spaces;

  int exit_code = kExitOk;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    auto result = engine::generate(docs[i], lex, grm, caps);
    if (opt.trace_level >= 1 && docs.size() > 1)
      *trace << "== sentence " << (i + 1) << "\n";
    for (const auto& line : result.trace) *trace << line << "\n";
    for (const auto& d : result.diagnostics)
      *trace << opt.unl_path << ":" << d.format() << "\n";
    *out << result.text << "\n";
    if (result.cap_exceeded || result.unresolved_relations)
      exit_code = kExitIncomplete;
  }
  out->flush();
  trace->flush();
  return exit_code;
}

int cmd_eval(const std::string& candidate_path, const std::string& reference_path,
             const std::string& corpus_path) {
  using namespace unlgen;
  try {
    std::vector<eval::SentencePair> pairs;
    if (!corpus_path.empty()) {
      pairs = eval::parse_corpus(text::read_text_file(corpus_path));
    } else {
      pairs = eval::pair_files(text::read_text_file(candidate_path),
                               text::read_text_file(reference_path));
    }
    auto report = eval::evaluate_corpus(pairs);
    std::cout << eval::format_report(report);
    return kExitOk;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_check(const std::string& dict_path, const std::string& grammar_path,
              const std::string& relations_path, bool dump_ast_flag,
              bool dump_dict_flag) {
  using namespace unlgen;
  bool errors = false;
  try {
    auto dict = lexicon::parse_dictionary(text::read_text_file(dict_path));
    print_diagnostics(dict.diagnostics, dict_path);
    errors = errors || has_errors(dict.diagnostics);

    auto parsed = grammar::parse_grammar(text::read_text_file(grammar_path));
    print_diagnostics(parsed.diagnostics, grammar_path);
    errors = errors || has_errors(parsed.diagnostics);

    auto findings = grammar::lint(parsed.grammar, dict.lexicon);
    print_diagnostics(findings, grammar_path);
    errors = errors || has_errors(findings);

    if (!relations_path.empty()) {
      // load eagerly so a bad relations file is reported here
      auto labels = unl::load_relation_labels(relations_path);
      std::cerr << relations_path << ": " << labels.size()
                << " relation label(s) loaded\n";
    }
    if (dump_ast_flag) std::cout << grammar::dump_ast(parsed.grammar);
    if (dump_dict_flag) std::cout << lexicon::serialize_dictionary(dict.lexicon);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return errors ? kExitInputError : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unlgen — semantic-network deconversion into natural language"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate",
                                      "generate text from a .unl file");
  generate->add_option("--unl", gen.unl_path, "input .unl file")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--dict", gen.dict_path, "dictionary .dic file")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--grammar", gen.grammar_path, "grammar .grm file")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--out", gen.out_path, "write sentences here instead of stdout");
  generate->add_option("--trace", gen.trace_level, "trace level 0..4")
      ->check(CLI::Range(0, 4));
  generate->add_option("--trace-out", gen.trace_out,
                       "write the trace here instead of stderr");
  generate->add_option("--max-firings", gen.max_firings,
                       "rule-firing cap per sentence")
      ->check(CLI::PositiveNumber);
  generate->add_flag("--keep-spaces", gen.keep_spaces,
                     "disable the whitespace collapse pass");

  std::string eval_candidate, eval_reference, eval_corpus;
  auto* evalcmd = app.add_subcommand("eval",
                                     "score candidates against references");
  evalcmd->add_option("--candidate", eval_candidate, "candidate sentences, one per line")
      ->check(CLI::ExistingFile);
  evalcmd->add_option("--reference", eval_reference, "reference sentences, one per line")
      ->check(CLI::ExistingFile);
  evalcmd->add_option("--corpus", eval_corpus,
                      "tab-separated corpus: id, candidate, reference")
      ->check(CLI::ExistingFile);

  std::string check_dict, check_grammar, check_relations;
  bool dump_ast_flag = false, dump_dict_flag = false;
  auto* check = app.add_subcommand("check", "lint a dictionary and grammar");
  check->add_option("--dict", check_dict, "dictionary .dic file")
      ->required()
      ->check(CLI::ExistingFile);
  check->add_option("--grammar", check_grammar, "grammar .grm file")
      ->required()
      ->check(CLI::ExistingFile);
  check->add_option("--relations", check_relations, "relation-label data file")
      ->check(CLI::ExistingFile);
  check->add_flag("--dump-ast", dump_ast_flag, "print parsed rules in canonical form");
  check->add_flag("--dump-dict", dump_dict_flag, "print the parsed dictionary");

  CLI11_PARSE(app, argc, argv);

  if (generate->parsed()) return cmd_generate(gen);
  if (evalcmd->parsed()) {
    if (eval_corpus.empty() && (eval_candidate.empty() || eval_reference.empty())) {
      std::cerr << "error: eval needs --corpus or both --candidate and --reference\n";
      return kExitInputError;
    }
    return cmd_eval(eval_candidate, eval_reference, eval_corpus);
  }
  if (check->parsed())
    return cmd_check(check_dict, check_grammar, check_relations, dump_ast_flag,
                     dump_dict_flag);
  return kExitInputError;
}
