// Python bindings over the core: parsing, generation, linting and scoring.
// Inputs and outputs are plain python types; heavier integrations should
// call the C++ library directly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "unlgen/engine.hpp"
#include "unlgen/eval.hpp"
#include "unlgen/grammar.hpp"
#include "unlgen/lexicon.hpp"
#include "unlgen/unl.hpp"

namespace py = pybind11;
using namespace unlgen;

namespace {

py::dict result_to_dict(const engine::GenerateResult& result) {
  py::dict out;
  out["text"] = result.text;
  out["trace"] = result.trace;
  out["firing_count"] = result.firing_count;
  out["cap_exceeded"] = result.cap_exceeded;
  out["unresolved_relations"] = result.unresolved_relations;
  py::list diags;
  for (const auto& d : result.diagnostics) diags.append(d.format());
  out["diagnostics"] = diags;
  py::list sequence;
  for (const auto& ev : result.events) sequence.append(ev.rule_index);
  out["rule_sequence"] = sequence;
  return out;
}

engine::EngineCaps make_caps(int max_firings, int trace_level, bool collapse_spaces) {
  engine::EngineCaps caps;
  caps.max_firings = max_firings;
  caps.trace_level = trace_level;
  caps.collapse_spaces = collapse_spaces;
  return caps;
}

}  // namespace

PYBIND11_MODULE(unlgen, m) {
  m.doc() = "Deconversion of UNL semantic networks into natural-language text";

  m.def(
      "generate",
      [](const std::string& unl_text, const std::string& dict_text,
         const std::string& grammar_text, int max_firings, int trace_level,
         bool collapse_spaces) {
        auto doc = unl::parse_document(unl_text);
        auto dict = lexicon::parse_dictionary(dict_text);
        auto grm = grammar::parse_grammar(grammar_text);
        auto result = engine::generate(doc, dict.lexicon, grm.grammar,
                                       make_caps(max_firings, trace_level,
                                                 collapse_spaces));
        return result_to_dict(result);
      },
      py::arg("unl_text"), py::arg("dict_text"), py::arg("grammar_text"),
      py::arg("max_firings") = 1000, py::arg("trace_level") = 0,
      py::arg("collapse_spaces") = true,
      "Generate one sentence from a single {unl} block.");

  m.def(
      "generate_all",
      [](const std::string& unl_file_text, const std::string& dict_text,
         const std::string& grammar_text, int max_firings, int trace_level,
         bool collapse_spaces) {
        auto docs = unl::parse_file(unl_file_text);
        auto dict = lexicon::parse_dictionary(dict_text);
        auto grm = grammar::parse_grammar(grammar_text);
        py::list out;
        for (const auto& doc : docs)
          out.append(result_to_dict(engine::generate(
              doc, dict.lexicon, grm.grammar,
              make_caps(max_firings, trace_level, collapse_spaces))));
        return out;
      },
      py::arg("unl_file_text"), py::arg("dict_text"), py::arg("grammar_text"),
      py::arg("max_firings") = 1000, py::arg("trace_level") = 0,
      py::arg("collapse_spaces") = true,
      "Generate one sentence per {unl} block, in file order.");

  m.def(
      "parse_unl",
      [](const std::string& textv) { return unl::serialize(unl::parse_document(textv)); },
      py::arg("text"), "Parse a {unl} block and return its canonical form.");

  m.def(
      "validate_unl",
      [](const std::string& textv) {
        auto doc = unl::parse_document(textv);
        py::list out;
        for (const auto& d : unl::validate(doc)) out.append(d.format());
        return out;
      },
      py::arg("text"), "Parse and return validation diagnostics.");

  m.def(
      "lint",
      [](const std::string& dict_text, const std::string& grammar_text) {
        auto dict = lexicon::parse_dictionary(dict_text);
        auto grm = grammar::parse_grammar(grammar_text);
        py::list out;
        for (const auto& d : grm.diagnostics) out.append(d.format());
        for (const auto& d : grammar::lint(grm.grammar, dict.lexicon))
          out.append(d.format());
        return out;
      },
      py::arg("dict_text"), py::arg("grammar_text"),
      "Lint a grammar against a dictionary.");

  m.def(
      "dump_ast",
      [](const std::string& grammar_text) {
        return grammar::dump_ast(grammar::parse_grammar(grammar_text).grammar);
      },
      py::arg("grammar_text"), "Parsed rules in canonical form, one per line.");

  m.def("tokenize", &eval::tokenize_surface, py::arg("text"),
        "NFC-normalize and split on whitespace.");

  m.def(
      "lcs_length",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        return eval::lcs_length(a, b);
      },
      py::arg("a"), py::arg("b"), "Longest common subsequence length.");

  m.def("f_measure", &eval::f_measure, py::arg("candidate"), py::arg("reference"),
        "Token-level LCS F-measure on [0,1].");

  m.def(
      "evaluate_corpus",
      [](const std::vector<std::tuple<std::string, std::string, std::string>>& rows) {
        std::vector<eval::SentencePair> pairs;
        pairs.reserve(rows.size());
        for (const auto& [id, cand, ref] : rows) pairs.push_back({id, cand, ref});
        auto report = eval::evaluate_corpus(pairs);
        py::dict out;
        out["aggregate_f"] = report.aggregate_f;
        py::list sentences;
        for (const auto& s : report.per_sentence) {
          py::dict row;
          row["id"] = s.id;
          row["precision"] = s.precision;
          row["recall"] = s.recall;
          row["f"] = s.f;
          sentences.append(row);
        }
        out["sentences"] = sentences;
        return out;
      },
      py::arg("pairs"), "Score (id, candidate, reference) rows; micro-averaged.");

  m.attr("__version__") = "0.1.0";
}
