#ifndef UNLGEN_EVAL_HPP
#define UNLGEN_EVAL_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unlgen/diagnostics.hpp"

namespace unlgen::eval {

/// NFC-normalizes, then splits on whitespace runs.
std::vector<std::string> tokenize_surface(std::string_view text);

/// Longest common subsequence length, standard dynamic program.
std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// Token-level LCS F-measure on [0,1]:
///   P = LCS/|cand|, R = LCS/|ref|, F = 2PR/(P+R).
/// Both sides empty scores 1; exactly one empty, or no common token, scores 0.
double f_measure(std::string_view candidate, std::string_view reference);

struct SentencePair {
  std::string id;
  std::string candidate;
  std::string reference;
};

struct SentenceScore {
  std::string id;
  std::size_t lcs = 0;
  std::size_t candidate_tokens = 0;
  std::size_t reference_tokens = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

struct EvalReport {
  std::vector<SentenceScore> per_sentence;   // sorted by id
  std::size_t lcs_sum = 0;
  std::size_t candidate_token_sum = 0;
  std::size_t reference_token_sum = 0;
  double aggregate_f = 0.0;                  // micro-average over summed counts
};

/// Scores a corpus. Throws ParseError("EmptyCorpus") on an empty input.
EvalReport evaluate_corpus(const std::vector<SentencePair>& pairs);

/// Corpus file format: UTF-8, one pair per line, `id<TAB>candidate<TAB>reference`.
std::vector<SentencePair> parse_corpus(std::string_view text);

/// Pairs two parallel files line-by-line, ids "1", "2", ...
/// Throws ParseError("LineCountMismatch") when the line counts differ.
std::vector<SentencePair> pair_files(std::string_view candidates,
                                     std::string_view references);

/// Tab-separated report: header, one line per sentence, trailing aggregate.
std::string format_report(const EvalReport& report);

/// Machine-readable JSON summary.
std::string report_json(const EvalReport& report);

}  // namespace unlgen::eval

#endif
