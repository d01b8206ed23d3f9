#include "unlgen/eval.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "unlgen/text.hpp"

namespace unlgen::eval {

std::vector<std::string> tokenize_surface(std::string_view textv) {
  return text::split_whitespace(text::nfc(textv));
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || b.empty()) return 0;
  // rolling single-row dynamic program
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = (a[i - 1] == b[j - 1]) ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

SentenceScore score_pair(const SentencePair& pair) {
  SentenceScore s;
  s.id = pair.id;
  auto cand = tokenize_surface(pair.candidate);
  auto ref = tokenize_surface(pair.reference);
  s.candidate_tokens = cand.size();
  s.reference_tokens = ref.size();
  s.lcs = lcs_length(cand, ref);
  if (cand.empty() && ref.empty()) {
    s.precision = s.recall = s.f = 1.0;
    return s;
  }
  if (cand.empty() || ref.empty() || s.lcs == 0) {
    s.precision = s.recall = s.f = 0.0;
    return s;
  }
  s.precision = static_cast<double>(s.lcs) / static_cast<double>(cand.size());
  s.recall = static_cast<double>(s.lcs) / static_cast<double>(ref.size());
  s.f = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

}  // namespace

double f_measure(std::string_view candidate, std::string_view reference) {
  SentencePair pair{"", std::string(candidate), std::string(reference)};
  return score_pair(pair).f;
}

EvalReport evaluate_corpus(const std::vector<SentencePair>& pairs) {
  if (pairs.empty())
    throw ParseError("EmptyCorpus", "no sentence pairs to evaluate", 0);
  EvalReport report;
  for (const auto& pair : pairs) {
    SentenceScore s = score_pair(pair);
    report.lcs_sum += s.lcs;
    report.candidate_token_sum += s.candidate_tokens;
    report.reference_token_sum += s.reference_tokens;
    report.per_sentence.push_back(std::move(s));
  }
  std::stable_sort(report.per_sentence.begin(), report.per_sentence.end(),
                   [](const SentenceScore& a, const SentenceScore& b) {
                     return a.id < b.id;
                   });
  std::size_t denom = report.candidate_token_sum + report.reference_token_sum;
  report.aggregate_f =
      denom == 0 ? 1.0 : 2.0 * static_cast<double>(report.lcs_sum) /
                             static_cast<double>(denom);
  return report;
}

namespace {

std::vector<std::string_view> split_lines_keep(std::string_view textv) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= textv.size(); ++i) {
    if (i == textv.size() || textv[i] == '\n') {
      std::string_view line = textv.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = i + 1;
    }
  }
  // a trailing newline does not add an empty record
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

std::vector<SentencePair> parse_corpus(std::string_view textv) {
  std::vector<SentencePair> pairs;
  auto lines = split_lines_keep(text::strip_bom(textv));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? std::string_view::npos
                                                  : line.find('\t', t1 + 1);
    if (t1 == std::string_view::npos || t2 == std::string_view::npos)
      throw ParseError("MalformedCorpusLine",
                       "expected id<TAB>candidate<TAB>reference",
                       static_cast<int>(i + 1));
    pairs.push_back({std::string(line.substr(0, t1)),
                     std::string(line.substr(t1 + 1, t2 - t1 - 1)),
                     std::string(line.substr(t2 + 1))});
  }
  return pairs;
}

std::vector<SentencePair> pair_files(std::string_view candidates,
                                     std::string_view references) {
  auto cand = split_lines_keep(text::strip_bom(candidates));
  auto ref = split_lines_keep(text::strip_bom(references));
  if (cand.size() != ref.size())
    throw ParseError("LineCountMismatch",
                     "candidate file has " + std::to_string(cand.size()) +
                         " line(s), reference file has " +
                         std::to_string(ref.size()),
                     0);
  std::vector<SentencePair> pairs;
  pairs.reserve(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i)
    pairs.push_back({std::to_string(i + 1), std::string(cand[i]),
                     std::string(ref[i])});
  return pairs;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "id\tprecision\trecall\tf\n";
  for (const auto& s : report.per_sentence)
    out << s.id << "\t" << s.precision << "\t" << s.recall << "\t" << s.f << "\n";
  out << "aggregate\t-\t-\t" << report.aggregate_f << "\n";
  return out.str();
}

std::string report_json(const EvalReport& report) {
  nlohmann::json j;
  j["aggregate_f"] = report.aggregate_f;
  j["lcs_sum"] = report.lcs_sum;
  j["candidate_token_sum"] = report.candidate_token_sum;
  j["reference_token_sum"] = report.reference_token_sum;
  j["sentences"] = nlohmann::json::array();
  for (const auto& s : report.per_sentence)
    j["sentences"].push_back({{"id", s.id},
                              {"precision", s.precision},
                              {"recall", s.recall},
                              {"f", s.f},
                              {"lcs", s.lcs},
                              {"candidate_tokens", s.candidate_tokens},
                              {"reference_tokens", s.reference_tokens}});
  return j.dump(2);
}

}  // namespace unlgen::eval
