#include "gtag/bleu.hpp"

#include <cmath>
#include <map>
#include <regex>

#include "gtag/error.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

// The first 13a rule, [\{-\~\[-\` -\&\(-\+\:-\@\/], spelled out.
bool isolated_symbol(char c) {
  return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') || (c >= ' ' && c <= '&') || (c >= '(' && c <= '+') ||
         (c >= ':' && c <= '@') || c == '/';
}

using NGramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NGramCounts count_ngrams(const Tokens& words, std::size_t n) {
  NGramCounts out;
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    std::vector<std::string_view> key(words.begin() + static_cast<std::ptrdiff_t>(i),
                                      words.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++out[key];
  }
  return out;
}

}  // namespace

std::string tokenize_13a(std::string line) {
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }
  std::string spaced = " ";
  for (char c : line) {
    if (isolated_symbol(c)) {
      spaced += ' ';
      spaced += c;
      spaced += ' ';
    } else {
      spaced += c;
    }
  }
  spaced += "   ";  // the trailing pad ' ' is itself an isolated symbol

  static const std::regex period_comma_after(R"(([^0-9])([\.,]))");
  static const std::regex period_comma_before(R"(([\.,])([^0-9]))");
  static const std::regex dash_after_digit(R"(([0-9])(-))");
  spaced = std::regex_replace(spaced, period_comma_after, "$1 $2 ");
  spaced = std::regex_replace(spaced, period_comma_before, " $1 $2");
  spaced = std::regex_replace(spaced, dash_after_digit, "$1 $2 ");
  return join(split_ws(spaced));
}

BleuResult corpus_bleu(const std::vector<std::string>& hypotheses, const std::vector<std::string>& references) {
  if (hypotheses.size() != references.size())
    throw InvalidArgument("BLEU needs one reference per hypothesis (" + std::to_string(hypotheses.size()) + " vs " +
                          std::to_string(references.size()) + ")");
  auto rstrip = [](std::string s) {
    while (!s.empty() && std::string_view(" \t\n\r\f\v").find(s.back()) != std::string_view::npos) s.pop_back();
    return s;
  };

  BleuResult r;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const Tokens hyp = split_ws(tokenize_13a(rstrip(hypotheses[i])));
    const Tokens ref = split_ws(tokenize_13a(rstrip(references[i])));
    r.sys_len += hyp.size();
    r.ref_len += ref.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      auto h = count_ngrams(hyp, n);
      auto g = count_ngrams(ref, n);
      for (const auto& [gram, c] : h) {
        r.total[n - 1] += c;
        auto it = g.find(gram);
        if (it != g.end()) r.correct[n - 1] += std::min(c, it->second);
      }
    }
  }

  if (r.sys_len < r.ref_len)
    r.brevity_penalty = r.sys_len > 0 ? std::exp(1.0 - static_cast<double>(r.ref_len) / static_cast<double>(r.sys_len)) : 0.0;
  else
    r.brevity_penalty = 1.0;

  double smooth = 1.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (r.total[n] == 0) break;
    if (r.correct[n] == 0) {
      smooth *= 2.0;
      r.precisions[n] = 100.0 / (smooth * static_cast<double>(r.total[n]));
    } else {
      r.precisions[n] = 100.0 * static_cast<double>(r.correct[n]) / static_cast<double>(r.total[n]);
    }
  }
  double log_sum = 0.0;
  for (double p : r.precisions) log_sum += p == 0.0 ? -9999999999.0 : std::log(p);
  r.score = r.brevity_penalty * std::exp(log_sum / 4.0);
  return r;
}

}  // namespace gtag
