#include "gtag/aligner.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "gtag/error.hpp"

namespace gtag {

std::optional<Span> lexicon_align(const NounLexeme& entity, TokenView target, const Language& language,
                                  const Lexicon& lexicon) {
  if (!entity.has_language(language)) return std::nullopt;
  const auto& forms = entity.forms.at(language);
  for (std::size_t pos = 0; pos < target.size(); ++pos) {
    for (const auto& f : forms) {
      auto full = f.tokens();
      if (starts_with_at(target, pos, full)) return Span{pos, pos + full.size()};
    }
    for (const auto& f : forms)
      if (starts_with_at(target, pos, f.noun)) {
        // Pick up a preceding article so classification sees the whole phrase.
        if (pos > 0 && lexicon.article_gender(language, target[pos - 1]))
          return Span{pos - 1, pos + f.noun.size()};
        return Span{pos, pos + f.noun.size()};
      }
  }
  return std::nullopt;
}

double TranslationTable::prob(const std::string& src, const std::string& tgt) const {
  auto it = table_.find(src);
  if (it == table_.end()) return 1.0 / static_cast<double>(tgt_vocab_.size() + 1);
  auto jt = it->second.find(tgt);
  return jt == it->second.end() ? 0.0 : jt->second;
}

void TranslationTable::set(const std::string& src, const std::string& tgt, double p) {
  table_[src][tgt] = p;
  tgt_vocab_.insert(tgt);
}

void TranslationTable::dump(std::ostream& out) const {
  char buf[64];
  for (const auto& [s, row] : table_)
    for (const auto& [t, p] : row) {
      std::snprintf(buf, sizeof buf, "%.17g", p);
      out << s << '\t' << t << '\t' << buf << '\n';
    }
}

TranslationTable TranslationTable::load(std::istream& in, std::string_view origin) {
  TranslationTable out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split_on(line, '\t');
    char* end = nullptr;
    double p = f.size() == 3 ? std::strtod(f[2].c_str(), &end) : 0.0;
    if (f.size() != 3 || f[2].empty() || *end != '\0' || p < 0.0 || p > 1.0)
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) + ": expected 'src<TAB>tgt<TAB>prob'");
    out.set(f[0], f[1], p);
  }
  return out;
}

TranslationTable TranslationTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open translation table " + path.string());
  return load(in, path.string());
}

TranslationTable train_ibm1(const std::vector<SentencePair>& parallel, int iterations) {
  if (parallel.empty()) throw InvalidArgument("cannot train IBM Model 1 on an empty corpus");
  if (iterations < 1) throw InvalidArgument("IBM Model 1 needs at least one EM iteration");

  // Uniform start over the target words co-occurring with each source word.
  std::map<std::string, std::map<std::string, double>> t;
  std::set<std::string> tgt_vocab;
  for (const auto& [src, tgt] : parallel)
    for (const auto& f : tgt) tgt_vocab.insert(f);
  const double uniform = 1.0 / static_cast<double>(tgt_vocab.size());
  for (const auto& [src, tgt] : parallel)
    for (const auto& e : src)
      for (const auto& f : tgt) t[e][f] = uniform;

  for (int it = 0; it < iterations; ++it) {
    std::map<std::string, std::map<std::string, double>> count;
    std::map<std::string, double> total;
    for (const auto& [src, tgt] : parallel) {
      for (const auto& f : tgt) {
        double norm = 0.0;
        for (const auto& e : src) norm += t[e][f];
        if (norm == 0.0) continue;
        for (const auto& e : src) {
          const double c = t[e][f] / norm;
          count[e][f] += c;
          total[e] += c;
        }
      }
    }
    for (auto& [e, row] : t)
      for (auto& [f, p] : row) p = total[e] > 0.0 ? count[e][f] / total[e] : 0.0;
  }

  TranslationTable table;
  for (const auto& [e, row] : t)
    for (const auto& [f, p] : row) table.set(e, f, p);
  return table;
}

std::vector<std::pair<std::size_t, std::size_t>> viterbi_align(const TranslationTable& table, TokenView src,
                                                               TokenView tgt) {
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    double best = 0.0;
    std::optional<std::size_t> arg;
    for (std::size_t i = 0; i < src.size(); ++i) {
      const double p = table.prob(src[i], tgt[j]);
      if (p > best) {
        best = p;
        arg = i;
      }
    }
    if (arg) links.emplace_back(*arg, j);
  }
  return links;
}

}  // namespace gtag
