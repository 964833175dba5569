#include "gtag/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gtag/error.hpp"

namespace gtag {

double score_sequence(const MarkovScorer& scorer, TokenView tokens) {
  ContextWindow ctx(scorer.order());
  double total = 0.0;
  for (const auto& t : tokens) {
    total += scorer.log_prob(ctx.tokens(), t);
    ctx.push(t);
  }
  total += scorer.log_prob(ctx.tokens(), std::string(kEos));
  return total;
}

NGramModel NGramModel::train(const std::vector<Tokens>& corpus, std::size_t order) {
  if (corpus.empty()) throw InvalidArgument("cannot train a language model on an empty corpus");
  if (order < 1) throw InvalidArgument("language model order must be at least 1");
  NGramModel m;
  m.order_ = order;
  for (const auto& sentence : corpus) {
    Tokens seq;
    seq.reserve(sentence.size() + 2);
    seq.emplace_back(kBos);
    seq.insert(seq.end(), sentence.begin(), sentence.end());
    seq.emplace_back(kEos);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      if (seq[i] == kBos || seq[i] == kUnk) throw InvalidArgument("reserved token '" + seq[i] + "' in training data");
      for (std::size_t k = 0; k < order && k <= i; ++k) {
        std::string key;
        for (std::size_t j = i - k; j < i; ++j) {
          if (j > i - k) key += ' ';
          key += seq[j];
        }
        auto& h = m.counts_[key];
        ++h.total;
        ++h.next[seq[i]];
      }
    }
  }
  m.finish();
  return m;
}

void NGramModel::finish() {
  vocab_.clear();
  for (auto& [key, h] : counts_) {
    h.total = 0;
    for (const auto& [w, c] : h.next) h.total += c;
  }
  auto it = counts_.find("");
  if (it != counts_.end())
    for (const auto& [w, c] : it->second.next) vocab_.insert(w);
}

double NGramModel::prob_mapped(const Tokens& context, const std::string& token) const {
  // Witten-Bell, built bottom-up from the uniform base (vocabulary + <unk>).
  double p = 1.0 / static_cast<double>(vocab_.size() + 1);
  const std::size_t longest = std::min(context.size(), order_ - 1);
  std::string key;
  for (std::size_t len = 0; len <= longest; ++len) {
    if (len > 0) key = len == 1 ? context.back() : context[context.size() - len] + " " + key;
    auto it = counts_.find(key);
    if (it == counts_.end() || it->second.total == 0) continue;  // unseen history: pure backoff
    const auto& h = it->second;
    const double types = static_cast<double>(h.next.size());
    auto w = h.next.find(token);
    const double c = w == h.next.end() ? 0.0 : static_cast<double>(w->second);
    p = (c + types * p) / (static_cast<double>(h.total) + types);
  }
  return p;
}

double NGramModel::prob(TokenView context, const std::string& token) const {
  Tokens mapped;
  const std::size_t keep = std::min(context.size(), order_ - 1);
  mapped.reserve(keep);
  for (std::size_t i = context.size() - keep; i < context.size(); ++i) {
    const auto& t = context[i];
    mapped.push_back(t == kBos || known(t) ? t : std::string(kUnk));
  }
  return prob_mapped(mapped, known(token) ? token : std::string(kUnk));
}

double NGramModel::log_prob(TokenView context, const std::string& token) const {
  return std::log(prob(context, token));
}

void NGramModel::save(std::ostream& out) const {
  out << "#gngram v1 order=" << order_ << '\n';
  for (const auto& [key, h] : counts_)
    for (const auto& [w, c] : h.next) out << key << '\t' << w << '\t' << c << '\n';
}

NGramModel NGramModel::load(std::istream& in, std::string_view origin) {
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#gngram v1 order="))
    throw ParseError(std::string(origin) + ": missing '#gngram v1' header");
  NGramModel m;
  char* end = nullptr;
  const char* digits = line.c_str() + 17;
  m.order_ = std::strtoul(digits, &end, 10);
  if (end == digits || *end != '\0' || m.order_ < 1) throw ParseError(std::string(origin) + ": bad order in header");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = split_on(line, '\t');
    if (fields.size() != 3) throw ParseError(std::string(origin) + ":" + std::to_string(lineno) + ": expected 3 fields");
    const char* cs = fields[2].c_str();
    auto c = std::strtoull(cs, &end, 10);
    if (end == cs || *end != '\0' || c == 0)
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) + ": bad count");
    if (split_ws(fields[0]).size() >= m.order_)
      throw ParseError(std::string(origin) + ":" + std::to_string(lineno) + ": history longer than order-1");
    m.counts_[fields[0]].next[fields[1]] = c;
  }
  m.finish();
  return m;
}

void NGramModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file " + path.string());
  save(out);
}

NGramModel NGramModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file " + path.string());
  return load(in, path.string());
}

InterpolatedModel::InterpolatedModel(NGramModel base, NGramModel adapted, double lambda)
    : base_(std::move(base)), adapted_(std::move(adapted)), lambda_(lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidArgument("interpolation weight must lie in [0,1]");
}

std::size_t InterpolatedModel::order() const { return std::max(base_.order(), adapted_.order()); }

double InterpolatedModel::prob(TokenView context, const std::string& token) const {
  return lambda_ * base_.prob(context, token) + (1.0 - lambda_) * adapted_.prob(context, token);
}

double InterpolatedModel::log_prob(TokenView context, const std::string& token) const {
  // Exact identities at the endpoints.
  if (lambda_ == 1.0) return base_.log_prob(context, token);
  if (lambda_ == 0.0) return adapted_.log_prob(context, token);
  return std::log(prob(context, token));
}

void InterpolatedModel::save(std::ostream& out) const {
  std::ostringstream b, a;
  base_.save(b);
  adapted_.save(a);
  auto lines = [](const std::string& s) { return std::count(s.begin(), s.end(), '\n'); };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", lambda_);
  out << "#ginterp v1 lambda=" << buf << '\n';
  out << "@base " << lines(b.str()) << '\n' << b.str();
  out << "@adapted " << lines(a.str()) << '\n' << a.str();
}

InterpolatedModel InterpolatedModel::load(std::istream& in, std::string_view origin) {
  const std::string where(origin);
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#ginterp v1 lambda="))
    throw ParseError(where + ": missing '#ginterp v1' header");
  char* end = nullptr;
  const char* num = line.c_str() + 19;
  double lambda = std::strtod(num, &end);
  if (end == num || *end != '\0') throw ParseError(where + ": bad lambda");

  auto section = [&](std::string_view name) {
    std::string header;
    if (!std::getline(in, header) || !header.starts_with("@" + std::string(name) + " "))
      throw ParseError(where + ": missing @" + std::string(name) + " section");
    const char* cs = header.c_str() + name.size() + 2;
    auto n = std::strtoull(cs, &end, 10);
    if (end == cs || *end != '\0') throw ParseError(where + ": bad @" + std::string(name) + " line count");
    std::string body;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!std::getline(in, line)) throw ParseError(where + ": truncated @" + std::string(name) + " section");
      body += line;
      body += '\n';
    }
    std::istringstream s(body);
    return NGramModel::load(s, where + "@" + std::string(name));
  };
  auto base = section("base");
  auto adapted = section("adapted");
  return InterpolatedModel(std::move(base), std::move(adapted), lambda);
}

InterpolatedModel interpolate(NGramModel base, NGramModel adapted, double lambda) {
  return InterpolatedModel(std::move(base), std::move(adapted), lambda);
}

}  // namespace gtag
