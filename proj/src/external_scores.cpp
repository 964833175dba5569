#include "gtag/external_scores.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "gtag/error.hpp"

namespace gtag {

std::uint64_t path_hash(TokenView path) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) mix(' ');
    for (unsigned char c : path[i]) mix(c);
  }
  return h;
}

std::string format_path_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExternalScores ExternalScores::parse(std::istream& in, std::string_view origin) {
  ExternalScores out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto text = line.find_first_not_of("# ");
      if (out.provenance.empty() && text != std::string::npos) out.provenance = line.substr(text);
      continue;
    }
    const auto where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    auto f = split_on(line, '\t');
    if (f.size() != 2 || f[0].size() != 16) throw ParseError(where + "expected '<16 hex digits><TAB><log score>'");
    char* end = nullptr;
    auto h = std::strtoull(f[0].c_str(), &end, 16);
    if (*end != '\0') throw ParseError(where + "bad path hash '" + f[0] + "'");
    double v = std::strtod(f[1].c_str(), &end);
    if (f[1].empty() || *end != '\0') throw ParseError(where + "bad score '" + f[1] + "'");
    if (!out.scores.emplace(h, v).second) throw ParseError(where + "duplicate path hash " + f[0]);
  }
  return out;
}

ExternalScores ExternalScores::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scores file " + path.string());
  return parse(in, path.string());
}

void ExternalScores::write(std::ostream& out) const {
  if (!provenance.empty()) out << "# " << provenance << '\n';
  char buf[64];
  for (const auto& [h, v] : scores) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << format_path_hash(h) << '\t' << buf << '\n';
  }
}

BestPath apply_external_scores(const AlternativeLattice& lattice, const ExternalScores& scores) {
  auto list = enumerate_paths(lattice, kExternalPathLimit);
  if (list.truncated)
    throw InvalidArgument("lattice has more than " + std::to_string(kExternalPathLimit) + " paths");
  BestPath best;
  std::size_t best_base = 0;
  bool have = false;
  for (std::size_t i = 0; i < list.paths.size(); ++i) {
    auto it = scores.scores.find(path_hash(list.paths[i]));
    if (it == scores.scores.end())
      throw InvalidArgument("no external score for path '" + join(list.paths[i]) + "' (hash " +
                            format_path_hash(path_hash(list.paths[i])) + ")");
    const auto base = baseline_arc_count(lattice, list.arcs[i]);
    if (!have || path_preferred(it->second, base, list.arcs[i], best.score, best_base, best.arcs)) {
      best = {list.paths[i], list.arcs[i], it->second};
      best_base = base;
      have = true;
    }
  }
  return best;
}

}  // namespace gtag
