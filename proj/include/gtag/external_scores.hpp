#pragma once

// Exchange format for path scores produced by an outside model.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "gtag/lattice.hpp"

namespace gtag {

/// 64-bit FNV-1a over the path tokens joined by single spaces.
std::uint64_t path_hash(TokenView path);
std::string format_path_hash(std::uint64_t h);  // 16 lowercase hex digits

struct ExternalScores {
  std::map<std::uint64_t, double> scores;
  std::string provenance;

  /// TSV `path_hash <TAB> log_score`; '#' lines are comments (the first one
  /// becomes the provenance note).
  static ExternalScores parse(std::istream& in, std::string_view origin = "<scores>");
  static ExternalScores load(const std::filesystem::path& path);
  void write(std::ostream& out) const;
};

/// Upper bound on paths enumerated for external rescoring.
inline constexpr std::size_t kExternalPathLimit = 1'000'000;

/// Argmax over all lattice paths under the external scores, with the same
/// tie-break as best_path. Throws if any path has no score.
BestPath apply_external_scores(const AlternativeLattice& lattice, const ExternalScores& scores);

}  // namespace gtag
