#pragma once

// Gendered-alternative lattices over a hypothesis translation.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtag/gender.hpp"
#include "gtag/morphlex.hpp"
#include "gtag/scorer.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Tokens tokens;
  std::optional<Gender> gender;  // nullopt on non-gendered arcs
  bool on_baseline = false;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Nodes are 0..node_count-1 with 0 the source and node_count-1 the sink.
/// Arcs are kept sorted by (from, to) and, within a group, in M, F, N order.
struct AlternativeLattice {
  std::size_t node_count = 1;
  std::vector<Arc> arcs;
  Tokens baseline;

  std::size_t sink() const { return node_count - 1; }
  friend bool operator==(const AlternativeLattice&, const AlternativeLattice&) = default;
};

AlternativeLattice build_lattice(TokenView hypothesis, const Language& language, const Lexicon& lexicon,
                                 bool include_neutral);

/// Checks the structural invariants; throws ParseError describing the first violation.
void validate(const AlternativeLattice& lattice);

/// Number of source-to-sink paths (saturates at SIZE_MAX).
std::size_t path_count(const AlternativeLattice& lattice);

struct PathList {
  std::vector<std::vector<std::size_t>> arcs;  // arc indices per path
  std::vector<Tokens> paths;
  bool truncated = false;
};

/// Paths in lexicographic arc-index order, at most `limit` of them.
PathList enumerate_paths(const AlternativeLattice& lattice, std::size_t limit);

Tokens path_tokens(const AlternativeLattice& lattice, const std::vector<std::size_t>& arcs);

struct BestPath {
  Tokens tokens;
  std::vector<std::size_t> arcs;
  double score = 0.0;
};

/// Exact Viterbi over (node, last order-1 tokens). Ties go to the path with
/// more baseline arcs, then to the lexicographically smaller arc sequence.
BestPath best_path(const AlternativeLattice& lattice, const MarkovScorer& scorer);

/// The tie-break shared by best_path and external rescoring: true if
/// candidate (score, baseline arcs, arc sequence) beats the incumbent.
bool path_preferred(double score, std::size_t baseline_arcs, const std::vector<std::size_t>& arcs,
                    double best_score, std::size_t best_baseline_arcs, const std::vector<std::size_t>& best_arcs);

std::size_t baseline_arc_count(const AlternativeLattice& lattice, const std::vector<std::size_t>& arcs);

std::string serialize(const AlternativeLattice& lattice);
AlternativeLattice deserialize(std::string_view bytes);

}  // namespace gtag
