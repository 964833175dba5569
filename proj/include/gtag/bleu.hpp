#pragma once

// Corpus BLEU compatible with sacreBLEU 1.4.8 defaults:
// BLEU+case.mixed+numrefs.1+smooth.exp+tok.13a.

#include <array>
#include <string>
#include <vector>

namespace gtag {

/// mteval-v13a tokenization as implemented by sacreBLEU.
std::string tokenize_13a(std::string line);

struct BleuResult {
  double score = 0.0;
  std::array<std::size_t, 4> correct{};
  std::array<std::size_t, 4> total{};
  std::array<double, 4> precisions{};
  double brevity_penalty = 0.0;
  std::size_t sys_len = 0;
  std::size_t ref_len = 0;
};

BleuResult corpus_bleu(const std::vector<std::string>& hypotheses, const std::vector<std::string>& references);

}  // namespace gtag
