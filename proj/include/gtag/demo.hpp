#pragma once

// Small self-contained experiment: a pronoun-free base corpus, a 48-item
// coreference set with all-masculine hypotheses, a neutral variant, a tiny
// general set, and one config per system.

#include <filesystem>

#include "gtag/morphlex.hpp"

namespace gtag {

/// Writes the demo files into `dir` (created if needed). Needs "es".
void write_demo(const std::filesystem::path& dir, const Lexicon& lexicon);

}  // namespace gtag
