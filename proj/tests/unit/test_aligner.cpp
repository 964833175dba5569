#include "doctest.h"

#include <fstream>
#include <sstream>

#include "gtag/aligner.hpp"
#include "gtag/error.hpp"

using namespace gtag;

TEST_CASE("lexicon alignment finds any gender variant") {
  const auto& lex = Lexicon::builtin();
  const auto* trainer = lex.find_noun("trainer");
  CHECK(lexicon_align(*trainer, split_ws("ayer la entrenadora llegó"), "es", lex) == Span{1, 3});
  CHECK(lexicon_align(*trainer, split_ws("DEF entrenadorW_END llegó"), "es", lex) == Span{0, 2});
  // Bare noun, and bare noun with a mismatched article in front.
  CHECK(lexicon_align(*trainer, split_ws("entrenador llegó"), "es", lex) == Span{0, 1});
  CHECK(lexicon_align(*trainer, split_ws("la entrenador"), "es", lex) == Span{0, 2});
  CHECK_FALSE(lexicon_align(*trainer, split_ws("el médico llegó"), "es", lex).has_value());
}

TEST_CASE("IBM Model 1 matches the independent EM oracle") {
  std::vector<SentencePair> data{{{"a"}, {"x"}}, {{"a", "b"}, {"x", "y"}}, {{"b"}, {"y"}}};
  auto table = train_ibm1(data, 10);
  std::ifstream in(std::string(GTAG_FIXTURES) + "/ibm1_toy.oracle");
  REQUIRE(in);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split_on(line, '\t');
    CHECK(table.prob(f[0], f[1]) == doctest::Approx(std::stod(f[2])).epsilon(1e-12));
    ++n;
  }
  CHECK(n == 4);
}

TEST_CASE("Viterbi links and the unknown-source rule") {
  std::vector<SentencePair> data{{{"a"}, {"x"}}, {{"a", "b"}, {"x", "y"}}, {{"b"}, {"y"}}};
  auto table = train_ibm1(data, 10);
  auto links = viterbi_align(table, Tokens{"b", "a"}, Tokens{"x", "y"});
  REQUIRE(links.size() == 2);
  CHECK(links[0] == std::pair<std::size_t, std::size_t>{1, 0});
  CHECK(links[1] == std::pair<std::size_t, std::size_t>{0, 1});
  // An unknown source word beats a near-zero known link.
  auto unk = viterbi_align(table, Tokens{"q"}, Tokens{"x"});
  CHECK(unk.size() == 1);
}

TEST_CASE("translation tables round-trip") {
  std::vector<SentencePair> data{{{"la", "casa"}, {"the", "house"}}, {{"la"}, {"the"}}};
  auto table = train_ibm1(data, 5);
  std::stringstream ss;
  table.dump(ss);
  auto back = TranslationTable::load(ss);
  CHECK(back.entries() == table.entries());
  std::istringstream bad("a\tb\n");
  CHECK_THROWS_AS(TranslationTable::load(bad), ParseError);
}
