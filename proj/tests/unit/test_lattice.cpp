#include "doctest.h"

#include "gtag/error.hpp"
#include "gtag/lattice.hpp"
#include "gtag/ngram.hpp"
#include "random_lattice.hpp"

using namespace gtag;

TEST_CASE("lattice over a Spanish hypothesis") {
  const auto& lex = Lexicon::builtin();
  auto hyp = split_ws("el entrenador habló con la mujer alta .");
  auto lat = build_lattice(hyp, "es", lex, true);
  validate(lat);
  CHECK(lat.baseline == hyp);
  // el entrenador (3 ways) x alta (3 ways); "la mujer" is a person noun and stays put.
  CHECK(path_count(lat) == 9);
  auto binary = build_lattice(hyp, "es", lex, false);
  CHECK(path_count(binary) == 4);

  std::size_t grouped = 0;
  for (const auto& a : lat.arcs)
    if (a.gender && a.tokens.size() == 2) ++grouped;
  CHECK(grouped == 3);
  // Arcs are sorted by source node, variants in M, F, N order.
  CHECK(lat.arcs[0].gender == Gender::M);
  CHECK(lat.arcs[0].on_baseline);
  CHECK(lat.arcs[1].tokens == Tokens{"la", "entrenadora"});
  CHECK_THROWS_AS(build_lattice(Tokens{}, "es", lex, false), InvalidArgument);
}

TEST_CASE("German possessives and articles branch") {
  const auto& lex = Lexicon::builtin();
  auto lat = build_lattice(split_ws("der Trainer beendete seine Arbeit"), "de", lex, true);
  CHECK(path_count(lat) == 9);
  auto paths = enumerate_paths(lat, 100);
  CHECK(paths.paths.size() == 9);
  CHECK_FALSE(paths.truncated);
  CHECK(paths.paths[0] == split_ws("der Trainer beendete seine Arbeit"));
  bool neutral = false;
  for (const auto& p : paths.paths) neutral = neutral || p == split_ws("DEF TrainerW_END beendete PRP Arbeit");
  CHECK(neutral);
  auto few = enumerate_paths(lat, 4);
  CHECK(few.paths.size() == 4);
  CHECK(few.truncated);
}

TEST_CASE("best_path prefers the scorer's choice and breaks ties toward the baseline") {
  const auto& lex = Lexicon::builtin();
  auto hyp = split_ws("el entrenador terminó");
  auto lat = build_lattice(hyp, "es", lex, false);
  auto fem = NGramModel::train({split_ws("la entrenadora terminó")}, 2);
  CHECK(best_path(lat, fem).tokens == split_ws("la entrenadora terminó"));

  // A scorer that cannot tell the variants apart keeps the baseline.
  struct Flat : MarkovScorer {
    std::size_t order() const override { return 2; }
    double log_prob(TokenView, const std::string&) const override { return -1.0; }
  } flat;
  auto best = best_path(lat, flat);
  CHECK(best.tokens == hyp);
  CHECK(best.score == -4.0);
}

TEST_CASE("best_path equals exhaustive search on random lattices") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto lat = gtag::testing::random_lattice(rng, 200);
    validate(lat);
    gtag::testing::HashScorer scorer(2 + i % 3, i);
    auto all = enumerate_paths(lat, 1000);
    double best = -1e300;
    for (const auto& p : all.paths) best = std::max(best, score_sequence(scorer, p));
    CHECK(best_path(lat, scorer).score == best);
  }
}

TEST_CASE("serialization round-trips and rejects damage") {
  const auto& lex = Lexicon::builtin();
  auto lat = build_lattice(split_ws("la entrenadora terminó su trabajo ."), "es", lex, true);
  auto text = serialize(lat);
  CHECK(text.rfind("#glat v1 ", 0) == 0);
  CHECK(deserialize(text) == lat);

  CHECK_THROWS_AS(deserialize(text.substr(0, text.size() - 1)), ParseError);  // no final newline
  std::string v2 = text;
  v2.replace(0, 8, "#glat v2");
  CHECK_THROWS_AS(deserialize(v2), ParseError);
  CHECK_THROWS_AS(deserialize("#glat v1 2\n"), ParseError);
  CHECK_THROWS_AS(deserialize("#glat v1 2\n0\t1\ta\tX\t1\n"), ParseError);
  CHECK_THROWS_AS(deserialize("#glat v1 3\n0\t1\ta\t-\t1\n"), ParseError);  // sink unreachable
}

TEST_CASE("validate catches structural errors") {
  AlternativeLattice lat;
  lat.node_count = 3;
  lat.arcs = {{0, 1, {"a"}, std::nullopt, true}, {1, 2, {"b"}, std::nullopt, true}};
  lat.baseline = {"a", "b"};
  CHECK_NOTHROW(validate(lat));
  auto unsorted = lat;
  std::swap(unsorted.arcs[0], unsorted.arcs[1]);
  CHECK_THROWS_AS(validate(unsorted), ParseError);
  auto wrong_baseline = lat;
  wrong_baseline.baseline = {"a", "c"};
  CHECK_THROWS_AS(validate(wrong_baseline), ParseError);
  auto backwards = lat;
  backwards.arcs[1] = {2, 1, {"b"}, std::nullopt, true};
  CHECK_THROWS_AS(validate(backwards), ParseError);
}
