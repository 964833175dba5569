#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "gtag/error.hpp"
#include "gtag/ngram.hpp"

using namespace gtag;

namespace {

std::vector<Tokens> corpus(std::initializer_list<const char*> lines) {
  std::vector<Tokens> out;
  for (const char* l : lines) out.push_back(split_ws(l));
  return out;
}

}  // namespace

TEST_CASE("Witten-Bell probabilities match the independent oracle") {
  std::ifstream in(std::string(GTAG_FIXTURES) + "/witten_bell.oracle");
  REQUIRE(in);
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto f = split_on(line, '\t');
    REQUIRE(f.size() == 5);
    std::vector<Tokens> c;
    for (const auto& s : split_on(f[0], '|')) c.push_back(split_ws(s));
    auto m = NGramModel::train(c, std::stoul(f[1]));
    auto ctx = split_ws(f[2]);
    CHECK(m.prob(ctx, f[3]) == doctest::Approx(std::stod(f[4])).epsilon(1e-12));
    ++checked;
  }
  CHECK(checked == 8);
}

TEST_CASE("distributions sum to one over the vocabulary plus <unk>") {
  auto m = NGramModel::train(corpus({"a b a c", "b a", "c c b"}), 3);
  for (const Tokens& ctx : {Tokens{"<s>"}, Tokens{"<s>", "a"}, Tokens{"b", "a"}, Tokens{"x", "y"}}) {
    double total = m.prob(ctx, "never-seen");
    for (const auto& w : m.vocabulary()) total += m.prob(ctx, w);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(m.vocabulary().count("</s>"));
  CHECK_FALSE(m.vocabulary().count("<s>"));
}

TEST_CASE("training preconditions") {
  CHECK_THROWS_AS(NGramModel::train({}, 2), InvalidArgument);
  CHECK_THROWS_AS(NGramModel::train(corpus({"a"}), 0), InvalidArgument);
  CHECK_THROWS_AS(NGramModel::train(corpus({"a <unk>"}), 2), InvalidArgument);
}

TEST_CASE("model files round-trip") {
  auto m = NGramModel::train(corpus({"el entrenador terminó", "la entrenadora terminó"}), 3);
  std::stringstream ss;
  m.save(ss);
  auto back = NGramModel::load(ss);
  CHECK(back == m);

  std::istringstream no_header("a\tb\t1\n");
  CHECK_THROWS_AS(NGramModel::load(no_header), ParseError);
  std::istringstream bad_count("#gngram v1 order=2\na\tb\tzero\n");
  CHECK_THROWS_AS(NGramModel::load(bad_count), ParseError);
  std::istringstream too_long("#gngram v1 order=2\na b\tc\t1\n");
  CHECK_THROWS_AS(NGramModel::load(too_long), ParseError);
}

TEST_CASE("interpolation") {
  auto base = NGramModel::train(corpus({"el entrenador terminó"}), 2);
  auto adapted = NGramModel::train(corpus({"la entrenadora terminó", "la jueza"}), 2);
  Tokens ctx{"<s>"};

  auto at1 = interpolate(base, adapted, 1.0);
  auto at0 = interpolate(base, adapted, 0.0);
  CHECK(at1.log_prob(ctx, "la") == base.log_prob(ctx, "la"));
  CHECK(at0.log_prob(ctx, "la") == adapted.log_prob(ctx, "la"));

  auto half = interpolate(base, adapted, 0.5);
  CHECK(half.prob(ctx, "la") == doctest::Approx(0.5 * base.prob(ctx, "la") + 0.5 * adapted.prob(ctx, "la")));
  // Each component maps unknown words to its own <unk>.
  CHECK(half.prob(ctx, "jueza") ==
        doctest::Approx(0.5 * base.prob(ctx, "jueza") + 0.5 * adapted.prob(ctx, "jueza")));

  auto self = interpolate(base, base, 0.3);
  for (const auto& w : base.vocabulary()) CHECK(std::abs(self.log_prob(ctx, w) - base.log_prob(ctx, w)) < 1e-12);

  CHECK_THROWS_AS(interpolate(base, adapted, 1.5), InvalidArgument);

  std::stringstream ss;
  half.save(ss);
  auto back = InterpolatedModel::load(ss);
  CHECK(back.lambda() == 0.5);
  CHECK(back.base() == base);
  CHECK(back.adapted() == adapted);
}

TEST_CASE("score_sequence adds the end-of-sentence term") {
  auto m = NGramModel::train(corpus({"a b"}), 2);
  Tokens s{"a", "b"};
  double expected = m.log_prob(Tokens{"<s>"}, "a") + m.log_prob(Tokens{"a"}, "b") + m.log_prob(Tokens{"b"}, "</s>");
  CHECK(score_sequence(m, s) == doctest::Approx(expected).epsilon(1e-15));
}
