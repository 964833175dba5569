#include "doctest.h"

#include "gtag/bleu.hpp"
#include "gtag/error.hpp"

using namespace gtag;

TEST_CASE("13a tokenization") {
  CHECK(tokenize_13a("Hello, world!") == "Hello , world !");
  CHECK(tokenize_13a("It costs $12.50.") == "It costs $ 12.50 .");
  CHECK(tokenize_13a("state-of-the-art") == "state-of-the-art");
  CHECK(tokenize_13a("pages 3-5") == "pages 3 - 5");
  CHECK(tokenize_13a("1,000 people") == "1,000 people");
  CHECK(tokenize_13a("a &quot;b&quot;") == "a \" b \"");
  CHECK(tokenize_13a("line<skipped>break") == "linebreak");
  CHECK(tokenize_13a("ends-\nhere") == "endshere");
}

TEST_CASE("corpus BLEU edge cases") {
  std::vector<std::string> refs{"the cat sat on the mat", "a dog barked loudly today"};
  CHECK(corpus_bleu(refs, refs).score == doctest::Approx(100.0));
  auto empty = corpus_bleu({"", ""}, refs);
  CHECK(empty.score == 0.0);
  CHECK(empty.sys_len == 0);
  CHECK_THROWS_AS(corpus_bleu({"x"}, refs), InvalidArgument);

  // Trailing whitespace on hypotheses is ignored.
  CHECK(corpus_bleu({"the cat sat on the mat  ", "a dog barked loudly today"}, refs).score == doctest::Approx(100.0));

  auto r = corpus_bleu({"the cat sat on a mat", "a dog barked today"}, refs);
  CHECK(r.correct[0] == 9);
  CHECK(r.total[0] == 10);
  CHECK(r.brevity_penalty < 1.0);
  CHECK(r.score > 0.0);
  CHECK(r.score < 100.0);
}
