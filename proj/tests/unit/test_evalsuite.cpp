#include "doctest.h"

#include "gtag/aligner.hpp"
#include "gtag/error.hpp"
#include "gtag/evalsuite.hpp"

using namespace gtag;

namespace {

TestItem item(std::string id, std::optional<Gender> gold, const std::string& src, Span primary, std::string lemma,
              Span secondary, std::string lemma2, Stereotype st = Stereotype::None) {
  TestItem it;
  it.id = std::move(id);
  it.gold = gold;
  it.source = split_ws(src);
  it.primary = {primary, std::move(lemma)};
  it.secondary = TestEntity{secondary, std::move(lemma2)};
  it.stereotype = st;
  return it;
}

}  // namespace

TEST_CASE("accuracy by gender and stereotype") {
  const auto& lex = Lexicon::builtin();
  std::vector<TestItem> items{
      item("s1", Gender::F, "the cook met the lawyer because she was late", {1, 2}, "cook", {4, 5}, "lawyer",
           Stereotype::Pro),
      item("s2", Gender::M, "the cook met the lawyer because he was late", {1, 2}, "cook", {4, 5}, "lawyer",
           Stereotype::Anti),
      item("s3", Gender::F, "the baker met the teacher because she was late", {4, 5}, "teacher", {1, 2}, "baker"),
      item("s4", Gender::M, "the doctor left", {1, 2}, "doctor", {1, 2}, "doctor"),
  };
  std::vector<Tokens> hyps{split_ws("la cocinera conoció al abogado"), split_ws("la cocinera conoció al abogado"),
                           split_ws("el panadero conoció a la profesora"), split_ws("alguien se fue")};
  auto r = evaluate(items, hyps, lex, "es", {}, "t", "sys");
  CHECK(r.overall.correct == 2);
  CHECK(r.overall.total == 4);
  CHECK(r.accuracy() == 50.0);
  CHECK(r.by_gender[index_of(Gender::F)].percent() == 100.0);
  CHECK(r.by_gender[index_of(Gender::M)].percent() == 0.0);
  CHECK(r.pro.percent() == 100.0);
  CHECK(r.anti.percent() == 0.0);
  CHECK(r.unaligned == 1);
  CHECK(r.judgments[2].span == Span{4, 6});
  CHECK(r.judgments[2].method == AlignMethod::Lexicon);

  auto j = to_json(r);
  CHECK(j["accuracy"]["percent"] == 50.0);
  CHECK(j["judgments"].size() == 4);
  CHECK_FALSE(to_json(r, false).contains("judgments"));
  CHECK_THROWS_AS(evaluate(items, {hyps[0]}, lex, "es"), InvalidArgument);
}

TEST_CASE("IBM-1 fallback places entities the lexicon misses") {
  const auto& lex = Lexicon::builtin();
  // "nurse" is not in the lexicon; the table links it to "enfermera".
  auto it = item("s1", Gender::F, "the nurse left", {1, 2}, "nurse", {1, 2}, "nurse");
  TranslationTable t;
  t.set("the", "la", 0.9);
  t.set("nurse", "enfermera", 0.9);
  t.set("left", "salió", 0.9);
  auto none = evaluate({it}, {split_ws("la enfermera salió")}, lex, "es");
  CHECK(none.unaligned == 1);
  auto r = evaluate({it}, {split_ws("la enfermera salió")}, lex, "es", {&t});
  CHECK(r.judgments[0].method == AlignMethod::Viterbi);
  CHECK(r.judgments[0].span == Span{0, 2});
  CHECK(r.judgments[0].predicted == Gender::F);  // from the article
}

TEST_CASE("L2 correspondence and its delta") {
  const auto& lex = Lexicon::builtin();
  std::vector<TestItem> items{
      item("s1", Gender::F, "the cook met the lawyer because she was late", {1, 2}, "cook", {4, 5}, "lawyer"),
      item("s2", Gender::M, "the cook met the lawyer because he was late", {1, 2}, "cook", {4, 5}, "lawyer"),
  };
  auto sec = derive_secondary(items);
  auto base = l2_correspondence(sec, {split_ws("el cocinero conoció al abogado"), split_ws("el cocinero conoció al abogado")},
                                lex, "es", {}, "sec");
  CHECK(base.percent == 50.0);
  auto sys = l2_correspondence(sec, {split_ws("la cocinera conoció a la abogada"), split_ws("el cocinero conoció al abogado")},
                               lex, "es", {}, "sec");
  CHECK(sys.percent == 100.0);
  CHECK(delta_l2(sys, base) == 50.0);
  CHECK(delta_l2(10.0, 12.5) == -2.5);
  CHECK_THROWS_AS(l2_correspondence(items, {Tokens{"x"}, Tokens{"y"}}, lex, "es"), InvalidArgument);
  auto other = sys;
  other.test_set_id = "other";
  CHECK_THROWS_AS(delta_l2(other, base), InvalidArgument);
  CHECK(to_json(sys)["l2_correspondence"] == 100.0);
}
