#include "doctest.h"

#include <sstream>

#include "gtag/error.hpp"
#include "gtag/testset.hpp"

using namespace gtag;

namespace {

const std::string kMini = std::string(GTAG_FIXTURES) + "/winomt_mini.tsv";

}  // namespace

TEST_CASE("WinoMT rows") {
  std::istringstream in(
      "female\t1\tThe developer argued with the designer because she did not like the design.\tdeveloper\n"
      "male\t5\tThe developer argued with the designer because he was late.\tdesigner\tdeveloper\tanti\n"
      "-\t1\tThe developer left.\tdeveloper\n");
  auto items = import_winomt_tsv(in, "<t>", &Lexicon::builtin());
  REQUIRE(items.size() == 3);
  CHECK(items[0].id == "s1");
  CHECK(items[0].gold == Gender::F);
  CHECK(items[0].primary.span == Span{1, 2});
  REQUIRE(items[0].secondary);  // found through the lexicon
  CHECK(items[0].secondary->lemma == "designer");
  CHECK(items[0].source.back() == ".");
  CHECK(items[1].primary.span == Span{5, 6});
  CHECK(items[1].stereotype == Stereotype::Anti);
  CHECK_FALSE(items[2].gold.has_value());
  CHECK_FALSE(items[2].secondary.has_value());
}

TEST_CASE("WinoMT row errors name the row") {
  std::istringstream missing("male\t1\tThe cook left.\tnurse\n");
  CHECK_THROWS_AS(import_winomt_tsv(missing), ParseError);
  std::istringstream fields("male\t1\tThe cook left.\n");
  CHECK_THROWS_AS(import_winomt_tsv(fields), ParseError);
  std::istringstream index("male\tx\tThe cook left.\tcook\n");
  try {
    import_winomt_tsv(index, "t.tsv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("t.tsv:1") != std::string::npos);
  }
}

TEST_CASE("mini fixture counts") {
  auto items = import_winomt_tsv(std::filesystem::path(kMini), &Lexicon::builtin());
  std::size_t m = 0, f = 0, n = 0;
  for (const auto& it : items) {
    m += it.gold == Gender::M;
    f += it.gold == Gender::F;
    n += it.gold == Gender::N;
  }
  CHECK(items.size() == 40);
  CHECK(m == 18);
  CHECK(f == 18);
  CHECK(n == 4);
  CHECK(neutralize(items).size() == 18);
}

TEST_CASE("neutralization rewrites pronouns and agreement") {
  auto mk = [](const std::string& s) {
    TestItem it;
    it.id = "x";
    it.gold = Gender::F;
    it.source = tokenize_sentence(s);
    it.primary = {{1, 2}, "cook"};
    return it;
  };
  auto out = neutralize({mk("The cook thanked her because she was kind."), mk("The cook lost her keys."),
                         mk("She said it was hers and she is proud of herself.")});
  REQUIRE(out.size() == 3);
  CHECK(join(out[0].source) == "The cook thanked them because they were kind .");
  CHECK(join(out[1].source) == "The cook lost their keys .");
  CHECK(join(out[2].source) == "They said it was theirs and they are proud of themselves .");
  CHECK(out[0].gold == Gender::N);

  TestItem skip = mk("The cook left because he was tired.");
  skip.gold = std::nullopt;
  CHECK(neutralize({skip}).empty());
}

TEST_CASE("secondary items and the JSONL format") {
  auto items = import_winomt_tsv(std::filesystem::path(kMini), &Lexicon::builtin());
  std::vector<TestItem> with_secondary;
  for (const auto& it : items)
    if (it.secondary) with_secondary.push_back(it);
  auto sec = derive_secondary(with_secondary);
  CHECK(sec.size() == with_secondary.size());
  CHECK(sec[0].measured == Measured::Secondary);
  CHECK(&sec[0].measured_entity() == &*sec[0].secondary);
  CHECK_THROWS_AS(derive_secondary(items), InvalidArgument);

  std::stringstream ss;
  write_jsonl(items, ss);
  CHECK(read_jsonl(ss) == items);

  std::ostringstream tsv;
  write_winomt_tsv(items, tsv);
  std::istringstream back(tsv.str());
  auto again = import_winomt_tsv(back, "<t>", &Lexicon::builtin());
  REQUIRE(again.size() == items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(again[i].primary == items[i].primary);
    CHECK(again[i].gold == items[i].gold);
  }
}
