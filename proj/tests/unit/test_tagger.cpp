#include "doctest.h"

#include <sstream>

#include "gtag/error.hpp"
#include "gtag/tagger.hpp"

using namespace gtag;

TEST_CASE("inject_tags places each tag after its span") {
  Tokens src{"the", "nurse", "met", "the", "chief", "."};
  std::vector<EntityAnnotation> ann{{{1, 2}, Gender::F, Role::Primary}, {{4, 5}, Gender::M, Role::Secondary}};
  CHECK(join(inject_tags(src, ann, {Role::Primary})) == "the nurse <F> met the chief .");
  CHECK(join(inject_tags(src, ann, {Role::Primary, Role::Secondary})) == "the nurse <F> met the chief <M> .");
  CHECK(inject_tags(src, ann, {}) == src);
  CHECK(strip_tags(inject_tags(src, ann, {Role::Primary, Role::Secondary})) == src);
}

TEST_CASE("inject_tags validates spans") {
  Tokens src{"a", "b", "c"};
  CHECK_THROWS_AS(inject_tags(src, {{{2, 4}, Gender::F, Role::Primary}}, {Role::Primary}), InvalidArgument);
  CHECK_THROWS_AS(inject_tags(src, {{{1, 1}, Gender::F, Role::Primary}}, {Role::Primary}), InvalidArgument);
  CHECK_THROWS_AS(inject_tags(src, {{{0, 2}, Gender::F, Role::Primary}, {{1, 3}, Gender::M, Role::Primary}},
                              {Role::Primary}),
                  InvalidArgument);
}

TEST_CASE("label files") {
  std::istringstream ok("s1\tF\ns2\tM\n\ns3\tN\n");
  auto labels = import_labels(ok);
  CHECK(labels.size() == 3);
  CHECK(labels.at("s3") == Gender::N);

  std::istringstream dup("s1\tF\ns1\tM\n");
  CHECK_THROWS_AS(import_labels(dup), ParseError);
  std::istringstream bad("s1\tX\n");
  CHECK_THROWS_AS(import_labels(bad), ParseError);
  std::set<std::string> known{"s1"};
  std::istringstream unknown("s9\tF\n");
  CHECK_THROWS_AS(import_labels(unknown, "<t>", &known), ParseError);
}

TEST_CASE("pronoun heuristic") {
  CHECK(pronoun_gender("She") == Gender::F);
  CHECK(pronoun_gender("their") == Gender::N);
  CHECK_FALSE(pronoun_gender("it").has_value());

  auto src = split_ws("the developer argued with the designer because she was late .");
  auto h = heuristic_label(src, {{1, 2}, {5, 6}});
  CHECK(h.heuristic);
  CHECK(h.label == Gender::F);
  CHECK(h.span == Span{5, 6});  // nearest candidate
  CHECK_THROWS_AS(heuristic_label(split_ws("the cook left ."), {{1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(heuristic_label(split_ws("he said she left"), {{0, 1}}), InvalidArgument);
}
