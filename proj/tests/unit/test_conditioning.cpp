#include "doctest.h"

#include "gtag/conditioning.hpp"

using namespace gtag;

TEST_CASE("source cues name the pronoun genders") {
  CHECK(source_cue(split_ws("the cook said she was late")) == "<ctx:F>");
  CHECK(source_cue(split_ws("he told her")) == "<ctx:MF>");
  CHECK(source_cue(split_ws("the cook left")) == "<ctx:->");
  CHECK(is_cue("<ctx:N>"));
  CHECK_FALSE(is_cue("<N>"));
}

TEST_CASE("conditioned targets carry tags before the tagged phrase") {
  auto t = conditioned_target("<ctx:F>", split_ws("el cocinero habló con el abogado"),
                              {{{4, 6}, Gender::M}, {{0, 2}, Gender::F}});
  CHECK(join(t) == "<ctx:F> <F> el cocinero habló con <M> el abogado");
  CHECK(strip_conditioning(t) == split_ws("el cocinero habló con el abogado"));
}

TEST_CASE("the scoring view collapses profession nouns") {
  const auto& lex = Lexicon::builtin();
  ScoringView view(lex, "es");
  CHECK(view.map(split_ws("la cocinera habló con DEF abogadW_END")) == split_ws("la <noun> habló con DEF <noun>"));
  CHECK(view.map(std::string("mujer")) == "mujer");
  auto lat = build_lattice(split_ws("el cocinero llegó"), "es", lex, true);
  auto mapped = view.map(lat);
  CHECK(mapped.arcs.size() == lat.arcs.size());
  CHECK(mapped.arcs[1].tokens == split_ws("la <noun>"));
  CHECK(mapped.arcs[1].gender == lat.arcs[1].gender);
}
