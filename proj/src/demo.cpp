#include "gtag/demo.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtag/error.hpp"
#include "gtag/tagger.hpp"
#include "gtag/testset.hpp"

namespace fs = std::filesystem;

namespace gtag {

namespace {

struct Template {
  const char* en_before;  // "the A <en_before> the B because <pron> <en_after>"
  const char* en_after;
  const char* es_before;
  const char* es_after;
  const char* en_short;  // pronoun-free clauses for the base corpus
  const char* es_short;
};

constexpr std::array<Template, 3> kTemplates{{
    {"argued with", "was late", "discutió con", "porque llegó tarde", "arrived late", "llegó tarde"},
    {"talked with", "had a question", "habló con", "porque tenía una pregunta", "had a question",
     "tenía una pregunta"},
    {"met with", "needed advice", "se reunió con", "porque necesitaba consejo", "needed advice",
     "necesitaba consejo"},
}};

// Toy occupational stereotypes, only used to fill the pro/anti column.
const std::set<std::string> kFemaleStereotyped = {"secretary", "librarian", "teacher", "dancer",
                                                  "designer",  "editor",    "baker",   "translator"};

void put(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string es_np(const NounLexeme& n, Gender g) { return join(inflect(n, g, "es").tokens()); }

}  // namespace

void write_demo(const fs::path& dir, const Lexicon& lexicon) {
  if (!lexicon.has_language("es")) throw MissingLanguageError("the demo needs a Spanish lexicon");
  const auto& nouns = lexicon.nouns();
  if (nouns.size() < 6) throw InvalidArgument("the demo needs at least 6 professions");
  fs::create_directories(dir);
  const std::size_t P = nouns.size();

  // Base corpus: no pronouns anywhere, so it carries no gender cue at all.
  std::ostringstream ben, bes;
  auto base = [&](const std::string& en, const std::string& es) {
    ben << en << '\n';
    bes << es << '\n';
  };
  for (const auto& n : nouns)
    base("the " + n.english + " finished the work .", es_np(n, Gender::M) + " terminó el trabajo .");
  // Some feminine professions too, otherwise "la" never precedes a profession.
  for (std::size_t i = 0; i < P; i += 3)
    base("the " + nouns[i].english + " finished the work .", es_np(nouns[i], Gender::F) + " terminó el trabajo .");
  for (const auto& a : lexicon.adjectives())
    base("the " + a.english + " man finished the work .", "el hombre " + a.forms.at("es")[0] + " terminó el trabajo .");
  for (std::size_t i = 0; i < P; ++i) {
    const auto& a = nouns[i];
    const auto& b = nouns[(i + 7) % P];
    const auto& t = kTemplates[i % kTemplates.size()];
    base("the " + a.english + " " + t.en_before + " the " + b.english + " .",
         es_np(a, Gender::M) + " " + t.es_before + " " + es_np(b, Gender::M) + " .");
    base("the " + a.english + " " + t.en_short + " .", es_np(a, Gender::M) + " " + t.es_short + " .");
  }
  for (const auto& [en, es] : std::vector<std::pair<std::string, std::string>>{
           {"the house is big .", "la casa es grande ."},
           {"the door is open .", "la puerta está abierta ."},
           {"the city is old .", "la ciudad es antigua ."},
           {"the music is loud .", "la música está alta ."},
           {"the meeting was long .", "la reunión fue larga ."}})
    base(en, es);
  put(dir / "base.en", ben.str());
  put(dir / "base.es", bes.str());

  // Coreference set: 48 items, all hypotheses masculine.
  std::vector<TestItem> items;
  std::ostringstream hyp;
  for (std::size_t k = 0; k < 48; ++k) {
    const auto& first = nouns[k % P];
    const auto& second = nouns[(k + 5) % P];
    const bool primary_first = k % 3 == 0;
    const Gender gold = (k / 3) % 2 == 0 ? Gender::F : Gender::M;
    const auto& t = kTemplates[(k / 6) % kTemplates.size()];
    const std::string pron = gold == Gender::F ? "she" : "he";
    TestItem item;
    item.id = "s" + std::to_string(k + 1);
    item.gold = gold;
    item.source = split_ws("the " + first.english + " " + t.en_before + " the " + second.english + " because " +
                           pron + " " + t.en_after + " .");
    const std::size_t second_at = 3 + split_ws(t.en_before).size();
    TestEntity a{{1, 2}, first.english}, b{{second_at, second_at + 1}, second.english};
    item.primary = primary_first ? a : b;
    item.secondary = primary_first ? b : a;
    const auto& lemma = item.primary.lemma;
    const bool female_stereo = kFemaleStereotyped.count(lemma) != 0;
    item.stereotype = (gold == Gender::F) == female_stereo ? Stereotype::Pro : Stereotype::Anti;
    items.push_back(item);
    hyp << es_np(first, Gender::M) << ' ' << t.es_before << ' ' << es_np(second, Gender::M) << ' ' << t.es_after
        << " .\n";
  }
  {
    std::ofstream out(dir / "winomt_demo.tsv", std::ios::binary);
    write_winomt_tsv(items, out);
  }
  put(dir / "hyp.es", hyp.str());

  // Neutral variant; its hypotheses are the same masculine outputs.
  auto neutral = neutralize(items);
  {
    std::ofstream out(dir / "winomt_demo_neutral.tsv", std::ios::binary);
    write_winomt_tsv(neutral, out);
  }
  std::ostringstream hyp_neutral;
  {
    const auto hyps = split_on(hyp.str(), '\n');
    std::size_t j = 0;
    for (const auto& n : neutral) {
      while (items[j].id != n.id) ++j;
      hyp_neutral << hyps[j] << '\n';
    }
  }
  put(dir / "hyp_neutral.es", hyp_neutral.str());

  // External labels from the pronoun heuristic. The neutral set is addressed
  // with a "neutral:" prefix since both sets number their rows from s1.
  std::ostringstream labels;
  auto label_line = [&](const std::string& prefix, const TestItem& it, std::size_t row) {
    auto h = heuristic_label(it.source, {it.primary.span, it.secondary->span});
    labels << prefix << 's' << row << '\t' << to_string(h.label) << '\n';
  };
  for (std::size_t i = 0; i < items.size(); ++i) label_line("", items[i], i + 1);
  for (std::size_t i = 0; i < neutral.size(); ++i) label_line("neutral:", neutral[i], i + 1);
  put(dir / "labels_heuristic.tsv", labels.str());

  // General-domain set for BLEU; one reference is feminine where the
  // hypothesis is masculine.
  const std::vector<std::array<std::string, 3>> general = {
      {"the house is big .", "la casa es grande .", "la casa es grande ."},
      {"the teacher finished the work .", "el profesor terminó el trabajo .", "el profesor terminó el trabajo ."},
      {"she is the doctor .", "ella es la médica .", "ella es el médico ."},
      {"the city is old .", "la ciudad es antigua .", "la ciudad es vieja ."},
      {"the engineer talked with the lawyer .", "el ingeniero habló con el abogado .",
       "el ingeniero habló con el abogado ."},
      {"the meeting was long .", "la reunión fue larga .", "la reunión fue muy larga ."},
  };
  std::ostringstream gen, ges, ghy;
  for (const auto& g : general) {
    gen << g[0] << '\n';
    ges << g[1] << '\n';
    ghy << g[2] << '\n';
  }
  put(dir / "general.en", gen.str());
  put(dir / "general.es", ges.str());
  put(dir / "general.hyp.es", ghy.str());

  auto config = [&](const std::string& name, const std::string& scheme, bool neutral_run, const std::string& mode) {
    std::ostringstream c;
    c << "version = 1\n"
      << "name = " << name << "\n"
      << "scheme = " << scheme << "\n"
      << "target_language = es\n"
      << "neutral = " << (neutral_run ? "true" : "false") << "\n"
      << "lm_order = 2\n"
      << "lambda = 0.5\n"
      << "base_corpus = base\n"
      << "test_primary = winomt_demo.tsv\n"
      << "hypotheses = hyp.es\n";
    if (neutral_run) c << "test_neutral = winomt_demo_neutral.tsv\nhypotheses_neutral = hyp_neutral.es\n";
    c << "general = general\n"
      << "label_mode = " << mode << "\n";
    if (mode == "external") c << "labels = labels_heuristic.tsv\n";
    c << "output = runs/" << name << "\n";
    put(dir / (name + ".conf"), c.str());
  };
  config("sb", "SB", false, "none");
  config("v1", "V1", false, "reference");
  config("v3", "V3", false, "reference");
  config("v3_neutral", "V3", true, "reference");
  config("v3_external", "V3", true, "external");
}

}  // namespace gtag
