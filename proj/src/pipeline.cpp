#include "gtag/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "gtag/bleu.hpp"
#include "gtag/conditioning.hpp"
#include "gtag/error.hpp"
#include "gtag/evalsuite.hpp"
#include "gtag/lattice.hpp"
#include "gtag/ngram.hpp"
#include "gtag/tagger.hpp"
#include "gtag/testset.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace gtag {

namespace {

constexpr std::string_view kRunSchema = "gtag.run/1";
constexpr std::string_view kEvalSchema = "gtag.eval/1";
constexpr const char* kRunMarker = ".gtag-run";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

fs::path with_suffix(const fs::path& prefix, const std::string& suffix) { return fs::path(prefix.string() + suffix); }

// Runs `body` and re-raises any failure tagged with the stage name.
template <typename F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

struct LabeledSet {
  std::string id;
  std::vector<TestItem> items;
  std::vector<Tokens> hypotheses;
  std::string label_prefix;  // namespace for external label ids
};

struct Rescorer {
  const Lexicon& lexicon;
  const Language& language;
  bool include_neutral;
  const ScoringView& view;

  Tokens operator()(const Tokens& conditioned, const MarkovScorer& scorer, std::string* lattice_text) const {
    auto lat = build_lattice(conditioned, language, lexicon, include_neutral);
    if (lattice_text) *lattice_text += serialize(lat);
    auto best = best_path(view.map(lat), scorer);
    return strip_conditioning(path_tokens(lat, best.arcs));
  }
};

Tokens condition_hypothesis(const TestItem& item, const Tokens& hyp, std::optional<Gender> label,
                            const Lexicon& lexicon, const Language& language) {
  std::vector<TargetTag> tags;
  if (label) {
    if (const NounLexeme* lex = lexicon.find_noun_by_english(item.primary.lemma))
      if (auto span = lexicon_align(*lex, hyp, language, lexicon)) tags.push_back({*span, *label});
  }
  return conditioned_target(source_cue(item.source), hyp, tags);
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string_view to_string(LabelMode m) {
  switch (m) {
    case LabelMode::None: return "none";
    case LabelMode::Reference: return "reference";
    case LabelMode::External: return "external";
  }
  return "none";
}

std::vector<Tokens> read_token_lines(const fs::path& path) {
  std::vector<Tokens> out;
  for (const auto& l : read_lines(path)) out.push_back(split_ws(l));
  return out;
}

ExperimentConfig ExperimentConfig::parse(std::istream& in, const fs::path& base_dir, std::string_view origin) {
  ExperimentConfig c;
  bool versioned = false;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  auto path_of = [&](const std::string& v) -> fs::path {
    if (v.empty()) return {};
    fs::path p(v);
    return p.is_absolute() ? p : (base_dir / p).lexically_normal();
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto where = std::string(origin) + ":" + std::to_string(lineno) + ": ";
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(where + "duplicate key '" + key + "'");
    auto number = [&](auto parse) {
      char* end = nullptr;
      auto v = parse(value.c_str(), &end);
      if (value.empty() || *end != '\0') throw ParseError(where + "bad number for '" + key + "': " + value);
      return v;
    };
    auto flag = [&] {
      if (value == "true" || value == "1" || value == "yes") return true;
      if (value == "false" || value == "0" || value == "no") return false;
      throw ParseError(where + "bad boolean for '" + key + "': " + value);
    };
    try {
      if (key == "version") {
        if (value != "1") throw ParseError(where + "unsupported config version " + value);
        versioned = true;
      } else if (key == "name") c.name = value;
      else if (key == "lexicon") c.lexicon = value == "builtin" ? value : path_of(value).string();
      else if (key == "scheme") {
        if (value == "none") c.scheme.reset();
        else c.scheme = TagScheme::parse(value).name;
      } else if (key == "source_language") c.languages.source = value;
      else if (key == "target_language") c.languages.target = value;
      else if (key == "neutral") c.neutral = flag();
      else if (key == "lm_order") c.lm_order = number([](const char* s, char** e) { return std::strtoull(s, e, 10); });
      else if (key == "lambda") c.lambda = number([](const char* s, char** e) { return std::strtod(s, e); });
      else if (key == "base_corpus") c.base_corpus = path_of(value);
      else if (key == "test_primary") c.test_primary = path_of(value);
      else if (key == "test_secondary") c.test_secondary = path_of(value);
      else if (key == "test_neutral") c.test_neutral = path_of(value);
      else if (key == "hypotheses") c.hypotheses = path_of(value);
      else if (key == "hypotheses_secondary") c.hypotheses_secondary = path_of(value);
      else if (key == "hypotheses_neutral") c.hypotheses_neutral = path_of(value);
      else if (key == "general") c.general = path_of(value);
      else if (key == "label_mode") {
        if (value == "none") c.label_mode = LabelMode::None;
        else if (value == "reference") c.label_mode = LabelMode::Reference;
        else if (value == "external") c.label_mode = LabelMode::External;
        else throw ParseError(where + "label_mode must be none, reference or external");
      } else if (key == "labels") c.labels = path_of(value);
      else if (key == "seed") c.seed = number([](const char* s, char** e) { return std::strtoull(s, e, 10); });
      else if (key == "output") c.output = path_of(value);
      else throw ParseError(where + "unknown key '" + key + "'");
    } catch (const InvalidArgument& e) {
      throw ParseError(where + e.what());
    }
  }
  if (!versioned) throw ParseError(std::string(origin) + ": missing 'version = 1'");
  if (c.languages.source != "en") throw ParseError(std::string(origin) + ": source_language must be en");
  if (c.lm_order < 1) throw ParseError(std::string(origin) + ": lm_order must be at least 1");
  if (!(c.lambda >= 0.0 && c.lambda <= 1.0)) throw ParseError(std::string(origin) + ": lambda must lie in [0,1]");
  return c;
}

ExperimentConfig ExperimentConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  return parse(in, path.parent_path(), path.string());
}

void run_experiment(const ExperimentConfig& cfg) {
  const Language& tgt = cfg.languages.target;
  const bool adapt = cfg.scheme.has_value();

  // Everything that can be checked without running a stage is checked here.
  Lexicon lexicon;
  std::vector<LabeledSet> sets;  // primary, secondary, neutral (in that order when present)
  std::optional<std::size_t> secondary_index, neutral_index;
  std::map<std::string, Gender> external;
  stage("config", [&] {
    if (cfg.output.empty()) throw InvalidArgument("no output directory configured");
    if (cfg.base_corpus.empty()) throw InvalidArgument("no base_corpus configured");
    if (cfg.test_primary.empty() || cfg.hypotheses.empty())
      throw InvalidArgument("test_primary and hypotheses are required");
    if (!cfg.test_neutral.empty() && cfg.hypotheses_neutral.empty())
      throw InvalidArgument("test_neutral needs hypotheses_neutral");
    if (cfg.label_mode == LabelMode::External && cfg.labels.empty())
      throw InvalidArgument("label_mode = external needs a labels file");
    for (const auto& p : {with_suffix(cfg.base_corpus, ".en"), with_suffix(cfg.base_corpus, "." + tgt)})
      if (!fs::exists(p)) throw InvalidArgument("missing base corpus file " + p.string());

    lexicon = cfg.lexicon == "builtin" ? Lexicon::builtin() : Lexicon::load(cfg.lexicon);
    if (!lexicon.has_language(tgt)) throw MissingLanguageError("lexicon has no target language '" + tgt + "'");

    auto load_set = [&](const std::string& id, const fs::path& items, const fs::path& hyps, bool secondary,
                        const std::string& prefix) {
      LabeledSet s{id, import_winomt_tsv(items, &lexicon), read_token_lines(hyps), prefix};
      if (secondary) s.items = derive_secondary(s.items);
      if (s.items.size() != s.hypotheses.size())
        throw InvalidArgument(id + " set has " + std::to_string(s.items.size()) + " items but " +
                              std::to_string(s.hypotheses.size()) + " hypotheses");
      return s;
    };
    sets.push_back(load_set("primary", cfg.test_primary, cfg.hypotheses, false, ""));
    const bool has_secondary = !cfg.test_secondary.empty() ||
                               std::all_of(sets[0].items.begin(), sets[0].items.end(),
                                           [](const TestItem& i) { return i.secondary.has_value(); });
    if (has_secondary && !sets[0].items.empty()) {
      secondary_index = sets.size();
      sets.push_back(load_set("secondary", cfg.test_secondary.empty() ? cfg.test_primary : cfg.test_secondary,
                              cfg.hypotheses_secondary.empty() ? cfg.hypotheses : cfg.hypotheses_secondary, true,
                              ""));
    }
    if (!cfg.test_neutral.empty()) {
      neutral_index = sets.size();
      sets.push_back(load_set("neutral", cfg.test_neutral, cfg.hypotheses_neutral, false, "neutral:"));
    }
    if (cfg.label_mode == LabelMode::Reference)
      for (const auto& s : sets)
        for (const auto& item : s.items)
          if (!item.gold)
            throw InvalidArgument("label_mode = reference but item " + item.id + " of the " + s.id +
                                  " set has no gold label");
    if (cfg.label_mode == LabelMode::External) {
      std::set<std::string> known;
      for (const auto& s : sets)
        for (const auto& item : s.items) known.insert(s.label_prefix + item.id);
      external = import_labels(cfg.labels, &known);
    }
    if (!cfg.general.empty())
      for (const auto& suffix : {std::string(".en"), "." + tgt, ".hyp." + tgt})
        if (!fs::exists(with_suffix(cfg.general, suffix)))
          throw InvalidArgument("missing general set file " + with_suffix(cfg.general, suffix).string());
    // Only directories this tool created are ever replaced.
    if (fs::exists(cfg.output) && !fs::is_empty(cfg.output) && !fs::exists(cfg.output / kRunMarker))
      throw InvalidArgument("refusing to overwrite " + cfg.output.string() + ": not a gtag run directory");
  });

  const fs::path out = cfg.output;
  stage("output", [&] {
    fs::remove_all(out);
    for (const auto* d : {"corpus", "models", "lattices", "outputs", "reports"}) fs::create_directories(out / d);
    write_file(out / kRunMarker, std::string(kRunSchema) + '\n');
  });

  const ScoringView view(lexicon, tgt);
  auto view_lines = [&](const std::vector<Tokens>& seqs) {
    std::string s;
    for (const auto& t : seqs) s += join(t) + '\n';
    return s;
  };

  // Base LM: untagged parallel text, conditioned on source pronouns only.
  NGramModel base = stage("base-lm", [&] {
    auto src = read_token_lines(with_suffix(cfg.base_corpus, ".en"));
    auto trg = read_token_lines(with_suffix(cfg.base_corpus, "." + tgt));
    if (src.size() != trg.size()) throw InvalidArgument("base corpus sides differ in length");
    std::vector<Tokens> seqs;
    for (std::size_t i = 0; i < src.size(); ++i) seqs.push_back(view.map(conditioned_target(source_cue(src[i]), trg[i], {})));
    write_file(out / "corpus" / "base.view", view_lines(seqs));
    auto m = NGramModel::train(seqs, cfg.lm_order);
    m.save(out / "models" / "base.lm");
    return m;
  });

  std::optional<InterpolatedModel> system;
  if (adapt) {
    auto examples = stage("generate", [&] {
      auto ex = generate(lexicon, TagScheme::get(*cfg.scheme), cfg.languages, cfg.neutral, cfg.seed);
      std::ofstream s(out / "corpus" / "adapt.en", std::ios::binary), t(out / "corpus" / ("adapt." + tgt), std::ios::binary),
          m(out / "corpus" / "adapt.meta", std::ios::binary);
      write_corpus(ex, s, t, m);
      return ex;
    });
    NGramModel adapted = stage("adapt-lm", [&] {
      std::vector<Tokens> seqs;
      for (const auto& ex : examples) {
        std::vector<TargetTag> tags;
        if (ex.tagged)
          for (std::size_t k = 0; k < ex.genders.size(); ++k) tags.push_back({ex.target_spans[k], ex.genders[k]});
        seqs.push_back(view.map(conditioned_target(source_cue(ex.source), ex.target, tags)));
      }
      write_file(out / "corpus" / "adapt.view", view_lines(seqs));
      auto m = NGramModel::train(seqs, cfg.lm_order);
      m.save(out / "models" / "adapted.lm");
      return m;
    });
    system = stage("interpolate", [&] {
      auto m = interpolate(base, adapted, cfg.lambda);
      std::ofstream f(out / "models" / "system.interp", std::ios::binary);
      m.save(f);
      return m;
    });
  }
  const MarkovScorer& system_scorer = system ? static_cast<const MarkovScorer&>(*system) : base;

  // Tagging: which label (if any) each item's primary entity carries.
  auto label_for = [&](const LabeledSet& s, const TestItem& item) -> std::optional<Gender> {
    switch (cfg.label_mode) {
      case LabelMode::None: return std::nullopt;
      case LabelMode::Reference: return item.gold;
      case LabelMode::External: {
        auto it = external.find(s.label_prefix + item.id);
        if (it == external.end()) return std::nullopt;
        return it->second;
      }
    }
    return std::nullopt;
  };

  std::vector<std::vector<Tokens>> conditioned(sets.size());
  stage("tag", [&] {
    for (std::size_t si = 0; si < sets.size(); ++si) {
      std::string tagged;
      for (std::size_t i = 0; i < sets[si].items.size(); ++i) {
        const auto& item = sets[si].items[i];
        auto label = label_for(sets[si], item);
        std::vector<EntityAnnotation> ann;
        if (label) ann.push_back({item.primary.span, *label, Role::Primary});
        tagged += join(inject_tags(item.source, ann, {Role::Primary})) + '\n';
        conditioned[si].push_back(condition_hypothesis(item, sets[si].hypotheses[i], label, lexicon, tgt));
      }
      write_file(out / "outputs" / ("tagged." + sets[si].id + ".en"), tagged);
    }
  });

  const Rescorer rescore{lexicon, tgt, cfg.neutral, view};
  struct SystemOutputs {
    std::string id;
    const MarkovScorer* scorer;
    std::vector<std::vector<Tokens>> sets;
    std::vector<Tokens> general;
  };
  std::vector<SystemOutputs> systems{{"baseline", &base, {}, {}}, {cfg.name, &system_scorer, {}, {}}};

  std::vector<std::string> general_src, general_ref;
  std::vector<Tokens> general_hyp;
  if (!cfg.general.empty()) {
    stage("general", [&] {
      general_src = read_lines(with_suffix(cfg.general, ".en"));
      general_ref = read_lines(with_suffix(cfg.general, "." + tgt));
      general_hyp = read_token_lines(with_suffix(cfg.general, ".hyp." + tgt));
      if (general_src.size() != general_ref.size() || general_src.size() != general_hyp.size())
        throw InvalidArgument("general set files differ in length");
    });
  }

  stage("rescore", [&] {
    for (std::size_t sys = 0; sys < systems.size(); ++sys) {
      auto& so = systems[sys];
      for (std::size_t si = 0; si < sets.size(); ++si) {
        std::string lattices, text;
        std::vector<Tokens> outputs;
        for (std::size_t i = 0; i < conditioned[si].size(); ++i) {
          if (sys == 0) lattices += "@item " + sets[si].items[i].id + '\n';
          outputs.push_back(rescore(conditioned[si][i], *so.scorer, sys == 0 ? &lattices : nullptr));
          text += join(outputs.back()) + '\n';
        }
        if (sys == 0) write_file(out / "lattices" / (sets[si].id + ".lat"), lattices);
        write_file(out / "outputs" / (std::string(sys == 0 ? "baseline" : "system") + "." + sets[si].id + "." + tgt), text);
        so.sets.push_back(std::move(outputs));
      }
      if (!general_hyp.empty()) {
        std::string text;
        for (std::size_t i = 0; i < general_hyp.size(); ++i) {
          auto cond = conditioned_target(source_cue(split_ws(general_src[i])), general_hyp[i], {});
          so.general.push_back(rescore(cond, *so.scorer, nullptr));
          text += join(so.general.back()) + '\n';
        }
        write_file(out / "outputs" / (std::string(sys == 0 ? "baseline" : "system") + ".general." + tgt), text);
      }
    }
  });

  stage("evaluate", [&] {
    json rows = json::array();
    std::optional<L2Result> baseline_l2;
    for (std::size_t sys = 0; sys < systems.size(); ++sys) {
      const auto& so = systems[sys];
      json detail;
      detail["schema"] = kEvalSchema;
      detail["system"] = so.id;
      json row;
      row["system"] = so.id;
      std::optional<double> bleu;
      if (!general_hyp.empty()) {
        std::vector<std::string> hyps;
        for (const auto& h : so.general) hyps.push_back(detokenize(h));
        auto b = corpus_bleu(hyps, general_ref);
        bleu = b.score;
        detail["bleu"] = {{"score", b.score}, {"brevity_penalty", b.brevity_penalty}, {"sys_len", b.sys_len},
                          {"ref_len", b.ref_len}, {"signature", "BLEU+case.mixed+numrefs.1+smooth.exp+tok.13a"}};
      }
      row["bleu"] = nullable(bleu);
      auto primary = evaluate(sets[0].items, so.sets[0], lexicon, tgt, {}, "primary", so.id);
      detail["primary"] = to_json(primary);
      row["accuracy"] = primary.accuracy();
      row["accuracy_M"] = primary.by_gender[0].percent();
      row["accuracy_F"] = primary.by_gender[1].percent();
      row["accuracy_N"] = primary.by_gender[2].percent();
      row["unaligned"] = primary.unaligned;
      row["unknown"] = primary.unknown;
      std::optional<double> l2, dl2, neutral_acc;
      if (secondary_index) {
        auto r = l2_correspondence(sets[*secondary_index].items, so.sets[*secondary_index], lexicon, tgt, {},
                                   "secondary");
        detail["secondary"] = to_json(r);
        l2 = r.percent;
        if (sys == 0) baseline_l2 = r;
        else dl2 = delta_l2(r, *baseline_l2);
      }
      if (neutral_index) {
        auto r = evaluate(sets[*neutral_index].items, so.sets[*neutral_index], lexicon, tgt, {}, "neutral", so.id);
        detail["neutral"] = to_json(r);
        neutral_acc = r.accuracy();
      }
      row["l2_correspondence"] = nullable(l2);
      row["delta_l2"] = nullable(dl2);
      row["neutral_accuracy"] = nullable(neutral_acc);
      rows.push_back(row);
      write_file(out / "reports" / ((sys == 0 ? std::string("baseline") : std::string("system")) + ".json"),
                 detail.dump(2) + '\n');
    }

    json run;
    run["schema"] = kRunSchema;
    run["name"] = cfg.name;
    run["language_pair"] = cfg.languages.source + "-" + tgt;
    run["scheme"] = cfg.scheme ? std::string(TagScheme::get(*cfg.scheme).label()) : std::string("none");
    run["neutral"] = cfg.neutral;
    run["label_mode"] = to_string(cfg.label_mode);
    run["lm_order"] = cfg.lm_order;
    run["lambda"] = cfg.lambda;
    run["seed"] = cfg.seed;
    run["rows"] = rows;
    write_file(out / "report.json", run.dump(2) + '\n');
  });

  stage("report", [&] { write_file(out / "report.txt", render_report(out)); });
}

std::string render_report(const fs::path& run_dir) {
  const fs::path p = run_dir / "report.json";
  std::ifstream in(p);
  if (!in) throw Error("incomplete run: " + p.string() + " is missing");
  json run;
  try {
    run = json::parse(in);
  } catch (const json::exception& e) {
    throw Error("incomplete run: cannot parse " + p.string() + ": " + e.what());
  }
  if (!run.contains("schema") || run["schema"] != kRunSchema || !run.contains("rows"))
    throw Error("incomplete run: " + p.string() + " is not a gtag.run/1 report");

  auto cell = [](const json& v, bool sign = false) -> std::string {
    if (v.is_null()) return "-";
    auto s = format_fixed(v.get<double>(), 1);
    if (sign && v.get<double>() >= 0.0) s = "+" + s;
    return s;
  };
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };

  std::ostringstream o;
  o << run["language_pair"].get<std::string>() << "  (scheme " << run["scheme"].get<std::string>() << ", labels "
    << run["label_mode"].get<std::string>() << ", lambda " << format_fixed(run["lambda"].get<double>(), 2) << ")\n";
  o << pad("system", 14) << "BLEU  Acc  ΔL2\n";
  for (const auto& r : run["rows"])
    o << pad(r["system"].get<std::string>(), 14) << cell(r["bleu"]) << "  " << cell(r["accuracy"]) << "  "
      << cell(r["delta_l2"], true) << '\n';
  o << '\n' << pad("system", 14) << "Acc(M)  Acc(F)  L2  Acc(neutral set)\n";
  for (const auto& r : run["rows"])
    o << pad(r["system"].get<std::string>(), 14) << cell(r["accuracy_M"]) << "  " << cell(r["accuracy_F"]) << "  "
      << cell(r["l2_correspondence"]) << "  " << cell(r["neutral_accuracy"]) << '\n';
  return o.str();
}

}  // namespace gtag
