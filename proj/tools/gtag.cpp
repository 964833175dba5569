// gtag: command-line front end to the tagging toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtag/bleu.hpp"
#include "gtag/conditioning.hpp"
#include "gtag/corpusgen.hpp"
#include "gtag/demo.hpp"
#include "gtag/error.hpp"
#include "gtag/evalsuite.hpp"
#include "gtag/external_scores.hpp"
#include "gtag/lattice.hpp"
#include "gtag/ngram.hpp"
#include "gtag/pipeline.hpp"
#include "gtag/tagger.hpp"
#include "gtag/testset.hpp"

namespace fs = std::filesystem;
using namespace gtag;

namespace {

Lexicon load_lexicon(const std::string& source) { return source == "builtin" ? Lexicon::builtin() : Lexicon::load(source); }

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

std::vector<std::string> read_raw_lines(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot open " + p.string());
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

struct LatticeRecord {
  std::string id;
  AlternativeLattice lattice;
};

std::vector<LatticeRecord> read_lattices(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string all = ss.str();
  std::vector<LatticeRecord> out;
  std::size_t pos = 0;
  while (pos < all.size()) {
    if (all.compare(pos, 6, "@item ") != 0) throw ParseError(p.string() + ": expected '@item' record header");
    auto eol = all.find('\n', pos);
    if (eol == std::string::npos) throw ParseError(p.string() + ": truncated record header");
    std::string id = all.substr(pos + 6, eol - pos - 6);
    auto next = all.find("\n@item ", eol);
    const std::size_t end = next == std::string::npos ? all.size() : next + 1;
    try {
      out.push_back({id, deserialize(std::string_view(all).substr(eol + 1, end - eol - 1))});
    } catch (const Error& e) {
      throw ParseError(p.string() + ": item " + id + ": " + e.what());
    }
    pos = end;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gtag - gender-tag adaptation, lattice rescoring and WinoMT-style evaluation"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::string lexicon_spec = "builtin";
  app.add_option("--lexicon", lexicon_spec, "lexicon file, or 'builtin'");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic tagged adaptation corpus");
  std::string scheme = "V3", target = "es", out_prefix;
  bool neutral = false;
  std::uint64_t seed = 0;
  gen->add_option("--scheme", scheme, "SB, V1, V2, V3 or V4");
  gen->add_option("--target", target, "target language");
  gen->add_flag("--neutral", neutral, "add neutral-gender examples");
  gen->add_option("--seed", seed, "shuffle seed (0 keeps template order)");
  gen->add_option("-o,--out", out_prefix, "output prefix")->required();

  // lm-train
  auto* lm_train = app.add_subcommand("lm-train", "train a Witten-Bell n-gram model");
  std::string input, output;
  std::size_t order = 3;
  lm_train->add_option("-i,--input", input, "tokenized text")->required();
  lm_train->add_option("--order", order, "n-gram order");
  lm_train->add_option("-o,--output", output, "model file")->required();

  // lm-interpolate
  auto* lm_interp = app.add_subcommand("lm-interpolate", "linearly interpolate two models");
  std::string base_model, adapted_model;
  double lambda = 0.5;
  lm_interp->add_option("--base", base_model)->required();
  lm_interp->add_option("--adapted", adapted_model)->required();
  lm_interp->add_option("--lambda", lambda, "weight of the base model");
  lm_interp->add_option("-o,--output", output)->required();

  // tag
  auto* tag = app.add_subcommand("tag", "inject entity tags into test-set sources");
  std::string test, labels;
  bool heuristic = false;
  tag->add_option("--test", test, "WinoMT-style TSV")->required();
  auto* labels_opt = tag->add_option("--labels", labels, "id<TAB>label file");
  tag->add_flag("--heuristic", heuristic, "label with the nearest-pronoun heuristic")->excludes(labels_opt);

  // lattice-build
  auto* lat_build = app.add_subcommand("lattice-build", "build gender-alternative lattices over hypotheses");
  lat_build->add_option("-i,--input", input, "hypotheses, one per line")->required();
  lat_build->add_option("--target", target);
  lat_build->add_flag("--neutral", neutral, "include neutral alternatives");
  lat_build->add_option("-o,--output", output)->required();

  // rescore
  auto* rescore = app.add_subcommand("rescore", "pick the best path of each lattice");
  std::string model, interp_model, scores;
  rescore->add_option("--lattices", input, "file written by lattice-build")->required();
  auto* m1 = rescore->add_option("--model", model, "n-gram model");
  auto* m2 = rescore->add_option("--interpolated", interp_model, "interpolated model");
  auto* m3 = rescore->add_option("--scores", scores, "external path scores (hash<TAB>score)");
  m1->excludes(m2)->excludes(m3);
  m2->excludes(m3);
  rescore->add_option("--target", target, "language whose nouns the model saw as <noun>");

  // eval
  auto* eval = app.add_subcommand("eval", "WinoMT-style accuracy of hypotheses");
  std::string hyp;
  bool secondary = false;
  eval->add_option("--test", test)->required();
  eval->add_option("--hyp", hyp)->required();
  eval->add_option("--target", target);
  eval->add_flag("--secondary", secondary, "report secondary-entity correspondence (L2)");

  // bleu
  auto* bleu = app.add_subcommand("bleu", "corpus BLEU (13a tokenization, exp smoothing)");
  std::string ref;
  bleu->add_option("--hyp", hyp)->required();
  bleu->add_option("--ref", ref)->required();

  // neutralize / secondary
  auto* neutral_cmd = app.add_subcommand("neutralize", "derive the they/them test set");
  neutral_cmd->add_option("--test", test)->required();
  neutral_cmd->add_option("-o,--output", output)->required();
  auto* secondary_cmd = app.add_subcommand("secondary", "derive the secondary-entity set (JSONL)");
  secondary_cmd->add_option("--test", test)->required();
  secondary_cmd->add_option("-o,--output", output)->required();

  // run / report / demo-init
  auto* run = app.add_subcommand("run", "run a whole experiment from a config file");
  std::string config, run_dir;
  run->add_option("config", config)->required();
  run->add_option("-o,--output", run_dir, "override the configured run directory");
  auto* report = app.add_subcommand("report", "print the result table of a run directory");
  report->add_option("run_dir", run_dir)->required();
  auto* demo = app.add_subcommand("demo-init", "write the demo experiment files");
  std::string demo_dir = "data/demo";
  demo->add_option("dir", demo_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    const Lexicon lexicon = load_lexicon(lexicon_spec);

    if (*gen) {
      auto corpus = generate(lexicon, TagScheme::parse(scheme), {"en", target}, neutral, seed);
      auto src = open_out(out_prefix + ".en"), tgt = open_out(out_prefix + "." + target),
           meta = open_out(out_prefix + ".meta");
      write_corpus(corpus, src, tgt, meta);
      auto s = stats(corpus);
      std::printf("%zu sentences, %zu tokens, entities M=%zu F=%zu N=%zu\n", s.sentence_count, s.token_count,
                  s.entities[0], s.entities[1], s.entities[2]);
    } else if (*lm_train) {
      NGramModel::train(read_token_lines(input), order).save(fs::path(output));
    } else if (*lm_interp) {
      auto m = interpolate(NGramModel::load(fs::path(base_model)), NGramModel::load(fs::path(adapted_model)), lambda);
      auto out = open_out(output);
      m.save(out);
    } else if (*tag) {
      auto items = import_winomt_tsv(fs::path(test), &lexicon);
      std::map<std::string, Gender> ext;
      if (!labels.empty()) {
        std::set<std::string> known;
        for (const auto& it : items) known.insert(it.id);
        ext = import_labels(fs::path(labels), &known);
      }
      for (const auto& it : items) {
        std::vector<EntityAnnotation> ann;
        if (heuristic) {
          std::vector<Span> cands{it.primary.span};
          if (it.secondary) cands.push_back(it.secondary->span);
          auto h = heuristic_label(it.source, cands);
          ann.push_back({h.span, h.label, Role::Primary});
        } else if (!labels.empty()) {
          if (auto f = ext.find(it.id); f != ext.end()) ann.push_back({it.primary.span, f->second, Role::Primary});
        } else if (it.gold) {
          ann.push_back({it.primary.span, *it.gold, Role::Primary});
        }
        std::cout << join(inject_tags(it.source, ann, {Role::Primary})) << '\n';
      }
    } else if (*lat_build) {
      auto out = open_out(output);
      std::size_t n = 0;
      for (const auto& h : read_token_lines(input))
        out << "@item " << ++n << '\n' << serialize(build_lattice(h, target, lexicon, neutral));
    } else if (*rescore) {
      if (model.empty() && interp_model.empty() && scores.empty())
        throw InvalidArgument("rescore needs --model, --interpolated or --scores");
      std::optional<NGramModel> ngram;
      std::optional<InterpolatedModel> interp;
      std::optional<ExternalScores> ext;
      if (!model.empty()) ngram = NGramModel::load(fs::path(model));
      if (!interp_model.empty()) {
        std::ifstream in(interp_model, std::ios::binary);
        if (!in) throw Error("cannot open " + interp_model);
        interp = InterpolatedModel::load(in, interp_model);
      }
      if (!scores.empty()) ext = ExternalScores::load(scores);
      const ScoringView view(lexicon, target);
      for (const auto& rec : read_lattices(input)) {
        BestPath best = ext ? apply_external_scores(rec.lattice, *ext)
                            : best_path(view.map(rec.lattice),
                                        ngram ? static_cast<const MarkovScorer&>(*ngram) : *interp);
        std::cout << join(strip_conditioning(path_tokens(rec.lattice, best.arcs))) << '\n';
      }
    } else if (*eval) {
      auto items = import_winomt_tsv(fs::path(test), &lexicon);
      auto hyps = read_token_lines(hyp);
      if (secondary) {
        auto r = l2_correspondence(derive_secondary(items), hyps, lexicon, target, {}, test);
        std::cout << to_json(r).dump(2) << '\n';
      } else {
        std::cout << to_json(evaluate(items, hyps, lexicon, target, {}, test, hyp), false).dump(2) << '\n';
      }
    } else if (*bleu) {
      auto r = corpus_bleu(read_raw_lines(hyp), read_raw_lines(ref));
      std::printf("BLEU = %.2f %.1f/%.1f/%.1f/%.1f (BP = %.3f ratio = %.3f hyp_len = %zu ref_len = %zu)\n", r.score,
                  r.precisions[0], r.precisions[1], r.precisions[2], r.precisions[3], r.brevity_penalty,
                  r.ref_len ? static_cast<double>(r.sys_len) / static_cast<double>(r.ref_len) : 0.0, r.sys_len,
                  r.ref_len);
    } else if (*neutral_cmd) {
      auto out = open_out(output);
      auto n = neutralize(import_winomt_tsv(fs::path(test), &lexicon));
      write_winomt_tsv(n, out);
      std::printf("%zu neutral items\n", n.size());
    } else if (*secondary_cmd) {
      auto out = open_out(output);
      write_jsonl(derive_secondary(import_winomt_tsv(fs::path(test), &lexicon)), out);
    } else if (*run) {
      auto cfg = ExperimentConfig::load(config);
      if (!run_dir.empty()) cfg.output = run_dir;
      run_experiment(cfg);
      std::cout << render_report(cfg.output);
    } else if (*report) {
      std::cout << render_report(run_dir);
    } else if (*demo) {
      write_demo(demo_dir, lexicon);
      std::printf("demo files written to %s\n", demo_dir.c_str());
    }
  } catch (const StageError& e) {
    std::fprintf(stderr, "gtag: stage %s failed: %s\n", e.stage().c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gtag: %s\n", e.what());
    return 1;
  }
  return 0;
}
