#include "doctest.h"

#include <fstream>
#include <sstream>

#include "gtag/demo.hpp"
#include "gtag/error.hpp"
#include "gtag/pipeline.hpp"
#include "json.hpp"

using namespace gtag;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("gtag-unit-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return ExperimentConfig::parse(in, "/cfg", "t.conf");
}

}  // namespace

TEST_CASE("config parsing") {
  auto c = parse("version = 1\nname = v3  # trailing comment\nscheme = V3\nlm_order = 2\nlambda = 0.25\n"
                 "base_corpus = data/base\noutput = /abs/run\nlabel_mode = reference\nneutral = true\n");
  CHECK(c.name == "v3");
  CHECK(c.scheme == SchemeName::V3);
  CHECK(c.lm_order == 2);
  CHECK(c.lambda == 0.25);
  CHECK(c.base_corpus == fs::path("/cfg/data/base"));
  CHECK(c.output == fs::path("/abs/run"));
  CHECK(c.label_mode == LabelMode::Reference);
  CHECK(c.neutral);
  CHECK_FALSE(parse("version = 1\nscheme = none\n").scheme.has_value());
  CHECK(parse("version = 1\n").lm_order == 3);

  CHECK_THROWS_AS(parse("name = x\n"), ParseError);
  CHECK_THROWS_AS(parse("version = 2\n"), ParseError);
  CHECK_THROWS_AS(parse("version = 1\ncolour = blue\n"), ParseError);
  CHECK_THROWS_AS(parse("version = 1\nlambda = 2\n"), ParseError);
  CHECK_THROWS_AS(parse("version = 1\nscheme = V7\n"), ParseError);
  CHECK_THROWS_AS(parse("version = 1\nname = a\nname = b\n"), ParseError);
  CHECK_THROWS_AS(parse("version = 1\nlm_order = two\n"), ParseError);
}

TEST_CASE("missing gold labels stop a reference-label run in the config stage") {
  auto dir = scratch("nogold");
  write_demo(dir, Lexicon::builtin());
  {
    std::ofstream t(dir / "winomt_demo.tsv", std::ios::app);
    t << "-\t1\tthe cook left .\tcook\n";
    std::ofstream h(dir / "hyp.es", std::ios::app);
    h << "el cocinero se fue .\n";
  }
  auto cfg = ExperimentConfig::load(dir / "v1.conf");
  try {
    run_experiment(cfg);
    FAIL("expected a StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "config");
  }
  CHECK_FALSE(fs::exists(cfg.output));
}

TEST_CASE("stage errors name the failing stage") {
  auto dir = scratch("badhyp");
  write_demo(dir, Lexicon::builtin());
  { std::ofstream(dir / "hyp.es") << "una sola línea\n"; }
  try {
    run_experiment(ExperimentConfig::load(dir / "v3.conf"));
    FAIL("expected a StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "config");
    CHECK(std::string(e.what()).find("hypotheses") != std::string::npos);
  }
}

TEST_CASE("runs never replace directories they did not create") {
  auto dir = scratch("overwrite");
  write_demo(dir, Lexicon::builtin());
  auto cfg = ExperimentConfig::load(dir / "v3.conf");
  cfg.output = dir;  // the input directory itself
  try {
    run_experiment(cfg);
    FAIL("expected a StageError");
  } catch (const StageError& e) {
    CHECK(e.stage() == "config");
  }
  CHECK(fs::exists(dir / "base.es"));
}

TEST_CASE("a demo run writes the documented layout") {
  auto dir = scratch("layout");
  write_demo(dir, Lexicon::builtin());
  auto cfg = ExperimentConfig::load(dir / "v3_neutral.conf");
  run_experiment(cfg);
  const fs::path run = cfg.output;
  for (const char* f : {"report.json", "report.txt", "corpus/adapt.en", "corpus/adapt.es", "corpus/adapt.meta",
                        "models/base.lm", "models/adapted.lm", "models/system.interp", "lattices/primary.lat",
                        "lattices/secondary.lat", "lattices/neutral.lat", "outputs/baseline.primary.es",
                        "outputs/system.general.es", "outputs/tagged.primary.en", "reports/baseline.json",
                        "reports/system.json"})
    CHECK_MESSAGE(fs::exists(run / f), f);

  std::ifstream in(run / "report.json");
  auto j = nlohmann::json::parse(in);
  CHECK(j["schema"] == "gtag.run/1");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["delta_l2"].is_null());
  CHECK(j["rows"][1]["system"] == "v3_neutral");
  CHECK(j["rows"][1]["neutral_accuracy"].is_number());

  auto text = render_report(run);
  CHECK(text.rfind("en-es", 0) == 0);
  CHECK(text.find("BLEU  Acc  ΔL2") != std::string::npos);

  fs::remove(run / "report.json");
  CHECK_THROWS_AS(render_report(run), Error);
}
