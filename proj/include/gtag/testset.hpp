#pragma once

// WinoMT-style coreference test items and the derived secondary-entity and
// neutral sets.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gtag/gender.hpp"
#include "gtag/morphlex.hpp"
#include "gtag/tokens.hpp"

namespace gtag {

enum class Stereotype { Pro, Anti, None };

std::string_view to_string(Stereotype s);
Stereotype parse_stereotype(std::string_view s);

struct TestEntity {
  Span span;
  std::string lemma;
  friend bool operator==(const TestEntity&, const TestEntity&) = default;
};

enum class Measured { Primary, Secondary };

struct TestItem {
  std::string id;
  std::optional<Gender> gold;  // absent in unlabeled sets
  Tokens source;
  TestEntity primary;
  std::optional<TestEntity> secondary;
  Stereotype stereotype = Stereotype::None;
  Measured measured = Measured::Primary;

  /// The entity whose target inflection is judged.
  const TestEntity& measured_entity() const;
  friend bool operator==(const TestItem&, const TestItem&) = default;
};

/// Rows `gender <TAB> index <TAB> sentence <TAB> lemma [<TAB> secondary-lemma
/// [<TAB> pro|anti]]`. Ids are "s<row>". Without a secondary column the other
/// lexicon profession in the sentence (if exactly one) becomes the secondary.
std::vector<TestItem> import_winomt_tsv(std::istream& in, std::string_view origin = "<winomt>",
                                        const Lexicon* lexicon = nullptr);
std::vector<TestItem> import_winomt_tsv(const std::filesystem::path& path, const Lexicon* lexicon = nullptr);
void write_winomt_tsv(const std::vector<TestItem>& items, std::ostream& out);

/// Native format: one JSON object per line.
void write_jsonl(const std::vector<TestItem>& items, std::ostream& out);
std::vector<TestItem> read_jsonl(std::istream& in, std::string_view origin = "<jsonl>");

std::vector<TestItem> derive_secondary(const std::vector<TestItem>& items);

/// they/them/their substitution over binary items, deduplicated on the result.
std::vector<TestItem> neutralize(const std::vector<TestItem>& items);

}  // namespace gtag
