#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ambilex/corpus/timestamp.h"
#include "ambilex/errors.h"

namespace ambilex::corpus {

/// Design-time label attached to each stimulus. Loose by construction; the
/// measured entropies are what place an image on the ambiguity plane.
enum class Category { Recognizable, Dichotomous, Indeterminate, Abstract, AbstractFlat };

inline constexpr std::array<Category, 5> kAllCategories = {
    Category::Recognizable, Category::Dichotomous, Category::Indeterminate, Category::Abstract,
    Category::AbstractFlat};

std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view text);

struct StimulusImage {
  std::string id;
  std::string path;
  Category category = Category::Recognizable;
  std::optional<std::string> source_note;

  bool operator==(const StimulusImage&) const = default;
};

class CorpusError : public Error {
 public:
  using Error::Error;
};

class MalformedRecord : public CorpusError {
 public:
  MalformedRecord(std::size_t line, const std::string& reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public CorpusError {
 public:
  explicit DuplicateId(std::string id);
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class UnknownImageId : public CorpusError {
 public:
  explicit UnknownImageId(std::string id);
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// Immutable, id-indexed collection of stimuli in file order.
class StimulusSet {
 public:
  StimulusSet() = default;
  // Throws DuplicateId, or CorpusError for an empty id.
  explicit StimulusSet(std::vector<StimulusImage> images);

  const std::vector<StimulusImage>& images() const { return images_; }
  std::size_t size() const { return images_.size(); }
  bool empty() const { return images_.empty(); }

  const StimulusImage* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  // Images of one category, in set order.
  std::vector<const StimulusImage*> in_category(Category category) const;

 private:
  std::vector<StimulusImage> images_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ResponseRecord {
  std::string participant_id;
  std::string session_id;
  std::string image_id;
  std::int64_t duration_ms = 0;
  std::string raw_text;
  bool vigilance_passed = false;
  Timestamp timestamp{};
  // Written by the study service; absent in hand-assembled corpora.
  std::optional<std::int64_t> measured_exposure_ms;
  bool exposure_flagged = false;

  bool operator==(const ResponseRecord&) const = default;
};

struct ResponseSet {
  std::vector<ResponseRecord> records;
  std::vector<std::filesystem::path> provenance;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

struct CellKey {
  std::string image_id;
  std::int64_t duration_ms = 0;

  auto operator<=>(const CellKey&) const = default;
};

using CellMap = std::map<CellKey, std::vector<std::string>>;

}  // namespace ambilex::corpus
