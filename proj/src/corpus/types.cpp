#include "ambilex/corpus/types.h"

#include <fmt/format.h>

namespace ambilex::corpus {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Recognizable: return "Recognizable";
    case Category::Dichotomous: return "Dichotomous";
    case Category::Indeterminate: return "Indeterminate";
    case Category::Abstract: return "Abstract";
    case Category::AbstractFlat: return "AbstractFlat";
  }
  return "Unknown";
}

std::optional<Category> parse_category(std::string_view text) {
  for (Category c : kAllCategories) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

MalformedRecord::MalformedRecord(std::size_t line, const std::string& reason)
    : CorpusError(fmt::format("malformed record on line {}: {}", line, reason)), line_(line) {}

DuplicateId::DuplicateId(std::string id)
    : CorpusError(fmt::format("duplicate stimulus id '{}'", id)), id_(std::move(id)) {}

UnknownImageId::UnknownImageId(std::string id)
    : CorpusError(fmt::format("unknown image id '{}'", id)), id_(std::move(id)) {}

StimulusSet::StimulusSet(std::vector<StimulusImage> images) : images_(std::move(images)) {
  index_.reserve(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].id.empty()) throw CorpusError("stimulus id must be non-empty");
    if (!index_.emplace(images_[i].id, i).second) throw DuplicateId(images_[i].id);
  }
}

const StimulusImage* StimulusSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &images_[it->second];
}

std::vector<const StimulusImage*> StimulusSet::in_category(Category category) const {
  std::vector<const StimulusImage*> out;
  for (const auto& image : images_) {
    if (image.category == category) out.push_back(&image);
  }
  return out;
}

}  // namespace ambilex::corpus
