#include "ambilex/textpipe/pipeline.h"

#include <algorithm>

namespace ambilex::textpipe {

namespace {

// Each input position is classified once; multi-byte punctuation collapses to
// a single class entry so the joiner rule sees its real neighbours.
enum class CharClass { Word, Joiner, Separator };

struct Unit {
  CharClass cls;
  std::string_view bytes;  // for Joiner: the ASCII replacement
};

std::vector<Unit> classify(std::string_view text) {
  std::vector<Unit> units;
  units.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 0x80) {
      const bool alnum = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
      if (alnum) {
        units.push_back({CharClass::Word, text.substr(i, 1)});
      } else if (c == '\'') {
        units.push_back({CharClass::Joiner, "'"});
      } else if (c == '-') {
        units.push_back({CharClass::Joiner, "-"});
      } else {
        units.push_back({CharClass::Separator, {}});
      }
      ++i;
      continue;
    }
    // U+2010..U+2027 general punctuation block starts with E2 80.
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80) {
      const auto third = static_cast<unsigned char>(text[i + 2]);
      if (third == 0x98 || third == 0x99) {
        units.push_back({CharClass::Joiner, "'"});
      } else if (third == 0x90 || third == 0x91) {
        units.push_back({CharClass::Joiner, "-"});
      } else if (third >= 0x92 && third <= 0xA7) {
        units.push_back({CharClass::Separator, {}});
      } else {
        units.push_back({CharClass::Word, text.substr(i, 3)});
      }
      i += 3;
      continue;
    }
    // Other non-ASCII: keep the whole UTF-8 sequence as word material.
    std::size_t len = 1;
    if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    len = std::min(len, text.size() - i);
    units.push_back({CharClass::Word, text.substr(i, len)});
    i += len;
  }
  return units;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw_text) {
  const auto units = classify(raw_text);
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < units.size(); ++i) {
    const Unit& u = units[i];
    switch (u.cls) {
      case CharClass::Word:
        for (char ch : u.bytes) {
          current += (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch;
        }
        break;
      case CharClass::Joiner: {
        const bool inner = !current.empty() && i + 1 < units.size() && units[i + 1].cls == CharClass::Word;
        if (inner) {
          current += u.bytes;
        } else {
          flush();
        }
        break;
      }
      case CharClass::Separator:
        flush();
        break;
    }
  }
  flush();
  return tokens;
}

}  // namespace ambilex::textpipe
