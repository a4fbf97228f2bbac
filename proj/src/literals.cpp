#include <algorithm>
#include <cctype>
#include <map>

#include "wh/autos.hpp"

namespace wh {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

bool unwrap(const std::string& s, std::string_view head, std::string& inner) {
  if (s.size() < head.size() + 1 || s.compare(0, head.size(), head) != 0 || s.back() != ')') return false;
  inner = s.substr(head.size(), s.size() - head.size() - 1);
  return true;
}

Word checked_word(std::string_view text, int k) {
  Word w = Word::parse(text);
  if (w.max_generator() > k) throw DomainError("word " + std::string(text) + " exceeds rank " + std::to_string(k));
  return w;
}

Letter checked_letter(const std::string& text, int k) {
  if (text.size() != 1) throw DomainError("expected a single letter, got '" + text + "'");
  const Letter x = Letter::from_char(text[0]);
  if (x.generator() > k) throw DomainError("letter " + text + " exceeds rank " + std::to_string(k));
  return x;
}

// "a->ab,b->b" into a map from generator index to image text.
std::map<int, std::string> parse_mapping(const std::string& body, int k) {
  std::map<int, std::string> out;
  for (const std::string& entry : split(body, ',')) {
    const auto arrow = entry.find("->");
    if (arrow == std::string::npos) throw DomainError("expected 'x->word' in '" + entry + "'");
    const Letter x = checked_letter(entry.substr(0, arrow), k);
    if (x.inverted()) throw DomainError("images are given for generators, not inverses: '" + entry + "'");
    if (!out.emplace(x.generator(), entry.substr(arrow + 2)).second) {
      throw DomainError("generator " + std::string(1, x.to_char()) + " mapped twice");
    }
  }
  return out;
}

std::vector<Word> images_from_mapping(const std::string& body, int k) {
  std::vector<Word> images;
  const auto mapping = parse_mapping(body, k);
  for (int i = 1; i <= k; ++i) {
    auto it = mapping.find(i);
    images.push_back(it == mapping.end() ? Word::from_reduced({Letter(i, false)}) : checked_word(it->second, k));
  }
  return images;
}

Automorphism parse_term(const std::string& s, int k) {
  std::string inner;
  if (s.empty()) throw DomainError("empty automorphism literal");
  if (s == "id") return Automorphism::identity(k);
  if (unwrap(s, "wh2(", inner)) return wh2_images(parse_char_pair(s, k));
  if (unwrap(s, "conj(", inner)) return conjugation(k, checked_word(inner, k));
  if (unwrap(s, "perm(", inner)) {
    const auto mapping = parse_mapping(inner, k);
    std::vector<Letter> targets;
    for (int i = 1; i <= k; ++i) {
      auto it = mapping.find(i);
      targets.push_back(it == mapping.end() ? Letter(i, false) : checked_letter(it->second, k));
    }
    return Relabeling::make(std::move(targets)).to_automorphism();
  }
  const auto halves = split(s, '|');
  if (halves.size() > 2) throw DomainError("at most one '|' separates images from inverse images");
  std::optional<std::vector<Word>> inverse;
  if (halves.size() == 2) inverse = images_from_mapping(halves[1], k);
  return Automorphism::from_images(images_from_mapping(halves[0], k), std::move(inverse));
}

}  // namespace

CharPair parse_char_pair(std::string_view text, int k) {
  const std::string s = strip_spaces(text);
  std::string inner;
  if (!unwrap(s, "wh2(", inner)) throw DomainError("expected wh2(T={...}; m=x), got '" + s + "'");
  const auto fields = split(inner, ';');
  if (fields.size() != 2 || fields[0].rfind("T={", 0) != 0 || fields[0].back() != '}' ||
      fields[1].rfind("m=", 0) != 0) {
    throw DomainError("expected wh2(T={...}; m=x), got '" + s + "'");
  }
  LetterSet subset;
  const std::string members = fields[0].substr(3, fields[0].size() - 4);
  if (!members.empty()) {
    for (const std::string& x : split(members, ',')) subset.insert(checked_letter(x, k));
  }
  return CharPair::make(k, subset, checked_letter(fields[1].substr(2), k));
}

Automorphism parse_automorphism(std::string_view text, int k) {
  if (k < 1 || k > kMaxRank) throw DomainError("rank must be in [1, 26]");
  const auto terms = split(strip_spaces(text), '*');
  Automorphism out = parse_term(terms.back(), k);
  for (auto it = terms.rbegin() + 1; it != terms.rend(); ++it) out = compose(parse_term(*it, k), out);
  return out;
}

}  // namespace wh
