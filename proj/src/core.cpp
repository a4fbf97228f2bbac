#include "wh/core.hpp"

#include <algorithm>
#include <cctype>

namespace wh {

Letter Letter::from_char(char c) {
  if (c >= 'a' && c <= 'z') return Letter(c - 'a' + 1, false);
  if (c >= 'A' && c <= 'Z') return Letter(c - 'A' + 1, true);
  throw DomainError(std::string("not a letter: '") + c + "'");
}

char Letter::to_char() const {
  const char base = inverted() ? 'A' : 'a';
  return static_cast<char>(base + generator() - 1);
}

std::vector<Letter> parse_letters(std::string_view text) {
  std::vector<Letter> out;
  if (text == "1") return out;
  out.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(Letter::from_char(c));
  }
  return out;
}

bool is_freely_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i] == letters[i - 1].inverse()) return false;
  }
  return true;
}

bool is_cyclically_reduced(std::span<const Letter> letters) {
  if (!is_freely_reduced(letters)) return false;
  return letters.size() < 2 || letters.front() != letters.back().inverse();
}

Word free_reduce(std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (Letter x : raw) {
    if (!stack.empty() && stack.back() == x.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(std::move(stack));
}

Word concat(const Word& u, const Word& v) {
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() &&
         u.letters_[u.size() - 1 - cancel] == v.letters_[cancel].inverse()) {
    ++cancel;
  }
  std::vector<Letter> out(u.letters_.begin(), u.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), v.letters_.end());
  return Word(std::move(out));
}

Word Word::from_reduced(std::vector<Letter> letters) {
  if (!is_freely_reduced(letters)) throw DomainError("word is not freely reduced");
  return Word(std::move(letters));
}

Word Word::parse(std::string_view text) { return free_reduce(parse_letters(text)); }

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& x : out) x = x.inverse();
  return Word(std::move(out));
}

int Word::max_generator() const {
  int g = 0;
  for (Letter x : letters_) g = std::max(g, x.generator());
  return g;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (Letter x : letters_) s.push_back(x.to_char());
  return s;
}

std::size_t least_rotation(std::span<const Letter> s) {
  // Booth's algorithm over the doubled sequence.
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<std::ptrdiff_t> fail(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const Letter sj = s[j % n];
    std::ptrdiff_t i = fail[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) {
        k = j - static_cast<std::size_t>(i) - 1;
      }
      i = fail[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
      fail[j - k] = -1;
    } else {
      fail[j - k] = i + 1;
    }
  }
  return k % n;
}

CyclicWord CyclicWord::from_cyclically_reduced(std::vector<Letter> letters) {
  if (letters.empty()) throw DomainError("cyclic word must be nonempty");
  if (!is_cyclically_reduced(letters)) throw DomainError("word is not cyclically reduced");
  const auto shift = static_cast<std::ptrdiff_t>(least_rotation(letters));
  std::rotate(letters.begin(), letters.begin() + shift, letters.end());
  return CyclicWord(std::move(letters));
}

CyclicWord CyclicWord::parse(std::string_view text) {
  return cyclic_reduce(Word::parse(text)).cyclic;
}

int CyclicWord::max_generator() const {
  int g = 0;
  for (Letter x : letters_) g = std::max(g, x.generator());
  return g;
}

std::string CyclicWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter x : letters_) s.push_back(x.to_char());
  return s;
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  if (w.empty()) throw DomainError("cannot cyclically reduce the empty word");
  const auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(letters.begin() + static_cast<std::ptrdiff_t>(lo),
                           letters.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<Letter> conj(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(lo));
  return {CyclicWord::from_cyclically_reduced(std::move(core)),
          Word::from_reduced(std::move(conj))};
}

std::size_t count_occurrences(const Word& v, const CyclicWord& w) {
  if (v.empty()) throw DomainError("pattern must be nonempty");
  const std::size_t n = w.size();
  if (v.size() > kMaxWraps * n) {
    throw DomainError("pattern longer than " + std::to_string(kMaxWraps) + " wraps of the cyclic word");
  }
  std::size_t count = 0;
  for (std::size_t start = 0; start < n; ++start) {
    bool match = true;
    for (std::size_t j = 0; j < v.size() && match; ++j) {
      match = v[j] == w.at(start + j);
    }
    if (match) ++count;
  }
  return count;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_rank(int k) {
  if (k < 1 || k > kMaxRank) throw DomainError("rank must be in [1, 26]");
}
}  // namespace

Rng Rng::derive(std::uint64_t index) const {
  return Rng(splitmix64(splitmix64(seed_) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

Letter nth_successor(Letter prev, int d) {
  int code = d;
  if (code >= prev.inverse().code()) ++code;
  return Letter::from_code(code);
}

int successor_rank(Letter prev, Letter next) {
  const int c = next.code();
  return c > prev.inverse().code() ? c - 1 : c;
}

Word sample_reduced(int k, std::size_t n, Rng& rng) {
  check_rank(k);
  std::vector<Letter> out;
  out.reserve(n);
  if (n == 0) return Word();
  out.push_back(Letter::from_code(static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * k)))));
  for (std::size_t i = 1; i < n; ++i) {
    out.push_back(nth_successor(out.back(), static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * k - 1)))));
  }
  return Word::from_reduced(std::move(out));
}

CyclicWord sample_cyclically_reduced(int k, std::size_t n, Rng& rng, std::uint64_t* rejections) {
  if (n == 0) throw DomainError("cyclic word length must be positive");
  for (;;) {
    Word w = sample_reduced(k, n, rng);
    if (n == 1 || w.front() != w.back().inverse()) {
      return CyclicWord::from_cyclically_reduced({w.letters().begin(), w.letters().end()});
    }
    if (rejections) ++*rejections;
  }
}

std::vector<Word> reduced_words(int k, std::size_t n) {
  check_rank(k);
  std::vector<Word> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<std::vector<Letter>> level;
  for (int c = 0; c < 2 * k; ++c) level.push_back({Letter::from_code(c)});
  for (std::size_t len = 1; len < n; ++len) {
    std::vector<std::vector<Letter>> next;
    next.reserve(level.size() * static_cast<std::size_t>(2 * k - 1));
    for (const auto& w : level) {
      for (int d = 0; d < 2 * k - 1; ++d) {
        auto ext = w;
        ext.push_back(nth_successor(w.back(), d));
        next.push_back(std::move(ext));
      }
    }
    level = std::move(next);
  }
  out.reserve(level.size());
  for (auto& w : level) out.push_back(Word::from_reduced(std::move(w)));
  return out;
}

}  // namespace wh
