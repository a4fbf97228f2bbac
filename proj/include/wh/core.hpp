#pragma once

// Alphabet, reduced words, cyclic words and random sampling in a free group
// F(a_1, ..., a_k) of finite rank.

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wh {

/// Malformed input or a violated domain precondition.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kMaxRank = 26;

/// A letter of Sigma = A u A^-1. Letters are ordered a < A < b < B < ...,
/// which is the order used for canonical rotations and enumeration.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, bool inverted)
      : code_(static_cast<std::uint8_t>(2 * (generator - 1) + (inverted ? 1 : 0))) {}

  static constexpr Letter from_code(int code) {
    Letter x;
    x.code_ = static_cast<std::uint8_t>(code);
    return x;
  }
  static Letter from_char(char c);

  constexpr int code() const { return code_; }
  /// 1-based generator index.
  constexpr int generator() const { return code_ / 2 + 1; }
  constexpr bool inverted() const { return (code_ & 1) != 0; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }
  char to_char() const;

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint8_t code_ = 0;
};

/// Number of letters in Sigma for rank k.
constexpr int alphabet_size(int k) { return 2 * k; }

/// Parses "abAB" into letters without reducing. "1" and "" are the empty word.
std::vector<Letter> parse_letters(std::string_view text);

/// A freely reduced word.
class Word {
 public:
  Word() = default;

  /// Throws DomainError unless `letters` is freely reduced.
  static Word from_reduced(std::vector<Letter> letters);
  /// Parses and freely reduces.
  static Word parse(std::string_view text);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  /// Highest generator index used, 0 for the empty word.
  int max_generator() const;
  std::string str() const;

  auto operator<=>(const Word&) const = default;

 private:
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  friend Word free_reduce(std::span<const Letter> raw);
  friend Word concat(const Word& u, const Word& v);

  std::vector<Letter> letters_;
};

Word free_reduce(std::span<const Letter> raw);
/// Reduced product u*v.
Word concat(const Word& u, const Word& v);
bool is_freely_reduced(std::span<const Letter> letters);
bool is_cyclically_reduced(std::span<const Letter> letters);

/// A nonempty cyclically reduced word up to rotation, stored in its
/// lexicographically least rotation.
class CyclicWord {
 public:
  /// Throws DomainError if `letters` is empty or not cyclically reduced.
  static CyclicWord from_cyclically_reduced(std::vector<Letter> letters);
  /// Cyclically reduces a word given as text.
  static CyclicWord parse(std::string_view text);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  /// Letter at position i read cyclically.
  Letter at(std::size_t i) const { return letters_[i % letters_.size()]; }
  int max_generator() const;
  /// The canonical linear representative.
  Word linear() const { return Word::from_reduced(letters_); }
  std::string str() const;

  auto operator<=>(const CyclicWord&) const = default;

 private:
  explicit CyclicWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// Index of the least rotation of `s` (Booth).
std::size_t least_rotation(std::span<const Letter> s);

struct CyclicDecomposition {
  CyclicWord cyclic;
  Word conjugator;
};

/// w = conjugator * u * conjugator^-1 with u cyclically reduced.
CyclicDecomposition cyclic_reduce(const Word& w);

/// Longest pattern length accepted by count_occurrences, in multiples of ||w||.
constexpr std::size_t kMaxWraps = 32;

/// Number of positions on the circle of w from which v can be read,
/// wrapping as often as needed.
std::size_t count_occurrences(const Word& v, const CyclicWord& w);

/// Seeded 64-bit generator. Bounded draws use rejection so streams are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double uniform();
  /// Independent stream for sub-task `index`.
  Rng derive(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Uniformly random reduced word of length n (the length-n prefix of a
/// uniformly random ray).
Word sample_reduced(int k, std::size_t n, Rng& rng);

/// Uniformly random cyclically reduced word of length n >= 1, by rejection.
/// `rejections`, if given, is incremented once per rejected draw.
CyclicWord sample_cyclically_reduced(int k, std::size_t n, Rng& rng,
                                     std::uint64_t* rejections = nullptr);

/// All reduced words of exactly length n over rank k, in enumeration order.
std::vector<Word> reduced_words(int k, std::size_t n);

/// The d-th letter (0 <= d < 2k-1) allowed to follow `prev` in a reduced word.
Letter nth_successor(Letter prev, int d);
/// Inverse of nth_successor.
int successor_rank(Letter prev, Letter next);

}  // namespace wh
