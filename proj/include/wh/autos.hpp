#pragma once

// Whitehead automorphisms (relabelings and characteristic-pair moves) and
// general automorphisms given by basis images.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wh/core.hpp"

namespace wh {

/// Subset of Sigma as a bitmask over letter codes.
class LetterSet {
 public:
  constexpr LetterSet() = default;
  constexpr explicit LetterSet(std::uint64_t bits) : bits_(bits) {}
  static LetterSet all(int k) {
    return LetterSet(k >= 32 ? ~0ULL : ((1ULL << (2 * k)) - 1));
  }
  static LetterSet of(std::initializer_list<Letter> xs) {
    LetterSet s;
    for (Letter x : xs) s.insert(x);
    return s;
  }

  constexpr bool contains(Letter x) const { return (bits_ >> x.code()) & 1ULL; }
  constexpr void insert(Letter x) { bits_ |= 1ULL << x.code(); }
  constexpr void erase(Letter x) { bits_ &= ~(1ULL << x.code()); }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  LetterSet complement(int k) const { return LetterSet(all(k).bits_ & ~bits_); }
  /// {x^-1 : x in this set}; swaps each generator bit with its inverse bit.
  constexpr LetterSet inverted() const {
    constexpr std::uint64_t even = 0x5555555555555555ULL;
    return LetterSet(((bits_ & even) << 1) | ((bits_ >> 1) & even));
  }
  int size() const { return __builtin_popcountll(bits_); }
  std::vector<Letter> members() const;
  /// "{a,B}"
  std::string str() const;

  constexpr bool operator==(const LetterSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Characteristic pair (T, a) of a Whitehead automorphism of the second kind.
struct CharPair {
  int rank = 0;
  LetterSet subset;
  Letter multiplier;

  /// Throws DomainError unless a in T and a^-1 not in T.
  static CharPair make(int k, LetterSet subset, Letter multiplier);
  /// "wh2(T={a,B}; m=B)"
  std::string str() const;

  bool operator==(const CharPair&) const = default;
};

class Automorphism;

/// Permutation of Sigma commuting with inversion.
class Relabeling {
 public:
  /// `targets[i]` is the image of generator a_{i+1}.
  static Relabeling make(std::vector<Letter> targets);
  static Relabeling identity(int k);

  int rank() const { return static_cast<int>(targets_.size()); }
  Letter operator()(Letter x) const;
  Automorphism to_automorphism() const;
  std::string str() const;

 private:
  explicit Relabeling(std::vector<Letter> targets) : targets_(std::move(targets)) {}
  std::vector<Letter> targets_;
};

/// Endomorphism of F given by the images of the generators. Validity as an
/// automorphism is certified by attached inverse images when present.
class Automorphism {
 public:
  static Automorphism identity(int k);
  /// Throws DomainError if `inverse_images` is given and does not invert.
  static Automorphism from_images(std::vector<Word> images,
                                  std::optional<std::vector<Word>> inverse_images = std::nullopt);

  int rank() const { return static_cast<int>(images_.size()); }
  const std::vector<Word>& images() const { return images_; }
  const std::optional<std::vector<Word>>& inverse_images() const { return inverse_images_; }
  bool has_inverse() const { return inverse_images_.has_value(); }

  /// Image of a single letter.
  Word image(Letter x) const;
  std::size_t max_image_length() const;
  bool is_identity() const;
  /// "a->ab, b->b"
  std::string str() const;

  bool operator==(const Automorphism& other) const { return images_ == other.images_; }

 private:
  Automorphism(std::vector<Word> images, std::optional<std::vector<Word>> inverse_images)
      : images_(std::move(images)), inverse_images_(std::move(inverse_images)) {}

  std::vector<Word> images_;
  std::optional<std::vector<Word>> inverse_images_;
};

Automorphism wh2_images(const CharPair& pair);

Word apply(const Automorphism& phi, const Word& w);
CyclicWord apply_cyclic(const Automorphism& phi, const CyclicWord& w);
/// Length of the cyclic reduction of phi(w), without canonicalizing.
std::size_t image_cyclic_length(const Automorphism& phi, const CyclicWord& w);

/// x -> phi(psi(x)).
Automorphism compose(const Automorphism& phi, const Automorphism& psi);
/// Throws DomainError if phi carries no inverse.
Automorphism invert(const Automorphism& phi);

/// x -> g^-1 x g.
Automorphism conjugation(int k, const Word& g);

/// All characteristic pairs for rank k >= 2, grouped by multiplier from the
/// last letter of Sigma down to a_1 and, within a multiplier, by increasing
/// subset bitmask. Greedy searches break ties in this order.
std::vector<CharPair> enumerate_wh2(int k);
/// All k! 2^k relabelings.
std::vector<Relabeling> enumerate_relabelings(int k);

/// Parses "wh2(T={a,B}; m=B)".
CharPair parse_char_pair(std::string_view text, int k);

/// Parses an automorphism literal of rank k:
///   "a->ab, b->b"               basis images; unlisted generators are fixed
///   "a->ab | a->aB"             basis images with certified inverse images
///   "wh2(T={a,B}; m=B)"         Whitehead automorphism of the second kind
///   "perm(a->b, b->A)"          relabeling
///   "conj(ab)"                  x -> (ab)^-1 x (ab)
///   "id"
/// Terms joined by '*' compose right to left: "X * Y" applies Y first.
Automorphism parse_automorphism(std::string_view text, int k);

bool is_inner_wh2(const CharPair& pair);
/// True iff phi is a relabeling composed with an inner automorphism.
bool is_simple(const Automorphism& phi);

}  // namespace wh
