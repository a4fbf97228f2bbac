#include "wh/autos.hpp"

#include <algorithm>
#include <numeric>

#include "wh/currents.hpp"

namespace wh {

std::vector<Letter> LetterSet::members() const {
  std::vector<Letter> out;
  for (int c = 0; c < 64; ++c) {
    if ((bits_ >> c) & 1ULL) out.push_back(Letter::from_code(c));
  }
  return out;
}

std::string LetterSet::str() const {
  std::string s = "{";
  bool first = true;
  for (Letter x : members()) {
    if (!first) s += ",";
    s += x.to_char();
    first = false;
  }
  return s + "}";
}

CharPair CharPair::make(int k, LetterSet subset, Letter multiplier) {
  if (k < 1 || k > kMaxRank) throw DomainError("rank must be in [1, 26]");
  if ((subset.bits() & ~LetterSet::all(k).bits()) != 0 || multiplier.generator() > k) {
    throw DomainError("characteristic pair uses letters beyond rank " + std::to_string(k));
  }
  if (!subset.contains(multiplier)) throw DomainError("multiplier must belong to T");
  if (subset.contains(multiplier.inverse())) throw DomainError("inverse of the multiplier must not belong to T");
  return CharPair{k, subset, multiplier};
}

std::string CharPair::str() const {
  return "wh2(T=" + subset.str() + "; m=" + std::string(1, multiplier.to_char()) + ")";
}

Relabeling Relabeling::make(std::vector<Letter> targets) {
  const int k = static_cast<int>(targets.size());
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (Letter t : targets) {
    if (t.generator() > k || seen[static_cast<std::size_t>(t.generator() - 1)]) {
      throw DomainError("relabeling must permute the generators up to inversion");
    }
    seen[static_cast<std::size_t>(t.generator() - 1)] = true;
  }
  return Relabeling(std::move(targets));
}

Relabeling Relabeling::identity(int k) {
  std::vector<Letter> t;
  for (int i = 1; i <= k; ++i) t.emplace_back(i, false);
  return Relabeling(std::move(t));
}

Letter Relabeling::operator()(Letter x) const {
  const Letter t = targets_[static_cast<std::size_t>(x.generator() - 1)];
  return x.inverted() ? t.inverse() : t;
}

Automorphism Relabeling::to_automorphism() const {
  const int k = rank();
  std::vector<Word> images;
  std::vector<Word> inverse(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    const Letter t = (*this)(Letter(i, false));
    images.push_back(Word::from_reduced({t}));
    // t = x^e  =>  preimage of generator x is a_i^e
    inverse[static_cast<std::size_t>(t.generator() - 1)] =
        Word::from_reduced({Letter(i, t.inverted())});
  }
  return Automorphism::from_images(std::move(images), std::move(inverse));
}

std::string Relabeling::str() const {
  std::string s = "perm(";
  for (int i = 1; i <= rank(); ++i) {
    if (i > 1) s += ", ";
    s += Letter(i, false).to_char();
    s += "->";
    s += (*this)(Letter(i, false)).to_char();
  }
  return s + ")";
}

namespace {

// Appends phi's image of every letter of `w` to a reducing stack.
void append_image(const std::vector<Word>& letter_images, std::span<const Letter> w,
                  std::vector<Letter>& stack) {
  for (Letter x : w) {
    for (Letter y : letter_images[static_cast<std::size_t>(x.code())].letters()) {
      if (!stack.empty() && stack.back() == y.inverse()) {
        stack.pop_back();
      } else {
        stack.push_back(y);
      }
    }
  }
}

std::vector<Word> letter_images(const Automorphism& phi) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(2 * phi.rank()));
  for (const Word& img : phi.images()) {
    out.push_back(img);
    out.push_back(img.inverse());
  }
  return out;
}

std::vector<Word> apply_to_all(const Automorphism& phi, const std::vector<Word>& ws) {
  std::vector<Word> out;
  out.reserve(ws.size());
  for (const Word& w : ws) out.push_back(apply(phi, w));
  return out;
}

Word generator_word(int i) { return Word::from_reduced({Letter(i, false)}); }

void check_word_rank(const Automorphism& phi, int max_generator) {
  if (max_generator > phi.rank()) {
    throw DomainError("word uses generator " + std::to_string(max_generator) +
                      " but the automorphism has rank " + std::to_string(phi.rank()));
  }
}

}  // namespace

Automorphism Automorphism::identity(int k) {
  std::vector<Word> images;
  for (int i = 1; i <= k; ++i) images.push_back(generator_word(i));
  auto inverse = images;
  return Automorphism(std::move(images), std::move(inverse));
}

Automorphism Automorphism::from_images(std::vector<Word> images,
                                       std::optional<std::vector<Word>> inverse_images) {
  const int k = static_cast<int>(images.size());
  if (k < 1 || k > kMaxRank) throw DomainError("rank must be in [1, 26]");
  for (const Word& w : images) {
    if (w.max_generator() > k) throw DomainError("basis image " + w.str() + " exceeds rank " + std::to_string(k));
  }
  if (inverse_images) {
    if (inverse_images->size() != images.size()) throw DomainError("inverse has a different rank");
    for (const Word& w : *inverse_images) {
      if (w.max_generator() > k) throw DomainError("inverse image " + w.str() + " exceeds rank " + std::to_string(k));
    }
    const Automorphism forward(images, std::nullopt);
    const Automorphism backward(*inverse_images, std::nullopt);
    for (int i = 1; i <= k; ++i) {
      const Word g = generator_word(i);
      if (apply(forward, apply(backward, g)) != g || apply(backward, apply(forward, g)) != g) {
        throw DomainError("supplied inverse does not invert the map on generator " + g.str());
      }
    }
  }
  return Automorphism(std::move(images), std::move(inverse_images));
}

Word Automorphism::image(Letter x) const {
  const Word& img = images_[static_cast<std::size_t>(x.generator() - 1)];
  return x.inverted() ? img.inverse() : img;
}

std::size_t Automorphism::max_image_length() const {
  std::size_t m = 0;
  for (const Word& w : images_) m = std::max(m, w.size());
  return m;
}

bool Automorphism::is_identity() const {
  for (int i = 1; i <= rank(); ++i) {
    if (images_[static_cast<std::size_t>(i - 1)] != generator_word(i)) return false;
  }
  return true;
}

std::string Automorphism::str() const {
  std::string s;
  for (int i = 1; i <= rank(); ++i) {
    if (i > 1) s += ", ";
    s += Letter(i, false).to_char();
    s += "->";
    s += images_[static_cast<std::size_t>(i - 1)].str();
  }
  return s;
}

Automorphism wh2_images(const CharPair& pair) {
  const int k = pair.rank;
  const CharPair p = CharPair::make(k, pair.subset, pair.multiplier);
  const Letter a = p.multiplier;
  std::vector<Word> images;
  for (int i = 1; i <= k; ++i) {
    const Letter x(i, false);
    std::vector<Letter> img;
    if (x.generator() == a.generator()) {
      img = {x};
    } else {
      const bool in = p.subset.contains(x);
      const bool inv_in = p.subset.contains(x.inverse());
      if (inv_in) img.push_back(a.inverse());
      img.push_back(x);
      if (in) img.push_back(a);
    }
    images.push_back(Word::from_reduced(std::move(img)));
  }

  // Preimage of each generator x is one of x, xA, ax, axA (A = a^-1).
  const Automorphism forward = Automorphism::from_images(images);
  std::vector<Word> inverse;
  for (int i = 1; i <= k; ++i) {
    const Letter x(i, false);
    const std::vector<std::vector<Letter>> candidates = {
        {x}, {x, a.inverse()}, {a, x}, {a, x, a.inverse()}};
    const Word target = generator_word(i);
    std::optional<Word> found;
    for (const auto& c : candidates) {
      Word cand = free_reduce(c);
      if (apply(forward, cand) == target) {
        found = std::move(cand);
        break;
      }
    }
    if (!found) throw DomainError("no preimage for generator " + target.str() + " under " + p.str());
    inverse.push_back(std::move(*found));
  }
  return Automorphism::from_images(std::move(images), std::move(inverse));
}

Word apply(const Automorphism& phi, const Word& w) {
  check_word_rank(phi, w.max_generator());
  const auto imgs = letter_images(phi);
  std::vector<Letter> stack;
  stack.reserve(w.size() * std::max<std::size_t>(1, phi.max_image_length()));
  append_image(imgs, w.letters(), stack);
  return Word::from_reduced(std::move(stack));
}

CyclicWord apply_cyclic(const Automorphism& phi, const CyclicWord& w) {
  const Word image = apply(phi, w.linear());
  if (image.empty()) throw DomainError("image of a nontrivial cyclic word is trivial; map is not injective");
  return cyclic_reduce(image).cyclic;
}

std::size_t image_cyclic_length(const Automorphism& phi, const CyclicWord& w) {
  check_word_rank(phi, w.max_generator());
  const auto imgs = letter_images(phi);
  std::vector<Letter> stack;
  stack.reserve(w.size() * std::max<std::size_t>(1, phi.max_image_length()));
  append_image(imgs, w.letters(), stack);
  std::size_t lo = 0;
  std::size_t hi = stack.size();
  while (hi - lo >= 2 && stack[lo] == stack[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return hi - lo;
}

Automorphism compose(const Automorphism& phi, const Automorphism& psi) {
  if (phi.rank() != psi.rank()) throw DomainError("cannot compose automorphisms of different rank");
  std::vector<Word> images = apply_to_all(phi, psi.images());
  std::optional<std::vector<Word>> inverse;
  if (phi.has_inverse() && psi.has_inverse()) {
    inverse = apply_to_all(invert(psi), *phi.inverse_images());
  }
  return Automorphism::from_images(std::move(images), std::move(inverse));
}

Automorphism invert(const Automorphism& phi) {
  if (!phi.has_inverse()) throw DomainError("automorphism " + phi.str() + " carries no inverse");
  return Automorphism::from_images(*phi.inverse_images(), phi.images());
}

Automorphism conjugation(int k, const Word& g) {
  if (g.max_generator() > k) throw DomainError("conjugator exceeds rank");
  std::vector<Word> images;
  std::vector<Word> inverse;
  for (int i = 1; i <= k; ++i) {
    const Word x = generator_word(i);
    images.push_back(concat(concat(g.inverse(), x), g));
    inverse.push_back(concat(concat(g, x), g.inverse()));
  }
  return Automorphism::from_images(std::move(images), std::move(inverse));
}

std::vector<CharPair> enumerate_wh2(int k) {
  if (k < 2 || k > kMaxRank) throw DomainError("Whitehead enumeration needs rank in [2, 26]");
  if (k > 10) throw DomainError("Whitehead enumeration is limited to rank 10");
  std::vector<CharPair> out;
  const int n = 2 * k;
  out.reserve(static_cast<std::size_t>(n) << (n - 2));
  for (int c = n - 1; c >= 0; --c) {
    const Letter a = Letter::from_code(c);
    std::vector<Letter> others;
    for (int d = 0; d < n; ++d) {
      if (d != c && d != (c ^ 1)) others.push_back(Letter::from_code(d));
    }
    for (std::uint64_t mask = 0; mask < (1ULL << others.size()); ++mask) {
      LetterSet t;
      t.insert(a);
      for (std::size_t j = 0; j < others.size(); ++j) {
        if ((mask >> j) & 1ULL) t.insert(others[j]);
      }
      out.push_back(CharPair{k, t, a});
    }
  }
  return out;
}

std::vector<Relabeling> enumerate_relabelings(int k) {
  if (k < 1 || k > 8) throw DomainError("relabeling enumeration needs rank in [1, 8]");
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Relabeling> out;
  do {
    for (std::uint32_t signs = 0; signs < (1U << k); ++signs) {
      std::vector<Letter> t;
      for (int i = 0; i < k; ++i) t.emplace_back(perm[static_cast<std::size_t>(i)], ((signs >> i) & 1U) != 0);
      out.push_back(Relabeling::make(std::move(t)));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool is_inner_wh2(const CharPair& pair) {
  if (pair.subset == LetterSet::of({pair.multiplier})) return true;
  LetterSet conj = LetterSet::all(pair.rank);
  conj.erase(pair.multiplier.inverse());
  return pair.subset == conj;
}

bool is_simple(const Automorphism& phi) {
  if (phi.rank() == 1) return true;
  // The degree-2 Euler word is strictly minimal, so only simple
  // automorphisms preserve its cyclic length.
  const EulerWord& w = cached_euler_word(phi.rank(), 2);
  return image_cyclic_length(phi, w.word) == w.word.size();
}

}  // namespace wh
