#include "wh/ideal.hpp"

#include <algorithm>
#include <numeric>

#include "wh/currents.hpp"

namespace wh {

Rational Rational::reduced() const {
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? *this : Rational{num / g, den / g};
}

std::string Rational::str() const {
  const Rational r = reduced();
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

nlohmann::json Rational::to_json() const {
  const Rational r = reduced();
  return {{"num", r.num}, {"den", r.den}};
}

bool operator==(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  return lhs <=> rhs;
}

nlohmann::json StretchResult::to_json() const {
  nlohmann::json j = lambda.to_json();
  j["value"] = lambda.value();
  j["m_used"] = m_used;
  j["den_unreduced"] = lambda.den;
  j["num_unreduced"] = lambda.num;
  j["stabilized"] = stabilized;
  if (!stabilized) j["next"] = next.to_json();
  return j;
}

Rational stretch_at(const Automorphism& phi, int m) {
  const EulerWord& w = cached_euler_word(phi.rank(), m);
  return Rational{static_cast<std::int64_t>(image_cyclic_length(phi, w.word)),
                  static_cast<std::int64_t>(w.word.size())};
}

int initial_degree(const Automorphism& phi) {
  return 2 * static_cast<int>(phi.max_image_length()) + 2;
}

StretchResult stretch_factor(const Automorphism& phi, bool allow_unstabilized) {
  const int k = phi.rank();
  if (k < 2) throw DomainError("stretching factors need rank at least 2");
  int m = initial_degree(phi);
  if (euler_word_length(k, m) == 0) {
    throw DomainError("Euler word of degree " + std::to_string(m) + " needed for " + phi.str() +
                      " exceeds the size cap");
  }
  Rational current = stretch_at(phi, m);
  for (;;) {
    if (euler_word_length(k, m + 1) == 0) {
      if (!allow_unstabilized) {
        throw DomainError("stretching factor of " + phi.str() + " did not stabilize before degree " +
                          std::to_string(m + 1) + " exceeded the size cap");
      }
      return {current, m, false, current};
    }
    const Rational next = stretch_at(phi, m + 1);
    if (next == current) return {current, m, true, next};
    current = next;
    ++m;
  }
}

NormalizedWhiteheadGraph phi_nA_graph(const Automorphism& phi) {
  const StretchResult s = stretch_factor(phi);
  const EulerWord& w = cached_euler_word(phi.rank(), s.m_used);
  return normalized_graph(phi.rank(), apply_cyclic(phi, w.word));
}

IdealStep ideal_step(const Automorphism& phi) {
  if (is_simple(phi)) throw DomainError("automorphism " + phi.str() + " is simple; no move decreases its stretching factor");
  const int k = phi.rank();
  const StretchResult before = stretch_factor(phi);
  const EulerWord& w = cached_euler_word(k, before.m_used);
  const WhiteheadGraph g = whitehead_graph(k, apply_cyclic(phi, w.word));

  struct Candidate {
    std::int64_t change;
    std::size_t order;
    CharPair move;
  };
  std::vector<Candidate> candidates;
  const auto moves = enumerate_wh2(k);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const std::int64_t change = length_change(moves[i], g);
    if (change < 0) candidates.push_back({change, i, moves[i]});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.change != b.change ? a.change < b.change : a.order < b.order;
  });

  // Steepest descent on the surrogate; each pick is confirmed against the
  // stretching factor of the product at its own stabilized degree.
  for (const Candidate& c : candidates) {
    const StretchResult after = stretch_factor(compose(wh2_images(c.move), phi));
    if (after.lambda < before.lambda) return {c.move, before.lambda, after.lambda};
  }
  throw DomainError("no Whitehead move decreases the stretching factor of " + phi.str());
}

CharPair inverse_pair(const CharPair& pair) {
  const Automorphism inverse = invert(wh2_images(pair));
  for (const CharPair& p : enumerate_wh2(pair.rank)) {
    if (wh2_images(p) == inverse) return p;
  }
  throw std::logic_error("inverse of " + pair.str() + " is not a Whitehead automorphism");
}

Automorphism Factorization::reconstruct() const {
  Automorphism out = alpha;
  for (const CharPair& s : sigmas) out = compose(wh2_images(s), out);
  return out;
}

nlohmann::json Factorization::to_json() const {
  nlohmann::json s = nlohmann::json::array();
  for (const CharPair& p : sigmas) s.push_back(p.str());
  nlohmann::json l = nlohmann::json::array();
  for (const Rational& r : lengths) l.push_back(r.to_json());
  return {{"sigmas", std::move(s)}, {"alpha", alpha.str()}, {"L_sequence", std::move(l)}};
}

Factorization factorize(const Automorphism& phi, int max_steps) {
  std::vector<CharPair> taus;
  std::vector<Rational> lambdas{stretch_factor(phi).lambda};
  Automorphism psi = phi;
  while (!is_simple(psi)) {
    if (static_cast<int>(taus.size()) >= max_steps) {
      throw DomainError("factorization of " + phi.str() + " did not finish within " +
                        std::to_string(max_steps) + " steps");
    }
    const IdealStep step = ideal_step(psi);
    psi = compose(wh2_images(step.move), psi);
    taus.push_back(step.move);
    lambdas.push_back(step.lambda_after);
  }

  Factorization f{{}, psi, {}};
  for (auto it = taus.rbegin(); it != taus.rend(); ++it) f.sigmas.push_back(inverse_pair(*it));
  f.lengths.assign(lambdas.rbegin(), lambdas.rend());

  if (f.reconstruct() != phi) throw std::logic_error("factorization does not reproduce " + phi.str());
  if (f.lengths.front() != Rational{1, 1}) throw std::logic_error("factorization does not start at length 1");
  for (std::size_t i = 1; i < f.lengths.size(); ++i) {
    if (!(f.lengths[i - 1] < f.lengths[i])) throw std::logic_error("factorization lengths are not increasing");
  }
  return f;
}

}  // namespace wh
