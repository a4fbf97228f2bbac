#pragma once

// Generic stretching factors lambda(phi) = L(phi n_A), the predicted
// Whitehead-graph centroid of phi applied to random words, the ideal
// Whitehead step, and the length-increasing factorization built from it.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wh/autos.hpp"
#include "wh/graph.hpp"

namespace wh {

/// Exact nonnegative fraction; not kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational reduced() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  /// {"num":..., "den":...} in lowest terms.
  nlohmann::json to_json() const;

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

struct StretchResult {
  Rational lambda;  // ||phi(w_m)|| / ||w_m|| at m = m_used
  int m_used = 0;
  bool stabilized = false;
  /// Value at m_used + 1 (equal to lambda when stabilized).
  Rational next;

  nlohmann::json to_json() const;
};

/// ||phi(w_m)|| / ||w_m|| for the degree-m Euler word.
Rational stretch_at(const Automorphism& phi, int m);

/// Smallest degree tried by stretch_factor: 2 max_i |phi(a_i)| + 2.
int initial_degree(const Automorphism& phi);

/// Evaluates stretch_at for m = m0, m0+1, ... until two consecutive degrees
/// agree. Throws DomainError if the Euler-word size cap is reached first
/// and `allow_unstabilized` is false; otherwise returns stabilized = false.
StretchResult stretch_factor(const Automorphism& phi, bool allow_unstabilized = false);

/// Normalized Whitehead graph of phi(w_m) at the stabilized degree.
NormalizedWhiteheadGraph phi_nA_graph(const Automorphism& phi);

struct IdealStep {
  CharPair move;
  Rational lambda_before;
  Rational lambda_after;
};

/// A second-kind move tau with lambda(tau phi) < lambda(phi). Throws
/// DomainError when phi is simple.
IdealStep ideal_step(const Automorphism& phi);

constexpr int kDefaultMaxSteps = 64;

struct Factorization {
  /// sigma_1, ..., sigma_m with phi = sigma_m ... sigma_1 alpha.
  std::vector<CharPair> sigmas;
  Automorphism alpha;
  /// L(psi_0 n_A) = 1, ..., L(psi_m n_A) = lambda(phi).
  std::vector<Rational> lengths;

  /// sigma_m ... sigma_1 alpha.
  Automorphism reconstruct() const;
  nlohmann::json to_json() const;
};

/// Peels ideal steps off phi until the remainder is simple.
Factorization factorize(const Automorphism& phi, int max_steps = kDefaultMaxSteps);

/// The characteristic pair whose automorphism inverts `pair`.
CharPair inverse_pair(const CharPair& pair);

}  // namespace wh
