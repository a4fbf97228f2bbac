#pragma once

// Geodesic currents truncated to a finite radius: the table of occurrence
// coordinates <v, nu> for reduced words 1 <= |v| <= R.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "wh/autos.hpp"
#include "wh/core.hpp"

namespace wh {

constexpr int kDefaultRadius = 4;
constexpr double kCurrentTolerance = 1e-9;

class TruncatedCurrent {
 public:
  TruncatedCurrent(int k, int radius);

  int rank() const { return k_; }
  int radius() const { return radius_; }

  /// <v, nu>; throws DomainError if v is empty or longer than the radius.
  double at(const Word& v) const;
  void set(const Word& v, double value);
  const std::map<Word, double>& coords() const { return coords_; }

  /// Sum of <v, nu> over |v| = m.
  double level_sum(int m) const;
  TruncatedCurrent scaled(double s) const;

  nlohmann::json to_json() const;
  static TruncatedCurrent from_json(const nlohmann::json& j);

 private:
  void check_key(const Word& v) const;

  int k_;
  int radius_;
  std::map<Word, double> coords_;
};

/// <v, n_A> = 1 / (2k (2k-1)^{|v|-1}).
TruncatedCurrent uniform_current(int k, int radius);
/// Counting current of the conjugacy class of g (not of its root).
TruncatedCurrent rational_current(int k, const Word& g, int radius);

struct InvarianceViolation {
  enum class Side { kRight, kLeft };
  Word v;
  Side side;
  double expected;  // <v, nu>
  double actual;    // sum over one-letter extensions
};

/// Checks <v,nu> = sum_x <vx,nu> = sum_x <xv,nu> for all |v| < R.
std::vector<InvarianceViolation> check_invariance(const TruncatedCurrent& nu,
                                                  double tolerance = kCurrentTolerance);

/// L(nu), the sum of the radius-1 coordinates.
double length(const TruncatedCurrent& nu);

/// A cyclic word in which every reduced word of length m occurs exactly once.
struct EulerWord {
  int rank = 0;
  int degree = 0;  // m
  CyclicWord word;
};

constexpr std::uint64_t kDefaultEulerCap = std::uint64_t{1} << 24;

/// 2k (2k-1)^{m-1}, or 0 on overflow past `cap`.
std::uint64_t euler_word_length(int k, int m, std::uint64_t cap = kDefaultEulerCap);

/// Euler circuit of the graph whose vertices are reduced words of length m-1
/// and whose edges are reduced words of length m. Deterministic.
EulerWord euler_word(int k, int m, std::uint64_t cap = kDefaultEulerCap);
/// Process-wide memoized euler_word with the default cap.
const EulerWord& cached_euler_word(int k, int m);

struct LimitCheckReport {
  int rank = 0;
  std::size_t n = 0;
  std::size_t samples = 0;
  int radius = 0;
  /// Coordinates are compared against phi(n_A) approximated at this degree.
  int reference_degree = 0;
  double max_deviation = 0.0;
  Word worst_word;
  /// Mean of ||phi(omega_n)|| / n.
  double mean_length_ratio = 0.0;

  nlohmann::json to_json() const;
};

/// Mean of <v, phi(omega_n)>/n over random prefixes omega_n versus <v, phi n_A>
/// for all |v| <= radius.
LimitCheckReport empirical_limit_check(const Automorphism& phi, std::size_t n, std::size_t samples,
                                       Rng& rng, int radius = 3);

}  // namespace wh
