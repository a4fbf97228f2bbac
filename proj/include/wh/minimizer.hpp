#pragma once

// Whitehead's algorithm: greedy minimization, strict minimality, and a
// bounded search for automorphic equivalence of cyclic words.

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "wh/autos.hpp"
#include "wh/core.hpp"
#include "wh/graph.hpp"

namespace wh {

struct MinimizationStep {
  CharPair move;
  CyclicWord result;
};

struct MinimizationTrace {
  CyclicWord start;
  std::vector<MinimizationStep> steps;
  CyclicWord result;

  nlohmann::json to_json() const;
};

/// The enumerated move with the most negative length change on w (first in
/// enumeration order on ties), or nullopt if none decreases ||w||.
std::optional<CharPair> steepest_decrease(int k, const CyclicWord& w);

/// Repeats the steepest decreasing Whitehead move until none decreases ||w||.
MinimizationTrace minimize(int k, const CyclicWord& w);

/// True iff no Whitehead move of the second kind decreases ||w||.
bool is_minimal(int k, const CyclicWord& w);
/// True iff every non-inner second-kind move strictly increases ||w||.
bool is_strictly_minimal(int k, const CyclicWord& w);

enum class Equivalence { kEquivalent, kInequivalent, kCapExceeded };
const char* to_string(Equivalence e);

constexpr std::size_t kDefaultNodeCap = 1'000'000;

struct EquivalenceResult {
  Equivalence verdict;
  CyclicWord min_u;
  CyclicWord min_v;
  std::size_t explored = 0;
};

/// Minimizes both words, then searches the level set of min(u) under all
/// length-preserving Whitehead moves (both kinds) for min(v).
EquivalenceResult automorphic_equivalence(int k, const CyclicWord& u, const CyclicWord& v,
                                          std::size_t node_cap = kDefaultNodeCap);

}  // namespace wh
