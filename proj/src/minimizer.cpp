#include "wh/minimizer.hpp"

#include <deque>
#include <set>

namespace wh {

namespace {

const std::vector<CharPair>& moves_for(int k) {
  static thread_local std::vector<std::vector<CharPair>> cache(11);
  if (k < 2 || k > 10) throw DomainError("Whitehead moves are enumerated for rank 2 to 10");
  auto& slot = cache[static_cast<std::size_t>(k)];
  if (slot.empty()) slot = enumerate_wh2(k);
  return slot;
}

}  // namespace

nlohmann::json MinimizationTrace::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& s : steps) {
    steps_json.push_back({{"move", s.move.str()}, {"result", s.result.str()}, {"length", s.result.size()}});
  }
  return {{"start", start.str()},
          {"start_length", start.size()},
          {"steps", std::move(steps_json)},
          {"result", result.str()},
          {"result_length", result.size()}};
}

std::optional<CharPair> steepest_decrease(int k, const CyclicWord& w) {
  const WhiteheadGraph g = whitehead_graph(k, w);
  std::optional<CharPair> best;
  std::int64_t best_change = 0;
  for (const CharPair& tau : moves_for(k)) {
    const std::int64_t change = length_change(tau, g);
    if (change < best_change) {
      best_change = change;
      best = tau;
    }
  }
  return best;
}

MinimizationTrace minimize(int k, const CyclicWord& w) {
  MinimizationTrace trace{w, {}, w};
  while (auto tau = steepest_decrease(k, trace.result)) {
    CyclicWord next = apply_cyclic(wh2_images(*tau), trace.result);
    trace.steps.push_back({*tau, next});
    trace.result = std::move(next);
  }
  return trace;
}

bool is_minimal(int k, const CyclicWord& w) { return !steepest_decrease(k, w).has_value(); }

bool is_strictly_minimal(int k, const CyclicWord& w) {
  const WhiteheadGraph g = whitehead_graph(k, w);
  for (const CharPair& tau : moves_for(k)) {
    if (is_inner_wh2(tau)) continue;
    if (length_change(tau, g) <= 0) return false;
  }
  return true;
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::kEquivalent:
      return "equivalent";
    case Equivalence::kInequivalent:
      return "inequivalent";
    case Equivalence::kCapExceeded:
      return "cap_exceeded";
  }
  return "?";
}

EquivalenceResult automorphic_equivalence(int k, const CyclicWord& u, const CyclicWord& v,
                                          std::size_t node_cap) {
  const CyclicWord mu = minimize(k, u).result;
  const CyclicWord mv = minimize(k, v).result;
  EquivalenceResult out{Equivalence::kInequivalent, mu, mv, 0};
  if (mu.size() != mv.size()) return out;

  std::vector<Automorphism> moves;
  for (const CharPair& tau : moves_for(k)) {
    if (tau.subset != LetterSet::of({tau.multiplier})) moves.push_back(wh2_images(tau));
  }
  for (const Relabeling& t : enumerate_relabelings(k)) moves.push_back(t.to_automorphism());

  std::set<CyclicWord> seen{mu};
  std::deque<CyclicWord> frontier{mu};
  while (!frontier.empty()) {
    CyclicWord w = std::move(frontier.front());
    frontier.pop_front();
    ++out.explored;
    if (w == mv) {
      out.verdict = Equivalence::kEquivalent;
      return out;
    }
    for (const Automorphism& phi : moves) {
      if (image_cyclic_length(phi, w) != w.size()) continue;
      CyclicWord image = apply_cyclic(phi, w);
      if (seen.insert(image).second) {
        if (seen.size() > node_cap) {
          out.verdict = Equivalence::kCapExceeded;
          return out;
        }
        frontier.push_back(std::move(image));
      }
    }
  }
  return out;
}

}  // namespace wh
