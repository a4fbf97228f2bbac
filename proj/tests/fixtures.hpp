#pragma once

#include <string>
#include <vector>

namespace fixtures {

// All single Nielsen moves of F_2 and two 2-step compositions.
inline const std::vector<std::string>& non_simple_rank2() {
  static const std::vector<std::string> list = {
      "a->ab", "a->aB", "a->ba", "a->Ba", "b->ba", "b->bA", "b->ab", "b->Ab",
      "a->ab * b->ba", "a->ab * a->ab",
  };
  return list;
}

}  // namespace fixtures
