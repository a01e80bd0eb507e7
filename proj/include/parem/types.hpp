#pragma once

#include <cstdint>
#include <vector>

namespace parem {

using StateId = std::int32_t;

/// Missing transition in a partial DFA table.
inline constexpr StateId kDead = -1;

/// Sorted, duplicate-free list of states.
using StateSet = std::vector<StateId>;

}  // namespace parem
