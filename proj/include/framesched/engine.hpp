#ifndef FRAMESCHED_ENGINE_HPP
#define FRAMESCHED_ENGINE_HPP

#include <cstdint>
#include <vector>

#include "framesched/types.hpp"

namespace framesched {

/// One frame's channel realization: on(i, t) is true iff user i's channel is
/// ON in slot t. Stored row-major per user.
struct ChannelMatrix {
  int n_users = 0;
  int n_slots = 0;
  std::vector<std::uint8_t> on;

  bool is_on(int user, int slot) const { return on[static_cast<std::size_t>(user) * n_slots + slot] != 0; }
  std::uint8_t& at(int user, int slot) { return on[static_cast<std::size_t>(user) * n_slots + slot]; }
};

/// Per-slot outcomes of one frame plus the per-user delivery indicators.
struct FrameTrace {
  std::vector<SlotOutcome> outcomes;
  std::vector<std::uint8_t> success;
};

/// Deterministically executes a schedule against a realized channel matrix
/// under the group semantics of Schedule. Slots after the last group finishes
/// are idle with an empty addressed set.
FrameTrace execute_frame(const Schedule& s, const ChannelMatrix& m);

/// All ordered k-permutations of {0..n-1} for k = 0..max_len, as all-singleton
/// schedules, ordered by length then lexicographically by user sequence.
/// Guarded at n <= 8 unless allow_large.
std::vector<Schedule> enumerate_polling_schedules(int n, int max_len, bool allow_large = false);

/// All ordered lists of pairwise-disjoint nonempty groups over subsets of
/// {0..n-1} with group size <= max_group_size, ordered by number of groups
/// then lexicographically by the group sequence. With max_group_size = 1 this
/// equals enumerate_polling_schedules(n, n). Guarded at n <= 6 unless
/// allow_large.
std::vector<Schedule> enumerate_group_schedules(int n, int max_group_size, bool allow_large = false);

}  // namespace framesched

#endif
