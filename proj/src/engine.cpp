#include "framesched/engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace framesched {

FrameTrace execute_frame(const Schedule& s, const ChannelMatrix& m) {
  if (m.n_users <= 0 || m.n_slots <= 0 ||
      m.on.size() != static_cast<std::size_t>(m.n_users) * m.n_slots)
    throw std::invalid_argument("channel matrix dimensions inconsistent");
  for (const auto& g : s.groups)
    for (int u : g.members)
      if (u < 0 || u >= m.n_users) throw std::invalid_argument("schedule user index out of range");

  FrameTrace trace;
  trace.outcomes.resize(m.n_slots);
  trace.success.assign(m.n_users, 0);

  std::size_t g = 0;
  std::uint64_t done_mask = 0;  // succeeded members of the active group, by position

  for (int t = 0; t < m.n_slots; ++t) {
    if (g >= s.groups.size()) {
      trace.outcomes[t] = {SlotOutcomeKind::Idle, -1};
      continue;
    }
    const auto& members = s.groups[g].members;
    int on_count = 0;
    int on_user = -1;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (done_mask >> k & 1) continue;
      if (m.is_on(members[k], t)) {
        ++on_count;
        on_user = members[k];
      }
    }
    if (on_count == 1) {
      trace.outcomes[t] = {SlotOutcomeKind::Success, on_user};
      trace.success[on_user] = 1;
      for (std::size_t k = 0; k < members.size(); ++k)
        if (members[k] == on_user) done_mask |= std::uint64_t{1} << k;
      bool finished = true;
      for (std::size_t k = 0; k < members.size(); ++k)
        if (!(done_mask >> k & 1)) finished = false;
      if (finished) {
        ++g;
        done_mask = 0;
      }
    } else if (on_count == 0) {
      trace.outcomes[t] = {SlotOutcomeKind::Idle, -1};
    } else {
      trace.outcomes[t] = {SlotOutcomeKind::Collision, -1};
    }
  }
  return trace;
}

namespace {

void polling_rec(int n, std::size_t k, std::vector<int>& current, std::vector<char>& used,
                 std::vector<Schedule>& out) {
  if (current.size() == k) {
    Schedule s;
    for (int u : current) s.groups.push_back(ContentionGroup{{u}});
    out.push_back(std::move(s));
    return;
  }
  for (int u = 0; u < n; ++u) {
    if (used[u]) continue;
    used[u] = 1;
    current.push_back(u);
    polling_rec(n, k, current, used, out);
    current.pop_back();
    used[u] = 0;
  }
}

void group_rec(int remaining, int max_group_size, Schedule& current, std::vector<Schedule>& out) {
  out.push_back(current);
  for (int sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
    if (std::popcount(static_cast<unsigned>(sub)) > max_group_size) continue;
    ContentionGroup g;
    for (int u = 0; u < 31; ++u)
      if (sub >> u & 1) g.members.push_back(u);
    current.groups.push_back(std::move(g));
    group_rec(remaining & ~sub, max_group_size, current, out);
    current.groups.pop_back();
  }
}

bool schedule_less(const Schedule& a, const Schedule& b) {
  if (a.groups.size() != b.groups.size()) return a.groups.size() < b.groups.size();
  return std::lexicographical_compare(
      a.groups.begin(), a.groups.end(), b.groups.begin(), b.groups.end(),
      [](const ContentionGroup& x, const ContentionGroup& y) { return x.members < y.members; });
}

}  // namespace

std::vector<Schedule> enumerate_polling_schedules(int n, int max_len, bool allow_large) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (max_len < 0 || max_len > n) throw std::invalid_argument("max_len must lie in [0, n]");
  if (n > 8 && !allow_large)
    throw std::length_error("polling enumeration is capped at n <= 8; pass allow_large to override");
  std::vector<Schedule> out;
  std::vector<int> current;
  std::vector<char> used(n, 0);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(max_len); ++k)
    polling_rec(n, k, current, used, out);
  return out;
}

std::vector<Schedule> enumerate_group_schedules(int n, int max_group_size, bool allow_large) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (max_group_size < 1 || max_group_size > n)
    throw std::invalid_argument("max_group_size must lie in [1, n]");
  if (n > 6 && !allow_large)
    throw std::length_error("group enumeration is capped at n <= 6; pass allow_large to override");
  std::vector<Schedule> out;
  Schedule current;
  group_rec((1 << n) - 1, max_group_size, current, out);
  std::sort(out.begin(), out.end(), schedule_less);
  return out;
}

}  // namespace framesched
