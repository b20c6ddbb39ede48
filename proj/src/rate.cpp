#include "framesched/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "framesched/csv.hpp"
#include "framesched/lp.hpp"

namespace framesched {

RateVector expected_rate(const Schedule& s, const ChannelParams& channel, const FrameConfig& frame) {
  if (auto violation = validate_schedule(s, channel))
    throw std::invalid_argument("invalid schedule: " + *violation);
  validate(frame);

  const int n = channel.n_users;
  const int tau = frame.slots_per_frame;
  RateVector rates(n, 0.0);
  const std::size_t n_groups = s.groups.size();
  if (n_groups == 0) return rates;

  // State: (group index, set of already-succeeded members of that group),
  // full masks excluded, plus one absorbing "done" state.
  std::vector<int> offset(n_groups);
  int n_states = 0;
  for (std::size_t g = 0; g < n_groups; ++g) {
    offset[g] = n_states;
    n_states += 1 << s.groups[g].members.size();
  }
  const int done = n_states;

  struct Transition {
    int user;
    double prob;
    int target;
  };
  std::vector<std::vector<Transition>> moves(n_states);
  std::vector<double> stay(n_states, 1.0);
  for (std::size_t g = 0; g < n_groups; ++g) {
    const auto& members = s.groups[g].members;
    const int size = static_cast<int>(members.size());
    const int full = (1 << size) - 1;
    for (int mask = 0; mask < full; ++mask) {
      const int state = offset[g] + mask;
      double total_success = 0.0;
      for (int k = 0; k < size; ++k) {
        if (mask >> k & 1) continue;
        double prob = channel.on_prob[members[k]];
        for (int j = 0; j < size; ++j) {
          if (j == k || (mask >> j & 1)) continue;
          prob *= 1.0 - channel.on_prob[members[j]];
        }
        int next_mask = mask | (1 << k);
        int target = next_mask == full
                         ? (g + 1 < n_groups ? offset[g + 1] : done)
                         : offset[g] + next_mask;
        moves[state].push_back({members[k], prob, target});
        total_success += prob;
      }
      stay[state] = 1.0 - total_success;  // idle or collision, slot wasted
    }
  }

  std::vector<double> cur(n_states + 1, 0.0), next(n_states + 1, 0.0);
  cur[offset[0]] = 1.0;
  for (int t = 0; t < tau; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    next[done] = cur[done];
    for (int state = 0; state < n_states; ++state) {
      const double pr = cur[state];
      if (pr == 0.0) continue;
      for (const auto& mv : moves[state]) {
        rates[mv.user] += pr * mv.prob;
        next[mv.target] += pr * mv.prob;
      }
      next[state] += pr * stay[state];
    }
    cur.swap(next);
  }
  return rates;
}

RateVector brute_force_rate(const Schedule& s, const ChannelParams& channel,
                            const FrameConfig& frame) {
  if (auto violation = validate_schedule(s, channel))
    throw std::invalid_argument("invalid schedule: " + *violation);
  validate(frame);
  const int n = channel.n_users;
  const int tau = frame.slots_per_frame;
  const int bits = n * tau;
  if (bits > 20) throw std::length_error("brute_force_rate requires N*tau <= 20");

  RateVector rates(n, 0.0);
  ChannelMatrix m;
  m.n_users = n;
  m.n_slots = tau;
  m.on.assign(static_cast<std::size_t>(n) * tau, 0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << bits); ++mask) {
    double weight = 1.0;
    for (int idx = 0; idx < bits; ++idx) {
      const bool on = mask >> idx & 1;
      const int user = idx / tau;
      m.on[idx] = on;
      weight *= on ? channel.on_prob[user] : 1.0 - channel.on_prob[user];
    }
    if (weight == 0.0) continue;
    const FrameTrace trace = execute_frame(s, m);
    for (int u = 0; u < n; ++u)
      if (trace.success[u]) rates[u] += weight;
  }
  return rates;
}

double expected_idle_slots(const std::vector<int>& subset, const ChannelParams& channel,
                           const FrameConfig& frame) {
  validate(channel);
  validate(frame);
  const int tau = frame.slots_per_frame;
  std::vector<char> seen(channel.n_users, 0);
  for (int u : subset) {
    if (u < 0 || u >= channel.n_users) throw std::invalid_argument("subset index out of range");
    if (seen[u]) throw std::invalid_argument("duplicate user in subset");
    seen[u] = 1;
  }
  if (subset.empty()) return tau;

  // Distribution of the total geometric service time, truncated at tau;
  // mass beyond tau contributes no idle slots.
  std::vector<double> dist(tau + 1, 0.0), next(tau + 1, 0.0);
  dist[0] = 1.0;
  for (int u : subset) {
    const double p = channel.on_prob[u];
    std::fill(next.begin(), next.end(), 0.0);
    if (p > 0.0) {
      for (int s = 0; s < tau; ++s) {
        if (dist[s] == 0.0) continue;
        double tail = p;
        for (int k = 1; s + k <= tau; ++k) {
          next[s + k] += dist[s] * tail;
          tail *= 1.0 - p;
        }
      }
    }
    dist.swap(next);
  }
  double idle = 0.0;
  for (int s = 0; s < tau; ++s) idle += (tau - s) * dist[s];
  return idle;
}

AdmissionDecision polling_admission(const RateVector& d, const ChannelParams& channel,
                                    const FrameConfig& frame) {
  validate(channel);
  validate(frame);
  if (static_cast<int>(d.size()) != channel.n_users)
    throw std::invalid_argument("demand vector length must equal n_users");
  const int n = channel.n_users;
  const double tau = frame.slots_per_frame;
  const double tol = 1e-9;

  for (int i = 0; i < n; ++i) {
    if (d[i] < -tol) {
      AdmissionDecision dec;
      dec.accepted = false;
      dec.binding = WorkloadCondition{{i}, d[i], 0.0};
      return dec;
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (d[a] != d[b]) return d[a] < d[b];
    return a < b;
  });

  // Suffix sets of the ascending-demand order, largest suffix first.
  for (int j = 0; j < n; ++j) {
    std::vector<int> subset(order.begin() + j, order.end());
    std::sort(subset.begin(), subset.end());
    double load = 0.0;
    for (int u : subset) {
      if (channel.on_prob[u] == 0.0) {
        if (d[u] > tol) load = std::numeric_limits<double>::infinity();
      } else {
        load += d[u] / (channel.on_prob[u] * tau);
      }
    }
    const double slack = 1.0 - expected_idle_slots(subset, channel, frame) / tau;
    if (load > slack + tol) {
      AdmissionDecision dec;
      dec.accepted = false;
      dec.binding = WorkloadCondition{subset, load, slack};
      return dec;
    }
  }
  return AdmissionDecision{true, std::nullopt};
}

HullDecision hull_feasible(const RateVector& d, const RateRegion& region) {
  const int n = region.channel.n_users;
  if (static_cast<int>(d.size()) != n)
    throw std::invalid_argument("demand vector length must equal n_users");
  if (region.corner_points.empty()) throw std::invalid_argument("region has no corner points");

  const int n_corners = static_cast<int>(region.corner_points.size());
  const int m = n + 1;            // one row per user plus the convexity row
  const int cols = n_corners + n; // convex weights plus disposal slacks

  std::vector<double> A(static_cast<std::size_t>(m) * cols, 0.0);
  std::vector<double> b(m, 0.0);
  for (int i = 0; i < n; ++i) b[i] = std::max(d[i], 0.0);  // free disposal
  b[n] = 1.0;
  for (int s = 0; s < n_corners; ++s) {
    const RateVector& r = region.corner_points[s].second;
    for (int i = 0; i < n; ++i) A[static_cast<std::size_t>(i) * cols + s] = r[i];
    A[static_cast<std::size_t>(n) * cols + s] = 1.0;
  }
  for (int i = 0; i < n; ++i) A[static_cast<std::size_t>(i) * cols + n_corners + i] = -1.0;

  const SimplexResult lp = solve_feasibility(m, cols, A, b);

  HullDecision dec;
  dec.feasible = lp.feasible;
  if (lp.feasible) {
    dec.weights.assign(lp.primal.begin(), lp.primal.begin() + n_corners);
    double total = 0.0;
    for (double& w : dec.weights) {
      if (w < 0.0) w = 0.0;
      total += w;
    }
    if (total > 0.0)
      for (double& w : dec.weights) w /= total;
    return dec;
  }

  dec.certificate.assign(n, 0.0);
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    dec.certificate[i] = std::max(lp.dual[i], 0.0);
    norm += dec.certificate[i];
  }
  if (norm <= 0.0) throw std::runtime_error("degenerate infeasibility certificate");
  double best_corner = -std::numeric_limits<double>::infinity();
  for (const auto& [sched, r] : region.corner_points) {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += dec.certificate[i] * r[i];
    best_corner = std::max(best_corner, v);
  }
  double value = 0.0;
  for (int i = 0; i < n; ++i) value += dec.certificate[i] * b[i];
  dec.separation = (value - best_corner) / norm;
  return dec;
}

MulticastGain multicast_gain_holds(const ContentionGroup& group, const ChannelParams& channel) {
  validate(channel);
  const int k = static_cast<int>(group.members.size());
  if (k < 2) throw std::invalid_argument("multicast group must have at least two members");
  for (int u : group.members)
    if (u < 0 || u >= channel.n_users) throw std::invalid_argument("user index out of range");

  MulticastGain gain;
  gain.holds = true;
  double load = 0.0;
  for (int i = 0; i < k; ++i) {
    if (channel.on_prob[group.members[i]] > 1.0 / k) gain.holds = false;
    double prod = 1.0;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      prod *= 1.0 - channel.on_prob[group.members[j]];
    }
    load += prod;  // d_i / p_i of the tau=1 multicast point
  }
  gain.margin = load - 1.0;
  return gain;
}

double factor_n_gain(int n, double p) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  return n * std::pow(1.0 - p, n - 1);
}

RateRegion build_rate_region(const std::vector<Schedule>& schedules, const ChannelParams& channel,
                             const FrameConfig& frame) {
  validate(channel);
  validate(frame);
  RateRegion region;
  region.channel = channel;
  region.frame = frame;

  std::map<std::string, Schedule> by_string;
  by_string.emplace("", Schedule{});  // origin is always present
  for (const auto& s : schedules) by_string.emplace(schedule_to_string(s), s);

  auto same_rates = [](const RateVector& a, const RateVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::fabs(a[i] - b[i]) > 1e-12) return false;
    return true;
  };

  for (const auto& [text, sched] : by_string) {
    RateVector rates = expected_rate(sched, channel, frame);
    bool duplicate = false;
    for (const auto& [existing, r] : region.corner_points) {
      if (same_rates(r, rates)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) region.corner_points.emplace_back(sched, std::move(rates));
  }
  return region;
}

std::string region_to_csv(const RateRegion& region) {
  std::string out = "schedule";
  for (int i = 0; i < region.channel.n_users; ++i) out += ",rate_" + std::to_string(i + 1);
  out += '\n';
  for (const auto& [sched, rates] : region.corner_points) {
    out += schedule_to_string(sched);
    for (double r : rates) out += ',' + fmt12(r);
    out += '\n';
  }
  return out;
}

}  // namespace framesched
