#ifndef FRAMESCHED_RATE_HPP
#define FRAMESCHED_RATE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framesched/engine.hpp"
#include "framesched/types.hpp"

namespace framesched {

/// Corner points of the feasible throughput region, sorted by canonical
/// schedule string. Always contains the origin (empty schedule). Identical
/// rate vectors are deduplicated keeping the lexicographically-first schedule.
struct RateRegion {
  std::vector<std::pair<Schedule, RateVector>> corner_points;
  ChannelParams channel;
  FrameConfig frame;
};

/// One subset workload inequality: sum over the subset of d_i/(p_i tau) must
/// not exceed slack_bound = 1 - E[I_S]/tau, the expected busy fraction.
struct WorkloadCondition {
  std::vector<int> subset;
  double load = 0.0;
  double slack_bound = 0.0;
};

struct AdmissionDecision {
  bool accepted = false;
  std::optional<WorkloadCondition> binding;  // first violated condition on reject
};

struct HullDecision {
  bool feasible = false;
  std::vector<double> weights;      // convex weights per corner point, on accept
  std::vector<double> certificate;  // separating normal w >= 0, on reject
  double separation = 0.0;          // (w.d - max_s w.r_s) / |w|_1, on reject
};

struct MulticastGain {
  bool holds = false;    // all p_i <= 1/k
  double margin = 0.0;   // load of the tau=1 multicast point minus 1
};

/// Exact per-user success probability of a schedule within one frame,
/// computed by dynamic programming over (group index, succeeded members of
/// the active group).
RateVector expected_rate(const Schedule& s, const ChannelParams& channel, const FrameConfig& frame);

/// Ground-truth oracle: total enumeration of all 2^(N*tau) channel matrices.
/// Requires N*tau <= 20.
RateVector brute_force_rate(const Schedule& s, const ChannelParams& channel, const FrameConfig& frame);

/// E[(tau - sum of geometric(p_i) service times)^+] in slots. The empty
/// subset gives tau; a user with p_i = 0 never completes, so the tail
/// contributes no idle slots.
double expected_idle_slots(const std::vector<int>& subset, const ChannelParams& channel,
                           const FrameConfig& frame);

/// Nested-subset admission test for the polling model: users sorted by
/// ascending demand (ties by index), the workload condition checked for every
/// suffix set of the sorted order plus nonnegativity, N+1 checks total.
AdmissionDecision polling_admission(const RateVector& d, const ChannelParams& channel,
                                    const FrameConfig& frame);

/// Convex-hull membership with free disposal: accepts iff some convex
/// combination of corner points dominates d componentwise, solved as a linear
/// feasibility program. Rejections carry a separating certificate.
HullDecision hull_feasible(const RateVector& d, const RateRegion& region);

/// Whether the tau=1 multicast point of a k-user group lies on or beyond the
/// polling-region plane: margin = sum_i prod_{j != i} (1 - p_j) - 1, holds
/// when all p_i <= 1/k. Requires k >= 2.
MulticastGain multicast_gain_holds(const ContentionGroup& group, const ChannelParams& channel);

/// Extended-vs-polling system throughput ratio for equal per-user p at tau=1:
/// N (1-p)^(N-1).
double factor_n_gain(int n, double p);

RateRegion build_rate_region(const std::vector<Schedule>& schedules, const ChannelParams& channel,
                             const FrameConfig& frame);

/// CSV export: header then one row per corner point, canonical schedule
/// string followed by the N rates at 12 significant digits.
std::string region_to_csv(const RateRegion& region);

}  // namespace framesched

#endif
