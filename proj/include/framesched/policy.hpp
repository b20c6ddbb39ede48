#ifndef FRAMESCHED_POLICY_HPP
#define FRAMESCHED_POLICY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "framesched/rate.hpp"
#include "framesched/sim.hpp"
#include "framesched/types.hpp"

namespace framesched {

/// Virtual queues: backlog_i tracks target arrivals minus deliveries,
/// clamped at zero.
struct VirtualQueueState {
  std::vector<double> backlog;
  RateVector target;
};

/// Gradient-scheduler state: EWMA of per-frame deliveries, floored at
/// kAvgFloor so the 1/avg weights stay finite.
struct FairnessState {
  std::vector<double> avg_throughput;
  double ewma_weight = 0.01;
  static constexpr double kAvgFloor = 1e-6;
};

using CandidateList = std::vector<std::pair<Schedule, RateVector>>;

/// Index of the candidate maximizing sum_i backlog_i * rate_i; ties broken by
/// the lexicographically-first canonical schedule string.
std::size_t maxweight_select(const VirtualQueueState& q, const CandidateList& candidates);

/// Index of the candidate maximizing sum_i rate_i / avg_throughput_i.
std::size_t pf_select(const FairnessState& f, const CandidateList& candidates);

VirtualQueueState update_virtual_queues(VirtualQueueState q,
                                        const std::vector<std::uint8_t>& delivered);

FairnessState update_fairness(FairnessState f, const std::vector<std::uint8_t>& delivered);

struct PolicyConfig {
  enum class Kind { MaxWeight, ProportionalFair };
  Kind kind = Kind::MaxWeight;
  RateVector target;          // packets per frame, max-weight only
  double ewma_weight = 0.01;  // proportional fair only
};

/// Per-frame policy loop over a fixed candidate set: select, sample a channel
/// matrix, execute, update state. A max-weight target must be hull-feasible
/// for the candidate region (throws std::invalid_argument otherwise). The
/// trajectory records cumulative throughput every 100 frames.
SimulationResult run_policy(const PolicyConfig& policy, const ChannelParams& channel,
                            const FrameConfig& frame, const CandidateList& candidates,
                            long n_frames, std::uint64_t seed);

enum class ContentionModel { Polling, Extended };

/// Proportional-fair loop for networks too large to enumerate: each frame
/// the candidate set is rebuilt from the current weight ordering (descending
/// 1/avg). Polling offers the weight-ordered singleton schedule; the extended
/// model additionally offers, for every pair adjacent in that ordering, the
/// schedule that serves the pair as a leading multicast group followed by the
/// remaining users in order.
SimulationResult run_pf_restricted(ContentionModel model, const ChannelParams& channel,
                                   const FrameConfig& frame, long n_frames, std::uint64_t seed,
                                   double ewma_weight = 0.01);

}  // namespace framesched

#endif
