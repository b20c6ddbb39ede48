#include "framesched/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "framesched/rng.hpp"

namespace framesched {

namespace {

std::size_t argmax_weighted(const std::vector<double>& weights, const CandidateList& candidates,
                            const std::vector<std::string>& keys) {
  if (candidates.empty()) throw std::invalid_argument("candidate list is empty");
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    double score = 0.0;
    const RateVector& r = candidates[i].second;
    for (std::size_t u = 0; u < weights.size(); ++u) score += weights[u] * r[u];
    if (score > best_score + 1e-12) {
      best_score = score;
      best = i;
    } else if (score >= best_score - 1e-12 && keys[i] < keys[best]) {
      best = i;
      best_score = std::max(best_score, score);
    }
  }
  return best;
}

std::vector<std::string> candidate_keys(const CandidateList& candidates) {
  std::vector<std::string> keys;
  keys.reserve(candidates.size());
  for (const auto& [sched, rates] : candidates) keys.push_back(schedule_to_string(sched));
  return keys;
}

}  // namespace

std::size_t maxweight_select(const VirtualQueueState& q, const CandidateList& candidates) {
  return argmax_weighted(q.backlog, candidates, candidate_keys(candidates));
}

std::size_t pf_select(const FairnessState& f, const CandidateList& candidates) {
  std::vector<double> weights(f.avg_throughput.size());
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / f.avg_throughput[i];
  return argmax_weighted(weights, candidates, candidate_keys(candidates));
}

VirtualQueueState update_virtual_queues(VirtualQueueState q,
                                        const std::vector<std::uint8_t>& delivered) {
  for (std::size_t i = 0; i < q.backlog.size(); ++i)
    q.backlog[i] = std::max(q.backlog[i] + q.target[i] - delivered[i], 0.0);
  return q;
}

FairnessState update_fairness(FairnessState f, const std::vector<std::uint8_t>& delivered) {
  for (std::size_t i = 0; i < f.avg_throughput.size(); ++i)
    f.avg_throughput[i] = std::max(
        (1.0 - f.ewma_weight) * f.avg_throughput[i] + f.ewma_weight * delivered[i],
        FairnessState::kAvgFloor);
  return f;
}

SimulationResult run_policy(const PolicyConfig& policy, const ChannelParams& channel,
                            const FrameConfig& frame, const CandidateList& candidates,
                            long n_frames, std::uint64_t seed) {
  validate(channel);
  validate(frame);
  if (candidates.empty()) throw std::invalid_argument("candidate list is empty");
  if (n_frames < 1) throw std::invalid_argument("n_frames must be >= 1");
  const int n = channel.n_users;

  if (policy.kind == PolicyConfig::Kind::MaxWeight) {
    if (static_cast<int>(policy.target.size()) != n)
      throw std::invalid_argument("target length must equal n_users");
    // Admission control precedes scheduling.
    RateRegion region;
    region.channel = channel;
    region.frame = frame;
    region.corner_points = candidates;
    const HullDecision admit = hull_feasible(policy.target, region);
    if (!admit.feasible)
      throw std::invalid_argument("max-weight target is infeasible for the candidate region");
  }

  const std::vector<std::string> keys = candidate_keys(candidates);
  VirtualQueueState q{std::vector<double>(n, 0.0), policy.target};
  FairnessState f{std::vector<double>(n, 0.01), policy.ewma_weight};
  std::mt19937_64 gen = make_stream(seed, 0);
  std::vector<long> delivered_total(n, 0);

  SimulationResult result;
  std::vector<double> weights(n);
  for (long k = 1; k <= n_frames; ++k) {
    if (policy.kind == PolicyConfig::Kind::MaxWeight) {
      weights = q.backlog;
    } else {
      for (int i = 0; i < n; ++i) weights[i] = 1.0 / f.avg_throughput[i];
    }
    const std::size_t pick = argmax_weighted(weights, candidates, keys);
    const ChannelMatrix m = sample_channel_matrix(channel, frame, gen);
    const FrameTrace trace = execute_frame(candidates[pick].first, m);
    for (int u = 0; u < n; ++u) delivered_total[u] += trace.success[u];
    if (policy.kind == PolicyConfig::Kind::MaxWeight)
      q = update_virtual_queues(std::move(q), trace.success);
    else
      f = update_fairness(std::move(f), trace.success);
    if (k % 100 == 0) {
      RateVector point(n);
      for (int u = 0; u < n; ++u) point[u] = static_cast<double>(delivered_total[u]) / k;
      result.trajectory.emplace_back(k, std::move(point));
    }
  }

  result.frames = n_frames;
  result.per_user_throughput.resize(n);
  result.ci_halfwidth.resize(n);
  for (int u = 0; u < n; ++u) {
    const double phat = static_cast<double>(delivered_total[u]) / n_frames;
    result.per_user_throughput[u] = phat;
    result.ci_halfwidth[u] = 1.96 * std::sqrt(phat * (1.0 - phat) / n_frames);
  }
  return result;
}

SimulationResult run_pf_restricted(ContentionModel model, const ChannelParams& channel,
                                   const FrameConfig& frame, long n_frames, std::uint64_t seed,
                                   double ewma_weight) {
  validate(channel);
  validate(frame);
  if (n_frames < 1) throw std::invalid_argument("n_frames must be >= 1");
  const int n = channel.n_users;

  FairnessState f{std::vector<double>(n, 0.01), ewma_weight};
  std::mt19937_64 gen = make_stream(seed, 0);
  std::vector<long> delivered_total(n, 0);
  std::unordered_map<std::string, RateVector> rate_cache;

  auto rates_of = [&](const Schedule& s, const std::string& key) -> const RateVector& {
    auto it = rate_cache.find(key);
    if (it == rate_cache.end())
      it = rate_cache.emplace(key, expected_rate(s, channel, frame)).first;
    return it->second;
  };

  SimulationResult result;
  std::vector<int> order(n);
  for (long k = 1; k <= n_frames; ++k) {
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (f.avg_throughput[a] != f.avg_throughput[b])
        return f.avg_throughput[a] < f.avg_throughput[b];  // most starved first
      return a < b;
    });

    CandidateList candidates;
    Schedule polling;
    for (int u : order) polling.groups.push_back(ContentionGroup{{u}});
    candidates.emplace_back(polling, RateVector{});
    if (model == ContentionModel::Extended) {
      for (int j = 0; j + 1 < n; ++j) {
        Schedule s;
        ContentionGroup pair{{std::min(order[j], order[j + 1]), std::max(order[j], order[j + 1])}};
        s.groups.push_back(std::move(pair));
        for (int i = 0; i < n; ++i)
          if (i != j && i != j + 1) s.groups.push_back(ContentionGroup{{order[i]}});
        candidates.emplace_back(std::move(s), RateVector{});
      }
    }
    std::vector<std::string> keys;
    keys.reserve(candidates.size());
    for (auto& [sched, rates] : candidates) {
      keys.push_back(schedule_to_string(sched));
      rates = rates_of(sched, keys.back());
    }

    std::vector<double> weights(n);
    for (int i = 0; i < n; ++i) weights[i] = 1.0 / f.avg_throughput[i];
    const std::size_t pick = argmax_weighted(weights, candidates, keys);
    const ChannelMatrix m = sample_channel_matrix(channel, frame, gen);
    const FrameTrace trace = execute_frame(candidates[pick].first, m);
    for (int u = 0; u < n; ++u) delivered_total[u] += trace.success[u];
    f = update_fairness(std::move(f), trace.success);
    if (k % 100 == 0) {
      RateVector point(n);
      for (int u = 0; u < n; ++u) point[u] = static_cast<double>(delivered_total[u]) / k;
      result.trajectory.emplace_back(k, std::move(point));
    }
  }

  result.frames = n_frames;
  result.per_user_throughput.resize(n);
  result.ci_halfwidth.resize(n);
  for (int u = 0; u < n; ++u) {
    const double phat = static_cast<double>(delivered_total[u]) / n_frames;
    result.per_user_throughput[u] = phat;
    result.ci_halfwidth[u] = 1.96 * std::sqrt(phat * (1.0 - phat) / n_frames);
  }
  return result;
}

}  // namespace framesched
