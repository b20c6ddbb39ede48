#include "framesched/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "framesched/csv.hpp"
#include "framesched/rng.hpp"

namespace framesched {

ChannelMatrix sample_channel_matrix(const ChannelParams& channel, const FrameConfig& frame,
                                    std::mt19937_64& gen) {
  validate(channel);
  validate(frame);
  ChannelMatrix m;
  m.n_users = channel.n_users;
  m.n_slots = frame.slots_per_frame;
  m.on.resize(static_cast<std::size_t>(m.n_users) * m.n_slots);
  for (int u = 0; u < m.n_users; ++u)
    for (int t = 0; t < m.n_slots; ++t) m.at(u, t) = bernoulli(gen, channel.on_prob[u]) ? 1 : 0;
  return m;
}

SimulationResult simulate_schedule(const Schedule& s, const ChannelParams& channel,
                                   const FrameConfig& frame, long n_frames, std::uint64_t seed) {
  if (auto violation = validate_schedule(s, channel))
    throw std::invalid_argument("invalid schedule: " + *violation);
  if (n_frames < 1) throw std::invalid_argument("n_frames must be >= 1");

  std::mt19937_64 gen = make_stream(seed, 0);
  std::vector<long> delivered(channel.n_users, 0);
  for (long k = 0; k < n_frames; ++k) {
    const ChannelMatrix m = sample_channel_matrix(channel, frame, gen);
    const FrameTrace trace = execute_frame(s, m);
    for (int u = 0; u < channel.n_users; ++u) delivered[u] += trace.success[u];
  }

  SimulationResult result;
  result.frames = n_frames;
  result.per_user_throughput.resize(channel.n_users);
  result.ci_halfwidth.resize(channel.n_users);
  for (int u = 0; u < channel.n_users; ++u) {
    const double phat = static_cast<double>(delivered[u]) / n_frames;
    result.per_user_throughput[u] = phat;
    result.ci_halfwidth[u] = 1.96 * std::sqrt(phat * (1.0 - phat) / n_frames);
  }
  return result;
}

ChannelParams cellular_on_probabilities(const CellularScenario& scenario) {
  if (scenario.positions.size() != static_cast<std::size_t>(scenario.n_users))
    throw std::invalid_argument("scenario positions not populated");
  if (!(scenario.path_loss_exponent > 0.0))
    throw std::invalid_argument("path_loss_exponent must be positive");
  if (!(scenario.reference_distance_m > 0.0))
    throw std::invalid_argument("reference_distance_m must be positive");

  ChannelParams channel;
  channel.n_users = scenario.n_users;
  channel.on_prob.reserve(scenario.n_users);
  for (const auto& [x, y] : scenario.positions) {
    const double r = std::max(std::hypot(x, y), scenario.reference_distance_m);
    const double mean_power =
        scenario.tx_power_w *
        std::pow(r / scenario.reference_distance_m, -scenario.path_loss_exponent);
    // Unit-mean Rayleigh fading: received power exponential with mean_power.
    channel.on_prob.push_back(std::exp(-scenario.threshold_w / mean_power));
  }
  return channel;
}

CellularScenario generate_cellular_drop(std::uint64_t seed, CellularScenario proto) {
  if (proto.n_users < 1) throw std::invalid_argument("n_users must be positive");
  std::mt19937_64 gen = make_stream(seed, 1);
  proto.positions.clear();
  proto.positions.reserve(proto.n_users);
  for (int i = 0; i < proto.n_users; ++i) {
    const double r = proto.cell_radius_m * std::sqrt(uniform01(gen));
    const double angle = 2.0 * std::numbers::pi * uniform01(gen);
    proto.positions.emplace_back(r * std::cos(angle), r * std::sin(angle));
  }
  return proto;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empirical_cdf needs a nonempty input");
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> cdf;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;  // merge ties
    cdf.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

std::string scenario_to_json(const CellularScenario& scenario) {
  nlohmann::json j;
  j["n_users"] = scenario.n_users;
  j["cell_radius_m"] = scenario.cell_radius_m;
  j["tx_power_w"] = scenario.tx_power_w;
  j["path_loss_exponent"] = scenario.path_loss_exponent;
  j["threshold_w"] = scenario.threshold_w;
  j["reference_distance_m"] = scenario.reference_distance_m;
  auto positions = nlohmann::json::array();
  for (const auto& [x, y] : scenario.positions) positions.push_back({x, y});
  j["positions"] = positions;
  return j.dump(2);
}

}  // namespace framesched
