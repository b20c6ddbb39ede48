#ifndef FRAMESCHED_SIM_HPP
#define FRAMESCHED_SIM_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "framesched/engine.hpp"
#include "framesched/types.hpp"

namespace framesched {

struct SimulationResult {
  RateVector per_user_throughput;
  long frames = 0;
  std::vector<double> ci_halfwidth;  // 95% binomial half-widths
  std::vector<std::pair<long, RateVector>> trajectory;  // (frame, cumulative throughput)
};

/// Uniformly random user drop in a disk around the base station with a
/// distance power law, unit-mean Rayleigh fading and a fixed received-power
/// decode threshold (noise folded into the threshold).
struct CellularScenario {
  int n_users = 30;
  double cell_radius_m = 1000.0;
  double tx_power_w = 1.0;
  double path_loss_exponent = 4.0;
  double threshold_w = 0.01;  // 10 dBm
  double reference_distance_m = 1.0;
  std::vector<std::pair<double, double>> positions;
};

ChannelMatrix sample_channel_matrix(const ChannelParams& channel, const FrameConfig& frame,
                                    std::mt19937_64& gen);

SimulationResult simulate_schedule(const Schedule& s, const ChannelParams& channel,
                                   const FrameConfig& frame, long n_frames, std::uint64_t seed);

/// p_i = exp(-threshold / mean received power), with the reference-distance
/// clamp max(r, reference_distance) applied before the power law.
ChannelParams cellular_on_probabilities(const CellularScenario& scenario);

/// Fills positions of the prototype scenario with an area-uniform drop
/// (radius R*sqrt(u)); all other fields are copied through.
CellularScenario generate_cellular_drop(std::uint64_t seed, CellularScenario proto = {});

/// Sorted step function with ties merged; the fraction at the k-th distinct
/// sorted value is (number of samples <= value) / n.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> values);

std::string scenario_to_json(const CellularScenario& scenario);

}  // namespace framesched

#endif
