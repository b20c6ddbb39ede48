// Command-line front end: rate-region export, admission control, policy runs
// and the cellular drop experiment. Defaults reproduce the bundled example
// configurations (N=2, p=(0.3,0.2), tau=4; 30-user cell with tau=30).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "framesched/csv.hpp"
#include "framesched/engine.hpp"
#include "framesched/policy.hpp"
#include "framesched/rate.hpp"
#include "framesched/sim.hpp"
#include "framesched/types.hpp"

namespace fs = framesched;
using nlohmann::json;

namespace {

struct ExperimentConfig {
  std::string model = "extended";  // polling | extended
  std::vector<double> on_prob = {0.3, 0.2};
  int slots_per_frame = 4;
  int max_len = -1;  // -1: use n_users
  int max_group_size = 2;
  bool allow_large = false;
  std::string policy = "maxweight";  // maxweight | proportional_fair
  std::vector<double> target = {0.6, 0.5};
  double ewma_weight = 0.01;
  long frames = 100000;
  std::uint64_t seed = 1;
  fs::CellularScenario cell;  // positions filled at run time
  int cell_slots = 30;
  long cell_frames = 20000;
  std::string out_dir = ".";
};

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key))
      throw std::invalid_argument("unknown config key '" + key + "' in " + where);
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json j = json::parse(in);
  require_keys(j, {"model", "channel", "frame", "schedule_caps", "policy", "simulation",
                   "cellular", "output_dir"},
               "top level");
  if (j.contains("model")) cfg.model = j["model"].get<std::string>();
  if (j.contains("channel")) {
    require_keys(j["channel"], {"on_prob"}, "channel");
    cfg.on_prob = j["channel"]["on_prob"].get<std::vector<double>>();
  }
  if (j.contains("frame")) {
    require_keys(j["frame"], {"slots_per_frame"}, "frame");
    cfg.slots_per_frame = j["frame"]["slots_per_frame"].get<int>();
  }
  if (j.contains("schedule_caps")) {
    const json& c = j["schedule_caps"];
    require_keys(c, {"max_len", "max_group_size", "allow_large"}, "schedule_caps");
    if (c.contains("max_len")) cfg.max_len = c["max_len"].get<int>();
    if (c.contains("max_group_size")) cfg.max_group_size = c["max_group_size"].get<int>();
    if (c.contains("allow_large")) cfg.allow_large = c["allow_large"].get<bool>();
  }
  if (j.contains("policy")) {
    const json& p = j["policy"];
    require_keys(p, {"type", "target", "ewma_weight"}, "policy");
    if (p.contains("type")) cfg.policy = p["type"].get<std::string>();
    if (p.contains("target")) cfg.target = p["target"].get<std::vector<double>>();
    if (p.contains("ewma_weight")) cfg.ewma_weight = p["ewma_weight"].get<double>();
  }
  if (j.contains("simulation")) {
    const json& s = j["simulation"];
    require_keys(s, {"frames", "seed"}, "simulation");
    if (s.contains("frames")) cfg.frames = s["frames"].get<long>();
    if (s.contains("seed")) cfg.seed = s["seed"].get<std::uint64_t>();
  }
  if (j.contains("cellular")) {
    const json& c = j["cellular"];
    require_keys(c,
                 {"n_users", "cell_radius_m", "tx_power_w", "path_loss_exponent", "threshold_w",
                  "reference_distance_m", "slots_per_frame", "frames"},
                 "cellular");
    if (c.contains("n_users")) cfg.cell.n_users = c["n_users"].get<int>();
    if (c.contains("cell_radius_m")) cfg.cell.cell_radius_m = c["cell_radius_m"].get<double>();
    if (c.contains("tx_power_w")) cfg.cell.tx_power_w = c["tx_power_w"].get<double>();
    if (c.contains("path_loss_exponent"))
      cfg.cell.path_loss_exponent = c["path_loss_exponent"].get<double>();
    if (c.contains("threshold_w")) cfg.cell.threshold_w = c["threshold_w"].get<double>();
    if (c.contains("reference_distance_m"))
      cfg.cell.reference_distance_m = c["reference_distance_m"].get<double>();
    if (c.contains("slots_per_frame")) cfg.cell_slots = c["slots_per_frame"].get<int>();
    if (c.contains("frames")) cfg.cell_frames = c["frames"].get<long>();
  }
  if (j.contains("output_dir")) cfg.out_dir = j["output_dir"].get<std::string>();
}

json resolved_config(const ExperimentConfig& cfg) {
  json j;
  j["model"] = cfg.model;
  j["channel"] = {{"on_prob", cfg.on_prob}};
  j["frame"] = {{"slots_per_frame", cfg.slots_per_frame}};
  j["schedule_caps"] = {{"max_len", cfg.max_len},
                        {"max_group_size", cfg.max_group_size},
                        {"allow_large", cfg.allow_large}};
  j["policy"] = {{"type", cfg.policy}, {"target", cfg.target}, {"ewma_weight", cfg.ewma_weight}};
  j["simulation"] = {{"frames", cfg.frames}, {"seed", cfg.seed}};
  j["cellular"] = {{"n_users", cfg.cell.n_users},
                   {"cell_radius_m", cfg.cell.cell_radius_m},
                   {"tx_power_w", cfg.cell.tx_power_w},
                   {"path_loss_exponent", cfg.cell.path_loss_exponent},
                   {"threshold_w", cfg.cell.threshold_w},
                   {"reference_distance_m", cfg.cell.reference_distance_m},
                   {"slots_per_frame", cfg.cell_slots},
                   {"frames", cfg.cell_frames}};
  // output_dir is deliberately omitted: the serialized config describes the
  // experiment, and re-running it into a different directory must produce
  // byte-identical files
  return j;
}

fs::ChannelParams channel_of(const ExperimentConfig& cfg) {
  fs::ChannelParams ch;
  ch.n_users = static_cast<int>(cfg.on_prob.size());
  ch.on_prob = cfg.on_prob;
  fs::validate(ch);
  return ch;
}

std::vector<fs::Schedule> schedules_of(const ExperimentConfig& cfg) {
  const int n = static_cast<int>(cfg.on_prob.size());
  if (cfg.model == "polling")
    return fs::enumerate_polling_schedules(n, cfg.max_len < 0 ? n : cfg.max_len, cfg.allow_large);
  if (cfg.model == "extended")
    return fs::enumerate_group_schedules(n, std::min(cfg.max_group_size, n), cfg.allow_large);
  throw std::invalid_argument("model must be 'polling' or 'extended'");
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  out << content;
}

std::string trajectory_csv(const fs::SimulationResult& result, int n_users) {
  std::string out = "frame";
  for (int u = 0; u < n_users; ++u) out += ",throughput_" + std::to_string(u + 1);
  out += '\n';
  for (const auto& [frame, point] : result.trajectory) {
    out += std::to_string(frame);
    for (double v : point) out += ',' + fs::fmt12(v);
    out += '\n';
  }
  return out;
}

std::string cdf_csv(const std::vector<std::pair<double, double>>& cdf) {
  std::string out = "value,fraction\n";
  for (const auto& [value, fraction] : cdf)
    out += fs::fmt12(value) + ',' + fs::fmt12(fraction) + '\n';
  return out;
}

int cmd_region(const ExperimentConfig& cfg) {
  std::vector<fs::Schedule> schedules;
  try {
    schedules = schedules_of(cfg);
  } catch (const std::length_error& e) {
    std::cerr << "region: enumeration cap exceeded: " << e.what() << "\n";
    return 2;
  }
  const fs::FrameConfig frame{cfg.slots_per_frame};
  const fs::RateRegion region = fs::build_rate_region(schedules, channel_of(cfg), frame);
  write_file(cfg.out_dir, "region.csv", fs::region_to_csv(region));
  json summary;
  summary["config"] = resolved_config(cfg);
  summary["n_schedules"] = schedules.size();
  summary["n_corner_points"] = region.corner_points.size();
  write_file(cfg.out_dir, "region_summary.json", summary.dump(2) + "\n");
  std::cout << "region: " << region.corner_points.size() << " corner points ("
            << schedules.size() << " schedules) written to " << cfg.out_dir << "/region.csv\n";
  return 0;
}

int cmd_admit(const ExperimentConfig& cfg, const std::vector<double>& demand) {
  const fs::ChannelParams channel = channel_of(cfg);
  const fs::FrameConfig frame{cfg.slots_per_frame};
  if (demand.size() != cfg.on_prob.size()) {
    std::cerr << "admit: demand vector length " << demand.size() << " does not match "
              << cfg.on_prob.size() << " users\n";
    return 2;
  }
  if (cfg.model == "polling") {
    const fs::AdmissionDecision dec = fs::polling_admission(demand, channel, frame);
    if (dec.accepted) {
      std::cout << "accept\n";
      return 0;
    }
    std::cout << "reject: binding subset {";
    for (std::size_t i = 0; i < dec.binding->subset.size(); ++i)
      std::cout << (i ? "," : "") << dec.binding->subset[i] + 1;
    std::cout << "} load " << fs::fmt12(dec.binding->load) << " > bound "
              << fs::fmt12(dec.binding->slack_bound) << "\n";
    return 1;
  }
  const fs::RateRegion region = fs::build_rate_region(schedules_of(cfg), channel, frame);
  const fs::HullDecision dec = fs::hull_feasible(demand, region);
  if (dec.feasible) {
    std::cout << "accept: convex weights";
    for (std::size_t i = 0; i < dec.weights.size(); ++i)
      if (dec.weights[i] > 1e-12)
        std::cout << ' ' << fs::schedule_to_string(region.corner_points[i].first) << ':'
                  << fs::fmt12(dec.weights[i]);
    std::cout << "\n";
    return 0;
  }
  std::cout << "reject: separating normal (";
  for (std::size_t i = 0; i < dec.certificate.size(); ++i)
    std::cout << (i ? "," : "") << fs::fmt12(dec.certificate[i]);
  std::cout << ") separation " << fs::fmt12(dec.separation) << "\n";
  return 1;
}

int cmd_schedule_run(const ExperimentConfig& cfg) {
  const fs::ChannelParams channel = channel_of(cfg);
  const fs::FrameConfig frame{cfg.slots_per_frame};
  if (cfg.frames < 1) {
    std::cerr << "schedule-run: frames must be >= 1\n";
    return 2;
  }
  const fs::RateRegion region = fs::build_rate_region(schedules_of(cfg), channel, frame);
  fs::PolicyConfig policy;
  if (cfg.policy == "maxweight") {
    policy.kind = fs::PolicyConfig::Kind::MaxWeight;
    policy.target = cfg.target;
  } else if (cfg.policy == "proportional_fair") {
    policy.kind = fs::PolicyConfig::Kind::ProportionalFair;
    policy.ewma_weight = cfg.ewma_weight;
  } else {
    std::cerr << "schedule-run: policy must be 'maxweight' or 'proportional_fair'\n";
    return 2;
  }

  fs::SimulationResult result;
  try {
    result = fs::run_policy(policy, channel, frame, region.corner_points, cfg.frames, cfg.seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "schedule-run: " << e.what() << "\n";
    return 1;
  }
  write_file(cfg.out_dir, "trajectory.csv", trajectory_csv(result, channel.n_users));
  json summary;
  summary["config"] = resolved_config(cfg);
  summary["final_throughput"] = result.per_user_throughput;
  summary["ci_halfwidth"] = result.ci_halfwidth;
  summary["frames"] = result.frames;
  write_file(cfg.out_dir, "summary.json", summary.dump(2) + "\n");
  std::cout << "schedule-run: final throughput";
  for (double v : result.per_user_throughput) std::cout << ' ' << fs::fmt12(v);
  std::cout << "\n";
  return 0;
}

int cmd_cellular(const ExperimentConfig& cfg) {
  const fs::CellularScenario scenario = fs::generate_cellular_drop(cfg.seed, cfg.cell);
  const fs::ChannelParams channel = fs::cellular_on_probabilities(scenario);
  const fs::FrameConfig frame{cfg.cell_slots};

  const fs::SimulationResult polling = fs::run_pf_restricted(
      fs::ContentionModel::Polling, channel, frame, cfg.cell_frames, cfg.seed, cfg.ewma_weight);
  const fs::SimulationResult extended = fs::run_pf_restricted(
      fs::ContentionModel::Extended, channel, frame, cfg.cell_frames, cfg.seed, cfg.ewma_weight);

  write_file(cfg.out_dir, "scenario.json", fs::scenario_to_json(scenario) + "\n");
  std::string per_user = "user,x_m,y_m,on_prob,polling_throughput,extended_throughput\n";
  for (int u = 0; u < channel.n_users; ++u) {
    per_user += std::to_string(u + 1) + ',' + fs::fmt12(scenario.positions[u].first) + ',' +
                fs::fmt12(scenario.positions[u].second) + ',' + fs::fmt12(channel.on_prob[u]) +
                ',' + fs::fmt12(polling.per_user_throughput[u]) + ',' +
                fs::fmt12(extended.per_user_throughput[u]) + '\n';
  }
  write_file(cfg.out_dir, "per_user.csv", per_user);
  write_file(cfg.out_dir, "cdf_polling.csv", cdf_csv(fs::empirical_cdf(polling.per_user_throughput)));
  write_file(cfg.out_dir, "cdf_extended.csv",
             cdf_csv(fs::empirical_cdf(extended.per_user_throughput)));
  json summary;
  summary["config"] = resolved_config(cfg);
  summary["polling_throughput"] = polling.per_user_throughput;
  summary["extended_throughput"] = extended.per_user_throughput;
  write_file(cfg.out_dir, "cellular_summary.json", summary.dump(2) + "\n");
  std::cout << "cellular: wrote per-user throughput and CDFs to " << cfg.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deadline-constrained wireless scheduling toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string model_flag;
  std::string demand_flag;
  std::uint64_t seed_flag = 0;
  long frames_flag = -1;
  std::string out_flag;
  bool seed_set = false;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--model", model_flag, "polling|extended");
  auto* seed_opt = app.add_option("--seed", seed_flag, "RNG seed");
  app.add_option("--frames", frames_flag, "number of simulated frames");
  app.add_option("--out", out_flag, "output directory");

  auto* region = app.add_subcommand("region", "export rate-region corner points");
  auto* admit = app.add_subcommand("admit", "admission-control a demand vector");
  admit->add_option("--demand", demand_flag, "comma-separated demand vector (packets/frame)");
  auto* schedule_run = app.add_subcommand("schedule-run", "run a scheduling policy");
  auto* cellular = app.add_subcommand("cellular", "cellular drop experiment");

  CLI11_PARSE(app, argc, argv);
  seed_set = seed_opt->count() > 0;

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    if (!model_flag.empty()) cfg.model = model_flag;
    if (seed_set) cfg.seed = seed_flag;
    if (frames_flag >= 0) {
      cfg.frames = frames_flag;
      cfg.cell_frames = frames_flag;
    }
    if (!out_flag.empty()) cfg.out_dir = out_flag;

    if (region->parsed()) return cmd_region(cfg);
    if (admit->parsed()) {
      std::vector<double> demand = cfg.target;
      if (!demand_flag.empty()) {
        demand.clear();
        std::stringstream ss(demand_flag);
        std::string item;
        while (std::getline(ss, item, ',')) demand.push_back(std::stod(item));
      }
      return cmd_admit(cfg, demand);
    }
    if (schedule_run->parsed()) return cmd_schedule_run(cfg);
    if (cellular->parsed()) return cmd_cellular(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
