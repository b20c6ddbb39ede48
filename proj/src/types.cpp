#include "framesched/types.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace framesched {

void validate(const ChannelParams& channel) {
  if (channel.n_users <= 0) throw std::invalid_argument("n_users must be positive");
  if (static_cast<int>(channel.on_prob.size()) != channel.n_users)
    throw std::invalid_argument("on_prob length must equal n_users");
  for (double p : channel.on_prob)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("on_prob entries must lie in [0,1]");
}

void validate(const FrameConfig& frame) {
  if (frame.slots_per_frame < 1) throw std::invalid_argument("slots_per_frame must be >= 1");
}

SlotOutcomeDistribution slot_outcome_distribution(const ContentionGroup& addressed,
                                                  const ChannelParams& channel) {
  validate(channel);
  if (addressed.members.empty()) throw std::invalid_argument("contention group is empty");
  for (int u : addressed.members)
    if (u < 0 || u >= channel.n_users)
      throw std::invalid_argument("user index " + std::to_string(u + 1) + " out of range");

  SlotOutcomeDistribution dist;
  dist.members = addressed.members;
  dist.success.resize(addressed.members.size(), 0.0);

  double idle = 1.0;
  for (int u : addressed.members) idle *= 1.0 - channel.on_prob[u];
  dist.idle = idle;

  double total_success = 0.0;
  for (std::size_t k = 0; k < addressed.members.size(); ++k) {
    double prod = channel.on_prob[addressed.members[k]];
    for (std::size_t j = 0; j < addressed.members.size(); ++j) {
      if (j == k) continue;
      prod *= 1.0 - channel.on_prob[addressed.members[j]];
    }
    dist.success[k] = prod;
    total_success += prod;
  }
  // a collision needs at least two members; for fewer the residual is pure
  // rounding noise
  dist.collision =
      addressed.members.size() < 2 ? 0.0 : std::max(1.0 - idle - total_success, 0.0);
  return dist;
}

std::optional<std::string> validate_schedule(const Schedule& s, const ChannelParams& channel) {
  validate(channel);
  std::vector<char> seen(channel.n_users, 0);
  for (std::size_t g = 0; g < s.groups.size(); ++g) {
    const auto& members = s.groups[g].members;
    if (members.empty()) return "group " + std::to_string(g + 1) + " is empty";
    int prev = -1;
    for (int u : members) {
      if (u < 0 || u >= channel.n_users)
        return "user index " + std::to_string(u + 1) + " out of range for " +
               std::to_string(channel.n_users) + " users";
      if (seen[u]) return "duplicate user " + std::to_string(u + 1);
      if (u < prev)
        return "group " + std::to_string(g + 1) + " members not in ascending order";
      seen[u] = 1;
      prev = u;
    }
  }
  return std::nullopt;
}

std::string schedule_to_string(const Schedule& s) {
  std::string out;
  for (std::size_t g = 0; g < s.groups.size(); ++g) {
    if (g > 0) out += '/';
    const auto& members = s.groups[g].members;
    if (members.size() > 1) out += '(';
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k > 0) out += '+';
      out += std::to_string(members[k] + 1);  // 1-based in the text form
    }
    if (members.size() > 1) out += ')';
  }
  return out;
}

namespace {

int parse_user(const std::string& text, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == start) throw std::invalid_argument("expected user number at position " + std::to_string(start));
  int value = std::stoi(text.substr(start, pos - start));
  if (value < 1) throw std::invalid_argument("user numbers are 1-based");
  return value - 1;
}

}  // namespace

Schedule parse_schedule(const std::string& text) {
  Schedule s;
  if (text.empty()) return s;
  std::size_t pos = 0;
  while (true) {
    ContentionGroup group;
    if (text[pos] == '(') {
      ++pos;
      group.members.push_back(parse_user(text, pos));
      while (pos < text.size() && text[pos] == '+') {
        ++pos;
        group.members.push_back(parse_user(text, pos));
      }
      if (pos >= text.size() || text[pos] != ')')
        throw std::invalid_argument("unterminated group in schedule string");
      ++pos;
      if (group.members.size() < 2)
        throw std::invalid_argument("parenthesized group must have at least two members");
    } else {
      group.members.push_back(parse_user(text, pos));
    }
    s.groups.push_back(std::move(group));
    if (pos == text.size()) break;
    if (text[pos] != '/') throw std::invalid_argument("expected '/' between groups");
    ++pos;
    if (pos == text.size()) throw std::invalid_argument("trailing '/' in schedule string");
  }
  return s;
}

}  // namespace framesched
