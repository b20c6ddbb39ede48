#ifndef FRAMESCHED_TYPES_HPP
#define FRAMESCHED_TYPES_HPP

#include <optional>
#include <string>
#include <vector>

namespace framesched {

/// Per-user channel description: user i's channel is ON in a slot with
/// probability on_prob[i], independently across slots and users.
struct ChannelParams {
  int n_users = 0;
  std::vector<double> on_prob;
};

void validate(const ChannelParams& channel);  // throws std::invalid_argument

/// Frame structure: every frame has slots_per_frame slots; each user holds at
/// most one packet per frame and the packet expires at frame end.
struct FrameConfig {
  int slots_per_frame = 1;
};

void validate(const FrameConfig& frame);

/// A set of users addressed together in a slot. A singleton group is plain
/// polling of one user. Members are kept sorted ascending.
struct ContentionGroup {
  std::vector<int> members;
};

/// An ordered list of pairwise-disjoint contention groups. Groups are served
/// in order: the active group's addressed set shrinks by one on each success
/// and the next group starts once all members have succeeded. The frame ends
/// after slots_per_frame slots regardless of progress.
struct Schedule {
  std::vector<ContentionGroup> groups;
};

enum class SlotOutcomeKind { Success, Idle, Collision };

struct SlotOutcome {
  SlotOutcomeKind kind = SlotOutcomeKind::Idle;
  int user = -1;  // valid only when kind == Success
};

/// Expected per-frame success probability per user, entries in [0,1].
using RateVector = std::vector<double>;

/// Single-slot outcome law for an addressed set: exactly one ON member is a
/// success, no ON member is an idle slot, two or more is a collision. Idle
/// and collision both waste the slot.
struct SlotOutcomeDistribution {
  std::vector<int> members;     // the addressed users
  std::vector<double> success;  // success[k] = P(Success(members[k]))
  double idle = 0.0;
  double collision = 0.0;
};

SlotOutcomeDistribution slot_outcome_distribution(const ContentionGroup& addressed,
                                                  const ChannelParams& channel);

/// Returns a description of the first violation (duplicate user, bad index,
/// empty or unsorted group), or nullopt if the schedule is valid.
std::optional<std::string> validate_schedule(const Schedule& s, const ChannelParams& channel);

/// Canonical text form: groups separated by "/", members joined by "+",
/// multi-member groups parenthesized, users printed 1-based. Examples:
/// "" (empty), "1/2", "(1+2)/3". Round-trips exactly through parse_schedule.
std::string schedule_to_string(const Schedule& s);
Schedule parse_schedule(const std::string& text);

}  // namespace framesched

#endif
