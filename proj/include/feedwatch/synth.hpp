#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "feedwatch/types.hpp"

namespace feedwatch {

inline constexpr const char* kProfileSchemaVersion = "feedwatch.profiles/1";

struct TargetDist {
    std::array<double, 3> p{};  // self, friend, nonfriend; sums to 1
};

/// Role-conditioned behavior: per-action Poisson rates plus target-class
/// distributions for interactive actions.
struct RoleProfile {
    std::array<double, kActionCount> rates{};  // events per minute
    TargetDist default_targets;
    std::map<ActionKind, TargetDist> target_overrides;
    int friends_pool = 10;
    int nonfriends_pool = 5;

    double total_rate() const;
    double page_switch_rate() const;
    const TargetDist& targets_for(ActionKind k) const;
    /// Aggregate rate must sit in [1.5, 4.5]/min, page switching in
    /// [0.3, 1.1]/min, and every distribution must sum to 1.
    void validate() const;
};

struct ProfileSet {
    RoleProfile owner, acquaintance, stranger;

    const RoleProfile& for_role(RoleLabel r) const;
    void validate() const;
};

/// Built-in default profiles (versioned JSON document compiled in).
const ProfileSet& default_profiles();
const std::string& default_profiles_json();
ProfileSet parse_profiles(const std::string& json_text);

struct GeneratorConfig {
    std::size_t owners = 100;
    std::size_t acquaintances = 81;
    std::size_t strangers = 97;
    double session_minutes = 30.0;
    std::uint64_t seed = 0;
    bool noisy = false;  // inject >5-minute idle gaps into ~10% of sessions
    ProfileSet profiles = default_profiles();
};

/// Draw one session for a role: every action kind is an independent Poisson
/// event stream at the profile rate; interactive events sample a target from
/// the role's pools. Under default rates idle gaps are clamped below the
/// 5-minute cleaning threshold, so cleaning drops nothing unless `noisy` is
/// set. Bit-identical for a fixed (config, session_index).
Session generate_session(RoleLabel role, const GeneratorConfig& config,
                         std::uint64_t session_index = 0);

/// Labeled corpus with the configured per-role counts: owners first, then
/// acquaintances, then strangers.
std::vector<Session> generate_corpus(const GeneratorConfig& config);

/// The qualitative role orderings built into the default profiles, expressed
/// over canonical feature names: population mean of `feature` over sessions
/// of role `greater` exceeds the mean over sessions of role `lesser`.
struct RoleOrdering {
    std::string feature;
    RoleLabel greater;
    RoleLabel lesser;
};

const std::vector<RoleOrdering>& encoded_orderings();

}  // namespace feedwatch
