#include "feedwatch/synth.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "feedwatch/error.hpp"
#include "feedwatch/rand.hpp"

namespace feedwatch {

double RoleProfile::total_rate() const {
    double s = 0.0;
    for (double r : rates) s += r;
    return s;
}

double RoleProfile::page_switch_rate() const {
    double s = 0.0;
    for (int a = 0; a < kActionCount; ++a)
        if (is_page_switching(static_cast<ActionKind>(a))) s += rates[a];
    return s;
}

const TargetDist& RoleProfile::targets_for(ActionKind k) const {
    auto it = target_overrides.find(k);
    return it == target_overrides.end() ? default_targets : it->second;
}

void RoleProfile::validate() const {
    for (double r : rates)
        if (!(r >= 0.0) || !std::isfinite(r)) throw Error("profile: rates must be >= 0");
    const double total = total_rate();
    if (total < 1.5 || total > 4.5)
        throw Error("profile: aggregate action rate must be in [1.5, 4.5]/min");
    const double sw = page_switch_rate();
    if (sw < 0.3 || sw > 1.1)
        throw Error("profile: page-switch rate must be in [0.3, 1.1]/min");
    auto check_dist = [](const TargetDist& d) {
        double s = 0.0;
        for (double p : d.p) {
            if (!(p >= 0.0)) throw Error("profile: target probabilities must be >= 0");
            s += p;
        }
        if (std::abs(s - 1.0) > 1e-9) throw Error("profile: target distribution must sum to 1");
    };
    check_dist(default_targets);
    for (const auto& [kind, dist] : target_overrides) {
        if (!is_interactive(kind)) throw Error("profile: target override on non-interactive action");
        check_dist(dist);
    }
    if (friends_pool < 1 || nonfriends_pool < 1) throw Error("profile: pools must be >= 1");
}

const RoleProfile& ProfileSet::for_role(RoleLabel r) const {
    switch (r) {
        case RoleLabel::Owner:
            return owner;
        case RoleLabel::Acquaintance:
            return acquaintance;
        default:
            return stranger;
    }
}

void ProfileSet::validate() const {
    owner.validate();
    acquaintance.validate();
    stranger.validate();
}

namespace {

RoleProfile parse_profile(const nlohmann::json& j) {
    RoleProfile p;
    const auto& rates = j.at("rates");
    for (int a = 0; a < kActionCount; ++a) {
        const std::string key(action_feature_name(static_cast<ActionKind>(a)));
        p.rates[a] = rates.at(key).get<double>();
    }
    const auto& targets = j.at("targets");
    auto to_dist = [](const nlohmann::json& arr) {
        if (!arr.is_array() || arr.size() != 3)
            throw Error("profile: target distribution needs 3 entries");
        return TargetDist{{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()}};
    };
    p.default_targets = to_dist(targets.at("default"));
    for (const auto& [key, value] : targets.items()) {
        if (key == "default") continue;
        bool known = false;
        for (int a = 0; a < kActionCount; ++a) {
            if (key == action_feature_name(static_cast<ActionKind>(a))) {
                p.target_overrides[static_cast<ActionKind>(a)] = to_dist(value);
                known = true;
                break;
            }
        }
        if (!known) throw Error("profile: unknown action '" + key + "' in targets");
    }
    p.friends_pool = j.at("friends_pool").get<int>();
    p.nonfriends_pool = j.at("nonfriends_pool").get<int>();
    return p;
}

}  // namespace

ProfileSet parse_profiles(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("profiles: ") + e.what());
    }
    if (j.value("schema_version", std::string()) != kProfileSchemaVersion)
        throw ParseError("profiles: unsupported schema_version");
    ProfileSet set;
    set.owner = parse_profile(j.at("roles").at("owner"));
    set.acquaintance = parse_profile(j.at("roles").at("acquaintance"));
    set.stranger = parse_profile(j.at("roles").at("stranger"));
    set.validate();
    return set;
}

const ProfileSet& default_profiles() {
    static const ProfileSet set = parse_profiles(default_profiles_json());
    return set;
}

namespace {

// Keep generated gaps under the cleaning threshold so the default corpus
// survives clean_sessions() untouched.
constexpr double kMaxGapMs = 290000.0;  // 4 min 50 s

std::string person_id(TargetClass cls, Rng& rng, const RoleProfile& profile) {
    switch (cls) {
        case TargetClass::SelfOwner:
            return "owner";
        case TargetClass::Friend:
            return "friend_" + std::to_string(rng.uniform_int(profile.friends_pool));
        default:
            return "nonfriend_" + std::to_string(rng.uniform_int(profile.nonfriends_pool));
    }
}

}  // namespace

Session generate_session(RoleLabel role, const GeneratorConfig& config,
                         std::uint64_t session_index) {
    if (!(config.session_minutes > 0.0)) throw Error("generator: session length must be positive");
    const RoleProfile& profile = config.profiles.for_role(role);
    profile.validate();

    Rng rng(derive_seed(config.seed, "synth.session", session_index));

    Session s;
    s.session_id = "s" + std::to_string(100000 + session_index).substr(1);
    s.label = role;

    const double length_min = config.session_minutes;
    for (int a = 0; a < kActionCount; ++a) {
        const ActionKind kind = static_cast<ActionKind>(a);
        const double rate = profile.rates[a];
        if (rate <= 0.0) continue;
        double t = rng.exponential(rate);
        while (t <= length_min) {
            ActionRecord rec;
            rec.timestamp_ms = t * 60000.0;
            rec.kind = kind;
            if (is_interactive(kind)) {
                const TargetDist& dist = profile.targets_for(kind);
                const double u = rng.uniform();
                TargetClass cls = u < dist.p[0]                ? TargetClass::SelfOwner
                                  : u < dist.p[0] + dist.p[1] ? TargetClass::Friend
                                                              : TargetClass::NonFriend;
                rec.target = Target{person_id(cls, rng, profile), cls};
            }
            s.records.push_back(std::move(rec));
            t += rng.exponential(rate);
        }
    }
    std::stable_sort(s.records.begin(), s.records.end(),
                     [](const ActionRecord& a, const ActionRecord& b) {
                         return a.timestamp_ms < b.timestamp_ms;
                     });

    // Clamp rare long gaps below the cleaning threshold by pulling later
    // events earlier.
    double shift = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < s.records.size(); ++i) {
        s.records[i].timestamp_ms -= shift;
        const double gap = s.records[i].timestamp_ms - prev;
        if (i > 0 && gap > kMaxGapMs) {
            const double extra = gap - kMaxGapMs;
            s.records[i].timestamp_ms -= extra;
            shift += extra;
        }
        prev = s.records[i].timestamp_ms;
    }

    if (config.noisy && s.records.size() > 1 && rng.uniform() < 0.1) {
        const std::size_t at = 1 + rng.uniform_int(s.records.size() - 1);
        const double gap = 301000.0 + rng.uniform() * 300000.0;
        for (std::size_t i = at; i < s.records.size(); ++i) s.records[i].timestamp_ms += gap;
    }
    return s;
}

std::vector<Session> generate_corpus(const GeneratorConfig& config) {
    std::vector<Session> corpus;
    corpus.reserve(config.owners + config.acquaintances + config.strangers);
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < config.owners; ++i)
        corpus.push_back(generate_session(RoleLabel::Owner, config, index++));
    for (std::size_t i = 0; i < config.acquaintances; ++i)
        corpus.push_back(generate_session(RoleLabel::Acquaintance, config, index++));
    for (std::size_t i = 0; i < config.strangers; ++i)
        corpus.push_back(generate_session(RoleLabel::Stranger, config, index++));
    return corpus;
}

const std::vector<RoleOrdering>& encoded_orderings() {
    static const std::vector<RoleOrdering> orderings = [] {
        using R = RoleLabel;
        std::vector<RoleOrdering> v;
        auto chain = [&v](const std::string& f, R a, R b, R c) {
            v.push_back({f, a, b});
            v.push_back({f, b, c});
        };
        auto top = [&v](const std::string& f, R best, R o1, R o2) {
            v.push_back({f, best, o1});
            v.push_back({f, best, o2});
        };
        // Owners act beyond page expansion more than either stalker role,
        // while stalkers expand pages more than owners.
        chain("f.acts.excluding.page.expand", R::Owner, R::Acquaintance, R::Stranger);
        v.push_back({"f.expand_page", R::Acquaintance, R::Owner});
        v.push_back({"f.expand_page", R::Stranger, R::Owner});
        // Owners leave visible traces and browse communal content.
        top("f.add_comments", R::Owner, R::Acquaintance, R::Stranger);
        top("f.likes", R::Owner, R::Acquaintance, R::Stranger);
        top("f.expand_comments", R::Owner, R::Acquaintance, R::Stranger);
        top("f.view_likes", R::Owner, R::Acquaintance, R::Stranger);
        top("f.to_fan_page", R::Owner, R::Acquaintance, R::Stranger);
        top("f.to_group_page", R::Owner, R::Acquaintance, R::Stranger);
        chain("ts.page.feed", R::Owner, R::Acquaintance, R::Stranger);
        // Acquaintances chase the account's social circle.
        top("f.to_friend_list_page", R::Acquaintance, R::Owner, R::Stranger);
        top("f.view_messages", R::Acquaintance, R::Owner, R::Stranger);
        top("f.friend.view_cards", R::Acquaintance, R::Owner, R::Stranger);
        // Strangers inspect the owner and ignore the social graph.
        top("f.self.view_cards", R::Stranger, R::Owner, R::Acquaintance);
        top("f.self.view_photos", R::Stranger, R::Owner, R::Acquaintance);
        top("f.act.nonfriend", R::Stranger, R::Owner, R::Acquaintance);
        top("f.click_hyperlinks", R::Stranger, R::Owner, R::Acquaintance);
        return v;
    }();
    return orderings;
}

}  // namespace feedwatch
