#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace feedwatch {

/// The 18 recognized user actions, in canonical order.
enum class ActionKind : int {
    ExpandComments = 0,
    Likes,
    ViewCards,
    ViewLikes,
    ViewMessages,
    ViewPhotos,
    ToFriendListPage,
    ToNotePage,
    ToPhotoPage,
    ToWallPage,
    ToFanPage,
    ToFeedPage,
    ToGroupPage,
    ToMessagePage,
    AddComments,
    DeleteComments,
    ClickHyperlinks,
    ExpandPage,
};

inline constexpr int kActionCount = 18;
inline constexpr int kInteractiveCount = 10;

/// The first 10 actions are directed at a specific person.
inline constexpr bool is_interactive(ActionKind k) {
    return static_cast<int>(k) < kInteractiveCount;
}

/// ToFriendListPage .. ToMessagePage change the current page context.
inline constexpr bool is_page_switching(ActionKind k) {
    int i = static_cast<int>(k);
    return i >= static_cast<int>(ActionKind::ToFriendListPage) &&
           i <= static_cast<int>(ActionKind::ToMessagePage);
}

/// Log-file spelling ("Expand_Comments", "To_Wall_Page", ...).
std::string_view action_log_name(ActionKind k);
/// Feature-name fragment ("expand_comments", "to_wall_page", ...).
std::string_view action_feature_name(ActionKind k);
/// Inverse of action_log_name; nullopt when unknown.
std::optional<ActionKind> action_from_log_name(std::string_view name);

/// Relation of an interactive action's target person to the account owner.
enum class TargetClass : int { SelfOwner = 0, Friend, NonFriend };

std::string_view target_class_name(TargetClass t);  // "self" / "friend" / "nonfriend"
std::optional<TargetClass> target_class_from_name(std::string_view name);

/// Who controlled a labeled session.
enum class RoleLabel : int { Owner = 0, Acquaintance, Stranger };

std::string_view role_name(RoleLabel r);
std::optional<RoleLabel> role_from_name(std::string_view name);

/// Owner maps to -1, both stalker roles map to +1.
inline constexpr int binary_label(RoleLabel r) { return r == RoleLabel::Owner ? -1 : +1; }

struct Target {
    std::string person_id;
    TargetClass cls = TargetClass::SelfOwner;
    bool operator==(const Target&) const = default;
};

struct ActionRecord {
    double timestamp_ms = 0.0;  // real-valued milliseconds since epoch
    ActionKind kind = ActionKind::Likes;
    std::optional<Target> target;  // present iff the action is interactive
    bool operator==(const ActionRecord&) const = default;
};

/// One continuous account-usage episode: a chronological action list.
struct Session {
    std::string session_id;
    std::vector<ActionRecord> records;  // sorted non-decreasing by timestamp
    std::optional<RoleLabel> label;
    std::optional<double> window_minutes;  // set by truncate()

    double first_timestamp() const { return records.empty() ? 0.0 : records.front().timestamp_ms; }
    double last_timestamp() const { return records.empty() ? 0.0 : records.back().timestamp_ms; }
    double span_minutes() const {
        return records.empty() ? 0.0 : (last_timestamp() - first_timestamp()) / 60000.0;
    }
    bool operator==(const Session&) const = default;
};

/// Page context used for time-on-page features.
enum class PageKind : int { Feed = 0, Msg, SelfPages, FriendPages, NonFriendPages, Public };

inline constexpr int kPageKindCount = 6;

std::string_view page_feature_name(PageKind p);  // "feed" / "msg" / "self" / ...

}  // namespace feedwatch
