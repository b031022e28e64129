#include "feedwatch/types.hpp"

namespace feedwatch {

namespace {

constexpr std::array<std::string_view, kActionCount> kLogNames = {
    "Expand_Comments", "Likes",        "View_Cards",          "View_Likes",
    "View_Messages",   "View_Photos",  "To_Friend_List_Page", "To_Note_Page",
    "To_Photo_Page",   "To_Wall_Page", "To_Fan_Page",         "To_Feed_Page",
    "To_Group_Page",   "To_Message_Page", "Add_Comments",     "Delete_Comments",
    "Click_Hyperlinks", "Expand_Page",
};

constexpr std::array<std::string_view, kActionCount> kFeatureNames = {
    "expand_comments", "likes",        "view_cards",          "view_likes",
    "view_messages",   "view_photos",  "to_friend_list_page", "to_note_page",
    "to_photo_page",   "to_wall_page", "to_fan_page",         "to_feed_page",
    "to_group_page",   "to_message_page", "add_comments",     "delete_comments",
    "click_hyperlinks", "expand_page",
};

constexpr std::array<std::string_view, 3> kTargetNames = {"self", "friend", "nonfriend"};
constexpr std::array<std::string_view, 3> kRoleNames = {"owner", "acquaintance", "stranger"};
constexpr std::array<std::string_view, kPageKindCount> kPageNames = {
    "feed", "msg", "self", "friend", "nonfriend", "public"};

}  // namespace

std::string_view action_log_name(ActionKind k) { return kLogNames[static_cast<int>(k)]; }
std::string_view action_feature_name(ActionKind k) { return kFeatureNames[static_cast<int>(k)]; }

std::optional<ActionKind> action_from_log_name(std::string_view name) {
    for (int i = 0; i < kActionCount; ++i)
        if (kLogNames[i] == name) return static_cast<ActionKind>(i);
    return std::nullopt;
}

std::string_view target_class_name(TargetClass t) { return kTargetNames[static_cast<int>(t)]; }

std::optional<TargetClass> target_class_from_name(std::string_view name) {
    for (int i = 0; i < 3; ++i)
        if (kTargetNames[i] == name) return static_cast<TargetClass>(i);
    return std::nullopt;
}

std::string_view role_name(RoleLabel r) { return kRoleNames[static_cast<int>(r)]; }

std::optional<RoleLabel> role_from_name(std::string_view name) {
    for (int i = 0; i < 3; ++i)
        if (kRoleNames[i] == name) return static_cast<RoleLabel>(i);
    return std::nullopt;
}

std::string_view page_feature_name(PageKind p) { return kPageNames[static_cast<int>(p)]; }

}  // namespace feedwatch
