#include "feedwatch/synth.hpp"

namespace feedwatch {

// Default role profiles. Data document, not tuning code: edit rates here (or
// supply a profile file to the CLI) to reshape the generator. Targets are
// [self, friend, nonfriend] probabilities.
static const std::string kDefaultProfilesJson = R"json({
  "schema_version": "feedwatch.profiles/1",
  "roles": {
    "owner": {
      "rates": {
        "expand_comments": 0.30, "likes": 0.60, "view_cards": 0.15,
        "view_likes": 0.25, "view_messages": 0.08, "view_photos": 0.20,
        "to_friend_list_page": 0.05, "to_note_page": 0.04, "to_photo_page": 0.08,
        "to_wall_page": 0.10, "to_fan_page": 0.10, "to_feed_page": 0.30,
        "to_group_page": 0.08, "to_message_page": 0.05, "add_comments": 0.45,
        "delete_comments": 0.04, "click_hyperlinks": 0.08, "expand_page": 0.25
      },
      "targets": {
        "default": [0.10, 0.80, 0.10],
        "view_photos": [0.15, 0.75, 0.10]
      },
      "friends_pool": 12,
      "nonfriends_pool": 5
    },
    "acquaintance": {
      "rates": {
        "expand_comments": 0.12, "likes": 0.15, "view_cards": 0.30,
        "view_likes": 0.10, "view_messages": 0.30, "view_photos": 0.25,
        "to_friend_list_page": 0.22, "to_note_page": 0.05, "to_photo_page": 0.10,
        "to_wall_page": 0.12, "to_fan_page": 0.04, "to_feed_page": 0.18,
        "to_group_page": 0.03, "to_message_page": 0.15, "add_comments": 0.06,
        "delete_comments": 0.005, "click_hyperlinks": 0.10, "expand_page": 0.65
      },
      "targets": {
        "default": [0.20, 0.70, 0.10],
        "view_cards": [0.15, 0.75, 0.10],
        "view_photos": [0.30, 0.60, 0.10]
      },
      "friends_pool": 10,
      "nonfriends_pool": 5
    },
    "stranger": {
      "rates": {
        "expand_comments": 0.08, "likes": 0.10, "view_cards": 0.35,
        "view_likes": 0.06, "view_messages": 0.12, "view_photos": 0.35,
        "to_friend_list_page": 0.10, "to_note_page": 0.06, "to_photo_page": 0.14,
        "to_wall_page": 0.14, "to_fan_page": 0.03, "to_feed_page": 0.10,
        "to_group_page": 0.02, "to_message_page": 0.06, "add_comments": 0.04,
        "delete_comments": 0.005, "click_hyperlinks": 0.20, "expand_page": 0.80
      },
      "targets": {
        "default": [0.45, 0.20, 0.35],
        "view_cards": [0.55, 0.15, 0.30],
        "view_photos": [0.60, 0.10, 0.30]
      },
      "friends_pool": 6,
      "nonfriends_pool": 8
    }
  }
})json";

const std::string& default_profiles_json() { return kDefaultProfilesJson; }

}  // namespace feedwatch
