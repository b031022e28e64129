#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "feedwatch/types.hpp"

namespace feedwatch {

enum class LogFormat { Csv, Jsonl };

// Action-log formats.
//
// CSV (UTF-8, header required):
//   session_id,timestamp_ms,action,person_id,target_class
// with action spelled as in action_log_name() and person_id/target_class empty
// for non-interactive actions; target_class in {self, friend, nonfriend}.
//
// JSONL: one object per record with the same field names; person_id and
// target_class may be omitted for non-interactive actions.

/// Parse an action log into sessions, grouped by session_id in order of first
/// appearance, each sorted by timestamp (stable, so ties keep input order).
/// Throws ParseError with the offending line number on malformed input.
std::vector<Session> parse_action_log(std::istream& in, LogFormat format);
std::vector<Session> parse_action_log(const std::string& text, LogFormat format);

std::string serialize_action_log(const std::vector<Session>& sessions, LogFormat format);

/// Label sidecar CSV: `session_id,role` with role in {owner, acquaintance, stranger}.
std::map<std::string, RoleLabel> parse_labels(const std::string& text);
std::string serialize_labels(const std::vector<Session>& sessions);

/// Attach sidecar labels to the matching sessions (unknown ids are an error).
void apply_labels(std::vector<Session>& sessions, const std::map<std::string, RoleLabel>& labels);

struct CleanResult {
    std::vector<Session> sessions;
    std::size_t dropped = 0;
};

/// Drop every session containing an idle gap strictly longer than max_idle
/// minutes between consecutive records.
CleanResult clean_sessions(const std::vector<Session>& sessions, double max_idle_minutes = 5.0);

/// Keep records within the first `window_minutes` of the session (timestamp
/// <= first + window_minutes, inclusive) and record the window on the result.
/// A window retaining zero or one record is legal.
Session truncate(const Session& session, double window_minutes);

}  // namespace feedwatch
