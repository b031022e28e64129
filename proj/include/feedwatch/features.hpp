#pragma once

#include <optional>
#include <string>
#include <vector>

#include "feedwatch/matrix.hpp"
#include "feedwatch/types.hpp"

namespace feedwatch {

inline constexpr int kFeatureCount = 132;
inline constexpr const char* kFeatureSchemaVersion = "feedwatch.features/1";

struct FeatureDescriptor {
    int index;         // 0-based registry position
    std::string name;  // canonical name, e.g. "f.likes", "b.friend.view_cards"
    int family;        // 1..8
};

/// The canonical ordered feature registry. Stable across runs and releases
/// within a schema version.
const std::vector<FeatureDescriptor>& registry();

/// Registry index for a canonical name; -1 when unknown.
int feature_index(std::string_view name);

struct FeatureVector {
    std::vector<double> values;  // kFeatureCount entries, registry order
    double window_minutes = 0.0;
};

/// Page context intervals tiling [window start, window end].
struct PageInterval {
    PageKind page;
    double start_ms;
    double end_ms;
};

/// Reconstruct the page-context timeline of a windowed session. The session
/// starts on Feed; each page-switching action opens a new interval at its
/// timestamp (so the switch itself counts as performed on the destination
/// page). The last interval ends at first_timestamp + window_minutes.
std::vector<PageInterval> page_timeline(const Session& session, double window_minutes);

/// Embed a windowed session into the fixed-order feature vector. Records past
/// the window end are ignored. window_minutes must be positive.
FeatureVector extract(const Session& session, double window_minutes);

/// Whole-session extraction: the frequency denominator is the session's
/// elapsed minutes clamped below at 1.0.
FeatureVector extract_full(const Session& session);

/// Labeled feature matrix; labels are -1/+1, or 0 when unlabeled.
struct FeatureTable {
    Matrix x;  // rows = sessions, cols = kFeatureCount
    std::vector<std::string> session_ids;
    std::vector<int> labels;
};

FeatureTable extract_table(const std::vector<Session>& sessions, double window_minutes);
FeatureTable extract_table_full(const std::vector<Session>& sessions);

/// Feature matrix CSV: header `session_id,label,<feature names...>`; label
/// cell is -1/+1 or empty.
std::string serialize_feature_table(const FeatureTable& table);
FeatureTable parse_feature_table(const std::string& text);

}  // namespace feedwatch
