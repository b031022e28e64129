#pragma once

#include <string>
#include <vector>

#include "feedwatch/matrix.hpp"
#include "feedwatch/rand.hpp"
#include "feedwatch/types.hpp"

namespace feedwatch::test {

inline ActionRecord rec(double ts_ms, ActionKind kind) {
    return ActionRecord{ts_ms, kind, std::nullopt};
}

inline ActionRecord rec(double ts_ms, ActionKind kind, TargetClass cls,
                        const std::string& person) {
    return ActionRecord{ts_ms, kind, Target{person, cls}};
}

inline Session make_session(std::string id, std::vector<ActionRecord> records) {
    return Session{std::move(id), std::move(records), std::nullopt, std::nullopt};
}

/// Random session whose records honor all parse invariants.
inline Session random_session(Rng& rng, const std::string& id, std::size_t n_records,
                              double span_minutes = 10.0) {
    std::vector<ActionRecord> records;
    for (std::size_t i = 0; i < n_records; ++i) {
        const auto kind = static_cast<ActionKind>(rng.uniform_int(kActionCount));
        const double ts = rng.uniform(0.0, span_minutes * 60000.0);
        if (is_interactive(kind)) {
            const auto cls = static_cast<TargetClass>(rng.uniform_int(3));
            records.push_back(rec(ts, kind, cls, "p" + std::to_string(rng.uniform_int(6))));
        } else {
            records.push_back(rec(ts, kind));
        }
    }
    std::sort(records.begin(), records.end(),
              [](const ActionRecord& a, const ActionRecord& b) {
                  return a.timestamp_ms < b.timestamp_ms;
              });
    return make_session(id, std::move(records));
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double lo = -2.0,
                            double hi = 2.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

}  // namespace feedwatch::test
