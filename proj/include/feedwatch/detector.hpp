#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "feedwatch/ssvm.hpp"
#include "feedwatch/types.hpp"

namespace feedwatch {

struct Verdict {
    std::string session_id;
    bool stalker = false;  // stalker iff score >= 0
    double score = 0.0;
    double window_minutes = 0.0;
    double decided_at_ms = 0.0;
};

/// Streaming engine for the server-side flow: buffer actions per session and
/// decide once the observation window fills (or the session ends early).
/// Events for one session must arrive in order; distinct sessions may
/// interleave freely. Exactly one verdict per session; decided sessions drop
/// their buffers.
class DetectorEngine {
public:
    DetectorEngine(SsvmModel model, double window_minutes);

    /// Feed one event. Returns a verdict when this event's timestamp reaches
    /// the end of the session's observation window (the verdict covers only
    /// records inside the window). Events for decided sessions are ignored
    /// and counted.
    std::optional<Verdict> ingest(const std::string& session_id, const ActionRecord& record);

    /// Decide immediately on the buffered records (end-of-session). The
    /// window is the elapsed time clamped below at one minute. Errors on
    /// unknown or already-decided sessions.
    Verdict finalize(const std::string& session_id);

    /// Finalize every session still observing, in first-seen order.
    std::vector<Verdict> finalize_all();

    struct Stats {
        std::size_t events_ingested = 0;
        std::size_t events_ignored_after_decision = 0;
        std::size_t verdicts = 0;
        std::size_t sessions_observing = 0;
        std::size_t buffered_records = 0;
    };
    Stats stats() const;

    double window_minutes() const { return window_minutes_; }
    const SsvmModel& model() const { return model_; }

private:
    struct SessionState {
        std::vector<ActionRecord> records;
        double first_timestamp = 0.0;
        bool decided = false;
    };

    Verdict decide(const std::string& session_id, SessionState& state, double window_minutes,
                   double decided_at);

    SsvmModel model_;
    double window_minutes_;
    std::unordered_map<std::string, SessionState> sessions_;
    std::vector<std::string> order_;  // first-seen session order
    Stats stats_;
};

/// Newline-delimited stream protocol: each line is either an action event
/// ({"session_id","timestamp_ms","action","person_id","target_class"}) or an
/// end marker ({"session_id", "end": true}). Emits one verdict object per
/// decision; any session still open at EOF is finalized. Returns the number
/// of verdicts; throws ParseError on protocol errors.
std::size_t run_detector_stream(DetectorEngine& engine, std::istream& in, std::ostream& out);

std::string verdict_to_json(const Verdict& v);

}  // namespace feedwatch
