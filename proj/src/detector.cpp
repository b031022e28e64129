#include "feedwatch/detector.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "feedwatch/error.hpp"
#include "feedwatch/features.hpp"
#include "feedwatch/io_util.hpp"

namespace feedwatch {

DetectorEngine::DetectorEngine(SsvmModel model, double window_minutes)
    : model_(std::move(model)), window_minutes_(window_minutes) {
    if (!(window_minutes_ > 0.0)) throw Error("detector: window must be positive");
    if (model_.input_dim != static_cast<std::size_t>(kFeatureCount))
        throw DimensionError("detector: model input width must match the feature registry");
}

Verdict DetectorEngine::decide(const std::string& session_id, SessionState& state,
                               double window_minutes, double decided_at) {
    Session session;
    session.session_id = session_id;
    session.records = std::move(state.records);
    const FeatureVector fv = extract(session, window_minutes);
    const double score = model_.decision(fv.values);

    Verdict v;
    v.session_id = session_id;
    v.score = score;
    v.stalker = score >= 0.0;
    v.window_minutes = window_minutes;
    v.decided_at_ms = decided_at;

    state.records.clear();
    state.records.shrink_to_fit();
    state.decided = true;
    ++stats_.verdicts;
    return v;
}

std::optional<Verdict> DetectorEngine::ingest(const std::string& session_id,
                                              const ActionRecord& record) {
    if (!std::isfinite(record.timestamp_ms) || record.timestamp_ms < 0.0)
        throw Error("detector: timestamp must be finite and non-negative");
    const bool interactive = is_interactive(record.kind);
    if (interactive != record.target.has_value())
        throw Error(interactive ? "detector: interactive action missing target"
                                : "detector: non-interactive action carries target");

    ++stats_.events_ingested;
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) {
        it = sessions_.emplace(session_id, SessionState{}).first;
        it->second.first_timestamp = record.timestamp_ms;
        order_.push_back(session_id);
    }
    SessionState& state = it->second;
    if (state.decided) {
        ++stats_.events_ignored_after_decision;
        return std::nullopt;
    }

    const double window_end = state.first_timestamp + window_minutes_ * 60000.0;
    if (record.timestamp_ms >= window_end) {
        // This event triggers the decision; it is included only when it sits
        // exactly on the window boundary.
        if (record.timestamp_ms <= window_end) state.records.push_back(record);
        return decide(session_id, state, window_minutes_, record.timestamp_ms);
    }
    state.records.push_back(record);
    return std::nullopt;
}

Verdict DetectorEngine::finalize(const std::string& session_id) {
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw Error("detector: unknown session '" + session_id + "'");
    SessionState& state = it->second;
    if (state.decided) throw Error("detector: session '" + session_id + "' already decided");
    double elapsed = 0.0;
    if (!state.records.empty())
        elapsed = (state.records.back().timestamp_ms - state.first_timestamp) / 60000.0;
    const double window = std::max(elapsed, 1.0);
    const double decided_at =
        state.records.empty() ? state.first_timestamp : state.records.back().timestamp_ms;
    return decide(session_id, state, window, decided_at);
}

std::vector<Verdict> DetectorEngine::finalize_all() {
    std::vector<Verdict> out;
    for (const auto& id : order_) {
        if (!sessions_.at(id).decided) out.push_back(finalize(id));
    }
    return out;
}

DetectorEngine::Stats DetectorEngine::stats() const {
    Stats s = stats_;
    for (const auto& [id, state] : sessions_) {
        (void)id;
        if (!state.decided) {
            ++s.sessions_observing;
            s.buffered_records += state.records.size();
        }
    }
    return s;
}

std::string verdict_to_json(const Verdict& v) {
    nlohmann::json j;
    j["session_id"] = v.session_id;
    j["label"] = v.stalker ? "stalker" : "owner";
    j["score"] = v.score;
    j["window_minutes"] = v.window_minutes;
    j["decided_at"] = v.decided_at_ms;
    return j.dump();
}

std::size_t run_detector_stream(DetectorEngine& engine, std::istream& in, std::ostream& out) {
    std::string line;
    long line_no = 0;
    std::size_t verdicts = 0;
    auto emit = [&](const Verdict& v) {
        out << verdict_to_json(v) << '\n';
        ++verdicts;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("bad json: ") + e.what(), line_no);
        }
        if (!obj.is_object() || !obj.contains("session_id"))
            throw ParseError("event needs a session_id", line_no);
        const std::string id = obj["session_id"].get<std::string>();
        if (obj.value("end", false)) {
            try {
                emit(engine.finalize(id));
            } catch (const Error& e) {
                throw ParseError(e.what(), line_no);
            }
            continue;
        }
        if (!obj.contains("timestamp_ms") || !obj.contains("action"))
            throw ParseError("event needs timestamp_ms and action", line_no);
        auto kind = action_from_log_name(obj["action"].get<std::string>());
        if (!kind)
            throw ParseError("unknown action name '" + obj["action"].get<std::string>() + "'",
                             line_no);
        ActionRecord rec;
        rec.timestamp_ms = obj["timestamp_ms"].get<double>();
        rec.kind = *kind;
        const std::string person = obj.value("person_id", std::string());
        const std::string cls_name = obj.value("target_class", std::string());
        if (!person.empty() || !cls_name.empty()) {
            auto cls = target_class_from_name(cls_name);
            if (!cls || person.empty())
                throw ParseError("bad target fields", line_no);
            rec.target = Target{person, *cls};
        }
        std::optional<Verdict> verdict;
        try {
            verdict = engine.ingest(id, rec);
        } catch (const Error& e) {
            throw ParseError(e.what(), line_no);
        }
        if (verdict) emit(*verdict);
    }
    for (const Verdict& v : engine.finalize_all()) emit(v);
    return verdicts;
}

}  // namespace feedwatch
