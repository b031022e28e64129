#include "feedwatch/log_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "feedwatch/error.hpp"
#include "feedwatch/io_util.hpp"

namespace feedwatch {

namespace {

double parse_timestamp(std::string_view field, long line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("bad timestamp '" + std::string(field) + "'", line_no);
    if (!std::isfinite(value) || value < 0.0)
        throw ParseError("timestamp must be finite and non-negative", line_no);
    return value;
}

ActionRecord make_record(std::string_view action, std::string_view person,
                         std::string_view target_cls, double ts, long line_no) {
    auto kind = action_from_log_name(action);
    if (!kind) throw ParseError("unknown action name '" + std::string(action) + "'", line_no);

    ActionRecord rec;
    rec.timestamp_ms = ts;
    rec.kind = *kind;
    const bool has_target = !person.empty() || !target_cls.empty();
    if (is_interactive(*kind)) {
        if (person.empty() || target_cls.empty())
            throw ParseError("interactive action missing target", line_no);
        auto cls = target_class_from_name(target_cls);
        if (!cls)
            throw ParseError("bad target_class '" + std::string(target_cls) + "'", line_no);
        rec.target = Target{std::string(person), *cls};
    } else if (has_target) {
        throw ParseError("non-interactive action carries target", line_no);
    }
    return rec;
}

struct SessionBuilder {
    std::vector<Session> sessions;
    std::map<std::string, std::size_t, std::less<>> index;

    void add(std::string_view id, ActionRecord rec, long line_no) {
        if (id.empty()) throw ParseError("empty session_id", line_no);
        auto it = index.find(id);
        if (it == index.end()) {
            it = index.emplace(std::string(id), sessions.size()).first;
            sessions.push_back(Session{std::string(id), {}, std::nullopt, std::nullopt});
        }
        sessions[it->second].records.push_back(std::move(rec));
    }

    std::vector<Session> finish() {
        for (auto& s : sessions)
            std::stable_sort(s.records.begin(), s.records.end(),
                             [](const ActionRecord& a, const ActionRecord& b) {
                                 return a.timestamp_ms < b.timestamp_ms;
                             });
        return std::move(sessions);
    }
};

std::vector<Session> parse_csv(std::istream& in) {
    SessionBuilder builder;
    std::string line;
    long line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "session_id,timestamp_ms,action,person_id,target_class")
                throw ParseError("bad or missing header", line_no);
            saw_header = true;
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), line_no);
        double ts = parse_timestamp(fields[1], line_no);
        builder.add(fields[0], make_record(fields[2], fields[3], fields[4], ts, line_no), line_no);
    }
    return builder.finish();
}

std::vector<Session> parse_jsonl(std::istream& in) {
    SessionBuilder builder;
    std::string line;
    long line_no = 0;
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
        if (!obj.is_object() || !obj.contains("session_id") || !obj.contains("timestamp_ms") ||
            !obj.contains("action"))
            throw ParseError("record needs session_id, timestamp_ms, action", line_no);
        if (!obj["timestamp_ms"].is_number())
            throw ParseError("timestamp_ms must be a number", line_no);
        double ts = obj["timestamp_ms"].get<double>();
        if (!std::isfinite(ts) || ts < 0.0)
            throw ParseError("timestamp must be finite and non-negative", line_no);
        std::string person = obj.value("person_id", std::string());
        std::string cls = obj.value("target_class", std::string());
        builder.add(obj["session_id"].get<std::string>(),
                    make_record(obj["action"].get<std::string>(), person, cls, ts, line_no),
                    line_no);
    }
    return builder.finish();
}

}  // namespace

std::vector<Session> parse_action_log(std::istream& in, LogFormat format) {
    return format == LogFormat::Csv ? parse_csv(in) : parse_jsonl(in);
}

std::vector<Session> parse_action_log(const std::string& text, LogFormat format) {
    std::istringstream in(text);
    return parse_action_log(in, format);
}

std::string serialize_action_log(const std::vector<Session>& sessions, LogFormat format) {
    std::string out;
    if (format == LogFormat::Csv) {
        out += "session_id,timestamp_ms,action,person_id,target_class\n";
        for (const auto& s : sessions) {
            for (const auto& r : s.records) {
                out += s.session_id;
                out += ',';
                out += format_g17(r.timestamp_ms);
                out += ',';
                out += action_log_name(r.kind);
                out += ',';
                if (r.target) {
                    out += r.target->person_id;
                    out += ',';
                    out += target_class_name(r.target->cls);
                } else {
                    out += ',';
                }
                out += '\n';
            }
        }
    } else {
        for (const auto& s : sessions) {
            for (const auto& r : s.records) {
                nlohmann::json obj;
                obj["session_id"] = s.session_id;
                obj["timestamp_ms"] = r.timestamp_ms;
                obj["action"] = std::string(action_log_name(r.kind));
                if (r.target) {
                    obj["person_id"] = r.target->person_id;
                    obj["target_class"] = std::string(target_class_name(r.target->cls));
                }
                out += obj.dump();
                out += '\n';
            }
        }
    }
    return out;
}

std::map<std::string, RoleLabel> parse_labels(const std::string& text) {
    std::map<std::string, RoleLabel> out;
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != "session_id,role") throw ParseError("bad or missing header", line_no);
            saw_header = true;
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 2) throw ParseError("expected 2 fields", line_no);
        auto role = role_from_name(fields[1]);
        if (!role) throw ParseError("bad role '" + std::string(fields[1]) + "'", line_no);
        out[std::string(fields[0])] = *role;
    }
    return out;
}

std::string serialize_labels(const std::vector<Session>& sessions) {
    std::string out = "session_id,role\n";
    for (const auto& s : sessions) {
        if (!s.label) continue;
        out += s.session_id;
        out += ',';
        out += role_name(*s.label);
        out += '\n';
    }
    return out;
}

void apply_labels(std::vector<Session>& sessions, const std::map<std::string, RoleLabel>& labels) {
    std::map<std::string, bool> used;
    for (auto& s : sessions) {
        auto it = labels.find(s.session_id);
        if (it != labels.end()) {
            s.label = it->second;
            used[it->first] = true;
        }
    }
    for (const auto& [id, role] : labels) {
        (void)role;
        if (!used.count(id)) throw Error("label for unknown session '" + id + "'");
    }
}

CleanResult clean_sessions(const std::vector<Session>& sessions, double max_idle_minutes) {
    const double max_gap_ms = max_idle_minutes * 60000.0;
    CleanResult out;
    for (const auto& s : sessions) {
        bool noisy = false;
        for (std::size_t i = 1; i < s.records.size(); ++i) {
            if (s.records[i].timestamp_ms - s.records[i - 1].timestamp_ms > max_gap_ms) {
                noisy = true;
                break;
            }
        }
        if (noisy)
            ++out.dropped;
        else
            out.sessions.push_back(s);
    }
    return out;
}

Session truncate(const Session& session, double window_minutes) {
    if (!(window_minutes > 0.0)) throw Error("truncate: window must be positive");
    Session out;
    out.session_id = session.session_id;
    out.label = session.label;
    double window = window_minutes;
    if (session.window_minutes && *session.window_minutes < window)
        window = *session.window_minutes;
    out.window_minutes = window;
    if (!session.records.empty()) {
        const double cutoff = session.records.front().timestamp_ms + window_minutes * 60000.0;
        for (const auto& r : session.records) {
            if (r.timestamp_ms <= cutoff) out.records.push_back(r);
        }
    }
    return out;
}

}  // namespace feedwatch
