#include "feedwatch/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "feedwatch/error.hpp"
#include "feedwatch/io_util.hpp"

namespace feedwatch {

namespace {

std::vector<FeatureDescriptor> build_registry() {
    std::vector<FeatureDescriptor> reg;
    reg.reserve(kFeatureCount);
    auto add = [&reg](std::string name, int family) {
        reg.push_back({static_cast<int>(reg.size()), std::move(name), family});
    };

    // Family 1: per-action frequencies, then the two aggregates.
    for (int a = 0; a < kActionCount; ++a)
        add("f." + std::string(action_feature_name(static_cast<ActionKind>(a))), 1);
    add("f.acts", 1);
    add("f.acts.excluding.page.expand", 1);

    // Family 2: interactive action x target class.
    for (int a = 0; a < kInteractiveCount; ++a)
        for (int t = 0; t < 3; ++t)
            add("f." + std::string(target_class_name(static_cast<TargetClass>(t))) + "." +
                    std::string(action_feature_name(static_cast<ActionKind>(a))),
                2);

    // Family 3: binary twins of families 1-2, same order.
    for (int i = 0; i < 50; ++i) add("b" + reg[i].name.substr(1), 3);

    // Family 4: interactive-action frequency per target class.
    for (int t = 0; t < 3; ++t)
        add("f.act." + std::string(target_class_name(static_cast<TargetClass>(t))), 4);

    // Family 5: minutes spent per page type.
    for (int p = 0; p < kPageKindCount; ++p)
        add("ts.page." + std::string(page_feature_name(static_cast<PageKind>(p))), 5);

    // Family 6: action frequency per page type, total / expand-only / rest.
    for (int p = 0; p < kPageKindCount; ++p)
        add("f.act.page." + std::string(page_feature_name(static_cast<PageKind>(p))), 6);
    for (int p = 0; p < kPageKindCount; ++p)
        add("f.act.expand.page." + std::string(page_feature_name(static_cast<PageKind>(p))), 6);
    for (int p = 0; p < kPageKindCount; ++p)
        add("f.act.non.expand.page." + std::string(page_feature_name(static_cast<PageKind>(p))),
            6);

    // Family 7: distinct interaction targets.
    add("n.act.person", 7);

    // Family 8: statistics of per-person page-visit counts.
    add("n.act.person.mean", 8);
    add("n.act.person.standard_deviation", 8);
    add("n.act.person.median", 8);
    add("n.act.person.maximum", 8);

    return reg;
}

const std::unordered_map<std::string_view, int>& name_index() {
    static const std::unordered_map<std::string_view, int> idx = [] {
        std::unordered_map<std::string_view, int> m;
        for (const auto& d : registry()) m.emplace(d.name, d.index);
        return m;
    }();
    return idx;
}

PageKind page_for_switch(const ActionRecord& rec) {
    switch (rec.kind) {
        case ActionKind::ToFeedPage:
            return PageKind::Feed;
        case ActionKind::ToMessagePage:
            return PageKind::Msg;
        case ActionKind::ToFanPage:
        case ActionKind::ToGroupPage:
            return PageKind::Public;
        default:
            break;
    }
    // Person-page switches route on the target class.
    if (!rec.target) throw Error("page switch to person page lacks a target");
    switch (rec.target->cls) {
        case TargetClass::SelfOwner:
            return PageKind::SelfPages;
        case TargetClass::Friend:
            return PageKind::FriendPages;
        case TargetClass::NonFriend:
            return PageKind::NonFriendPages;
    }
    return PageKind::Feed;
}

bool is_person_page_visit(ActionKind k) {
    return k == ActionKind::ToFriendListPage || k == ActionKind::ToNotePage ||
           k == ActionKind::ToPhotoPage || k == ActionKind::ToWallPage;
}

}  // namespace

const std::vector<FeatureDescriptor>& registry() {
    static const std::vector<FeatureDescriptor> reg = build_registry();
    return reg;
}

int feature_index(std::string_view name) {
    const auto& idx = name_index();
    auto it = idx.find(name);
    return it == idx.end() ? -1 : it->second;
}

std::vector<PageInterval> page_timeline(const Session& session, double window_minutes) {
    if (!(window_minutes > 0.0)) throw Error("page_timeline: window must be positive");
    const double start = session.first_timestamp();
    const double end = start + window_minutes * 60000.0;

    std::vector<PageInterval> intervals;
    PageKind current = PageKind::Feed;
    double open = start;
    for (const auto& rec : session.records) {
        if (rec.timestamp_ms > end) break;
        if (!is_page_switching(rec.kind)) continue;
        intervals.push_back({current, open, rec.timestamp_ms});
        current = page_for_switch(rec);
        open = rec.timestamp_ms;
    }
    intervals.push_back({current, open, end});
    return intervals;
}

FeatureVector extract(const Session& session, double window_minutes) {
    if (!(window_minutes > 0.0)) throw Error("extract: window must be positive");
    const double wm = window_minutes;
    const double start = session.first_timestamp();
    const double end = start + wm * 60000.0;

    FeatureVector fv;
    fv.values.assign(kFeatureCount, 0.0);
    fv.window_minutes = wm;
    auto& v = fv.values;

    const auto timeline = page_timeline(session, wm);

    int action_count[kActionCount] = {};
    int by_target_action[3][kInteractiveCount] = {};
    int by_target[3] = {};
    double page_minutes[kPageKindCount] = {};
    int page_all[kPageKindCount] = {};
    int page_expand[kPageKindCount] = {};
    std::unordered_set<std::string_view> persons;
    std::map<std::string_view, int> visit_counts;
    int total = 0;

    for (const auto& iv : timeline)
        page_minutes[static_cast<int>(iv.page)] += (iv.end_ms - iv.start_ms) / 60000.0;

    // Containing interval for an action at time t: the last interval whose
    // start is <= t (zero-length intervals from simultaneous switches lose).
    auto interval_page = [&timeline](double t) {
        std::size_t lo = 0, hi = timeline.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (timeline[mid].start_ms <= t)
                lo = mid;
            else
                hi = mid;
        }
        return static_cast<int>(timeline[lo].page);
    };

    for (const auto& rec : session.records) {
        if (rec.timestamp_ms > end) continue;
        const int a = static_cast<int>(rec.kind);
        ++action_count[a];
        ++total;
        if (rec.target) {
            const int t = static_cast<int>(rec.target->cls);
            if (is_interactive(rec.kind)) {
                ++by_target_action[t][a];
                ++by_target[t];
            }
            persons.insert(rec.target->person_id);
            if (is_person_page_visit(rec.kind)) ++visit_counts[rec.target->person_id];
        }
        const int p = interval_page(rec.timestamp_ms);
        ++page_all[p];
        if (rec.kind == ActionKind::ExpandPage) ++page_expand[p];
    }

    // Family 1.
    for (int a = 0; a < kActionCount; ++a) v[a] = action_count[a] / wm;
    v[18] = total / wm;
    v[19] = (total - action_count[static_cast<int>(ActionKind::ExpandPage)]) / wm;

    // Family 2.
    for (int a = 0; a < kInteractiveCount; ++a)
        for (int t = 0; t < 3; ++t) v[20 + a * 3 + t] = by_target_action[t][a] / wm;

    // Family 3: binary twins.
    for (int i = 0; i < 50; ++i) v[50 + i] = v[i] > 0.0 ? 1.0 : 0.0;

    // Family 4.
    for (int t = 0; t < 3; ++t) v[100 + t] = by_target[t] / wm;

    // Family 5.
    for (int p = 0; p < kPageKindCount; ++p) v[103 + p] = page_minutes[p];

    // Family 6.
    for (int p = 0; p < kPageKindCount; ++p) {
        v[109 + p] = page_all[p] / wm;
        v[115 + p] = page_expand[p] / wm;
        v[121 + p] = (page_all[p] - page_expand[p]) / wm;
    }

    // Family 7.
    v[127] = static_cast<double>(persons.size());

    // Family 8: statistics of visit counts per person (0 when no visits).
    if (!visit_counts.empty()) {
        std::vector<double> counts;
        counts.reserve(visit_counts.size());
        for (const auto& [person, n] : visit_counts) {
            (void)person;
            counts.push_back(static_cast<double>(n));
        }
        std::sort(counts.begin(), counts.end());
        const double n = static_cast<double>(counts.size());
        double sum = 0.0;
        for (double c : counts) sum += c;
        const double mean = sum / n;
        double ss = 0.0;
        for (double c : counts) ss += (c - mean) * (c - mean);
        const double sd = counts.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        const std::size_t m = counts.size();
        const double median =
            m % 2 == 1 ? counts[m / 2] : (counts[m / 2 - 1] + counts[m / 2]) / 2.0;
        v[128] = mean;
        v[129] = sd;
        v[130] = median;
        v[131] = counts.back();
    }

    return fv;
}

FeatureVector extract_full(const Session& session) {
    return extract(session, std::max(session.span_minutes(), 1.0));
}

FeatureTable extract_table(const std::vector<Session>& sessions, double window_minutes) {
    FeatureTable t;
    t.x = Matrix(sessions.size(), kFeatureCount);
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        auto fv = extract(sessions[i], window_minutes);
        std::copy(fv.values.begin(), fv.values.end(), t.x.row(i).begin());
        t.session_ids.push_back(sessions[i].session_id);
        t.labels.push_back(sessions[i].label ? binary_label(*sessions[i].label) : 0);
    }
    return t;
}

FeatureTable extract_table_full(const std::vector<Session>& sessions) {
    FeatureTable t;
    t.x = Matrix(sessions.size(), kFeatureCount);
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        auto fv = extract_full(sessions[i]);
        std::copy(fv.values.begin(), fv.values.end(), t.x.row(i).begin());
        t.session_ids.push_back(sessions[i].session_id);
        t.labels.push_back(sessions[i].label ? binary_label(*sessions[i].label) : 0);
    }
    return t;
}

std::string serialize_feature_table(const FeatureTable& table) {
    std::string out = "session_id,label";
    for (const auto& d : registry()) {
        out += ',';
        out += d.name;
    }
    out += '\n';
    for (std::size_t i = 0; i < table.x.rows(); ++i) {
        out += table.session_ids[i];
        out += ',';
        if (table.labels[i] != 0) out += table.labels[i] > 0 ? "1" : "-1";
        for (std::size_t j = 0; j < table.x.cols(); ++j) {
            out += ',';
            out += format_g17(table.x(i, j));
        }
        out += '\n';
    }
    return out;
}

FeatureTable parse_feature_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty feature table");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        std::string expect = "session_id,label";
        for (const auto& d : registry()) {
            expect += ',';
            expect += d.name;
        }
        if (line != expect) throw ParseError("feature header does not match registry", 1);
    }

    FeatureTable t;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 2 + kFeatureCount)
            throw ParseError("expected " + std::to_string(2 + kFeatureCount) + " fields", line_no);
        t.session_ids.emplace_back(fields[0]);
        if (fields[1].empty()) {
            t.labels.push_back(0);
        } else if (fields[1] == "1" || fields[1] == "+1") {
            t.labels.push_back(1);
        } else if (fields[1] == "-1") {
            t.labels.push_back(-1);
        } else {
            throw ParseError("bad label '" + std::string(fields[1]) + "'", line_no);
        }
        for (int j = 0; j < kFeatureCount; ++j) {
            double x = 0.0;
            auto f = fields[2 + j];
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), x);
            if (ec != std::errc{} || ptr != f.data() + f.size())
                throw ParseError("bad number '" + std::string(f) + "'", line_no);
            values.push_back(x);
        }
    }
    t.x = Matrix(t.session_ids.size(), kFeatureCount);
    std::copy(values.begin(), values.end(), t.x.data());
    return t;
}

}  // namespace feedwatch
