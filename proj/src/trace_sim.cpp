#include "webpredict/trace_sim.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "webpredict/predictor.hpp"
#include "text_util.hpp"

namespace webpredict {

namespace {

constexpr std::string_view kTraceHeader = "tick,session_id,url";

// mt19937_64 output is fully specified, so these two helpers keep traces
// identical across standard libraries (the std distributions are not).
std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<SessionEvent> parse_trace(std::string_view csv) {
    auto lines = detail::split_lines(csv);
    if (lines.empty() || detail::trim(lines[0]) != kTraceHeader)
        throw ParseError(1, "expected header '" + std::string(kTraceHeader) + "'");
    std::vector<SessionEvent> out;
    for (std::size_t n = 1; n < lines.size(); ++n) {
        const std::size_t line_no = n + 1;
        if (detail::trim(lines[n]).empty()) continue;
        auto fields = detail::split(lines[n], ',');
        if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
        auto tick = detail::parse_integer<Tick>(detail::trim(fields[0]));
        if (!tick) throw ParseError(line_no, "bad tick");
        auto session = detail::trim(fields[1]);
        auto url = detail::trim(fields[2]);
        if (session.empty()) throw ParseError(line_no, "empty session id");
        if (url.empty()) throw ParseError(line_no, "empty url");
        if (!out.empty() && *tick <= out.back().tick)
            throw ParseError(line_no, "ticks must be strictly increasing");
        out.push_back({*tick, std::string(session), std::string(url)});
    }
    return out;
}

std::string render_trace(std::span<const SessionEvent> trace) {
    std::ostringstream os;
    os << kTraceHeader << '\n';
    for (const auto& e : trace) os << e.tick << ',' << e.session_id << ',' << e.url << '\n';
    return os.str();
}

ReplayResult replay(const Model& model, std::span<const SessionEvent> trace, const ReplayOptions& opts) {
    Engine engine(model, opts.update);
    std::mt19937_64 rng(opts.seed);

    HitReport report;
    report.window = opts.window;
    std::unordered_map<std::string, std::size_t> session_slot;
    std::vector<std::unordered_set<PageId>> caches;

    for (const auto& event : trace) {
        if (event.session_id == kModificationSession) {
            engine.modify(event.url);
            engine.sweep_if_due();
            continue;
        }

        const PageId page = engine.model().id_of(event.url);
        auto [it, first] = session_slot.emplace(event.session_id, report.sessions.size());
        if (first) {
            report.sessions.push_back({event.session_id, 0, 0});
            caches.emplace_back();
        }
        auto& stats = report.sessions[it->second];
        auto& cache = caches[it->second];

        if (!first) {
            ++stats.requests;
            if (cache.contains(page)) ++stats.hits;
        }

        engine.access(event.url);

        std::vector<PageId> window;
        if (opts.policy == PrefetchPolicy::kModel) {
            window = predict_window(engine.model(), page, opts.window);
        } else {
            window = engine.model().record(page).links;
            const std::size_t take = std::min(opts.window, window.size());
            for (std::size_t k = 0; k < take; ++k)
                std::swap(window[k], window[k + draw_index(rng, window.size() - k)]);
            window.resize(take);
        }
        if (opts.cache == CacheMode::kWindow) cache.clear();
        cache.insert(window.begin(), window.end());

        engine.sweep_if_due();
    }

    for (const auto& s : report.sessions) {
        report.requests += s.requests;
        report.hits += s.hits;
    }
    return {std::move(report), engine.model()};
}

std::string render_report(const HitReport& report) {
    std::ostringstream os;
    os << "window,requests,hits,hit_pct\n"
       << report.window << ',' << report.requests << ',' << report.hits << ','
       << detail::format_fixed(report.hit_pct()) << '\n'
       << "session,requests,hits,hit_pct\n";
    for (const auto& s : report.sessions)
        os << s.session_id << ',' << s.requests << ',' << s.hits << ','
           << detail::format_fixed(s.hit_pct()) << '\n';
    return os.str();
}

std::vector<SessionEvent> generate_trace(const SiteGraph& g, const TraceOptions& opts) {
    if (opts.length < 1) throw ValidationError("session length must be at least 1");
    if (opts.sessions < 0) throw ValidationError("session count must not be negative");
    if (!(opts.affinity >= 0.0 && opts.affinity <= 1.0))
        throw ValidationError("affinity must lie in [0, 1]");

    const auto classes = resolve_common_pages(g, assign_classes(g));
    std::vector<std::vector<PageId>> in_class(g.size());
    for (PageId p = 0; p < g.size(); ++p)
        for (PageId t : g.out_links(p))
            if (classes[p] != kUnclassified && classes[t] == classes[p]) in_class[p].push_back(t);

    std::mt19937_64 rng(opts.seed);
    std::vector<SessionEvent> trace;
    trace.reserve(static_cast<std::size_t>(opts.sessions) * static_cast<std::size_t>(opts.length));
    Tick tick = 0;
    for (int s = 1; s <= opts.sessions; ++s) {
        const std::string id = "s" + std::to_string(s);
        const PageId start = g.home() ? *g.home() : draw_index(rng, g.size());
        PageId page = start;
        for (int step = 0; step < opts.length; ++step) {
            trace.push_back({++tick, id, g.url(page)});
            auto all = g.out_links(page);
            if (all.empty()) {
                page = start;
                continue;
            }
            const auto& same = in_class[page];
            const bool stay = draw_unit(rng) < opts.affinity;
            page = stay && !same.empty() ? same[draw_index(rng, same.size())]
                                         : all[draw_index(rng, all.size())];
        }
    }
    return trace;
}

}  // namespace webpredict
