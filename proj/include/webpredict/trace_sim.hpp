#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "webpredict/model.hpp"
#include "webpredict/update_engine.hpp"

namespace webpredict {

/// A trace row. Rows whose session is kModificationSession record a page
/// modification instead of a request.
struct SessionEvent {
    Tick tick = 0;
    std::string session_id;
    std::string url;
    friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

inline constexpr std::string_view kModificationSession = "*";

/// CSV `tick,session_id,url` with that header; ticks strictly increasing.
std::vector<SessionEvent> parse_trace(std::string_view csv);
std::string render_trace(std::span<const SessionEvent> trace);

enum class CacheMode {
    kSession,  // prefetched pages stay for the whole session
    kWindow,   // only the latest prediction window is cached
};

enum class PrefetchPolicy {
    kModel,   // the prediction model's window
    kRandom,  // W out-links drawn uniformly, as a baseline
};

struct ReplayOptions {
    std::size_t window = 2;
    UpdateConfig update;
    CacheMode cache = CacheMode::kSession;
    PrefetchPolicy policy = PrefetchPolicy::kModel;
    std::uint64_t seed = 0;  // kRandom only
};

struct SessionHits {
    std::string session_id;
    long requests = 0;
    long hits = 0;
    double hit_pct() const { return requests ? 100.0 * static_cast<double>(hits) / static_cast<double>(requests) : 0.0; }
    friend bool operator==(const SessionHits&, const SessionHits&) = default;
};

struct HitReport {
    std::size_t window = 0;
    long requests = 0;  // scored requests: each session's first request is not scored
    long hits = 0;
    std::vector<SessionHits> sessions;  // first-appearance order
    double hit_pct() const { return requests ? 100.0 * static_cast<double>(hits) / static_cast<double>(requests) : 0.0; }
    friend bool operator==(const HitReport&, const HitReport&) = default;
};

struct ReplayResult {
    HitReport report;
    Model model;  // state after the last event
};

/**
 * Trace-driven simulation of the prefetching loop. For each request: score
 * it against the session's prefetch cache, record the access, predict from
 * the requested page and cache the window, then run any sweep that is due.
 * The input model is copied, never mutated.
 */
ReplayResult replay(const Model& model, std::span<const SessionEvent> trace, const ReplayOptions& opts);

/// CSV `window,requests,hits,hit_pct`, then a `session,requests,hits,hit_pct`
/// section with one row per session.
std::string render_report(const HitReport& report);

struct TraceOptions {
    int sessions = 30;
    int length = 20;        // requests per session, including the start page
    double affinity = 0.9;  // chance of staying inside the current class
    std::uint64_t seed = 1;
};

/**
 * Random-surfer sessions over `g`. Each session starts at the home page (a
 * uniformly drawn page when there is none) and follows out-links: with
 * probability `affinity` a same-class link when one exists, otherwise any
 * link. Dead ends jump back to the session's start page. Sessions are
 * written one after another with ticks 1, 2, ...
 */
std::vector<SessionEvent> generate_trace(const SiteGraph& g, const TraceOptions& opts);

}  // namespace webpredict
