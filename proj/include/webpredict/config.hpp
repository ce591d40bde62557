#pragma once

#include <optional>
#include <string_view>

#include "webpredict/model.hpp"
#include "webpredict/trace_sim.hpp"
#include "webpredict/update_engine.hpp"

namespace webpredict {

/// Everything a `key=value` config file can set.
struct EngineConfig {
    BuildOptions build;
    UpdateConfig update;
    std::size_t window = 2;
    CacheMode cache = CacheMode::kSession;
};

/**
 * Keys: levels, damping, demote_threshold, recency_window, sweep_period,
 * window, cache (session|window). `#` starts a comment. Unknown keys and
 * out-of-range values are errors.
 */
EngineConfig parse_config(std::string_view text);

}  // namespace webpredict
