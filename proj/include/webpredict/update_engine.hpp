#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "webpredict/model.hpp"

namespace webpredict {

/// All values are in ticks (event counts).
struct UpdateConfig {
    Tick demote_threshold = 200;  // idle ticks at a level before demotion
    Tick recency_window = 50;     // how recent a modification must be to promote
    Tick sweep_period = 25;       // ticks between periodic sweeps

    /// Throws ValidationError unless every field is strictly positive.
    void validate() const;
    friend bool operator==(const UpdateConfig&, const UpdateConfig&) = default;
};

struct LevelChange {
    PageId page = 0;
    int from = 1;
    int to = 1;
    friend bool operator==(const LevelChange&, const LevelChange&) = default;
};

/**
 * Counts one request for `page` at time `now`.
 *
 * Below the top level the counter climbs to L-1; the access after that
 * promotes the page one level and resets the counter, so a page needs L
 * accesses per level. At the top level only the timestamp moves.
 */
std::optional<LevelChange> record_access(Model& m, PageId page, Tick now);

/// Drops every page idle for at least `demote_threshold` ticks by one
/// level (never below 1), resetting its counter and timestamp.
std::vector<LevelChange> demotion_sweep(Model& m, const UpdateConfig& cfg, Tick now);

/// Raises every page whose unseen modification is within `recency_window`
/// of `now` by one level (never above L). Each modification is looked at
/// once, whether or not it promotes.
std::vector<LevelChange> modification_sweep(Model& m, const UpdateConfig& cfg, Tick now);

struct AccessEvent {
    std::string url;
};
struct ModificationEvent {
    std::string url;
};
struct SweepTick {};

using Event = std::variant<AccessEvent, ModificationEvent, SweepTick>;

struct EventDelta {
    Tick tick = 0;
    std::vector<LevelChange> promoted;
    std::vector<LevelChange> demoted;
};

/// Access and modification events advance the model clock by one tick and
/// act at the new tick. A sweep runs demotion, then modification promotion,
/// at the current tick.
EventDelta apply_event(Model& m, const UpdateConfig& cfg, const Event& event);

/**
 * Owns a model and its clock. Callers feed events one at a time and call
 * sweep_if_due() once the tick's other work (e.g. predicting) is done.
 */
class Engine {
public:
    Engine(Model model, UpdateConfig cfg);

    const Model& model() const { return model_; }
    const UpdateConfig& config() const { return cfg_; }

    EventDelta access(std::string_view url);
    EventDelta modify(std::string_view url);
    /// Runs both sweeps when the clock sits on a multiple of sweep_period
    /// that has not been swept yet.
    std::optional<EventDelta> sweep_if_due();

private:
    Model model_;
    UpdateConfig cfg_;
    Tick last_sweep_;
};

}  // namespace webpredict
