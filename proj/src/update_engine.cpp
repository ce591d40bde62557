#include "webpredict/update_engine.hpp"

#include <algorithm>

namespace webpredict {

void UpdateConfig::validate() const {
    if (demote_threshold <= 0) throw ValidationError("demote_threshold must be positive");
    if (recency_window <= 0) throw ValidationError("recency_window must be positive");
    if (sweep_period <= 0) throw ValidationError("sweep_period must be positive");
}

std::optional<LevelChange> record_access(Model& m, PageId page, Tick now) {
    auto& r = m.record(page);
    const int top = m.levels();
    r.ts = now;
    if (r.level >= top) return std::nullopt;
    if (r.lc < top - 1) {
        ++r.lc;
        return std::nullopt;
    }
    LevelChange change{page, r.level, std::min(r.level + 1, top)};
    r.level = change.to;
    r.lc = 0;
    return change;
}

std::vector<LevelChange> demotion_sweep(Model& m, const UpdateConfig& cfg, Tick now) {
    std::vector<LevelChange> out;
    for (PageId i = 0; i < m.page_count(); ++i) {
        auto& r = m.record(i);
        if (r.level <= 1 || now - r.ts < cfg.demote_threshold) continue;
        out.push_back({i, r.level, r.level - 1});
        --r.level;
        r.lc = 0;
        r.ts = now;
    }
    return out;
}

std::vector<LevelChange> modification_sweep(Model& m, const UpdateConfig& cfg, Tick now) {
    std::vector<LevelChange> out;
    for (PageId i = 0; i < m.page_count(); ++i) {
        auto& r = m.record(i);
        if (r.dm <= r.dm_seen) continue;
        r.dm_seen = r.dm;
        if (now - r.dm > cfg.recency_window || r.level >= m.levels()) continue;
        out.push_back({i, r.level, r.level + 1});
        ++r.level;
        r.lc = 0;
        r.ts = now;
    }
    return out;
}

EventDelta apply_event(Model& m, const UpdateConfig& cfg, const Event& event) {
    EventDelta delta;
    std::visit(
        [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, AccessEvent>) {
                const PageId id = m.id_of(e.url);
                m.set_tick(m.tick() + 1);
                if (auto change = record_access(m, id, m.tick())) delta.promoted.push_back(*change);
            } else if constexpr (std::is_same_v<T, ModificationEvent>) {
                const PageId id = m.id_of(e.url);
                m.set_tick(m.tick() + 1);
                m.record(id).dm = m.tick();
            } else {
                delta.demoted = demotion_sweep(m, cfg, m.tick());
                delta.promoted = modification_sweep(m, cfg, m.tick());
            }
        },
        event);
    delta.tick = m.tick();
    return delta;
}

Engine::Engine(Model model, UpdateConfig cfg)
    : model_(std::move(model)), cfg_(cfg), last_sweep_(model_.tick()) {
    cfg_.validate();
}

EventDelta Engine::access(std::string_view url) {
    return apply_event(model_, cfg_, AccessEvent{std::string(url)});
}

EventDelta Engine::modify(std::string_view url) {
    return apply_event(model_, cfg_, ModificationEvent{std::string(url)});
}

std::optional<EventDelta> Engine::sweep_if_due() {
    const Tick now = model_.tick();
    if (now == last_sweep_ || now % cfg_.sweep_period != 0) return std::nullopt;
    last_sweep_ = now;
    return apply_event(model_, cfg_, SweepTick{});
}

}  // namespace webpredict
