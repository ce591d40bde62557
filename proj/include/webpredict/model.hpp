#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "webpredict/ranker.hpp"
#include "webpredict/site_graph.hpp"

namespace webpredict {

/// Class number reserved for pages no dominant page reaches.
inline constexpr int kUnclassified = 0;

/// One row of the page table.
struct PageRecord {
    std::string url;
    int lc = 0;        // accesses at the current level
    int level = 1;     // 1..L, L is the top
    int class_no = kUnclassified;
    Tick ts = 0;       // last access or level change
    Tick dm = 0;       // last modification, 0 if never
    Tick dm_seen = 0;  // newest modification already considered for promotion
    std::vector<PageId> links;
    int ordinal = 1;   // 1..p

    friend bool operator==(const PageRecord&, const PageRecord&) = default;
};

/**
 * The prediction model: a page table keyed by URL plus the class partition.
 *
 * Records are stored densely by PageId; `find` maps URLs to ids. Classes
 * are fixed when the model is built; only lc, level, ts, dm and dm_seen
 * change afterwards.
 */
class Model {
public:
    Model() = default;
    Model(std::vector<PageRecord> records, int levels, Tick tick = 0);

    int levels() const { return levels_; }
    std::size_t page_count() const { return records_.size(); }
    Tick tick() const { return tick_; }
    void set_tick(Tick t) { tick_ = t; }

    const std::vector<PageRecord>& records() const { return records_; }
    const PageRecord& record(PageId id) const { return records_.at(id); }
    PageRecord& record(PageId id) { return records_.at(id); }

    std::optional<PageId> find(std::string_view url) const;
    PageId id_of(std::string_view url) const;
    const PageRecord& at(std::string_view url) const { return record(id_of(url)); }

    /// class number -> member pages, in PageId order. Recomputed from records.
    std::map<int, std::vector<PageId>> classes() const;

    friend bool operator==(const Model& a, const Model& b) {
        return a.levels_ == b.levels_ && a.tick_ == b.tick_ && a.records_ == b.records_;
    }

private:
    std::vector<PageRecord> records_;
    std::unordered_map<std::string, PageId> index_;
    int levels_ = 1;
    Tick tick_ = 0;
};

struct ClassAssignment {
    std::vector<int> class_of;         // by PageId
    std::vector<PageId> common_pages;  // first-conflict order, no repeats
};

/// Breadth-first class seeding from the dominant pages (class i+1 for the
/// i-th dominant). First touch wins; a page later reached from another
/// class is recorded as common. Dominants never become common pages.
ClassAssignment assign_classes(const SiteGraph& g);

/// Moves every common page to the class with the most in-links to it
/// (sources counted by provisional class, class 0 excluded, ties to the
/// smaller class). Pages with nothing countable keep their class.
std::vector<int> resolve_common_pages(const SiteGraph& g, const ClassAssignment& provisional);

/// The default level count: ceil(sqrt(p)).
int default_level_count(std::size_t page_count);

/// Splits pages, ordered by ordinal, into `levels` contiguous groups whose
/// sizes differ by at most one; lower levels take the extra pages. The
/// highest ordinals land on level `levels`.
std::vector<int> assign_levels(const std::vector<int>& ordinals, int levels);

struct BuildOptions {
    PageRankOptions rank;
    std::optional<int> levels;  // overrides ceil(sqrt(p))
};

/// Builds the initial model. The model clock starts at the newest
/// modification tick in `log` (0 for an empty log).
Model build_model(const SiteGraph& g, const RankAssignment& ranks, const ModificationLog& log,
                  std::optional<int> levels = std::nullopt);

Model build_model(const SiteGraph& g, const ModificationLog& log = {}, const BuildOptions& opts = {});

/// CSV page table `key,url,lc,level,class,ts,dm,links`, one row per page,
/// rows sorted by url, links `;`-separated in their original order.
std::string dump_model(const Model& m);

/**
 * Reads a dump back. Ordinals are not part of the dump; they are recomputed
 * by ranking the link graph the rows describe. The level count comes from
 * `opts.levels` or ceil(sqrt(p)).
 */
Model load_model(std::string_view csv, const BuildOptions& opts = {});

}  // namespace webpredict
