#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "webpredict/error.hpp"

namespace webpredict {

/// Dense index of a page inside a SiteGraph (or a Model built from it).
using PageId = std::size_t;

/// Logical clock value. Ticks count events, never wall time.
using Tick = std::int64_t;

/**
 * The link structure of a site: the page set, the directed out-link lists
 * and the dominant pages that seed the classes.
 *
 * Page order and link order are exactly the order in which they were
 * written; every deterministic tie-break downstream relies on it.
 * Immutable once constructed.
 */
class SiteGraph {
public:
    SiteGraph() = default;

    /// Validates and builds a graph. Throws ValidationError on any broken
    /// invariant (duplicate page, unknown link target, bad dominant list).
    SiteGraph(std::vector<std::string> pages,
              std::vector<std::vector<std::string>> links,
              std::vector<std::string> dominants,
              std::optional<std::string> home = std::nullopt);

    std::size_t size() const { return pages_.size(); }
    const std::vector<std::string>& pages() const { return pages_; }
    const std::string& url(PageId id) const { return pages_.at(id); }

    std::optional<PageId> find(std::string_view url) const;
    /// Like find(), but throws UnknownUrlError.
    PageId id_of(std::string_view url) const;
    bool contains(std::string_view url) const { return find(url).has_value(); }

    std::span<const PageId> out_links(PageId id) const { return links_.at(id); }
    const std::vector<std::vector<PageId>>& adjacency() const { return links_; }

    /// Explicit dominant pages; empty when only a home page was declared.
    const std::vector<PageId>& dominants() const { return dominants_; }
    const std::optional<PageId>& home() const { return home_; }

    friend bool operator==(const SiteGraph&, const SiteGraph&) = default;

private:
    std::vector<std::string> pages_;
    std::vector<std::vector<PageId>> links_;
    std::vector<PageId> dominants_;
    std::optional<PageId> home_;
    std::unordered_map<std::string, PageId> index_;
};

/// Modification instants per page, as read from a modification log.
struct ModificationLog {
    struct Entry {
        std::string url;
        Tick tick = 0;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    std::vector<Entry> entries;

    /// Latest modification tick per page (0 when never modified).
    std::vector<Tick> last_modified(const SiteGraph& g) const;
};

/// Parses the line-oriented graph format:
///   `<url> -> <out-link>*`, `@dominant <url>+`, `@home <url>`, `#` comments.
/// When no `@dominant` line is present the home page's out-links are used.
SiteGraph parse_graph(std::string_view text);

/// Inverse of parse_graph; parse_graph(render_graph(g)) == g.
std::string render_graph(const SiteGraph& g);

/// Explicit dominants win; otherwise the home page's out-links in file order.
std::vector<PageId> derive_dominants(const SiteGraph& g);

/// Parses `<tick> <url>` lines and validates them against `g`.
ModificationLog parse_modification_log(std::string_view text, const SiteGraph& g);

/// True when `url` can be written to the graph and CSV formats unescaped.
bool is_valid_url(std::string_view url);

}  // namespace webpredict
