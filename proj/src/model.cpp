#include "webpredict/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "text_util.hpp"

namespace webpredict {

Model::Model(std::vector<PageRecord> records, int levels, Tick tick)
    : records_(std::move(records)), levels_(levels), tick_(tick) {
    if (levels_ < 1) throw ValidationError("level count must be at least 1");
    index_.reserve(records_.size());
    for (PageId i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (!index_.emplace(r.url, i).second) throw ValidationError("duplicate page " + r.url);
        if (r.level < 1 || r.level > levels_)
            throw ValidationError("level of " + r.url + " outside [1, " + std::to_string(levels_) + "]");
        if (r.lc < 0 || r.class_no < 0 || r.ts < 0 || r.dm < 0)
            throw ValidationError("negative field in record " + r.url);
        for (PageId t : r.links)
            if (t >= records_.size()) throw ValidationError("dangling link index in " + r.url);
    }
}

std::optional<PageId> Model::find(std::string_view url) const {
    auto it = index_.find(std::string(url));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

PageId Model::id_of(std::string_view url) const {
    if (auto id = find(url)) return *id;
    throw UnknownUrlError(std::string(url));
}

std::map<int, std::vector<PageId>> Model::classes() const {
    std::map<int, std::vector<PageId>> out;
    for (PageId i = 0; i < records_.size(); ++i) out[records_[i].class_no].push_back(i);
    return out;
}

ClassAssignment assign_classes(const SiteGraph& g) {
    const auto dominants = derive_dominants(g);
    ClassAssignment out;
    out.class_of.assign(g.size(), kUnclassified);
    std::vector<bool> fixed(g.size(), false);
    std::vector<bool> is_common(g.size(), false);

    std::deque<PageId> frontier;
    for (std::size_t i = 0; i < dominants.size(); ++i) {
        out.class_of[dominants[i]] = static_cast<int>(i + 1);
        fixed[dominants[i]] = true;
        frontier.push_back(dominants[i]);
    }

    while (!frontier.empty()) {
        const PageId page = frontier.front();
        frontier.pop_front();
        const int cls = out.class_of[page];
        for (PageId next : g.out_links(page)) {
            int& target = out.class_of[next];
            if (target == kUnclassified) {
                target = cls;
                frontier.push_back(next);
            } else if (target != cls && !fixed[next] && !is_common[next]) {
                is_common[next] = true;
                out.common_pages.push_back(next);
            }
        }
    }
    return out;
}

std::vector<int> resolve_common_pages(const SiteGraph& g, const ClassAssignment& provisional) {
    const auto& cls = provisional.class_of;
    std::vector<int> resolved = cls;
    if (provisional.common_pages.empty()) return resolved;

    std::vector<std::vector<PageId>> in_links(g.size());
    for (PageId src = 0; src < g.size(); ++src)
        for (PageId dst : g.out_links(src)) in_links[dst].push_back(src);

    for (PageId page : provisional.common_pages) {
        std::map<int, int> votes;
        for (PageId src : in_links[page])
            if (cls[src] != kUnclassified) ++votes[cls[src]];
        int best = -1, best_count = 0;
        for (auto [c, count] : votes)
            if (count > best_count) best = c, best_count = count;
        if (best_count > 0) resolved[page] = best;
    }
    return resolved;
}

int default_level_count(std::size_t page_count) {
    auto l = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(page_count))));
    while (static_cast<std::size_t>(l) * static_cast<std::size_t>(l) < page_count) ++l;
    while (l > 1 && static_cast<std::size_t>(l - 1) * static_cast<std::size_t>(l - 1) >= page_count) --l;
    return std::max(l, 1);
}

std::vector<int> assign_levels(const std::vector<int>& ordinals, int levels) {
    if (levels < 1) throw ValidationError("level count must be at least 1");
    const auto p = ordinals.size();
    const auto count = static_cast<std::size_t>(levels);
    const std::size_t base = p / count, extra = p % count;

    // upper[l] = highest ordinal on level l+1
    std::vector<std::size_t> upper(count);
    std::size_t acc = 0;
    for (std::size_t l = 0; l < count; ++l) {
        acc += base + (l < extra ? 1 : 0);
        upper[l] = acc;
    }

    std::vector<int> level(p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto o = static_cast<std::size_t>(ordinals[i]);
        if (o < 1 || o > p) throw ValidationError("ordinal out of range");
        auto it = std::lower_bound(upper.begin(), upper.end(), o);
        level[i] = static_cast<int>(it - upper.begin()) + 1;
    }
    return level;
}

Model build_model(const SiteGraph& g, const RankAssignment& ranks, const ModificationLog& log,
                  std::optional<int> levels) {
    if (ranks.ordinals.size() != g.size())
        throw ValidationError("rank assignment does not cover the page set");
    const int level_count = levels.value_or(default_level_count(g.size()));
    const auto classes = resolve_common_pages(g, assign_classes(g));
    const auto level_of = assign_levels(ranks.ordinals, level_count);
    const auto dm = log.last_modified(g);

    std::vector<PageRecord> records(g.size());
    for (PageId i = 0; i < g.size(); ++i) {
        auto& r = records[i];
        r.url = g.url(i);
        r.level = level_of[i];
        r.class_no = classes[i];
        r.dm = dm[i];
        r.links.assign(g.out_links(i).begin(), g.out_links(i).end());
        r.ordinal = ranks.ordinals[i];
    }
    const Tick start = dm.empty() ? 0 : *std::max_element(dm.begin(), dm.end());
    return Model(std::move(records), level_count, start);
}

Model build_model(const SiteGraph& g, const ModificationLog& log, const BuildOptions& opts) {
    return build_model(g, rank_pages(g, opts.rank), log, opts.levels);
}

namespace {

constexpr std::string_view kDumpHeader = "key,url,lc,level,class,ts,dm,links";

}  // namespace

std::string dump_model(const Model& m) {
    std::vector<PageId> order(m.page_count());
    std::iota(order.begin(), order.end(), PageId{0});
    std::sort(order.begin(), order.end(),
              [&](PageId a, PageId b) { return m.record(a).url < m.record(b).url; });

    std::ostringstream os;
    os << kDumpHeader << '\n';
    for (std::size_t row = 0; row < order.size(); ++row) {
        const auto& r = m.record(order[row]);
        os << 'A' << row + 1 << ',' << r.url << ',' << r.lc << ',' << r.level << ',' << r.class_no
           << ',' << r.ts << ',' << r.dm << ',';
        for (std::size_t k = 0; k < r.links.size(); ++k)
            os << (k ? ";" : "") << m.record(r.links[k]).url;
        os << '\n';
    }
    return os.str();
}

Model load_model(std::string_view csv, const BuildOptions& opts) {
    auto lines = detail::split_lines(csv);
    if (lines.empty() || detail::trim(lines[0]) != kDumpHeader)
        throw ParseError(1, "expected header '" + std::string(kDumpHeader) + "'");

    struct Row {
        std::size_t line;
        std::vector<std::string_view> links;
    };
    std::vector<PageRecord> records;
    std::vector<Row> rows;
    std::unordered_map<std::string_view, PageId> index;

    for (std::size_t n = 1; n < lines.size(); ++n) {
        const std::size_t line_no = n + 1;
        if (detail::trim(lines[n]).empty()) continue;
        auto fields = detail::split(lines[n], ',');
        if (fields.size() != 8) throw ParseError(line_no, "expected 8 fields");
        if (fields[0].empty()) throw ParseError(line_no, "empty key");

        PageRecord r;
        r.url = std::string(fields[1]);
        if (!is_valid_url(r.url)) throw ParseError(line_no, "invalid url '" + r.url + "'");
        auto lc = detail::parse_integer<int>(fields[2]);
        auto level = detail::parse_integer<int>(fields[3]);
        auto cls = detail::parse_integer<int>(fields[4]);
        auto ts = detail::parse_integer<Tick>(fields[5]);
        auto dm = detail::parse_integer<Tick>(fields[6]);
        if (!lc || !level || !cls || !ts || !dm) throw ParseError(line_no, "non-numeric field");
        r.lc = *lc;
        r.level = *level;
        r.class_no = *cls;
        r.ts = *ts;
        r.dm = *dm;

        Row row{line_no, {}};
        if (!fields[7].empty()) row.links = detail::split(fields[7], ';');
        if (!index.emplace(fields[1], records.size()).second)
            throw ParseError(line_no, "duplicate page " + r.url);
        records.push_back(std::move(r));
        rows.push_back(std::move(row));
    }
    if (records.empty()) throw ParseError(0, "model has no pages");

    std::vector<std::vector<PageId>> adjacency(records.size());
    std::vector<std::string> urls(records.size());
    for (PageId i = 0; i < records.size(); ++i) {
        urls[i] = records[i].url;
        for (auto target : rows[i].links) {
            auto it = index.find(target);
            if (it == index.end())
                throw ParseError(rows[i].line, "unknown page " + std::string(target));
            adjacency[i].push_back(it->second);
        }
        records[i].links = adjacency[i];
    }

    const auto ranks = rank_pages(adjacency, urls, opts.rank);
    Tick tick = 0;
    for (PageId i = 0; i < records.size(); ++i) {
        records[i].ordinal = ranks.ordinals[i];
        tick = std::max({tick, records[i].ts, records[i].dm});
    }
    const int level_count = opts.levels.value_or(default_level_count(records.size()));
    try {
        return Model(std::move(records), level_count, tick);
    } catch (const ValidationError& e) {
        throw ParseError(0, e.what());
    }
}

}  // namespace webpredict
