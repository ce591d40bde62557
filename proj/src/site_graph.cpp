#include "webpredict/site_graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_set>

#include "text_util.hpp"

namespace webpredict {

bool is_valid_url(std::string_view url) {
    if (url.empty() || url.front() == '@' || url.front() == '#' || url == "->") return false;
    return std::none_of(url.begin(), url.end(), [](char c) {
        return c == ',' || c == ';' || c == '"' || static_cast<unsigned char>(c) <= ' ';
    });
}

SiteGraph::SiteGraph(std::vector<std::string> pages,
                     std::vector<std::vector<std::string>> links,
                     std::vector<std::string> dominants,
                     std::optional<std::string> home)
    : pages_(std::move(pages)) {
    if (pages_.empty()) throw ValidationError("site graph has no pages");
    if (links.size() != pages_.size())
        throw ValidationError("link table size does not match page count");

    index_.reserve(pages_.size());
    for (PageId i = 0; i < pages_.size(); ++i) {
        if (!is_valid_url(pages_[i])) throw ValidationError("invalid url '" + pages_[i] + "'");
        if (!index_.emplace(pages_[i], i).second)
            throw ValidationError("duplicate page " + pages_[i]);
    }

    links_.resize(pages_.size());
    for (PageId i = 0; i < pages_.size(); ++i) {
        auto& out = links_[i];
        out.reserve(links[i].size());
        for (const auto& target : links[i]) {
            PageId t = id_of(target);
            if (std::find(out.begin(), out.end(), t) != out.end())
                throw ValidationError("duplicate link " + pages_[i] + " -> " + target);
            out.push_back(t);
        }
    }

    if (home) home_ = id_of(*home);

    for (const auto& d : dominants) {
        PageId id = id_of(d);
        if (std::find(dominants_.begin(), dominants_.end(), id) != dominants_.end())
            throw ValidationError("duplicate dominant page " + d);
        dominants_.push_back(id);
    }
    if (dominants_.empty() && !home_)
        throw ValidationError("empty dominant set and no home page declared");
    if (derive_dominants(*this).empty())
        throw ValidationError("home page " + *home + " has no out-links to use as dominants");
}

std::optional<PageId> SiteGraph::find(std::string_view url) const {
    auto it = index_.find(std::string(url));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

PageId SiteGraph::id_of(std::string_view url) const {
    if (auto id = find(url)) return *id;
    throw UnknownUrlError(std::string(url));
}

std::vector<Tick> ModificationLog::last_modified(const SiteGraph& g) const {
    std::vector<Tick> dm(g.size(), 0);
    for (const auto& e : entries) {
        auto& slot = dm[g.id_of(e.url)];
        slot = std::max(slot, e.tick);
    }
    return dm;
}

std::vector<PageId> derive_dominants(const SiteGraph& g) {
    if (!g.dominants().empty()) return g.dominants();
    if (!g.home()) return {};
    auto out = g.out_links(*g.home());
    return {out.begin(), out.end()};
}

SiteGraph parse_graph(std::string_view text) {
    std::vector<std::string> pages;
    std::vector<std::vector<std::string>> links;
    std::vector<std::size_t> page_lines;
    std::vector<std::string> dominants;
    std::optional<std::string> home;
    std::map<std::string, std::size_t, std::less<>> declared;

    std::size_t line_no = 0;
    for (std::string_view line : detail::split_lines(text)) {
        ++line_no;
        auto tokens = detail::tokenize(detail::strip_comment(line));
        if (tokens.empty()) continue;

        auto check_url = [&](std::string_view u) {
            if (!is_valid_url(u)) throw ParseError(line_no, "invalid url '" + std::string(u) + "'");
        };

        if (tokens[0] == "@dominant") {
            if (tokens.size() < 2) throw ParseError(line_no, "@dominant needs at least one url");
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                check_url(tokens[i]);
                dominants.emplace_back(tokens[i]);
            }
        } else if (tokens[0] == "@home") {
            if (tokens.size() != 2) throw ParseError(line_no, "@home takes exactly one url");
            if (home) throw ParseError(line_no, "@home declared twice");
            check_url(tokens[1]);
            home = std::string(tokens[1]);
        } else if (tokens[0].front() == '@') {
            throw ParseError(line_no, "unknown directive " + std::string(tokens[0]));
        } else {
            if (tokens.size() < 2 || tokens[1] != "->")
                throw ParseError(line_no, "expected '<url> -> <out-link>*'");
            check_url(tokens[0]);
            std::string url(tokens[0]);
            if (!declared.emplace(url, line_no).second)
                throw ParseError(line_no, "duplicate page " + url);
            std::vector<std::string> out;
            for (std::size_t i = 2; i < tokens.size(); ++i) {
                check_url(tokens[i]);
                if (std::find(out.begin(), out.end(), tokens[i]) != out.end())
                    throw ParseError(line_no, "duplicate link to " + std::string(tokens[i]));
                out.emplace_back(tokens[i]);
            }
            pages.push_back(std::move(url));
            links.push_back(std::move(out));
            page_lines.push_back(line_no);
        }
    }

    if (pages.empty()) throw ParseError(0, "graph declares no pages");

    // Undeclared targets are reported against the line that mentions them.
    for (std::size_t i = 0; i < pages.size(); ++i)
        for (const auto& t : links[i])
            if (!declared.contains(t)) throw ParseError(page_lines[i], "unknown page " + t);
    for (const auto& d : dominants)
        if (!declared.contains(d)) throw ParseError(0, "unknown page " + d);
    if (home && !declared.contains(*home)) throw ParseError(0, "unknown page " + *home);

    if (dominants.empty()) {
        if (!home) throw ParseError(0, "empty dominant set and no home page declared");
        auto it = std::find(pages.begin(), pages.end(), *home);
        dominants = links[static_cast<std::size_t>(it - pages.begin())];
        if (dominants.empty())
            throw ParseError(0, "home page " + *home + " has no out-links to use as dominants");
    }

    try {
        return SiteGraph(std::move(pages), std::move(links), std::move(dominants), std::move(home));
    } catch (const ValidationError& e) {
        throw ParseError(0, e.what());
    }
}

std::string render_graph(const SiteGraph& g) {
    std::ostringstream os;
    for (PageId i = 0; i < g.size(); ++i) {
        os << g.url(i) << " ->";
        for (PageId t : g.out_links(i)) os << ' ' << g.url(t);
        os << '\n';
    }
    if (g.home()) os << "@home " << g.url(*g.home()) << '\n';
    if (!g.dominants().empty()) {
        os << "@dominant";
        for (PageId d : g.dominants()) os << ' ' << g.url(d);
        os << '\n';
    }
    return os.str();
}

ModificationLog parse_modification_log(std::string_view text, const SiteGraph& g) {
    ModificationLog log;
    std::unordered_map<std::string, Tick> last;
    std::size_t line_no = 0;
    for (std::string_view line : detail::split_lines(text)) {
        ++line_no;
        auto tokens = detail::tokenize(detail::strip_comment(line));
        if (tokens.empty()) continue;
        if (tokens.size() != 2) throw ParseError(line_no, "expected '<tick> <url>'");
        auto tick = detail::parse_integer<Tick>(tokens[0]);
        if (!tick) throw ParseError(line_no, "bad tick '" + std::string(tokens[0]) + "'");
        if (*tick < 0) throw ParseError(line_no, "negative tick");
        std::string url(tokens[1]);
        if (!g.contains(url)) throw ParseError(line_no, "unknown page " + url);
        auto [it, fresh] = last.emplace(url, *tick);
        if (!fresh) {
            if (*tick < it->second) throw ParseError(line_no, "ticks for " + url + " decrease");
            it->second = *tick;
        }
        log.entries.push_back({std::move(url), *tick});
    }
    return log;
}

}  // namespace webpredict
