#include "webpredict/config.hpp"

#include <set>
#include <string>

#include "text_util.hpp"

namespace webpredict {

EngineConfig parse_config(std::string_view text) {
    EngineConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    for (std::string_view raw : detail::split_lines(text)) {
        ++line_no;
        auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
        auto key = detail::trim(line.substr(0, eq));
        auto value = detail::trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) throw ParseError(line_no, "duplicate key " + std::string(key));

        auto positive_int = [&]() -> Tick {
            auto v = detail::parse_integer<Tick>(value);
            if (!v || *v <= 0) throw ParseError(line_no, std::string(key) + " must be a positive integer");
            return *v;
        };

        if (key == "levels") {
            cfg.build.levels = static_cast<int>(positive_int());
        } else if (key == "damping") {
            auto v = detail::parse_real(value);
            if (!v || !(*v > 0.0 && *v < 1.0)) throw ParseError(line_no, "damping must lie in (0, 1)");
            cfg.build.rank.damping = *v;
        } else if (key == "demote_threshold") {
            cfg.update.demote_threshold = positive_int();
        } else if (key == "recency_window") {
            cfg.update.recency_window = positive_int();
        } else if (key == "sweep_period") {
            cfg.update.sweep_period = positive_int();
        } else if (key == "window") {
            auto v = detail::parse_integer<std::size_t>(value);
            if (!v) throw ParseError(line_no, "window must be a non-negative integer");
            cfg.window = *v;
        } else if (key == "cache") {
            if (value == "session") cfg.cache = CacheMode::kSession;
            else if (value == "window") cfg.cache = CacheMode::kWindow;
            else throw ParseError(line_no, "cache must be 'session' or 'window'");
        } else {
            throw ParseError(line_no, "unknown key " + std::string(key));
        }
    }
    return cfg;
}

}  // namespace webpredict
