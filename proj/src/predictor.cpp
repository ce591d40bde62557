#include "webpredict/predictor.hpp"

#include <algorithm>

namespace webpredict {

namespace {

bool same_class(const PageRecord& a, const PageRecord& b) {
    return a.class_no != kUnclassified && a.class_no == b.class_no;
}

}  // namespace

std::vector<PageId> ordered_candidates(const Model& m, PageId source) {
    const auto& from = m.record(source);
    std::vector<PageId> out = from.links;
    std::sort(out.begin(), out.end(), [&](PageId x, PageId y) {
        const auto& a = m.record(x);
        const auto& b = m.record(y);
        const bool ma = same_class(a, from), mb = same_class(b, from);
        if (ma != mb) return ma;
        switch (compare_pvalue({a.level, a.ordinal}, {b.level, b.ordinal})) {
            case Precedence::kFirstPrecedes: return true;
            case Precedence::kSecondPrecedes: return false;
            case Precedence::kEquivalent: break;
        }
        return a.url < b.url;
    });
    return out;
}

std::vector<PageId> predict_window(const Model& m, PageId source, std::size_t window) {
    auto out = ordered_candidates(m, source);
    if (out.size() > window) out.resize(window);
    return out;
}

Prediction predict(const Model& m, std::string_view url, std::size_t window) {
    const PageId source = m.id_of(url);
    const auto& from = m.record(source);

    Prediction p;
    p.source = from.url;
    p.level = from.level;
    p.class_no = from.class_no;
    for (PageId id : ordered_candidates(m, source)) {
        const auto& r = m.record(id);
        p.candidates.push_back({id, r.url, {r.level, r.ordinal}, r.class_no, same_class(r, from)});
        if (p.window.size() < window) p.window.push_back(r.url);
    }
    return p;
}

}  // namespace webpredict
