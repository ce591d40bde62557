#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "webpredict/model.hpp"

namespace webpredict {

/// A candidate's [Level, Rank] pair.
struct PValue {
    int level = 1;
    int rank = 1;
    friend bool operator==(const PValue&, const PValue&) = default;
};

enum class Precedence { kFirstPrecedes, kSecondPrecedes, kEquivalent };

/**
 * Level dominates rank: `a` precedes `b` iff a.level > b.level, or the
 * levels are equal and a.rank > b.rank. Pairs where level and rank point
 * in opposite directions are ordered by level, never left incomparable.
 */
constexpr Precedence compare_pvalue(PValue a, PValue b) {
    if (a.level != b.level)
        return a.level > b.level ? Precedence::kFirstPrecedes : Precedence::kSecondPrecedes;
    if (a.rank != b.rank)
        return a.rank > b.rank ? Precedence::kFirstPrecedes : Precedence::kSecondPrecedes;
    return Precedence::kEquivalent;
}

struct Candidate {
    PageId page = 0;
    std::string url;
    PValue pvalue;
    int class_no = kUnclassified;
    bool class_match = false;
};

struct Prediction {
    std::string source;
    int level = 1;
    int class_no = kUnclassified;
    std::vector<Candidate> candidates;  // full precedence order
    std::vector<std::string> window;    // first min(W, |candidates|) urls
};

/// Out-links of `source` in prediction order: same-class links first,
/// then by P-value precedence, then by URL.
std::vector<PageId> ordered_candidates(const Model& m, PageId source);

/// Fast path for replay: the first `window` entries of ordered_candidates.
std::vector<PageId> predict_window(const Model& m, PageId source, std::size_t window);

/// Throws UnknownUrlError when `url` is not in the model.
Prediction predict(const Model& m, std::string_view url, std::size_t window);

}  // namespace webpredict
