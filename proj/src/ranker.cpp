#include "webpredict/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace webpredict {

std::vector<int> ordinal_ranks(const Eigen::VectorXd& scores, const std::vector<std::string>& urls) {
    const auto n = static_cast<std::size_t>(scores.size());
    if (n != urls.size()) throw ValidationError("score vector and url list differ in length");

    std::vector<long long> key(n);
    for (std::size_t i = 0; i < n; ++i)
        key[i] = std::llround(scores[static_cast<Eigen::Index>(i)] / kScoreTieQuantum);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return urls[a] < urls[b];
    });

    std::vector<int> ordinals(n);
    for (std::size_t pos = 0; pos < n; ++pos) ordinals[order[pos]] = static_cast<int>(pos + 1);
    return ordinals;
}

RankAssignment rank_pages(std::span<const std::vector<PageId>> adjacency,
                          const std::vector<std::string>& urls, const PageRankOptions& opts) {
    RankAssignment out;
    out.scores = pagerank<double>(adjacency, opts.damping, opts.tol, opts.max_iter);
    out.ordinals = ordinal_ranks(out.scores, urls);
    return out;
}

RankAssignment rank_pages(const SiteGraph& g, const PageRankOptions& opts) {
    return rank_pages(g.adjacency(), g.pages(), opts);
}

}  // namespace webpredict
