#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "webpredict/error.hpp"
#include "webpredict/site_graph.hpp"

namespace webpredict {

struct PageRankOptions {
    double damping = 0.85;
    double tol = 1e-10;
    int max_iter = 200;
};

/// Scores and their 1..p ordinals, both indexed by PageId.
struct RankAssignment {
    Eigen::VectorXd scores;
    std::vector<int> ordinals;  // p for the most important page
};

/// Scores closer than this are treated as tied when ordering pages, so that
/// round-off from a different page order cannot swap two ordinals.
inline constexpr double kScoreTieQuantum = 1e-9;

/// Column-stochastic link matrix: entry (j, i) = 1/outdeg(i) for each link i -> j.
/// Dangling columns are left empty.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> transition_matrix(std::span<const std::vector<PageId>> adjacency) {
    const auto n = static_cast<Eigen::Index>(adjacency.size());
    std::vector<Eigen::Triplet<Scalar>> entries;
    for (PageId i = 0; i < adjacency.size(); ++i) {
        const auto& out = adjacency[i];
        const Scalar w = Scalar(1) / static_cast<Scalar>(out.size());
        for (PageId j : out)
            entries.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i), w);
    }
    Eigen::SparseMatrix<Scalar> m(n, n);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

/**
 * PageRank by power iteration with uniform teleport. The mass sitting on
 * dangling pages is spread uniformly over all pages every step.
 *
 * Iterates from the uniform vector until the L1 change between two steps
 * is at most `tol`; throws ConvergenceError after `max_iter` steps.
 */
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pagerank(std::span<const std::vector<PageId>> adjacency,
                                                  Scalar damping, Scalar tol, int max_iter) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (!(damping > Scalar(0) && damping < Scalar(1)))
        throw ValidationError("damping must lie in (0, 1)");
    if (!(tol > Scalar(0))) throw ValidationError("tolerance must be positive");
    if (max_iter < 1) throw ValidationError("max_iter must be at least 1");

    if (adjacency.empty()) throw ValidationError("cannot rank an empty graph");
    const auto n = static_cast<Eigen::Index>(adjacency.size());
    const Scalar inv_n = Scalar(1) / static_cast<Scalar>(n);
    const Eigen::SparseMatrix<Scalar> m = transition_matrix<Scalar>(adjacency);

    Vector dangling = Vector::Zero(n);
    for (PageId i = 0; i < adjacency.size(); ++i)
        if (adjacency[i].empty()) dangling[static_cast<Eigen::Index>(i)] = Scalar(1);

    Vector rank = Vector::Constant(n, inv_n);
    Vector next(n);
    Scalar residual = 0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const Scalar spread = (damping * dangling.dot(rank) + (Scalar(1) - damping)) * inv_n;
        next.noalias() = damping * (m * rank);
        next.array() += spread;
        residual = (next - rank).template lpNorm<1>();
        rank.swap(next);
        if (residual <= tol) return rank / rank.sum();
    }
    throw ConvergenceError(max_iter, static_cast<double>(residual));
}

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pagerank(const SiteGraph& g, Scalar damping, Scalar tol,
                                                  int max_iter) {
    return pagerank<Scalar>(std::span<const std::vector<PageId>>(g.adjacency()), damping, tol,
                            max_iter);
}

/// Ordinals 1..p: the highest score gets p; ties go to the smaller URL first.
std::vector<int> ordinal_ranks(const Eigen::VectorXd& scores, const std::vector<std::string>& urls);

RankAssignment rank_pages(const SiteGraph& g, const PageRankOptions& opts = {});
RankAssignment rank_pages(std::span<const std::vector<PageId>> adjacency,
                          const std::vector<std::string>& urls, const PageRankOptions& opts = {});

}  // namespace webpredict
