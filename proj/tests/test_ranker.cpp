#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "support/graphs.hpp"
#include "support/oracles.hpp"
#include "webpredict/ranker.hpp"

using namespace webpredict;
using webpredict::testing::micro_site;

namespace {

// Dense power iteration in numpy, damping 0.85, converged to 1e-15 (L1).
const std::map<std::string, double> kMicroSiteScores = {
    {"H", 0.09400898373350801}, {"S", 0.13396280182024894}, {"M", 0.13396280182024894},
    {"a", 0.1509431745071138},  {"b", 0.1509431745071138},  {"c", 0.33617906361176636},
};

}  // namespace

TEST(PageRank, TwoPageCycleIsUniform) {
    const auto g = parse_graph("A -> B\nB -> A\n@dominant A\n");
    const auto r = pagerank<double>(g, 0.85, 1e-12, 200);
    EXPECT_NEAR(r[0], 0.5, 1e-12);
    EXPECT_NEAR(r[1], 0.5, 1e-12);
}

TEST(PageRank, SinglePage) {
    const auto g = parse_graph("A ->\n@dominant A\n");
    const auto r = pagerank<double>(g, 0.85, 1e-12, 200);
    ASSERT_EQ(r.size(), 1);
    EXPECT_DOUBLE_EQ(r[0], 1.0);
}

TEST(PageRank, MicroSiteMatchesFrozenOracle) {
    const auto g = micro_site();
    const auto r = pagerank<double>(g, 0.85, 1e-12, 500);
    for (const auto& [url, expected] : kMicroSiteScores)
        EXPECT_NEAR(r[static_cast<Eigen::Index>(g.id_of(url))], expected, 1e-11) << url;
    EXPECT_NEAR(r.sum(), 1.0, 1e-12);
}

TEST(PageRank, MatchesDenseOracleOnRandomGraphs) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 30;
        const auto g = webpredict::testing::random_graph(rng, n, 0.15, 1);
        const auto fast = pagerank<double>(g, 0.85, 1e-13, 2000);
        const auto slow = oracle::dense_pagerank(g.adjacency(), 0.85, 1e-14);
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_NEAR(fast[static_cast<Eigen::Index>(i)], slow[i], 1e-10);
    }
}

TEST(PageRank, FixedPointPositiveAndNormalized) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = webpredict::testing::random_graph(rng, 2 + rng() % 20, 0.2, 1);
        const double d = 0.85;
        const auto r = pagerank<double>(g, d, 1e-12, 2000);
        EXPECT_NEAR(r.sum(), 1.0, 1e-9);
        EXPECT_GT(r.minCoeff(), 0.0);

        // one more step of the recurrence leaves the vector in place
        const auto m = transition_matrix<double>(g.adjacency());
        double dangling = 0.0;
        for (PageId i = 0; i < g.size(); ++i)
            if (g.out_links(i).empty()) dangling += r[static_cast<Eigen::Index>(i)];
        Eigen::VectorXd step = d * (m * r);
        step.array() += (d * dangling + 1.0 - d) / static_cast<double>(g.size());
        EXPECT_LE((step - r).lpNorm<1>(), 1e-11);
    }
}

TEST(PageRank, FloatScalarAgreesWithDouble) {
    const auto g = micro_site();
    const auto f = pagerank<float>(g, 0.85f, 1e-6f, 500);
    const auto d = pagerank<double>(g, 0.85, 1e-12, 500);
    EXPECT_LE((f.cast<double>() - d).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(PageRank, RejectsBadParameters) {
    const auto g = micro_site();
    EXPECT_THROW(pagerank<double>(g, 0.0, 1e-9, 10), ValidationError);
    EXPECT_THROW(pagerank<double>(g, 1.0, 1e-9, 10), ValidationError);
    EXPECT_THROW(pagerank<double>(g, 0.85, 0.0, 10), ValidationError);
}

TEST(PageRank, ReportsNonConvergence) {
    const auto g = micro_site();
    try {
        pagerank<double>(g, 0.85, 1e-15, 3);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.iterations(), 3);
        EXPECT_GT(e.residual(), 1e-15);
    }
}

TEST(OrdinalRanks, TieGoesToSmallerUrl) {
    Eigen::VectorXd s(2);
    s << 0.5, 0.5;
    EXPECT_EQ(ordinal_ranks(s, {"A", "B"}), (std::vector<int>{1, 2}));
    EXPECT_EQ(ordinal_ranks(s, {"B", "A"}), (std::vector<int>{2, 1}));
}

TEST(OrdinalRanks, SortsByScore) {
    Eigen::VectorXd s(3);
    s << 0.2, 0.7, 0.1;
    EXPECT_EQ(ordinal_ranks(s, {"A", "B", "C"}), (std::vector<int>{2, 3, 1}));
}

TEST(OrdinalRanks, MicroSiteFollowsOracleSort) {
    const auto g = micro_site();
    const auto ranks = rank_pages(g);
    // oracle sort of kMicroSiteScores, ties by url: H < M=S < a=b < c
    const std::map<std::string, int> expected = {{"H", 1}, {"M", 2}, {"S", 3},
                                                 {"a", 4}, {"b", 5}, {"c", 6}};
    for (const auto& [url, ord] : expected) EXPECT_EQ(ranks.ordinals[g.id_of(url)], ord) << url;
}

TEST(OrdinalRanks, InvariantUnderPageOrder) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = webpredict::testing::random_graph(rng, 2 + rng() % 15, 0.25, 1);
        std::vector<std::size_t> order(g.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        const auto h = webpredict::testing::permute_pages(g, order);

        PageRankOptions opts;
        opts.tol = 1e-13;
        opts.max_iter = 5000;
        const auto rg = rank_pages(g, opts);
        const auto rh = rank_pages(h, opts);
        for (PageId i = 0; i < g.size(); ++i) {
            const PageId j = h.id_of(g.url(i));
            EXPECT_NEAR(rg.scores[static_cast<Eigen::Index>(i)], rh.scores[static_cast<Eigen::Index>(j)], 1e-9);
            EXPECT_EQ(rg.ordinals[i], rh.ordinals[j]);
        }
        auto sorted = rg.ordinals;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < sorted.size(); ++k) EXPECT_EQ(sorted[k], static_cast<int>(k + 1));
    }
}
