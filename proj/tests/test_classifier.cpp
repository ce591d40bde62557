#include <random>
#include <set>

#include <gtest/gtest.h>

#include "support/graphs.hpp"
#include "support/oracles.hpp"
#include "webpredict/model.hpp"

using namespace webpredict;
using webpredict::testing::make_graph;
using webpredict::testing::micro_site;

TEST(AssignClasses, MicroSite) {
    const auto g = micro_site();
    const auto a = assign_classes(g);
    auto cls = [&](const char* u) { return a.class_of[g.id_of(u)]; };
    EXPECT_EQ(cls("S"), 1);
    EXPECT_EQ(cls("M"), 2);
    EXPECT_EQ(cls("a"), 1);
    EXPECT_EQ(cls("b"), 1);
    EXPECT_EQ(cls("c"), 2);
    EXPECT_EQ(cls("H"), 0);
    ASSERT_EQ(a.common_pages.size(), 1u);
    EXPECT_EQ(g.url(a.common_pages[0]), "c");
}

TEST(AssignClasses, SingleDominantCoversAll) {
    const auto g = parse_graph("R -> A B\nA -> C\nB -> C R\nC -> A\n@dominant R\n");
    const auto a = assign_classes(g);
    for (int c : a.class_of) EXPECT_EQ(c, 1);
    EXPECT_TRUE(a.common_pages.empty());
}

TEST(AssignClasses, DisjointSubtrees) {
    const auto g = parse_graph("X -> x1 x2\nY -> y1\nx1 ->\nx2 -> x1\ny1 ->\n@dominant X Y\n");
    const auto a = assign_classes(g);
    EXPECT_EQ(a.class_of, (std::vector<int>{1, 2, 1, 1, 2}));
    EXPECT_TRUE(a.common_pages.empty());
}

TEST(AssignClasses, DominantsStayInTheirOwnClass) {
    const auto g = parse_graph("X -> Y\nY -> X\n@dominant X Y\n");
    const auto a = assign_classes(g);
    EXPECT_EQ(a.class_of, (std::vector<int>{1, 2}));
    EXPECT_TRUE(a.common_pages.empty());
}

TEST(ResolveCommonPages, TieGoesToSmallerClass) {
    const auto g = micro_site();
    const auto resolved = resolve_common_pages(g, assign_classes(g));
    EXPECT_EQ(resolved[g.id_of("c")], 1);  // in-links from a (1) and M (2)
}

TEST(ResolveCommonPages, StrictMajority) {
    // z is first reached from class 1, then three class-2 pages link to it.
    const auto g = parse_graph(
        "D1 -> z\nD2 -> q r s\nq -> z\nr -> z\ns -> z\nz ->\n@dominant D1 D2\n");
    const auto a = assign_classes(g);
    EXPECT_EQ(a.class_of[g.id_of("z")], 1);
    const auto resolved = resolve_common_pages(g, a);
    EXPECT_EQ(resolved[g.id_of("z")], 2);
}

TEST(ResolveCommonPages, OnlyUnclassifiedInLinksKeepsClass) {
    // c is listed as common by hand, but its only in-link is from class 0.
    const auto g = parse_graph("H -> c\nD -> e\nc ->\ne ->\n@dominant D\n");
    ClassAssignment a;
    a.class_of = {0, 1, 2, 1};
    a.common_pages = {g.id_of("c")};
    const auto resolved = resolve_common_pages(g, a);
    EXPECT_EQ(resolved[g.id_of("c")], 2);
}

TEST(AssignLevels, SixPages) {
    EXPECT_EQ(default_level_count(6), 3);
    const std::vector<int> ordinals = {6, 5, 4, 3, 2, 1};
    EXPECT_EQ(assign_levels(ordinals, 3), (std::vector<int>{3, 3, 2, 2, 1, 1}));
}

TEST(AssignLevels, SinglePage) {
    EXPECT_EQ(default_level_count(1), 1);
    EXPECT_EQ(assign_levels({1}, 1), (std::vector<int>{1}));
}

TEST(AssignLevels, FivePagesThreeLevels) {
    const auto levels = assign_levels({1, 2, 3, 4, 5}, 3);
    EXPECT_EQ(levels, (std::vector<int>{1, 1, 2, 2, 3}));
}

TEST(AssignLevels, DefaultLevelCountIsCeilSqrt) {
    const std::vector<std::pair<std::size_t, int>> cases = {
        {1, 1}, {2, 2}, {4, 2}, {5, 3}, {9, 3}, {10, 4}, {100, 10}, {101, 11}};
    for (auto [p, l] : cases) EXPECT_EQ(default_level_count(p), l) << p;
}

// Group sizes recomputed by counting: they must sum to p, differ by at most
// one, never grow towards the top, and respect ordinal order.
TEST(AssignLevels, ExhaustiveRemainderRule) {
    for (int p = 1; p <= 20; ++p) {
        for (int levels = 1; levels <= p + 2; ++levels) {
            std::vector<int> ordinals(static_cast<std::size_t>(p));
            for (int i = 0; i < p; ++i) ordinals[static_cast<std::size_t>(i)] = p - i;
            const auto assigned = assign_levels(ordinals, levels);
            std::vector<int> size(static_cast<std::size_t>(levels) + 1, 0);
            for (int l : assigned) {
                ASSERT_GE(l, 1);
                ASSERT_LE(l, levels);
                ++size[static_cast<std::size_t>(l)];
            }
            const int base = p / levels, extra = p % levels;
            for (int l = 1; l <= levels; ++l)
                EXPECT_EQ(size[static_cast<std::size_t>(l)], base + (l <= extra ? 1 : 0)) << p << "/" << levels;
            for (std::size_t i = 0; i + 1 < assigned.size(); ++i)
                EXPECT_GE(assigned[i], assigned[i + 1]);  // ordinals descend
        }
    }
}

TEST(BuildModel, MicroSiteEndToEnd) {
    const auto g = micro_site();
    const auto m = build_model(g);
    EXPECT_EQ(m.page_count(), 6u);
    EXPECT_EQ(m.levels(), 3);
    const auto classes = m.classes();
    auto urls = [&](int c) {
        std::set<std::string> out;
        for (PageId id : classes.at(c)) out.insert(m.record(id).url);
        return out;
    };
    EXPECT_EQ(urls(0), (std::set<std::string>{"H"}));
    EXPECT_EQ(urls(1), (std::set<std::string>{"S", "a", "b", "c"}));
    EXPECT_EQ(urls(2), (std::set<std::string>{"M"}));

    // ordinals H1 M2 S3 a4 b5 c6 -> two pages per level
    EXPECT_EQ(m.at("H").level, 1);
    EXPECT_EQ(m.at("M").level, 1);
    EXPECT_EQ(m.at("S").level, 2);
    EXPECT_EQ(m.at("a").level, 2);
    EXPECT_EQ(m.at("b").level, 3);
    EXPECT_EQ(m.at("c").level, 3);

    for (const auto& r : m.records()) {
        EXPECT_EQ(r.lc, 0);
        EXPECT_EQ(r.ts, 0);
        EXPECT_EQ(r.dm, 0);
    }
    EXPECT_EQ(m.record(m.id_of("S")).links, (std::vector<PageId>{g.id_of("a"), g.id_of("b")}));
}

TEST(BuildModel, ModificationLogSetsDmAndClock) {
    const auto g = micro_site();
    const auto m = build_model(g, parse_modification_log("2 a\n7 a\n4 H\n", g));
    EXPECT_EQ(m.at("a").dm, 7);
    EXPECT_EQ(m.at("H").dm, 4);
    EXPECT_EQ(m.at("c").dm, 0);
    EXPECT_EQ(m.tick(), 7);
}

TEST(BuildModel, LevelOverride) {
    BuildOptions opts;
    opts.levels = 2;
    const auto m = build_model(micro_site(), {}, opts);
    EXPECT_EQ(m.levels(), 2);
    EXPECT_EQ(m.at("c").level, 2);
    EXPECT_EQ(m.at("H").level, 1);
}

TEST(BuildModel, DeterministicDump) {
    EXPECT_EQ(dump_model(build_model(micro_site())), dump_model(build_model(micro_site())));
}

TEST(DumpModel, MicroSiteTable) {
    EXPECT_EQ(dump_model(build_model(micro_site())),
              "key,url,lc,level,class,ts,dm,links\n"
              "A1,H,0,1,0,0,0,S;M\n"
              "A2,M,0,1,2,0,0,c\n"
              "A3,S,0,2,1,0,0,a;b\n"
              "A4,a,0,2,1,0,0,c\n"
              "A5,b,0,3,1,0,0,\n"
              "A6,c,0,3,1,0,0,\n");
}

TEST(LoadModel, DumpRoundTrip) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = webpredict::testing::random_graph(rng, 1 + rng() % 25, 0.2, 1 + rng() % 3);
        const auto m = build_model(g);
        const auto text = dump_model(m);
        const auto loaded = load_model(text);
        EXPECT_EQ(dump_model(loaded), text);
        EXPECT_EQ(loaded.levels(), m.levels());
        for (const auto& r : m.records()) EXPECT_EQ(loaded.at(r.url).ordinal, r.ordinal) << r.url;
    }
}

TEST(LoadModel, Errors) {
    EXPECT_THROW(load_model("url,level\n"), ParseError);
    EXPECT_THROW(load_model("key,url,lc,level,class,ts,dm,links\nA1,X,0,1,0,0,0,Y\n"), ParseError);
    EXPECT_THROW(load_model("key,url,lc,level,class,ts,dm,links\nA1,X,0,9,0,0,0,\n"), ParseError);
    EXPECT_THROW(load_model("key,url,lc,level,class,ts,dm,links\nA1,X,0,1,0,0,0\n"), ParseError);
    EXPECT_THROW(load_model("key,url,lc,level,class,ts,dm,links\nA1,X,z,1,0,0,0,\n"), ParseError);
    EXPECT_THROW(load_model("key,url,lc,level,class,ts,dm,links\n"), ParseError);
}

TEST(BuildModel, PartitionAndMonotoneLevels) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = webpredict::testing::random_graph(rng, 1 + rng() % 30, 0.15, 1 + rng() % 4);
        const auto m = build_model(g);
        std::set<PageId> seen;
        for (const auto& [c, members] : m.classes())
            for (PageId id : members) EXPECT_TRUE(seen.insert(id).second);
        EXPECT_EQ(seen.size(), g.size());
        const auto dominants = derive_dominants(g);
        for (std::size_t i = 0; i < dominants.size(); ++i)
            EXPECT_EQ(m.record(dominants[i]).class_no, static_cast<int>(i + 1));
        for (const auto& a : m.records())
            for (const auto& b : m.records())
                if (a.ordinal > b.ordinal) EXPECT_GE(a.level, b.level);
    }
}

TEST(AssignClasses, AgreesWithShortestLabelOracle) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = webpredict::testing::random_graph(rng, 1 + rng() % 8, 0.3, 1 + rng() % 3);
        const auto a = assign_classes(g);
        const auto o = oracle::classify(g);
        EXPECT_EQ(a.class_of, o.provisional) << render_graph(g);
        EXPECT_EQ(std::set<PageId>(a.common_pages.begin(), a.common_pages.end()), o.common);
        EXPECT_EQ(resolve_common_pages(g, a), o.resolved);
    }
}
