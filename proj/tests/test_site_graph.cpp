#include <random>

#include <gtest/gtest.h>

#include "support/graphs.hpp"
#include "webpredict/site_graph.hpp"

using namespace webpredict;
using webpredict::testing::micro_site;

TEST(ParseGraph, MicroSite) {
    const auto g = micro_site();
    EXPECT_EQ(g.size(), 6u);
    EXPECT_EQ(g.pages(), (std::vector<std::string>{"H", "S", "M", "a", "b", "c"}));
    ASSERT_EQ(g.dominants().size(), 2u);
    EXPECT_EQ(g.url(g.dominants()[0]), "S");
    EXPECT_EQ(g.url(g.dominants()[1]), "M");
    EXPECT_FALSE(g.home().has_value());
    auto out = g.out_links(g.id_of("S"));
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(g.url(out[0]), "a");
    EXPECT_EQ(g.url(out[1]), "b");
    EXPECT_TRUE(g.out_links(g.id_of("b")).empty());
}

TEST(ParseGraph, UnknownLinkTargetReportsLine) {
    try {
        parse_graph("S -> z\nM ->\n@dominant S\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
        EXPECT_NE(std::string(e.what()).find("unknown page z"), std::string::npos);
    }
}

TEST(ParseGraph, HomeSuppliesDominants) {
    const auto g = parse_graph("H -> S M\nS -> a b\nM -> c\na -> c\nb ->\nc ->\n@home H\n");
    ASSERT_TRUE(g.home());
    EXPECT_EQ(g.url(*g.home()), "H");
    const auto d = derive_dominants(g);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(g.url(d[0]), "S");
    EXPECT_EQ(g.url(d[1]), "M");
}

TEST(ParseGraph, CommentsAndBlankLines) {
    const auto g = parse_graph("# site\n\nA -> B   # trailing\nB -> A\n@dominant A\n");
    EXPECT_EQ(g.size(), 2u);
    EXPECT_EQ(g.out_links(0).size(), 1u);
}

TEST(ParseGraph, Errors) {
    EXPECT_THROW(parse_graph("A ->\nA ->\n@dominant A\n"), ParseError);           // duplicate page
    EXPECT_THROW(parse_graph("A -> B\nB ->\n"), ParseError);                     // no dominants, no home
    EXPECT_THROW(parse_graph("A B\n@dominant A\n"), ParseError);                 // missing arrow
    EXPECT_THROW(parse_graph("A ->\n@dominant B\n"), ParseError);                // unknown dominant
    EXPECT_THROW(parse_graph("A ->\n@home A\n"), ParseError);                    // home without links
    EXPECT_THROW(parse_graph("A -> A A\n@dominant A\n"), ParseError);            // duplicate link
    EXPECT_THROW(parse_graph("A ->\n@dominant A A\n"), ParseError);              // duplicate dominant
    EXPECT_THROW(parse_graph("A ->\n@frobnicate A\n"), ParseError);              // unknown directive
    EXPECT_THROW(parse_graph("a,b ->\n@dominant a,b\n"), ParseError);            // invalid url
    EXPECT_THROW(parse_graph("# nothing\n"), ParseError);                        // empty
    try {
        parse_graph("A ->\nB ->\nA ->\n@dominant A\n");
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(DeriveDominants, ExplicitListWins) {
    const auto g = parse_graph("H -> S\nS -> M\nM ->\n@home H\n@dominant M\n");
    const auto d = derive_dominants(g);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(g.url(d[0]), "M");
}

TEST(DeriveDominants, HomeWithoutLinksIsRejected) {
    EXPECT_THROW(SiteGraph({"H", "A"}, {{}, {}}, {}, std::string("H")), ValidationError);
}

TEST(DeriveDominants, Deterministic) {
    const auto g = parse_graph("H -> C B A\nA ->\nB ->\nC ->\n@home H\n");
    EXPECT_EQ(derive_dominants(g), derive_dominants(g));
    EXPECT_EQ(g.url(derive_dominants(g)[0]), "C");
}

TEST(RenderGraph, RoundTripOnRandomGraphs) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = webpredict::testing::random_graph(rng, 1 + trial % 12, 0.3, 1 + trial % 3);
        EXPECT_EQ(parse_graph(render_graph(g)), g) << render_graph(g);
    }
    const auto homed = parse_graph("H -> S M\nS ->\nM ->\n@home H\n");
    EXPECT_EQ(parse_graph(render_graph(homed)), homed);
}

TEST(ModificationLog, ParsesAndValidates) {
    const auto g = micro_site();
    const auto log = parse_modification_log("# mods\n3 a\n5 a\n4 c\n", g);
    ASSERT_EQ(log.entries.size(), 3u);
    const auto dm = log.last_modified(g);
    EXPECT_EQ(dm[g.id_of("a")], 5);
    EXPECT_EQ(dm[g.id_of("c")], 4);
    EXPECT_EQ(dm[g.id_of("H")], 0);

    EXPECT_THROW(parse_modification_log("3 z\n", g), ParseError);
    EXPECT_THROW(parse_modification_log("-1 a\n", g), ParseError);
    EXPECT_THROW(parse_modification_log("5 a\n3 a\n", g), ParseError);
    EXPECT_THROW(parse_modification_log("x a\n", g), ParseError);
}
