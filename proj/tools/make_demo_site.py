#!/usr/bin/env python3
"""Writes the demo portal used by the examples and the acceptance suite.

A home page links to eight section pages; each section owns twelve
articles. Every article links to a few related articles in its section and
carries a navigation bar of links to other sections and the home page.
"""

import random
import sys

SECTIONS = ["news", "sports", "movies", "music", "travel", "tech", "health", "food"]
ARTICLES = 12


def main(out):
    rng = random.Random(7)
    links = {"/": [f"/{s}" for s in SECTIONS]}
    for s in SECTIONS:
        articles = [f"/{s}/{i}" for i in range(ARTICLES)]
        others = [x for x in SECTIONS if x != s]
        links[f"/{s}"] = articles[:6] + ["/"]
        for a in articles:
            peers = [x for x in articles if x != a]
            out_links = rng.sample(peers, rng.randint(2, 4))
            if rng.random() < 0.3:
                other = rng.choice(others)
                out_links.append(f"/{other}/{rng.randrange(ARTICLES)}")
            out_links += [f"/{x}" for x in rng.sample(others, 3)] + ["/"]
            links[a] = out_links

    lines = ["# demo portal: home, 8 sections, 12 articles each", "@home /"]
    for page, out_links in links.items():
        lines.append(" ".join([page, "->"] + out_links))
    out.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    if len(sys.argv) > 1:
        with open(sys.argv[1], "w") as f:
            main(f)
    else:
        main(sys.stdout)
