"""Built-in example graphs, also exposed through the CLI ``--fixture`` flag."""

from .graph import OMEGA, Bundle, Graph

# Single vertex, no edges.
PT = Graph(("v",))

# u -e> v -f> w
LINE3 = Graph(("u", "v", "w"), (Bundle("e", "u", "v"), Bundle("f", "v", "w")))

# x -g> u -e> v -f> w
ENTRY4 = Graph(
    ("x", "u", "v", "w"),
    (Bundle("g", "x", "u"), Bundle("e", "u", "v"), Bundle("f", "v", "w")),
)

# u -e> v, u -f> w
FORK = Graph(("u", "v", "w"), (Bundle("e", "u", "v"), Bundle("f", "u", "w")))

# one loop at v
LOOP1 = Graph(("v",), (Bundle("e", "v", "v"),))

# two loops at v
ROSE2 = Graph(("v",), (Bundle("e", "v", "v"), Bundle("f", "v", "v")))

# v => w with omega multiplicity; w a sink
OMEGA1 = Graph(("v", "w"), (Bundle("h", "v", "w", OMEGA),))

# v => w with omega multiplicity plus a single edge v -g> u; u, w sinks
OMEGA2 = Graph(
    ("v", "u", "w"),
    (Bundle("h", "v", "w", OMEGA), Bundle("g", "v", "u")),
)

FIXTURES: dict[str, Graph] = {
    "PT": PT,
    "LINE3": LINE3,
    "ENTRY4": ENTRY4,
    "FORK": FORK,
    "LOOP1": LOOP1,
    "ROSE2": ROSE2,
    "OMEGA": OMEGA1,
    "OMEGA2": OMEGA2,
}
