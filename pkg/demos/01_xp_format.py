"""Walkthrough: the XP graph-database format.

Parses a one-article example, shows what the parser enforces, and
round-trips the database back to text.
"""
from gbad import parse_graph_file, validate_graph, write_graph_file
from gbad.graphs import DanglingEdgeError, MalformedLineError

ARTICLE = """\
% one news article as a conceptual graph
XP # 1
v 1 "News"
v 2 "in-line"
v 3 "Person"
v 4 "Verb"
v 5 "Andres"
v 6 "infected"
e 1 2 "has"
e 2 3 "has"
e 2 4 "has"
e 3 5 "has"
e 4 6 "has"
"""

db = parse_graph_file(ARTICLE)
article = db.examples[0]
print(f"parsed example {article.example_index}: "
      f"{article.vertex_count} vertices, {article.edge_count} edges")
print("vertex labels:", [v.label for v in article.vertices])
print("violations:", validate_graph(article) or "none")

print("\nround-trip is byte-exact (comments aside):")
print(write_graph_file(db))

# The parser reports problems with positions.
try:
    parse_graph_file('XP # 1\nv 1 "A"\ne 1 2 "x"\n')
except DanglingEdgeError as err:
    print("dangling edge ->", err)

try:
    parse_graph_file('XP # 1\nv one "A"\n')
except MalformedLineError as err:
    print("malformed line ->", err)
