"""Exhaustive check of the M_-1 classification over every digraph with a = 3.

There are 4^9 = 262144 labelled digraphs.  Prints the census of exceptions
grouped into isomorphism classes, then shows one member of each class.
"""

import sys

from bimeyniel import classify_m_minus_one, verify_theorem
from bimeyniel.textio import serialize
from bimeyniel.verify import digraph_at

workers = int(sys.argv[1]) if len(sys.argv) > 1 else 1
rep = verify_theorem("3.1", 3, workers=workers)
print(rep.summary())

for fam, cs in rep.exceptions.items():
    for c in cs:
        D = digraph_at(3, c.representative)
        print(f"\n{fam} class of {c.size}, representative #{c.representative}")
        print(classify_m_minus_one(D).describe())
        print(serialize(D), end="")
