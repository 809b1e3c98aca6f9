"""Count loops of order 5 and 6 up to isomorphism and sort out the unbreakable ones.

    python3 demos/small_census.py
"""
import json
import time

from loopforge.formats import table_to_text
from loopforge.loopcore import analyze
from loopforge.search import census, smallest_unbreakable

for n in (5, 6):
    t0 = time.perf_counter()
    c = census(n)
    print(f"order {n} ({time.perf_counter() - t0:.1f}s):", json.dumps(c.to_dict()))

t = smallest_unbreakable(5)
print("\nthe unbreakable loop of order 5:")
print(table_to_text(t))
rep = analyze(t)
print("commutative:", rep.commutative, " associative:", rep.associative,
      " multiplication group:", rep.group_class)
