# A miniature of the published result tables: sweep a radicand range,
# group the certified ideals, and print one row per ideal with the list of
# fields sharing it. (The CLI does the same, with csv/json output and a
# worker pool: `greenberg table --min 3 --max 200 --jobs 4`.)

from collections import defaultdict

from greenberg.quadratic import is_squarefree
from greenberg.verify import RunConfig, verify

LO, HI = 3, 160
config = RunConfig(primes=12)

def section_of(f):
    return {1: "f = 1 mod 8", 5: "f = 5 mod 8"}.get(f % 8, "f = 3, 7 mod 8")


groups = defaultdict(list)
trivial = []
for f in range(LO, HI + 1, 2):
    if not is_squarefree(f):
        continue
    rep = verify(f, config)
    if rep.criterion == "trivial":
        trivial.append(f)
        continue
    groups[(section_of(f), str(rep.reported), rep.n0, rep.log2_index)].append(f)

for title in ("f = 3, 7 mod 8", "f = 5 mod 8", "f = 1 mod 8"):
    rows = sorted((k for k in groups if k[0] == title), key=lambda k: (k[2], k[3], k[1]))
    if not rows:
        continue
    print(f"\n== {title} ==")
    print(f"{'J':<28}{'n0':<4}{'N':<6}fields")
    for key in rows:
        _, J, n0, log2N = key
        print(f"{J:<28}{n0:<4}2^{log2N:<4}{', '.join(map(str, sorted(groups[key])))}")

print(f"\ntrivially stable (odd h, 2 not split): {', '.join(map(str, trivial))}")
