"""Reference IBM Model 1 EM (no NULL source word, uniform start 1/|target vocab|)."""
from collections import defaultdict

def train(pairs, iterations):
    tv = sorted({w for _, t in pairs for w in t.split()})
    t = defaultdict(lambda: 1.0 / len(tv))
    for _ in range(iterations):
        count, total = defaultdict(float), defaultdict(float)
        for s, e in pairs:
            s, e = s.split(), e.split()
            for f in e:
                z = sum(t[(w, f)] for w in s)
                for w in s:
                    c = t[(w, f)] / z
                    count[(w, f)] += c
                    total[w] += c
        t = defaultdict(float, {k: v / total[k[0]] for k, v in count.items()})
    return t

if __name__ == "__main__":
    table = train([("a", "x"), ("a b", "x y"), ("b", "y")], 10)
    for (s, f), p in sorted(table.items()):
        print("%s\t%s\t%.17g" % (s, f, p))
