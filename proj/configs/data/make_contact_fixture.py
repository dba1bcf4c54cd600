"""Synthetic stand-in for a two-layer school contact dataset.

Layer 1 (online ties, weight 1) and layer 2 (face-to-face contacts, weights
1..4) over 90 students: two classes of 36 plus 18 students who mix with both
classes in person. Node ids are 1-based.
"""
import random

rng = random.Random(5)
n = 90
ids = list(range(1, n + 1))
rng.shuffle(ids)
class_a, class_b, mixers = ids[:36], ids[36:72], ids[72:]

contact = {}
online = set()


def add(edges, i, j, w=1):
    key = (min(i, j), max(i, j))
    if isinstance(edges, dict):
        edges.setdefault(key, w)
    else:
        edges.add(key)


for group in (class_a, class_b):
    for a, b in zip(group, group[1:] + group[:1]):
        add(contact, a, b, rng.randint(1, 4))
    for _ in range(len(group)):
        a, b = rng.sample(group, 2)
        add(contact, a, b, rng.randint(1, 4))
for m in mixers:
    for v in rng.sample(class_a, 8) + rng.sample(class_b, 8):
        add(contact, m, v, 4)

students = class_a + class_b
order = students[:]
rng.shuffle(order)
for a, b in zip(order, order[1:] + order[:1]):
    add(online, a, b)
for m in mixers:
    for v in rng.sample(students, 2):
        add(online, m, v)
for _ in range(60):
    a, b = rng.sample(ids, 2)
    add(online, a, b)

with open("contact_raw_layer1.txt", "w") as f:
    f.write("# online ties, 1-based ids, weight 1\n")
    for i, j in sorted(online):
        f.write(f"{i} {j} 1\n")
with open("contact_raw_layer2.txt", "w") as f:
    f.write("# face-to-face contacts, 1-based ids, weights 1..4\n")
    for (i, j), w in sorted(contact.items()):
        f.write(f"{i} {j} {w}\n")
