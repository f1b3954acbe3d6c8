"""Independent slow oracles the implementation is checked against.

Nothing here may call the fast reordering in NCPoly.__mul__: the whole point
is a second route to the same answers.
"""

from __future__ import annotations

import random

from opcalc.algebra import CanonicalSystem, NCPoly
from opcalc.scalars import ScalarPoly


def slow_normal_order(system: CanonicalSystem, slots: list[int],
                      pick: str = "first",
                      rng: random.Random | None = None) -> NCPoly:
    """Normal-order a product of single generators by adjacent swaps.

    `slots` lists generator positions (0..2N-1), one entry per factor.
    Same-pair inversions B*A rewrite to A*B - c via two branches; cross-pair
    inversions swap freely. `pick` chooses which inversion to reduce next
    ("first", "last", or "random"), exercising confluence.
    """
    width = 2 * system.n_pairs
    done: dict[tuple[int, ...], ScalarPoly] = {}
    work: list[tuple[tuple[int, ...], ScalarPoly]] = [
        (tuple(slots), ScalarPoly.one())]
    while work:
        seq, coeff = work.pop()
        inversions = [i for i in range(len(seq) - 1) if seq[i] > seq[i + 1]]
        if not inversions:
            word = [0] * width
            for s in seq:
                word[s] += 1
            key = tuple(word)
            acc = done.get(key, ScalarPoly.zero()) + coeff
            if acc:
                done[key] = acc
            else:
                done.pop(key, None)
            continue
        if pick == "first":
            i = inversions[0]
        elif pick == "last":
            i = inversions[-1]
        else:
            i = rng.choice(inversions)
        left, right = seq[i], seq[i + 1]
        swapped = seq[:i] + (right, left) + seq[i + 2:]
        work.append((swapped, coeff))
        if left // 2 == right // 2:
            # same pair with B before A: B A = A B - c
            dropped = seq[:i] + seq[i + 2:]
            work.append((dropped, coeff * (-system.commutators[left // 2])))
    return NCPoly(system, done)


def word_to_slots(word: tuple[int, ...]) -> list[int]:
    """Canonical word exponents to an explicit factor list."""
    out: list[int] = []
    for pos, e in enumerate(word):
        out.extend([pos] * e)
    return out


def slow_mul(f: NCPoly, g: NCPoly, pick: str = "first",
             rng: random.Random | None = None) -> NCPoly:
    """Product via the swap oracle, term pair by term pair."""
    system = f.system
    total = NCPoly.zero(system)
    for w1, c1 in f.terms():
        for w2, c2 in g.terms():
            ordered = slow_normal_order(
                system, word_to_slots(w1) + word_to_slots(w2), pick, rng)
            total = total + ordered.scale(c1 * c2)
    return total


def slow_commutator(f: NCPoly, g: NCPoly) -> NCPoly:
    return slow_mul(f, g) - slow_mul(g, f)
