"""Cheapest covers of the 2-clone of <{1,2},{1,3}> at q = 1/4, marking which are clones."""

from fractions import Fraction

from threshkit import clone_family, enumerate_cheapest_covers, family_from_labels, is_cloned_cover, q_c
from threshkit.cover import cost


def show(G, ground):
    return " ".join("{" + ",".join(ground.names(S)) + "}" for S in G)


def main():
    F = family_from_labels("123", [[1, 2], [1, 3]])
    F2, cm = clone_family(F, 2)
    q = Fraction(1, 4)
    print(f"q_c(F)   = {q_c(F)[0].approx()}")
    print(f"q_c(F_2) = {q_c(F2)[0].approx()}")
    for G in enumerate_cheapest_covers(F2, q):
        base = is_cloned_cover(G, cm)
        tag = f"clone of {show(base, F.ground)}" if base is not None else "not a clone"
        print(f"  cost {cost(G, q)}  {show(G, F2.ground):<40} {tag}")


if __name__ == "__main__":
    main()
