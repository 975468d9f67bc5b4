"""Print the worked examples on the square-in-square complexes.

    python3 scripts/reproduce_examples.py
"""

from splinetop import fixtures, oracle, polys
from splinetop.arrangement import gamma_poset, intersection_lattice
from splinetop.splines import decompose, ls_space, spline_basis, star_supported_sum, trivial_spline


def main():
    P = fixtures.Q()
    print("Q:", P.counts())
    for homog in (False, True):
        L = intersection_lattice(P, homog)
        print(f"lattice ({'homogenized' if homog else 'affine'}):", L.rank_counts)
    for name in ("Q", "Qprime"):
        G = gamma_poset(fixtures.fixture(name), 2)
        print(f"gamma {name}: rows {G.row_sizes}, rank 2: {[v.label for v in G.of_rank(2)]}")

    S = spline_basis(P, 0, 2)
    print("dim C^0_2(Q) =", S.dim, oracle.check(S).tag)

    one = trivial_spline(P, polys.const(1, 2))
    dec = decompose(P, one, 0, 2, 2, flats="affine")
    names = polys.variable_names(2, False)
    for support, pieces in dec.summands:
        body = ", ".join(f"{P.labels[i]}: {polys.to_str(p, names)}" for i, p in enumerate(pieces) if p)
        print("  summand on", "".join(P.labels[i] for i in support), "|", body)

    x2 = trivial_spline(P, {(2, 0): 1})
    for flats in ("affine", "homogenized"):
        print(f"x^2 in LS ({flats}):", ls_space(P, 0, 2, 2, flats=flats).contains(x2))

    verts = P.faces_of_dim(0, interior_only=True)
    print("1 in vertex-star sum, d=0..6:",
          [star_supported_sum(P, verts, 0, d).contains(one) for d in range(7)])


if __name__ == "__main__":
    main()
