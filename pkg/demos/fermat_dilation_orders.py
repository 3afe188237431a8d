"""Dilation orders of the Fermat Milnor-fiber models.

The degree-k Fermat affine hypersurface in m+1 variables (k <= m) has a
finite split model complex at its first Reeb period: a unit e, sphere
classes, and hyperplane chain pairs whose differentials carry the circle
bundle Euler class and the two-point invariant k!.  Its order of dilation is
exactly k-1, witnessed by the alternating chain

    sum_{i=0}^{k-1} (-1)^i / k!  p_check_{m-k+i} u^-i.

This script recomputes the orders from scratch and evaluates the witness.
"""

from s1cochain import (
    build_filtered_plus,
    milnor_model,
    milnor_unit_primitive,
    order_of_dilation,
    order_of_semidilation,
    order_via_torsion,
)


def main() -> None:
    print("orders of the Fermat models (expect k-1 in every column)")
    print(f"{'(k,m)':>8} {'dilation':>9} {'semi':>6} {'u-torsion':>10}")
    for m in range(1, 6):
        for k in range(1, m + 1):
            s = milnor_model(k, m, include_spheres=False)
            d = order_of_dilation(s).order
            sd = order_of_semidilation(s).order
            t = order_via_torsion(s).order
            print(f"{f'({k},{m})':>8} {d:>9} {sd:>6} {t:>10}")

    print("\nexplicit witness for (k,m) = (3,4):")
    k, m = 3, 4
    s = milnor_model(k, m, include_spheres=False)
    c = s.complex
    f = build_filtered_plus(c, k - 1)
    chain = {}
    for name, power, coeff in milnor_unit_primitive(k, m):
        print(f"  {str(coeff):>6} * {name} u^-{power}")
        chain[f.index_of(c.index_of(name), power)] = coeff
    image = f.differential.apply(chain)
    labels = {f.index_of(c.index_of("e"), 0): "e u^0"}
    shown = {labels.get(i, i): str(x) for i, x in image.items()}
    print(f"  total differential of the chain: {shown}")


if __name__ == "__main__":
    main()
