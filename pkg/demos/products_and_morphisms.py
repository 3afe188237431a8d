"""Tensor products, the order law, and homotopy-invariant induced maps."""

import random

from s1cochain import (
    induced_cohomology_map,
    milnor_model,
    order_of_dilation,
    order_of_semidilation,
    tensor_split,
    unit_embedding,
    verify_functoriality,
    verify_morphism,
)
from s1cochain.randomized import random_endomorphism_pair


def main() -> None:
    print("dilation order of products is the minimum of the factor orders:")
    for (k1, m1), (k2, m2) in [((1, 1), (2, 2)), ((2, 2), (3, 3)),
                               ((2, 3), (3, 4))]:
        a = milnor_model(k1, m1, include_spheres=False)
        b = milnor_model(k2, m2, include_spheres=False)
        p = tensor_split(a, b)
        d = order_of_dilation(p).order
        sd = order_of_semidilation(p).order
        print(f"  ({k1},{m1}) x ({k2},{m2}): dilation {d} "
              f"(min of factor orders = {min(k1, k2) - 1}), semi {sd}")

    print("\nthe unit embedding a -> a (x) e is a morphism of the full "
          "operator families:")
    c = milnor_model(2, 2, include_spheres=False).complex
    w = milnor_model(1, 1)
    emb = unit_embedding(c, w)
    print(f"  relations hold: {verify_morphism(emb).valid}")
    print(f"  preserves Z_k/B_k and commutes with Delta^k: "
          f"{verify_functoriality(emb).valid}")

    print("\nhomotopic endomorphisms induce identical matrices on the "
          "filtered cohomology:")
    rng = random.Random(1)
    different = False
    while not different:
        base, deformed, _ = random_endomorphism_pair(rng, c)
        different = any(base.phis[r] != deformed.phis[r]
                        for r in range(c.truncation + 1))
    maps_equal = (induced_cohomology_map(base, c.truncation)
                  == induced_cohomology_map(deformed, c.truncation))
    print(f"  chain-level maps differ: {different}; "
          f"induced maps equal: {maps_equal}")


if __name__ == "__main__":
    main()
