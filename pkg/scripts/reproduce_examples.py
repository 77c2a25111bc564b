"""Run the worked examples end to end and print a short report for each."""
import argparse

from kg2.atomic import classify, dilate
from kg2.bundled import twisted_identity_seed, one_vertex_seed, swap_seed
from kg2.fock import (
    MatrixRep,
    build_free_fock,
    example_3_3_check,
    example_3_3_commutation,
    star_commute_check,
    structure_check,
    verify_commutation_numeric,
    verify_cuntz_interior,
)
from kg2.periodicity import find_period
from kg2.wandering import check_conditions, find_wandering, is_wandering, verify_no_wandering_periodic


def free_semigroup(L):
    vec = example_3_3_check(2, L)
    same = bool((vec == build_free_fock(2, L).vacuum()).all())
    print(f"free semigroup, L={L}: R2* L2 L1* R1 vacuum == vacuum: {same}")
    print(f"  max |L_i R_j - R_j L_i| on the interior: {example_3_3_commutation(2, L)}")


def one_vertex(depth):
    D = dilate(one_vertex_seed(), depth)
    M = MatrixRep.from_dilation(D)
    print(f"one-vertex identity seed, depth {depth}: {len(D.graph.vertices)} vertices")
    print(f"  cuntz {verify_cuntz_interior(M).residual}, commutation {verify_commutation_numeric(M).residual}")
    print(f"  star commute {star_commute_check(M).residual}")
    cls = classify(D, 4)
    print(f"  class {cls.tag} at {cls.vertex} u={list(cls.u)} v={list(cls.v)}")
    rep = check_conditions(D, D.at("f2"), 1)
    print(f"  {rep.vertex}: {[v.to_json() for v in rep.violations]}")
    zeta = D.at("e2.f2")
    print(f"  {zeta} wandering up to 2: {is_wandering(D, zeta, 2)[0]}")
    verdict = find_wandering(D, cls, 2)
    print(f"  find_wandering -> {verdict.vertex} ({verdict.construction})")
    sc = structure_check(M, 4)
    print(f"  structure: span {sc.span_dim}, residuals {sc.residual_selfadjoint:.2e} {sc.residual_invariance:.2e}")


def twisted(depth):
    D = dilate(twisted_identity_seed(), depth)
    W = find_period(D.theta, 1, 1)
    print(f"twisted pair over the flip, depth {depth}: period {W.to_json()['period']}")
    print(f"  rows equal on the graph: {verify_no_wandering_periodic(D, W)}")
    verdict = find_wandering(D, classify(D, 4), depth)
    print(f"  find_wandering -> {verdict.vertex} ({verdict.construction})")


def swap(depth):
    D = dilate(swap_seed(), depth)
    sc = structure_check(MatrixRep.from_dilation(D), 4)
    print(f"two-vertex swap, depth {depth}: class {classify(D, 4).tag}")
    print(f"  structure: span {sc.span_dim}, residuals {sc.residual_selfadjoint:.2e} {sc.residual_invariance:.2e}")
    bad = structure_check(MatrixRep.from_dilation(dilate(one_vertex_seed(), depth), ["e2@x"]), 4)
    print(f"  negative control invariance residual: {bad.residual_invariance:.2f}")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--depth", type=int, default=3)
    args = p.parse_args()
    free_semigroup(3)
    one_vertex(args.depth)
    twisted(args.depth)
    swap(args.depth)


if __name__ == "__main__":
    main()
