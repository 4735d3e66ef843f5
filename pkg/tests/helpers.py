"""Shared generators for randomized engine tests (all deterministically seeded)."""

import random

from catsl2.exactpoly import KIND_XI, Polynomial
from catsl2.bimodules import (
    FlagPath,
    RawTensor,
    normalize,
    rewrite_measure,
)


def all_paths(N, max_steps):
    """Every valid flag path with 1..max_steps unit steps inside [0, N]."""
    found = []

    def extend(rings):
        if len(rings) > 1:
            found.append(tuple(rings))
        if len(rings) == max_steps + 1:
            return
        for step in (1, -1):
            nxt = rings[-1] + step
            if 0 <= nxt <= N:
                extend(rings + [nxt])

    for k0 in range(N + 1):
        extend([k0])
    return [FlagPath(N, rings) for rings in found]


def random_factor_poly(path, i, rng):
    """A small random canonical-content polynomial for factor i."""
    syms = sorted(path.step_ring(i).catalog())
    poly = Polynomial.zero()
    for _ in range(rng.randrange(1, 3)):
        term = Polynomial.const(rng.choice((1, 1, 2, -1)))
        for _ in range(rng.randrange(0, 3)):
            sym = syms[rng.randrange(len(syms))]
            if sym.kind == KIND_XI:
                exp = rng.randrange(1, path.bound(i) + 3)
            else:
                exp = rng.randrange(1, 3)
            term = term * Polynomial.gen(sym, exp)
        poly = poly + term
    return poly


def random_raw_tensor(path, rng):
    return RawTensor(path, tuple(random_factor_poly(path, i, rng)
                                 for i in range(1, path.num_factors + 1)))


def rewrite_torture(args):
    """500 random tensors on one path: measure decrease plus confluence.

    Returns (path description, first failure or None).  Shaped for use
    with a process pool; the seed depends only on the path.
    """
    N, rings, count = args
    path = FlagPath(N, rings)
    rng = random.Random("torture:%d:%s" % (N, rings))
    for case in range(count):
        raw = random_raw_tensor(path, rng)
        measures = [rewrite_measure(path, [(raw.factors, Polynomial.one())])]
        ltr = normalize(raw, order="ltr",
                        on_step=lambda terms: measures.append(
                            rewrite_measure(path, terms)))
        for before, after in zip(measures, measures[1:]):
            if not after < before:
                return (path.render(),
                        "case %d: measure did not decrease: %s -> %s"
                        % (case, before, after))
        rtl = normalize(raw, order="rtl")
        if ltr != rtl:
            return (path.render(),
                    "case %d: strategies disagree: %s vs %s"
                    % (case, ltr.render(), rtl.render()))
    return (path.render(), None)
