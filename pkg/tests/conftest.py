"""Shared helpers: random family instances with valid parameters."""

from __future__ import annotations

import numpy as np

from copreli import (
    Amh,
    Clayton,
    Fgm,
    FischerHinzmann,
    FischerKock,
    GumbelBarnet,
    GumbelHougaard,
    Independence,
    LinearSpearman,
    MarshallOlkin,
    NelsenTen,
    RluExtended,
)

# family name -> (constructor from rng, valid dims)
FAMILY_SAMPLERS = {
    "independence": (lambda rng, dim: Independence(dim=dim), (2, 3)),
    "fgm": (lambda rng, dim: Fgm(alpha=rng.uniform(-1, 1), dim=dim), (2, 3)),
    "fischer_kock": (
        lambda rng, dim: FischerKock(r=rng.uniform(1, 4), alpha=rng.uniform(-1, 1), dim=dim),
        (2, 3),
    ),
    "clayton": (lambda rng, dim: Clayton(alpha=rng.uniform(0.2, 6), dim=dim), (2, 3)),
    "gumbel_hougaard": (
        lambda rng, dim: GumbelHougaard(alpha=rng.uniform(1, 6), dim=dim), (2, 3)),
    # the log-product form is a proper copula only bivariately
    "gumbel_barnet": (lambda rng, dim: GumbelBarnet(alpha=rng.uniform(0, 1), dim=dim), (2,)),
    "nelsen_ten": (lambda rng, dim: NelsenTen(alpha=rng.uniform(0.05, 1), dim=dim), (2, 3)),
    "marshall_olkin": (
        lambda rng, dim: MarshallOlkin(alpha=tuple(rng.uniform(0.1, 3, size=dim)), dim=dim),
        (2, 3),
    ),
    "amh": (lambda rng, dim: Amh(alpha=rng.uniform(-1, 1), dim=dim), (2, 3)),
    "fischer_hinzmann": (
        lambda rng, dim: FischerHinzmann(m=rng.uniform(1, 4), alpha=rng.uniform(0, 1), dim=dim),
        (2, 3),
    ),
    "rlu_extended": (
        lambda rng, dim: RluExtended(
            a=tuple(rng.uniform(1, 4, size=dim)),
            b=tuple(rng.uniform(1, 4, size=dim)),
            alpha=rng.uniform(0, 1),
            dim=dim,
        ),
        (2, 3),
    ),
    "linear_spearman": (lambda rng, dim: LinearSpearman(theta=rng.uniform(-1, 1)), (2,)),
}


def random_instance(family: str, rng: np.random.Generator, dim: int = 2):
    maker, dims = FAMILY_SAMPLERS[family]
    if dim not in dims:
        raise ValueError(f"{family} not sampled at dim {dim}")
    return maker(rng, dim)


def families_for_dim(dim: int):
    return [name for name, (_, dims) in FAMILY_SAMPLERS.items() if dim in dims]
