"""Bona fide / attack-pool splitting and morph-pair selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientPool
from ..morph import derive_pair_seed, sample_warp_factor


@dataclass(frozen=True)
class MorphPair:
    key_id: str
    partner_id: str
    warp: float
    seed: int

    @property
    def attack_id(self) -> str:
        return f"{self.key_id}__{self.partner_id}"


def split_bf_attack(ids: list[str], rng: np.random.Generator) -> tuple[list[str], list[str]]:
    """Randomly split ids into equal bona fide and morph-pool halves."""
    if len(ids) % 2 != 0:
        raise ValueError(f"cannot split {len(ids)} ids into two equal parts")
    order = rng.permutation(len(ids))
    half = len(ids) // 2
    bf = [ids[i] for i in order[:half]]
    pool = [ids[i] for i in order[half:]]
    return bf, pool


def select_pairs(
    pool: list[str],
    n_keys: int,
    partners_per_key: int,
    rng: np.random.Generator,
    global_seed: int = 0,
) -> list[MorphPair]:
    """Choose key images and their random partners.

    Keys are drawn without replacement from the pool; each key's partners are
    drawn without replacement from the non-key remainder. Every pair carries
    its warp factor and a derived seed so morphing is replayable per pair.
    """
    if n_keys > len(pool):
        raise InsufficientPool(f"{n_keys} keys requested from a pool of {len(pool)}")
    if partners_per_key > len(pool) - n_keys:
        raise InsufficientPool(
            f"{partners_per_key} partners per key requested but only "
            f"{len(pool) - n_keys} non-key images remain"
        )
    pool_arr = np.array(pool, dtype=object)
    key_idx = rng.choice(len(pool_arr), size=n_keys, replace=False)
    key_mask = np.zeros(len(pool_arr), dtype=bool)
    key_mask[key_idx] = True
    candidates = pool_arr[~key_mask]
    pairs: list[MorphPair] = []
    for ki in key_idx:
        key_id = str(pool_arr[ki])
        partner_idx = rng.choice(len(candidates), size=partners_per_key, replace=False)
        for pi in partner_idx:
            partner_id = str(candidates[pi])
            warp = sample_warp_factor(rng)
            seed = derive_pair_seed(global_seed, f"{key_id}__{partner_id}")
            pairs.append(MorphPair(key_id, partner_id, warp, seed))
    return pairs
