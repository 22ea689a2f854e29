"""Blockwise dispatcher: run one scheme over heterogeneous blocks.

Data too long for a single ring is split into blocks, each with its own
group ring, payload, and masks.  Blocks are independent transport runs
with seeds derived from one parent seed; a failing block is reported by
index without stopping its siblings.
"""

from __future__ import annotations

import numpy as np

from ..constructions import sample_singular_element
from ..errors import BlockErrorGroup
from ..groupring import GroupRingElement, GroupSpec
from .auth import prevention_run
from .keyexchange import _block_seeds, exchange_keys, exchange_keys_commuting
from .threepass import three_pass_commuting, three_pass_general

SCHEMES = ("threepass", "threepass-comm", "keyexchange", "keyexchange-comm", "prevention")


def sample_block_payload(group: GroupSpec, p: int, rng) -> GroupRingElement:
    """A random element whose completion is singular with a big kernel.

    Elementary-abelian p-rings and p | n circulant rings both admit
    payloads vanishing at the p-th power, giving kernel >= n/p; other
    rings fall back to zeroing the coefficient sum, which guarantees
    singularity only.
    """
    return sample_singular_element(group, p, rng)


def _as_block_dict(block) -> dict:
    if isinstance(block, dict):
        return dict(block)
    group, p = block
    return {"group": group, "p": p}


def multivector_run(scheme: str, blocks, *, seed: int, **params) -> list:
    """Apply `scheme` to every block; return per-block results in order.

    blocks: (group, p) pairs or dicts with per-block overrides (payload
    x, masks, kernel_threshold).  Extra keyword params go to every
    block.  All failures come back at once as a BlockErrorGroup keyed
    by block index.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    specs = [_as_block_dict(b) for b in blocks]

    if scheme == "prevention":
        result = prevention_run(
            [(s["group"], s["p"]) for s in specs], seed=seed, **params
        )
        return result.blocks

    seeds = _block_seeds(seed, len(specs))
    results = []
    failures: list[tuple[int, Exception]] = []
    for i, spec in enumerate(specs):
        group, p = spec.pop("group"), spec.pop("p")
        try:
            if scheme in ("keyexchange", "keyexchange-comm"):
                runner = exchange_keys if scheme == "keyexchange" else exchange_keys_commuting
                results.append(runner(group, p, seed=seeds[i], **spec, **params))
            else:
                x = spec.pop("x", None)
                if x is None:
                    x = sample_block_payload(group, p, np.random.default_rng(seeds[i]))
                runner = (
                    three_pass_general if scheme == "threepass" else three_pass_commuting
                )
                results.append(runner(x, seed=seeds[i], **spec, **params))
        except Exception as exc:  # noqa: BLE001 - aggregated below
            results.append(None)
            failures.append((i, exc))
    if failures:
        raise BlockErrorGroup(failures)
    return results
