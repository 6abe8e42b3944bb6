"""End-to-end pipeline tests and trace format checks."""
from __future__ import annotations

import pytest

from hyperfactor.combinatorics import binom, bound_holds
from hyperfactor.errors import GreedyStuck, NegativeTopLevelQuota
from hyperfactor.generate import random_instance
from hyperfactor.model import Instance, Parameters, parse_instance, validate_instance
from hyperfactor.pipeline import extend_instance, single_edge_instance
from hyperfactor.verify import verify_certificate

from conftest import make_instance

# frozen below-bound witness: the deterministic greedy sticks at level 1
STUCK_DOC = (
    '{"n":7,"m":5,"h":3,"lambda":1,"r":[3,3,3,3,3],'
    '"edges":[{"support":[1,2,3],"alpha":0,"colors":{"1":1}},'
    '{"support":[1,2,4],"alpha":0,"colors":{"2":1}},'
    '{"support":[1,2,5],"alpha":0,"colors":{"2":1}},'
    '{"support":[1,3,4],"alpha":0,"colors":{"2":1}},'
    '{"support":[1,3,5],"alpha":0,"colors":{"3":1}},'
    '{"support":[1,4,5],"alpha":0,"colors":{"5":1}},'
    '{"support":[2,3,4],"alpha":0,"colors":{"3":1}},'
    '{"support":[2,3,5],"alpha":0,"colors":{"3":1}},'
    '{"support":[2,4,5],"alpha":0,"colors":{"5":1}},'
    '{"support":[3,4,5],"alpha":0,"colors":{"5":1}}]}\n')


class TestExtendInstance:
    def test_worked_example(self, worked_instance):
        cert = extend_instance(worked_instance)
        assert verify_certificate(cert, worked_instance).ok

    def test_seed_changes_run_but_stays_valid(self):
        params = Parameters(n=9, m=3, h=3, lam=1, r=(1,) * 28)
        inst = random_instance(params, seed=0)
        for run_seed in (None, 1, 2):
            cert = extend_instance(inst, seed=run_seed)
            assert verify_certificate(cert, inst).ok

    def test_trace_shapes(self, worked_instance):
        records = []
        extend_instance(worked_instance, trace=records.append)
        stages = [r["stage"] for r in records]
        assert stages == ["level", "detach", "detach"]
        level = records[0]
        assert level["i"] == 1
        assert level["deg"]["1"] == [1, 1, 1]
        assert level["deg"]["amalgam"] == [0, 2, 2]   # one slot per level-1 copy

    def test_greedy_stuck_below_bound(self):
        inst = parse_instance(STUCK_DOC)
        assert validate_instance(inst).ok
        with pytest.raises(GreedyStuck):
            extend_instance(inst)

    def test_negative_quota_below_bound(self):
        # 3 perfect matchings of K_4 cannot reach K_6: colors 4 and 5 would
        # need matchings avoiding every colored K_4 edge
        inst = make_instance(6, 4, 2, 1, (1,) * 5, {
            (1, 2): {1: 1}, (3, 4): {1: 1},
            (1, 3): {2: 1}, (2, 4): {2: 1},
            (1, 4): {3: 1}, (2, 3): {3: 1},
        })
        with pytest.raises(NegativeTopLevelQuota):
            extend_instance(inst)

    def test_below_bound_can_still_succeed(self):
        # below the bound the greedy is best-effort, not doomed
        inst = make_instance(4, 3, 2, 1, (1, 1, 1),
                             {(1, 2): {1: 1}, (1, 3): {2: 1}, (2, 3): {3: 1}})
        cert = extend_instance(inst)
        assert verify_certificate(cert, inst).ok

    def test_doubled_mixed_r_cell(self):
        params = Parameters(n=6, m=3, h=2, lam=2, r=(4, 2, 2, 1, 1))
        for seed in range(3):
            inst = random_instance(params, seed=seed)
            cert = extend_instance(inst, seed=seed)
            assert verify_certificate(cert, inst).ok

    def test_restriction_of_certificate_revalidates(self):
        params = Parameters(n=8, m=3, h=2, lam=1, r=(2, 2, 1, 1, 1))
        inst = random_instance(params, seed=3)
        cert = extend_instance(inst)
        restricted = [c for c in cert.coloring if c.support[-1] <= 3]
        again = Instance(params=params, coloring=restricted)
        assert validate_instance(again).ok


def random_admissible_r(n, h, lam, rng):
    """Random admissible degree vector: parts are multiples of h/gcd(n, h)."""
    from math import gcd
    d = h // gcd(n, h)
    total = lam * binom(n - 1, h - 1)
    assert total % d == 0
    parts = [d] * (total // d)
    for _ in range(rng.randrange(0, max(1, len(parts) - 1))):
        if len(parts) <= 2:
            break
        i = rng.randrange(len(parts) - 1)
        parts[i] += parts.pop(i + 1)
    rng.shuffle(parts)
    return tuple(parts)


class TestRandomDegreeVectors:
    def test_fuzz_above_bound(self):
        import random
        from itertools import count
        rng = random.Random(0xFAC70)
        runs = 0
        for h in (2, 3):
            for m in range(h, 5):
                first = next(n for n in count(m + 1) if bound_holds(n, m, h))
                for n in range(first, first + 3):
                    for _ in range(3):
                        r = random_admissible_r(n, h, 1, rng)
                        params = Parameters(n=n, m=m, h=h, lam=1, r=r)
                        seed = rng.randrange(10**6)
                        inst = random_instance(params, seed=seed)
                        cert = extend_instance(inst, seed=seed)
                        assert verify_certificate(cert, inst).ok, (n, m, h, r, seed)
                        runs += 1
        assert runs == 45


class TestSingleEdgeInstance:
    def test_seeds_lowest_colors_within_caps(self):
        params = Parameters(n=6, m=2, h=2, lam=3, r=(2, 2, 2, 2, 1))
        inst = single_edge_instance(params)
        assert inst.coloring[0].support == (1, 2)
        assert inst.coloring[0].colors == [2, 1, 0, 0, 0]
        assert validate_instance(inst).ok

    def test_requires_m_equals_h(self):
        with pytest.raises(ValueError):
            single_edge_instance(Parameters(n=6, m=3, h=2, lam=1, r=(1,) * 5))
