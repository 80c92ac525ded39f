import json
import random
from fractions import Fraction

import pytest

from loccap import channel_model as cm
from loccap import qcomb
from loccap.channel_model import (ChannelSpec, ChannelSpecError,
                                  load_channel, p_y_given_x, save_channel,
                                  transition_core, transition_naive)
from loccap.gf_core import FieldSpec, all_matrices, matrix, rank

from conftest import random_small_channel

F2 = FieldSpec(2)


def _assert_fast_matches_naive(spec):
    core = transition_core(spec)
    naive = transition_naive(spec)
    zero = Fraction(0)
    for x in all_matrices(spec.field, spec.T, spec.M):
        row_total = Fraction(0)
        for y in all_matrices(spec.field, spec.T, spec.N):
            got = p_y_given_x(core, x, y)
            assert got == naive.get((x.entries, y.entries), zero)
            row_total += got
        assert row_total == 1


def test_transition_fast_vs_naive_on_fixtures(fixtures):
    for spec, _ in fixtures.values():
        _assert_fast_matches_naive(spec)


def test_transition_fast_vs_naive_random():
    rng = random.Random(2024)
    for _ in range(50):
        _assert_fast_matches_naive(random_small_channel(rng))


def test_cond_rank_sums_to_one(fixtures):
    for spec, core in fixtures.values():
        for u in core.input_classes():
            dist = cm.cond_rank_given_rowspace(core, u)
            assert sum(dist.values()) == 1
            assert all(0 <= s <= min(u.dim, spec.N) for s in dist)


def test_rank_joint_marginals(fixtures):
    spec, core = fixtures["table1.json"]
    classes = core.input_classes()
    alpha = {u: Fraction(1, len(classes)) for u in classes}
    joint = cm.rank_joint(core, alpha)
    assert sum(joint.values()) == 1
    # input-rank marginal equals the mass placed on each dimension
    by_r = {}
    for (r, _), p in joint.items():
        by_r[r] = by_r.get(r, Fraction(0)) + p
    want = {}
    for u in classes:
        want[u.dim] = want.get(u.dim, Fraction(0)) + alpha[u]
    assert by_r == want


# ---------------------------------------------------------------------------
# spec I/O

def test_round_trip_is_bit_exact(tmp_path, fixtures):
    for name, (spec, _) in fixtures.items():
        path = tmp_path / name
        save_channel(spec, path)
        again = load_channel(path)
        assert again.pmf_H == spec.pmf_H
        assert (again.T, again.M, again.N) == (spec.T, spec.M, spec.N)
        save_channel(again, tmp_path / "again.json")
        assert (path.read_text() == (tmp_path / "again.json").read_text())


def _write(tmp_path, doc):
    path = tmp_path / "chan.json"
    path.write_text(json.dumps(doc))
    return path


BASE = {"q": 2, "T": 1, "M": 1, "N": 1,
        "pmf": [{"H": [[1]], "p": "1/2"}, {"H": [[0]], "p": "1/2"}]}


def test_load_rejects_missing_key(tmp_path):
    doc = dict(BASE)
    del doc["M"]
    with pytest.raises(ChannelSpecError, match="missing field 'M'"):
        load_channel(_write(tmp_path, doc))


def test_load_rejects_bad_rational(tmp_path):
    doc = dict(BASE)
    doc["pmf"] = [{"H": [[1]], "p": "0.5"}, {"H": [[0]], "p": "1/2"}]
    with pytest.raises(ChannelSpecError, match="pmf\\[0\\]"):
        load_channel(_write(tmp_path, doc))


def test_load_rejects_duplicate_support(tmp_path):
    doc = dict(BASE)
    doc["pmf"] = [{"H": [[1]], "p": "1/2"}, {"H": [[1]], "p": "1/2"}]
    with pytest.raises(ChannelSpecError, match="duplicate"):
        load_channel(_write(tmp_path, doc))


def test_load_rejects_bad_sum(tmp_path):
    doc = dict(BASE)
    doc["pmf"] = [{"H": [[1]], "p": "1/3"}, {"H": [[0]], "p": "1/2"}]
    with pytest.raises(ChannelSpecError, match="sums to"):
        load_channel(_write(tmp_path, doc))


def test_load_rejects_wrong_shape(tmp_path):
    doc = dict(BASE)
    doc["pmf"] = [{"H": [[1, 0]], "p": "1"}]
    with pytest.raises(ChannelSpecError, match="shape"):
        load_channel(_write(tmp_path, doc))


def test_load_rejects_composite_field(tmp_path):
    doc = dict(BASE)
    doc["q"] = 6
    with pytest.raises(ChannelSpecError, match="prime"):
        load_channel(_write(tmp_path, doc))


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "chan.json"
    path.write_text("{not json")
    with pytest.raises(ChannelSpecError, match="invalid JSON"):
        load_channel(path)


# ---------------------------------------------------------------------------
# generators

def test_generate_iid_uniform():
    spec = cm.generate("iid_uniform", q=2, M=1, N=1)
    assert len(spec.pmf_H) == 2
    assert all(p == Fraction(1, 2) for p in spec.pmf_H.values())


def test_generate_full_rank_uniform():
    spec = cm.generate("full_rank_uniform", q=2, M=2)
    assert len(spec.pmf_H) == 6
    assert all(p == Fraction(1, 6) for p in spec.pmf_H.values())
    assert all(rank(h) == 2 for h in spec.pmf_H)


def test_generate_uniform_given_rank():
    spec = cm.generate("uniform_given_rank", q=2, M=2, N=2,
                       rank_pmf={1: 1})
    assert len(spec.pmf_H) == qcomb.xi2(2, 2, 1, 2) == 9
    assert all(p == Fraction(1, 9) for p in spec.pmf_H.values())


def test_generate_custom_rank_dist_is_not_uniform():
    spec = cm.generate("custom_rank_dist", q=2, M=2, N=2,
                       rank_pmf={0: Fraction(1, 2), 2: Fraction(1, 2)})
    assert len(spec.pmf_H) == 2
    assert spec.rank_pmf() == {0: Fraction(1, 2), 2: Fraction(1, 2)}


def test_generate_rejects_bad_rank_pmf():
    with pytest.raises(ChannelSpecError):
        cm.generate("uniform_given_rank", q=2, M=2, N=2,
                    rank_pmf={3: 1})
    with pytest.raises(ChannelSpecError):
        cm.generate("uniform_given_rank", q=2, M=2, N=2,
                    rank_pmf={1: Fraction(1, 2)})
    with pytest.raises(ChannelSpecError):
        cm.generate("no_such_kind", q=2, M=1, N=1)


def test_spec_validation():
    with pytest.raises(ChannelSpecError, match="positive"):
        ChannelSpec(F2, 0, 1, 1, {matrix(F2, [[1]]): Fraction(1)})
    with pytest.raises(ChannelSpecError, match="empty"):
        ChannelSpec(F2, 1, 1, 1, {})


def test_random_channel_is_deterministic():
    a = cm.random_channel(random.Random(9), 2, 1, 2, 2)
    b = cm.random_channel(random.Random(9), 2, 1, 2, 2)
    assert a.pmf_H == b.pmf_H
