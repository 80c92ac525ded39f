import random
from fractions import Fraction

from loccap import channel_model as cm
from loccap import classify as cls
from loccap.channel_model import transition_core
from loccap.gf_core import FieldSpec, matrix

from conftest import random_small_channel

F2 = FieldSpec(2)


def test_fixture_flags(fixtures):
    flags = {name: cls.classify(spec, core).flags()
             for name, (spec, core) in fixtures.items()}
    # degraded but not rank symmetric
    assert flags["table1.json"]["degraded"]
    assert not flags["table1.json"]["rank_symmetric"]
    # multiple subspace degradations
    assert not flags["table2.json"]["unique_subspace_degradation"]
    assert flags["table2.json"]["row_space_symmetric"]
    # rank symmetric with a non-uniform transfer matrix (T < M)
    assert flags["example9.json"]["rank_symmetric"]
    assert not flags["example9.json"]["uniform_given_rank"]
    assert not flags["example6.json"]["unique_subspace_degradation"]


def test_example9_mu_table(fixtures):
    spec, core = fixtures["example9.json"]
    holds, mu = cls.is_rank_symmetric(core)
    assert holds
    # 1 x 2 inputs over F_2: rank-1 input, every rank-1 output has the
    # same conditional probability and rank 0 picks up the rest
    assert mu[(1, 1)] == Fraction(1, 4)
    assert mu[(1, 0)] == Fraction(1, 4)
    assert mu[(0, 0)] == 1


def test_zero_channel_in_every_class():
    zero = matrix(F2, [[0, 0], [0, 0]])
    spec = cm.ChannelSpec(F2, 2, 2, 2, {zero: Fraction(1)})
    report = cls.classify(spec)
    assert all(report.flags().values())


def test_uniform_given_rank_generated_channels_are_rank_symmetric():
    rng = random.Random(5)
    for _ in range(10):
        weights = [rng.randint(0, 3) for _ in range(3)]
        if sum(weights) == 0:
            weights[2] = 1
        total = sum(weights)
        pmf = {r: Fraction(w, total) for r, w in enumerate(weights) if w}
        spec = cm.generate("uniform_given_rank", q=2, M=2, N=2,
                           T=rng.choice([1, 2, 3]), rank_pmf=pmf)
        report = cls.classify(spec)
        assert report.uniform_given_rank.holds
        assert report.rank_symmetric.holds
        assert report.degraded.holds
        assert report.unique_subspace_degradation.holds
        assert report.row_space_symmetric.holds


def test_every_t1_channel_is_row_space_symmetric():
    # with a single input packet the row space determines the input
    rng = random.Random(77)
    for _ in range(20):
        spec = cm.random_channel(rng, 2, 1, 2, 2)
        core = transition_core(spec)
        assert cls.is_row_space_symmetric(core).holds


def test_implication_audit_random_channels():
    rng = random.Random(123)
    for _ in range(200):
        spec = random_small_channel(rng)
        report = cls.classify(spec)
        assert cls.implication_audit(report, spec.T, spec.M) == []


def test_witness_shapes(fixtures):
    spec, core = fixtures["table2.json"]
    report = cls.classify(spec, core)
    w = report.unique_subspace_degradation.witness
    assert set(w) >= {"reason", "X1", "X2", "V", "p1", "p2"}
    w = report.uniform_given_rank.witness
    assert w["reason"] == "rank shell only partially covered"


def test_witness_is_a_concrete_counterexample(fixtures):
    spec, core = fixtures["table1.json"]
    holds, _ = cls.is_rank_symmetric(core)
    assert not holds
    witness = cls.is_rank_symmetric(core)[0].witness
    x1 = matrix(spec.field, witness["X1"])
    x2 = matrix(spec.field, witness["X2"])
    y1 = matrix(spec.field, witness["Y1"])
    y2 = matrix(spec.field, witness["Y2"])
    p1 = cm.p_y_given_x(core, x1, y1)
    p2 = cm.p_y_given_x(core, x2, y2)
    assert p1 != p2


def test_rank_symmetric_example_has_degraded_flag(fixtures):
    # the class of rank-symmetric channels sits inside the degraded ones
    spec, core = fixtures["example9.json"]
    report = cls.classify(spec, core)
    assert report.degraded.holds
    assert report.unique_subspace_degradation.holds
