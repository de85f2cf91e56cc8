import itertools

import numpy as np
import pytest

from nlw import model, sdp
from nlw.bipart import Bipartition, enumerate_bipartitions
from nlw.qcore import BipartiteShape, partial_transpose
from nlw.sdp import DiscriminationInstance, PovmCandidate, SdpOptions

from conftest import SET_FACTORIES, SWEEP_OPTS, named_set, sweep_solve, validate

B12 = Bipartition.parse("1|2", 2)

# Reference optima from an independent interior-point solve during development.
ORACLE = {
    ("bell", "1|2"): 2 / 3,
    ("ghosh", "1|2"): 0.75,
    ("example1_n3", "1|2,3"): 0.938474261,
    ("example1_n3", "1,2|3"): 0.938474261,
    ("example1_n3", "1,3|2"): 0.938474261,
    ("example2_n3", "1|2,3"): 0.93883219,
    ("example2_n3", "1,2|3"): 0.93883219,
    ("example2_n3", "1,3|2"): 0.93883219,
    ("example1_n4", "1|2,3,4"): 0.975215530,
    ("example1_n4", "1,2|3,4"): 0.981452323,
    ("example1_n4", "1,3|2,4"): 0.981452323,
    ("example1_n4", "1,4|2,3"): 0.981452323,
    ("example1_n4", "1,2,3|4"): 0.977675673,
    ("example1_n4", "1,2,4|3"): 0.977675673,
    ("example1_n4", "1,3,4|2"): 0.977675673,
    ("example2_n4", "1|2,3,4"): 0.97527336,
    ("example2_n4", "1,2|3,4"): 0.97527336,
}


@pytest.mark.parametrize("key", sorted(ORACLE))
def test_matches_reference_optimum(key):
    rep = sweep_solve(*key)
    ref = ORACLE[key]
    assert rep.primal_value <= ref + 1e-6
    assert rep.dual_bound >= ref - 1e-6
    assert rep.dual_bound - rep.primal_value <= SWEEP_OPTS.gap_tol + 1e-9


def test_ghosh_default_options():
    rep = sdp.ppt_value_for_split(model.gen_ghosh_set(), B12)
    assert rep.status == "converged"
    assert rep.primal_value == pytest.approx(0.75, abs=1e-6)
    assert rep.dual_bound - rep.primal_value <= 1e-6
    assert not rep.perfect
    assert rep.seconds < 1.0


def test_bell_pair_is_perfect():
    rep = sdp.ppt_value_for_split(model.gen_bell_triple().subset([0, 1]), B12)
    assert rep.perfect and rep.primal_value == pytest.approx(1.0, abs=1e-6)


def test_eq2_grouped_split_is_perfect():
    s = model.gen_eq2(4, 1, 3, Bipartition.parse("1,2|3,4", 4))
    rep = sdp.ppt_value_for_split(s, Bipartition.parse("1,3|2,4", 4), SWEEP_OPTS)
    assert rep.perfect and rep.primal_value == pytest.approx(1.0, abs=1e-6)
    rep = sdp.ppt_value_for_split(s, Bipartition.parse("1,2|3,4", 4), SWEEP_OPTS)
    assert rep.primal_value == pytest.approx(2 / 3, abs=1e-4)


def _corpus_pairs():
    for name in SET_FACTORIES:
        s = named_set(name)
        for b in enumerate_bipartitions(s.num_parties):
            yield name, str(b)


CORPUS_PAIRS = sorted(set(_corpus_pairs()))


@pytest.mark.parametrize("name, split", CORPUS_PAIRS)
def test_weak_duality_and_feasibility(name, split):
    rep = sweep_solve(name, split)
    assert rep.primal_value <= rep.dual_bound + 1e-6
    inst = DiscriminationInstance.from_state_set(named_set(name), Bipartition.parse(split, named_set(name).num_parties))
    val = sdp.validate_povm(rep.povm, inst)
    assert val.feasible
    assert val.success == pytest.approx(rep.primal_value, abs=1e-12)
    validate(rep.to_dict(), "sdp_report")


@pytest.mark.parametrize("name, split", CORPUS_PAIRS)
def test_two_subsets_are_no_harder(name, split):
    s = named_set(name)
    b = Bipartition.parse(split, s.num_parties)
    full = sweep_solve(name, split).primal_value
    for idx in itertools.combinations(range(3), 2):
        sub = sdp.ppt_value_for_split(s.subset(list(idx)), b, SWEEP_OPTS)
        assert sub.dual_bound >= full - 1e-6
        assert sub.primal_value >= full - SWEEP_OPTS.gap_tol


def test_determinism():
    s = model.gen_example1(3)
    b = Bipartition.parse("1,2|3", 3)
    a, c = (sdp.ppt_value_for_split(s, b, SWEEP_OPTS) for _ in range(2))
    assert a.primal_value == c.primal_value and a.dual_bound == c.dual_bound and a.iterations == c.iterations
    np.testing.assert_array_equal(a.povm.elements, c.povm.elements)


def test_weighted_solve_matches_prior_structure():
    inst = DiscriminationInstance.from_state_set(model.gen_ghosh_set(), B12)
    rep = sdp.solve_ppt(inst, weights=[0.49, 0.49, 0.02])
    m = rep.povm.elements
    assert np.trace(m[2]).real < 0.1
    assert rep.primal_value <= rep.dual_bound + 1e-6


def _uniform(inst):
    return PovmCandidate(np.repeat(np.eye(inst.dim)[None] / inst.K, inst.K, axis=0))


def test_validate_povm_examples():
    inst = DiscriminationInstance.from_state_set(model.gen_ghosh_set(), B12)
    v = sdp.validate_povm(_uniform(inst), inst)
    assert v.feasible and v.success == pytest.approx(1 / 3)
    # Bell-basis measurement: complete and PSD but not PPT
    bell = [np.array(x) / np.sqrt(2) for x in ([1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0])]
    proj = [np.outer(u, u.conj()) for u in bell]
    proj[2] = proj[2] + np.outer([0, 1, -1, 0], [0, 1, -1, 0]) / 2
    v = sdp.validate_povm(PovmCandidate(np.array(proj)), inst)
    assert v.completeness_residual < 1e-12 and min(v.min_eig) > -1e-12
    assert min(v.min_eig_pt) == pytest.approx(-0.5) and not v.feasible
    # incomplete
    v = sdp.validate_povm(PovmCandidate(np.array(proj[:2] + [np.zeros((4, 4))])), inst)
    assert v.completeness_residual > 0.5 and not v.feasible


def test_trace_bound_examples():
    inst = DiscriminationInstance.from_state_set(model.gen_ghosh_set(), B12)
    rep = sdp.solve_ppt(inst, weights=[0.8, 0.1, 0.1])
    r = sdp.trace_bound_check(rep.povm, inst, 0, 1e-4)
    assert r.hypothesis_met and r.ppt_feasible and r.passed
    assert r.trace >= 2 * (1 - 1e-4) - 1e-4
    # the uniform POVM does not meet the success hypothesis
    r = sdp.trace_bound_check(_uniform(inst), inst, 0, 1e-4)
    assert not r.hypothesis_met
    with pytest.raises(sdp.TraceBoundPreconditionError):
        sdp.trace_bound_check(_uniform(inst), inst, 2, 1e-4)


def test_instance_validation():
    with pytest.raises(sdp.SdpInputError):
        DiscriminationInstance.from_vectors([np.array([1, 0, 0, 0])], (2, 2))
    with pytest.raises(sdp.SdpInputError):
        DiscriminationInstance(BipartiteShape(2, 2), np.array([np.eye(4), np.eye(4) / 4]))
    with pytest.raises(Exception):
        DiscriminationInstance(BipartiteShape(2, 2), np.zeros((2, 3, 3)))


def test_bell_projector_pt_bound():
    for k in (0, 1):
        rho = DiscriminationInstance.from_state_set(model.gen_ghosh_set(), B12).rhos[k]
        assert np.linalg.eigvalsh(partial_transpose(rho, BipartiteShape(2, 2))).max() <= 0.5 + 1e-10


def test_max_iter_status():
    s = model.gen_example1(4)
    rep = sdp.ppt_value_for_split(s, Bipartition.parse("1,2|3,4", 4), SdpOptions(max_iter=20))
    assert rep.status == "max-iter" and rep.iterations == 20
    assert rep.primal_value <= 0.981452323 + 1e-6 <= rep.dual_bound + 2e-6
