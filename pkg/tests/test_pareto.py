import numpy as np
import pytest

import tsvar.expressions as ex
from tsvar import (
    DomainError,
    GridFunction,
    SolverOptions,
    TimeScale,
    VariationalProblem,
    dominance_filter,
    evaluate,
    nc_crosscheck,
    simplex_weights,
    weighted_sweep,
)
from tsvar.pareto import ParetoEntry


def paper_problem():
    ts = TimeScale.from_points([0, 1, 2])
    return VariationalProblem(
        ts.sample(1.0), 1,
        [ex.parse("y1^2", 1), ex.parse("(y1-2)^2", 1)],
        alpha=[0.0], beta=[0.0], timescale=ts,
    )


def closed_form_minimizer(gamma1):
    # stationarity of  g a^2 + (1-g)((a-2)^2 + 4)
    return 2.0 * (1.0 - gamma1)


def test_simplex_weights():
    w2 = simplex_weights(2, 20)
    assert len(w2) == 19
    assert np.allclose([w[0] for w in w2], np.arange(1, 20) / 20)
    for w in w2:
        assert np.all(w >= 1 / 20) and abs(w.sum() - 1) < 1e-12

    w3 = simplex_weights(3, 5)
    assert len(w3) == 6  # compositions of 5 into 3 positive parts
    for w in w3:
        assert np.all(w >= 1 / 5) and abs(w.sum() - 1) < 1e-12
    assert len(simplex_weights(3, 2)) == 0


def test_sweep_paper_example():
    p = paper_problem()
    front = weighted_sweep(p, 20)
    assert len(front.entries) == 19
    assert front.dominated_removed == 0
    assert not front.failures
    for e in front.entries:
        a = closed_form_minimizer(e.gamma[0])
        assert abs(e.y.values[1, 0] - a) <= 1e-6
        own = e.y.values[1, 0]
        assert abs(e.objectives[0] - own ** 2) <= 1e-9
        assert abs(e.objectives[1] - (4 + (own - 2) ** 2)) <= 1e-9
    # sorted lexicographically by objective vector
    objs = front.objective_matrix
    assert np.all(np.diff(objs[:, 0]) >= 0)


def test_sweep_entry_at_equal_weights():
    p = paper_problem()
    front = weighted_sweep(p, 20)
    mid = [e for e in front.entries if abs(e.gamma[0] - 0.5) < 1e-12]
    assert len(mid) == 1
    assert np.allclose(mid[0].objectives, [1.0, 5.0], atol=1e-9)


def test_sweep_monotone_tradeoff():
    p = paper_problem()
    front = weighted_sweep(p, 20)
    by_gamma = sorted(front.entries, key=lambda e: e.gamma[0])
    l1 = [e.objectives[0] for e in by_gamma]
    l2 = [e.objectives[1] for e in by_gamma]
    assert all(b - a <= 1e-9 for a, b in zip(l1, l1[1:]))
    assert all(b - a >= -1e-9 for a, b in zip(l2, l2[1:]))


def test_sweep_scalarization_consistency():
    p = paper_problem()
    front = weighted_sweep(p, 20)
    for e in front.entries:
        own = float(e.gamma @ e.objectives)
        for other in front.entries:
            assert own <= float(e.gamma @ other.objectives) + 1e-6


def test_front_nondomination_idempotent():
    p = paper_problem()
    front = weighted_sweep(p, 20)
    survivors = dominance_filter([e.objectives for e in front.entries])
    assert survivors == list(range(len(front.entries)))


def test_sweep_identical_objectives_collapses():
    ts = TimeScale.from_points([0, 1, 2])
    p = VariationalProblem(
        ts.sample(1.0), 1,
        [ex.parse("(y1-1)^2", 1), ex.parse("(y1-1)^2", 1)],
        alpha=[0.0], beta=[0.0], timescale=ts,
    )
    front = weighted_sweep(p, 10)
    assert len(front.entries) == 1
    assert front.dominated_removed == 8


def test_sweep_requires_two_objectives():
    ts = TimeScale.from_points([0, 1, 2])
    p = VariationalProblem(ts.sample(1.0), 1, [ex.parse("y1^2", 1)],
                           alpha=[0.0], beta=[0.0], timescale=ts)
    with pytest.raises(DomainError):
        weighted_sweep(p, 10)
    with pytest.raises(DomainError):
        weighted_sweep(paper_problem(), 1)


def test_sweep_without_warm_start():
    p = paper_problem()
    front = weighted_sweep(p, 8, warm_start=False)
    assert len(front.entries) == 7
    for e in front.entries:
        assert abs(e.y.values[1, 0] - closed_form_minimizer(e.gamma[0])) <= 1e-6


def test_sweep_records_failures():
    p = paper_problem()
    front = weighted_sweep(p, 6, options=SolverOptions(max_inner=0))
    assert not front.entries
    assert len(front.failures) == 5


def test_dominance_filter_examples():
    assert dominance_filter([(1, 5), (2, 2), (3, 1)]) == [0, 1, 2]
    assert dominance_filter([(1, 5), (1, 4)]) == [1]
    assert dominance_filter([(0, 0)]) == [0]


def test_nc_crosscheck_consistent_entry():
    p = paper_problem()
    front = weighted_sweep(p, 20)
    mid = [e for e in front.entries if abs(e.gamma[0] - 0.5) < 1e-12][0]
    for i in (0, 1):
        rep = nc_crosscheck(p, mid, i)
        assert rep.verdict == "consistent"
        assert rep.improvement <= 1e-6


def test_nc_crosscheck_refutes_planted_candidate():
    # a = 3 gives objectives (9, 5); the L2 = 5 level set also contains
    # a = 1 where L1 = 1, so the check improves L1 by 8
    p = paper_problem()
    vals = np.zeros((3, 1))
    vals[1, 0] = 3.0
    y = GridFunction(p.grid, vals)
    fv = evaluate(p, y)
    assert np.allclose(fv.objectives, [9.0, 5.0])
    entry = ParetoEntry(gamma=np.array([0.5, 0.5]), y=y,
                        objectives=fv.objectives)
    rep = nc_crosscheck(p, entry, 0)
    assert rep.verdict == "refuted"
    assert 7.9 <= rep.improvement <= 8.1


def test_nc_crosscheck_identical_objectives():
    ts = TimeScale.from_points([0, 1, 2])
    p = VariationalProblem(
        ts.sample(1.0), 1,
        [ex.parse("(y1-1)^2", 1), ex.parse("(y1-1)^2", 1)],
        alpha=[0.0], beta=[0.0], timescale=ts,
    )
    front = weighted_sweep(p, 6)
    rep = nc_crosscheck(p, front.entries[0], 0)
    assert rep.verdict == "consistent"
    assert rep.improvement <= 1e-6


def test_nc_crosscheck_validation():
    p = paper_problem()
    front = weighted_sweep(p, 4)
    with pytest.raises(DomainError):
        nc_crosscheck(p, front.entries[0], 5)
    ts = TimeScale.from_points([0, 1, 2])
    single = VariationalProblem(ts.sample(1.0), 1, [ex.parse("y1^2", 1)],
                                alpha=[0.0], beta=[0.0], timescale=ts)
    with pytest.raises(DomainError):
        nc_crosscheck(single, front.entries[0], 0)


def test_nc_crosscheck_inconclusive_on_solver_failure():
    p = paper_problem()
    front = weighted_sweep(p, 4)
    rep = nc_crosscheck(p, front.entries[0], 0,
                        options=SolverOptions(max_inner=0, max_outer=1))
    assert rep.verdict == "inconclusive"
