"""The two equation solvers and their verification."""

import random

from barrec import gen
from barrec.choice import (ChoiceParams, SpectorSolution, phi_spector,
                           psi_symmetric, psi_via_sbr, solve_spector,
                           solve_symmetric, values_equal, verify_equations)
from barrec.context import EvalContext
from barrec.pfun import EMPTY, EMPTY_SEQ, FiniteSeq, InfSeq, PartialFn
from barrec.threads import is_thread, thread_of_partial


def constant_control_params():
    return ChoiceParams(eps=lambda n: (lambda p: p(7) + n),
                        q=lambda f: f(0) * 10 + f(1),
                        control=lambda a: 0, default=0)


def test_phi_stops_on_hit_bar():
    cp = constant_control_params()
    s = FiniteSeq((5,))
    assert phi_spector(cp, s, EvalContext()) == s


def test_psi_stops_on_defined_control():
    cp = constant_control_params()
    u = PartialFn.single(0, 5)
    assert psi_symmetric(cp, u, EvalContext()) == u
    assert psi_via_sbr(cp, u, EvalContext()) == u


def test_solve_with_constant_control():
    cp = constant_control_params()
    sol = solve_spector(cp, EvalContext())
    assert sol.n == 0
    assert len(sol.witness) == 1
    assert verify_equations(sol, cp)

    sym = solve_symmetric(cp, EvalContext())
    assert sym.n == 0
    assert sym.witness.domain() == (0,)
    assert verify_equations(sym, cp)


def test_solutions_verify_on_generated_instances():
    rng = random.Random(40)
    for _ in range(60):
        cp = gen.gen_choice_instance(rng)
        for solver in (solve_spector, solve_symmetric):
            sol = solver(cp, EvalContext())
            assert verify_equations(sol, cp)


def test_corrupted_solution_fails():
    cp = gen.gen_choice_instance(random.Random(41))
    sol = solve_symmetric(cp, EvalContext())
    bad = SpectorSolution(f=sol.f, n=sol.n + 1, p=sol.p, witness=sol.witness)
    assert not verify_equations(bad, cp)


def test_psi_via_sbr_matches_psi_symmetric():
    rng = random.Random(42)
    for _ in range(50):
        cp = gen.gen_choice_instance(rng)
        assert psi_via_sbr(cp, EMPTY, EvalContext()) == \
            psi_symmetric(cp, EMPTY, EvalContext())


def test_carrier_is_thread_and_rerooting_is_stable():
    rng = random.Random(43)
    for _ in range(30):
        cp = gen.gen_choice_instance(rng)
        v = psi_symmetric(cp, EMPTY, EvalContext())
        assert is_thread(cp.control, v, cp.default)
        for i in range(len(v) + 1):
            prefix = thread_of_partial(cp.control, v, i, cp.default)
            assert psi_symmetric(cp, prefix, EvalContext()) == v


def test_indexwise_equations_sequential():
    rng = random.Random(44)
    for _ in range(20):
        cp = gen.gen_choice_instance(rng)
        t = phi_spector(cp, EMPTY_SEQ, EvalContext())
        qt = cp.q_hat(t)
        for i in range(len(t)):
            prefix = t.take(i)

            def p(x, _prefix=prefix):
                return cp.q_hat(phi_spector(cp, _prefix.append(x),
                                            EvalContext()))

            assert t[i] == cp.eps(i)(p)
            assert qt == p(cp.eps(i)(p))


def test_values_equal_on_functions_uses_window():
    a = InfSeq.constant(1)
    b = InfSeq(lambda i: 1 if i <= 64 else 2)
    c = InfSeq(lambda i: 1 if i <= 3 else 2)
    assert values_equal(a, b)
    assert not values_equal(a, c)
    assert values_equal(3, 3) and not values_equal(3, 4)
    assert not values_equal(a, 3)


def test_solution_serialisation():
    cp = constant_control_params()
    sol = solve_spector(cp, EvalContext())
    data = sol.to_json(window=3, p_args=(0, 1))
    assert data["n"] == 0
    assert len(data["f_prefix"]) == 3
    assert len(data["p_samples"]) == 2
    assert data["carrier_size"] == 1
