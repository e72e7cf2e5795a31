import random
from dataclasses import replace
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gcwhq.crossed import build_HG
from gcwhq.exactlin import Mat, kron, rank
from gcwhq.groups import make_cyclic
from gcwhq.instances import cyclic_group_algebra, trivial_action
from gcwhq.yd import (AdjointInvalid, NotAModule, YdInvalid, YdStructureError, braid_as_morphism, braiding,
                      braiding_inverse, check_braided_crossed_laws, check_jr_equivalence, check_naturality,
                      check_yd_module, check_yd_morphism, check_yd_weak_quasimodule, conjugate_yd, make_module,
                      modules_equal, qybe_map, tensor_yd, truncation_idempotent, yd_adjoint,
                      yd_trivial_coaction)

ONES = Mat([[1, 1, 1], [1, 1, 1], [1, 1, 1]])  # v -> (sum of coordinates) * (1+g+g^2)


@pytest.fixture(scope="module")
def mods(z3):
    return {"adj0": yd_adjoint(z3, 0), "adj1": yd_adjoint(z3, 1), "triv": yd_trivial_coaction(z3)}


def perturb_coaction(V, r, i, j):
    co = list(V.coaction)
    co[r] = co[r].with_entry(i, j, co[r][i, j] + 1)
    return replace(V, coaction=tuple(co), validated=False, is_module=False, report=None)


# modules and their checkers ---------------------------------------------------------------

@pytest.mark.parametrize("p", [0, 1])
def test_adjoint_modules_pass(z3, p):
    V = yd_adjoint(z3, p)
    assert V.validated and V.is_module
    rep = check_yd_module(V)
    assert rep.passed
    for lab in ["yd.unit", "yd.wqm1", "yd.wqm2", "yd.wqm3", "yd.wqm4", "yd.coassociative", "yd.counit",
                "yd.jr1", "yd.jh1", "yd.jh2", "yd.absorb.target", "yd.absorb.source-tilde", "yd.v1h1",
                "yd.v1h4", "yd.associative"]:
        assert lab in rep.labels()


def test_adjoint_coaction_on_group_likes(mods):
    # at the identity grade g -> g (x) 1, at the sigma grade g -> g (x) g^-1
    for g in range(3):
        x = Mat.basis_vector(3, g)
        assert mods["adj0"].rho(0) @ x == kron(x, Mat.basis_vector(3, 0))
        assert mods["adj1"].rho(1) @ x == kron(x, Mat.basis_vector(3, (-g) % 3))


def test_trivial_coaction_module(mods):
    assert mods["triv"].is_module
    assert modules_equal(mods["triv"], replace(mods["adj0"], name="x"))


def test_trivial_coaction_fails_on_weak_instance(groupoid):
    with pytest.raises(YdInvalid) as err:
        yd_trivial_coaction(groupoid)
    failing = {v.label for v in err.value.report.failures()}
    assert "yd.coassociative" in failing


def test_groupoid_adjoint(groupoid):
    V = yd_adjoint(groupoid, 0)
    assert V.is_module
    with pytest.raises(AdjointInvalid):
        yd_adjoint(groupoid, 1)


def test_broken_coaction_fails_jh1(mods):
    V = perturb_coaction(mods["adj0"], 0, 1, 0)
    rep = check_yd_weak_quasimodule(V)
    assert not rep.passed
    assert not rep.label_passed("yd.counit")


def test_shape_errors(z3):
    with pytest.raises(YdStructureError):
        make_module(z3, 0, Mat.identity(3), [Mat.identity(3)] * 2)


# morphisms -----------------------------------------------------------------------------------

def test_morphisms(mods):
    a0 = mods["adj0"]
    assert check_yd_morphism(Mat.identity(3), a0, a0).passed
    assert check_yd_morphism(Mat.zeros(3, 3), a0, a0).passed
    assert check_yd_morphism(ONES, a0, a0).passed
    assert not check_yd_morphism(ONES, mods["adj1"], mods["adj1"]).passed
    assert not check_yd_morphism(Mat([[1, 2, 0], [0, 1, 0], [3, 0, 1]]), a0, a0).passed
    with pytest.raises(YdStructureError):
        check_yd_morphism(Mat.identity(3), a0, mods["adj1"])


# JR equivalence ------------------------------------------------------------------------------

def test_jr_equivalence_on_valid_modules(mods):
    for V in mods.values():
        rep = check_jr_equivalence(V)
        assert rep.passed


def test_jr_equivalence_on_perturbations(mods, groupoid):
    rng = random.Random(20261014)
    pool = list(mods.values()) + [yd_adjoint(groupoid, 0)]
    broke = 0
    for k in range(60):
        V = pool[k % len(pool)]
        r = rng.randrange(len(V.coaction))
        R = V.coaction[r]
        W = perturb_coaction(V, r, rng.randrange(R.rows), rng.randrange(R.cols))
        rep = check_jr_equivalence(W)
        assert rep.label_passed("yd.jr-equivalence")
        broke += not rep.label_passed("yd.jr1")
    assert broke > 30


@settings(max_examples=30)
@given(st.data())
def test_jr_equivalence_property(mods, data):
    V = data.draw(st.sampled_from(sorted(mods)))
    V = mods[V]
    r = data.draw(st.sampled_from([0, 1]))
    R = V.coaction[r]
    W = perturb_coaction(V, r, data.draw(st.integers(0, R.rows - 1)), data.draw(st.integers(0, R.cols - 1)))
    assert check_jr_equivalence(W).label_passed("yd.jr-equivalence")


# tensor and conjugation --------------------------------------------------------------------------

def test_truncation_trivial_in_hopf_case(mods):
    E = truncation_idempotent(mods["adj0"], mods["adj1"])
    assert E == Mat.identity(9)
    T = tensor_yd(mods["adj0"], mods["adj1"])
    assert T.dim == 9 and T.grade == 1 and T.is_module


def test_truncation_proper_on_groupoid(groupoid):
    V = yd_adjoint(groupoid, 0)
    E = truncation_idempotent(V, V)
    assert E @ E == E and rank(E) == 2 < 4
    T = tensor_yd(V, V)
    assert T.dim == 2 and T.is_module
    assert T.restrict @ T.embed == Mat.identity(2)


def test_full_tensor_semantics(mods):
    T = tensor_yd(mods["adj0"], mods["adj1"], semantics="full")
    assert T.dim == 9 and T.report.passed
    with pytest.raises(ValueError):
        tensor_yd(mods["adj0"], mods["adj1"], semantics="other")


def test_conjugation(mods, z3):
    for name, V in mods.items():
        assert modules_equal(conjugate_yd(V, 0), V)
        for q in z3.group:
            W = conjugate_yd(V, q)
            assert W.grade == z3.group.conj(q, V.grade) and check_yd_module(W).passed


def test_conjugation_functorial(mods, z3):
    G = z3.group
    V, W = mods["adj0"], mods["adj1"]
    for k, t in product(G, G):
        assert modules_equal(conjugate_yd(V, G.mul(k, t)), conjugate_yd(conjugate_yd(V, t), k))
    for k in G:
        a = conjugate_yd(tensor_yd(V, W), k)
        b = tensor_yd(conjugate_yd(V, k), conjugate_yd(W, k))
        assert modules_equal(a, b) and a.embed == b.embed


# braiding -----------------------------------------------------------------------------------

@pytest.mark.parametrize("pair", [("adj0", "adj1"), ("adj1", "adj1"), ("triv", "adj1"), ("adj1", "adj0")])
def test_braiding_inverse(mods, pair):
    V, W = mods[pair[0]], mods[pair[1]]
    b = braiding(V, W)
    inv = braiding_inverse(V, W)
    assert inv @ b.matrix == Mat.identity(b.matrix.cols)
    assert b.matrix @ inv == Mat.identity(b.matrix.rows)
    assert b.target_module.grade == b.source_module.grade


def test_braiding_on_group_likes(mods):
    # V of grade sigma has g -> g (x) g^-1 in every degree, so C(g (x) h) = h.S^-1(g^-1) (x) g = hg (x) g
    b = braiding(mods["adj1"], mods["adj0"])
    for g, h in product(range(3), range(3)):
        x = kron(Mat.basis_vector(3, g), Mat.basis_vector(3, h))
        assert b.full @ x == kron(Mat.basis_vector(3, (g + h) % 3), Mat.basis_vector(3, g))


def test_braiding_refuses_quasimodule(z3, mods):
    V = mods["adj0"]
    bad = replace(V, action=V.action @ kron(Mat.identity(3), Mat([[1, 1, 0], [0, 0, 1], [0, 0, 0]])),
                  validated=True, is_module=False)
    with pytest.raises(NotAModule):
        braiding(bad, V)


def test_braided_laws(mods):
    a0, a1, tr = mods["adj0"], mods["adj1"], mods["triv"]
    rep = check_braided_crossed_laws(a0, tr, a1, morphisms=[(ONES, a0, a0)])
    assert rep.passed, rep.format_text()
    for lab in ["hexagon.left", "hexagon.right", "braid.equivariant", "naturality.morphism-left",
                "naturality.morphism-right", "conjugate.tensor.action", "grading.conjugate"]:
        assert lab in rep.labels()
    assert len(rep.by_label("braid.equivariant")) == 2


def test_braided_laws_groupoid(groupoid):
    V = yd_adjoint(groupoid, 0)
    assert check_braided_crossed_laws(V, V, V).passed


def test_braided_laws_one_dimensional():
    B = cyclic_group_algebra(1)
    G = make_cyclic(2)
    H = build_HG(B, G, trivial_action(B, G))
    V, W = yd_adjoint(H, 0), yd_adjoint(H, 1)
    assert V.dim == W.dim == 1
    assert check_braided_crossed_laws(V, W, W).passed
    c, rep = qybe_map(W)
    assert rep.passed and c == Mat.identity(1)


def test_braid_is_natural_against_itself(mods):
    V, W = mods["adj0"], mods["adj1"]
    f, src, dst = braid_as_morphism(V, W)
    assert check_yd_morphism(f, src, dst).passed
    rep = check_naturality(Mat.identity(3), V, V, 2 * Mat.identity(3), W, W)
    assert rep.passed


# Yang-Baxter ----------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["adj0", "triv"])
def test_qybe_at_identity_grade(mods, name):
    c, rep = qybe_map(mods[name])
    assert rep.passed and rep.labels() == {"qybe.hypothesis.1", "qybe.hypothesis.2", "qybe.braid"}


def test_qybe_sigma_grade_counterexample(mods):
    # the coaction at sigma is g -> g (x) g^-1, so c(a, b) = (b, a - b) on exponents;
    # both hypotheses hold yet the braid relation fails at (0, 0, 1)
    c, rep = qybe_map(mods["adj1"])
    assert rep.label_passed("qybe.hypothesis.1") and rep.label_passed("qybe.hypothesis.2")
    fail = rep.by_label("qybe.braid")[0]
    assert not fail.passed and tuple(fail.basis) == (0, 0, 1)
    e = lambda *a: sum(x * 3 ** (2 - i) for i, x in enumerate(a))  # noqa: E731
    assert [i for i, x in enumerate(fail.lhs) if x] == [e(1, 2, 2)]
    assert [i for i, x in enumerate(fail.rhs) if x] == [e(1, 2, 0)]


def test_qybe_skips_braid_when_hypotheses_fail(mods):
    V = mods["adj0"]
    # precompose the action with the projection killing the unit: no longer an action
    bad = replace(V, action=V.action @ kron(Mat.identity(3), Mat([[0, 0, 0], [0, 1, 0], [0, 0, 1]])))
    c, rep = qybe_map(bad)
    assert not rep.label_passed("qybe.hypothesis.1") and not rep.label_passed("qybe.hypothesis.2")
    assert "qybe.braid" not in rep.labels() and rep.notes


def test_plain_tensor_fails_unit_laws_on_weak_instance(groupoid):
    # the untruncated product is kept for inspection: on the groupoid it is not a module
    V = yd_adjoint(groupoid, 0)
    T = tensor_yd(V, V, semantics="full")
    assert not T.validated
    assert {v.label for v in T.report.failures()} == {"yd.unit", "yd.counit"}
    assert tensor_yd(V, V).is_module
