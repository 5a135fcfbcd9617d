"""Standard modules, word unfolding, shifts, the injective twist and the
projective replacement."""

from __future__ import annotations

from fractions import Fraction

import pytest

from gentle import (cohomology_dims, injective, iso_indecomposable, minimize,
                    nakayama_on_projectives, parse_word, perfect_replacement,
                    projective, shift, simple, trivial_string, unfold_band,
                    unfold_string)
from gentle.complexes import (RepComplex, _assemble_projective_complex,
                              right_multiplication)
from gentle.linalg import mat_eq


def dims_of(rep):
    return {v: d for v, d in rep.dims if d}


def test_standard_modules_a2(algebras):
    a = algebras["a2"]
    assert dims_of(projective(a, "1")) == {"1": 1, "2": 1}
    assert dims_of(projective(a, "2")) == {"2": 1}
    assert dims_of(injective(a, "2")) == {"1": 1, "2": 1}
    assert dims_of(injective(a, "1")) == {"1": 1}
    assert dims_of(simple(a, "1")) == {"1": 1}
    assert all(not any(x for row in simple(a, "1").act(arr.name) for x in row)
               for arr in a.arrows)


def test_injective_two_matches_projective_one_a2(algebras):
    a = algebras["a2"]
    assert dims_of(injective(a, "2")) == dims_of(projective(a, "1"))


def test_unfold_single_letter_kronecker(algebras):
    a = algebras["kronecker"]
    X = unfold_string(a, parse_word(a, "a"), 0)
    assert X.support() == (-1, 0)
    assert X.proj_terms == {-1: ("2",), 0: ("1",)}
    # the differential is right multiplication by the arrow
    expected = right_multiplication(a, ((a.arrow_path("a"), Fraction(1)),), "2", "1")
    assert all(mat_eq(X.diffs[-1][v], expected[v]) for v in a.vertices)


def test_unfold_square_word_dual_numbers(algebras):
    a = algebras["dual_numbers"]
    X = unfold_string(a, parse_word(a, "x, x"), 0)
    assert X.support() == (-2, 0)
    assert X.proj_terms == {-2: ("1",), -1: ("1",), 0: ("1",)}
    mult_x = right_multiplication(a, ((a.arrow_path("x"), Fraction(1)),), "1", "1")
    for d in (-2, -1):
        assert all(mat_eq(X.diffs[d][v], mult_x[v]) for v in a.vertices)


def test_unfold_trivial_is_stalk(algebras):
    a = algebras["pent"]
    X = unfold_string(a, trivial_string(a, "3"), 0)
    assert X.support() == (0, 0)
    assert X.proj_terms == {0: ("3",)}


def test_unfold_band_kronecker_matches_scaled_matrix(algebras):
    a = algebras["kronecker"]
    w = parse_word(a, "band: b^-1, a")
    lam = Fraction(5, 3)
    E = unfold_band(a, w, 0, lam)
    assert E.proj_terms == {-1: ("2",), 0: ("1",)}
    expected = right_multiplication(
        a, ((a.arrow_path("a"), Fraction(1)), (a.arrow_path("b"), lam)), "2", "1")
    assert all(mat_eq(E.diffs[-1][v], expected[v]) for v in a.vertices)


def test_unfold_band_pent_positions(algebras):
    a = algebras["pent"]
    E = unfold_band(a, parse_word(a, "band: d^-1, e^-1, f^-1, c, b, a"), 0, 1)
    assert len(E.shape.positions) == 6
    assert E.support() == (-3, 0)


def test_band_scalar_zero_rejected(algebras):
    a = algebras["kronecker"]
    with pytest.raises(ValueError):
        unfold_band(a, parse_word(a, "band: b^-1, a"), 0, 0)


def test_shift_conventions(algebras):
    a = algebras["a2"]
    X = unfold_string(a, parse_word(a, "a"), 0)
    assert shift(X, 0) is X
    Y = shift(X, 1)
    assert Y.support() == (-2, -1)
    assert all(mat_eq(Y.diffs[-2][v],
                      tuple(tuple(-x for x in row) for row in X.diffs[-1][v]))
               for v in a.vertices)
    Z = shift(Y, -1)
    assert Z.support() == X.support()
    assert all(mat_eq(Z.diffs[-1][v], X.diffs[-1][v]) for v in a.vertices)


def test_unfold_with_base_index_suspends(algebras):
    a = algebras["a2"]
    X0 = unfold_string(a, parse_word(a, "a"), 0)
    X2 = unfold_string(a, parse_word(a, "a"), 2)
    assert X2.support() == (X0.support()[0] + 2, X0.support()[1] + 2)


def test_nakayama_stalk(algebras):
    a = algebras["a2"]
    X = unfold_string(a, trivial_string(a, "2"), 0)
    N = nakayama_on_projectives(X)
    assert dims_of(N.terms[0]) == dims_of(injective(a, "2"))


def test_nakayama_identity_component_stays_identity(algebras):
    a = algebras["a2"]
    triv = a.trivial_path("1")
    C = _assemble_projective_complex(
        a, {0: ("1",), 1: ("1",)}, {0: ((((triv, Fraction(1)),),),)})
    N = nakayama_on_projectives(C)
    n = N.terms[0].dim("1")
    assert N.diffs[0]["1"] == tuple(tuple(1 if i == j else 0 for j in range(n))
                                    for i in range(n))


def test_nakayama_a2_arrow_complex(algebras):
    a = algebras["a2"]
    X = unfold_string(a, parse_word(a, "a"), 0)
    N = nakayama_on_projectives(X)
    assert dims_of(N.terms[-1]) == dims_of(injective(a, "2"))
    assert dims_of(N.terms[0]) == dims_of(injective(a, "1"))
    assert cohomology_dims(N) == {-1: {"2": 1}}    # kernel is the simple at the sink


def test_nakayama_needs_presentation(algebras):
    a = algebras["a2"]
    X = unfold_string(a, parse_word(a, "a"), 0)
    bare = RepComplex(a, dict(X.terms), dict(X.diffs))
    with pytest.raises(ValueError):
        nakayama_on_projectives(bare)


def test_replacement_of_projective_complex_is_isomorphic(algebras):
    a = algebras["dual_numbers"]
    X = unfold_string(a, parse_word(a, "x, x"), 0)
    R = perfect_replacement(X)
    assert iso_indecomposable(minimize(R), X)


def test_replacement_simple_at_source_a2(algebras):
    a = algebras["a2"]
    # the one-dimensional module at the source has the arrow complex as its
    # resolution: P(2) -> P(1) in degrees -1, 0
    S1 = unfold_string(a, trivial_string(a, "1"), 0)
    N = nakayama_on_projectives(S1)      # the stalk I(1), which is that simple
    R = minimize(perfect_replacement(N))
    assert R.proj_terms == {-1: ("2",), 0: ("1",)}


def test_replacement_injective_stalk_already_projective(algebras):
    a = algebras["a2"]
    P2 = unfold_string(a, trivial_string(a, "2"), 0)
    N = nakayama_on_projectives(P2)      # I(2) is isomorphic to P(1)
    R = minimize(perfect_replacement(N))
    assert R.proj_terms == {0: ("1",)}


def test_replacement_preserves_cohomology(algebras):
    for name in ["a2", "pent", "a3_relation"]:
        a = algebras[name]
        for v in a.vertices:
            X = unfold_string(a, trivial_string(a, v), 0)
            N = nakayama_on_projectives(X)
            R = perfect_replacement(N)
            assert cohomology_dims(R) == cohomology_dims(N)


def test_unfold_string_and_inverse_isomorphic(algebras):
    a = algebras["pent"]
    for expr in ["a*f", "d, a^-1", "b"]:
        w = parse_word(a, expr)
        X = unfold_string(a, w, 0)
        Y = unfold_string(a, w.inverse(), 0)
        assert iso_indecomposable(X, Y)


def test_minimize_kills_contractible_complex(algebras):
    a = algebras["a2"]
    triv = a.trivial_path("1")
    C = _assemble_projective_complex(
        a, {0: ("1",), 1: ("1",)}, {0: ((((triv, Fraction(1)),),),)})
    M = minimize(C)
    assert M.is_zero()


def test_minimize_keeps_minimal_complex(algebras):
    a = algebras["pent"]
    X = unfold_string(a, parse_word(a, "d, a^-1"), 0)
    M = minimize(X)
    assert M.proj_terms == X.proj_terms


def test_every_construction_checks_d_squared(algebras):
    # constructors validate; exercise a mix of words on every fixture
    for a in algebras.values():
        for v in a.vertices:
            unfold_string(a, trivial_string(a, v), 0)
        for q in a.path_basis:
            if not q.is_trivial:
                from gentle.words import HomotopyLetter, make_string
                unfold_string(a, make_string(a, [HomotopyLetter(q, True)]), 0)
