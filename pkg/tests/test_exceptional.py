"""Mouth objects, Serre orbits, the classifier, certificates and search."""

from __future__ import annotations

import pytest

from gentle import (ExceptionalCycle, ag_invariants, brute_force_search,
                    check_band_spherical, classify_exceptional_cycles,
                    cycle_equiv, load_algebra, mouth_objects, parse_word,
                    serre_of_mouth, thread_string, trivial_string, verify_cycle,
                    word_key)
from gentle.exceptional import default_search_bounds


def _mouth_by_label(a, label):
    return next(m for m in mouth_objects(a) if m.thread.label() == label)


def test_mouth_objects_fixtures(algebras):
    assert [m.thread.label() for m in mouth_objects(algebras["dual_numbers"])] == ["triv:1"]
    assert sorted(m.thread.label() for m in mouth_objects(algebras["kronecker"])) == ["a", "b"]
    assert sorted(m.thread.label() for m in mouth_objects(algebras["pent"])) == [
        "triv:1", "triv:2", "triv:3", "triv:4"]
    for name in ["dual_numbers", "kronecker", "pent", "a2"]:
        assert not any(m.flagged for m in mouth_objects(algebras[name]))


def test_serre_of_mouth_a2(algebras):
    a = algebras["a2"]
    t, s = serre_of_mouth(a, _mouth_by_label(a, "triv:2"))
    assert (t.label(), s) == ("triv:1", 0)
    t, s = serre_of_mouth(a, _mouth_by_label(a, "a"))
    assert (t.label(), s) == ("triv:2", 1)
    t, s = serre_of_mouth(a, _mouth_by_label(a, "triv:1"))
    assert (t.label(), s) == ("a", 0)


def test_serre_of_mouth_kronecker_and_dual(algebras):
    kr = algebras["kronecker"]
    t, s = serre_of_mouth(kr, _mouth_by_label(kr, "a"))
    assert (t.label(), s) == ("a", 1)
    dn = algebras["dual_numbers"]
    m = _mouth_by_label(dn, "triv:1")
    assert m.end_dim == 2
    assert serre_of_mouth(dn, m) == (m.thread, 0)


def test_ag_invariants_fixtures(algebras):
    expect = {"dual_numbers": [(1, 0)], "a2": [(3, 1)], "pent": [(4, 0)],
              "kronecker": [(1, 1), (1, 1)]}
    for name, pairs in expect.items():
        got = sorted((o.n, o.m) for o in ag_invariants(algebras[name]))
        assert got == pairs, (name, got)


def test_ag_requires_arrows():
    k = load_algebra("vertex 1\n")
    with pytest.raises(ValueError):
        ag_invariants(k)


def test_classifier_dual_numbers(algebras):
    cycles = classify_exceptional_cycles(algebras["dual_numbers"])
    assert len(cycles) == 1
    [c] = cycles
    assert c.n == 1 and c.calabi_yau == 0
    w, s = c.entries[0]
    assert w.is_trivial and s == 0
    assert all(x.n == 1 for x in cycles)     # nothing longer exists


def test_classifier_pent(algebras):
    cycles = classify_exceptional_cycles(algebras["pent"])
    assert len(cycles) == 1
    [c] = cycles
    assert c.n == 4
    assert all(w.is_trivial for w, _ in c.entries)
    assert c.certificate.ok()
    assert sum(c.certificate.shifts) == 0 - 4 + 4     # total twist = m - n + n


def test_classifier_kronecker(algebras):
    cycles = classify_exceptional_cycles(algebras["kronecker"])
    assert sorted(c.n for c in cycles) == [1, 1]
    assert all(c.calabi_yau == 1 for c in cycles)


def test_classifier_ground_field():
    k = load_algebra("vertex 1\n")
    cycles = classify_exceptional_cycles(k)
    assert len(cycles) == 1 and cycles[0].n == 2
    assert cycles[0].certificate.ok()
    w1, w2 = (w for w, _ in cycles[0].entries)
    assert w1 == w2


def test_classifier_a3_shapes(algebras):
    for name in ["a3_relation", "a3_hereditary"]:
        cycles = classify_exceptional_cycles(algebras[name])
        assert sorted(c.n for c in cycles) == [2, 4], name
        assert all(c.certificate.ok() for c in cycles)


def test_verify_kronecker_band_is_one_cycle(algebras):
    a = algebras["kronecker"]
    w = parse_word(a, "band: b^-1, a")
    cert = verify_cycle(a, [(w, 0)])
    assert cert.ok() and cert.calabi_yau == 1


def test_verify_pent_band_fails(algebras):
    a = algebras["pent"]
    w = parse_word(a, "band: d^-1, e^-1, f^-1, c, b, a")
    cert = verify_cycle(a, [(w, 0)])
    assert not cert.e1
    ok, prof = check_band_spherical(a, w, 1)
    assert not ok and prof.dim(3) >= 1


def test_band_spherical_kronecker_scalars(algebras):
    a = algebras["kronecker"]
    w = parse_word(a, "band: b^-1, a")
    for lam in (1, 2, -3):
        ok, prof = check_band_spherical(a, w, lam)
        assert ok and prof.nonzero() == {0: 1, 1: 1}
    with pytest.raises(ValueError):
        check_band_spherical(a, w, 0)


def test_repeated_entry_pair_never_certifies(algebras):
    # a pair (E, E) cannot certify away from the ground field: the twist
    # class forces an extra graded endomorphism that violates the rank-one
    # condition
    kr = algebras["kronecker"]
    w = parse_word(kr, "a")
    cert = verify_cycle(kr, [(w, 0), (w, 0)])
    assert not cert.ok() and not cert.e1
    dn = algebras["dual_numbers"]
    t = trivial_string(dn, "1")
    cert = verify_cycle(dn, [(t, 0), (t, 0)])
    assert not cert.e1


def test_dropping_an_entry_breaks_the_links(algebras):
    a = algebras["pent"]
    [c] = classify_exceptional_cycles(a)
    entries = list(c.entries)
    shorter = entries[:-1]
    cert = verify_cycle(a, shorter)
    assert not cert.e2


def test_search_matches_classifier_on_fixtures(algebras):
    for name in ["pent", "kronecker", "dual_numbers", "a2"]:
        a = algebras[name]
        found = brute_force_search(a)
        expected = classify_exceptional_cycles(a)
        assert len(found) == len(expected), name
        for c in expected:
            assert any(cycle_equiv(c, f) for f in found), (name, c)


def test_search_a3_fixtures(algebras):
    for name in ["a3_relation", "a3_hereditary"]:
        found = brute_force_search(algebras[name])
        assert sorted(c.n for c in found) == [2, 4]


def test_search_dual_numbers_only_the_stalk(algebras):
    found = brute_force_search(algebras["dual_numbers"])
    assert len(found) == 1 and found[0].n == 1
    w, _ = found[0].entries[0]
    assert w.is_trivial


def test_cycle_equiv_rotation_shift_length(algebras):
    a = algebras["pent"]
    [c] = classify_exceptional_cycles(a)
    rot = ExceptionalCycle(c.entries[1:] + c.entries[:1], c.certificate)
    assert cycle_equiv(c, rot)
    shifted = ExceptionalCycle(tuple((w, s + 5) for w, s in c.entries), c.certificate)
    assert cycle_equiv(c, shifted)
    short = ExceptionalCycle(c.entries[:2], c.certificate)
    assert not cycle_equiv(c, short)


def test_no_repeated_pair_cycles_off_ground_field(algebras):
    for name, a in algebras.items():
        for c in classify_exceptional_cycles(a):
            if c.n == 2:
                k1, k2 = (word_key(w) for w, _ in c.entries)
                assert k1 != k2, name


def test_orthogonality_between_orbits(algebras):
    from gentle import graded_profile
    a = algebras["kronecker"]
    orbits = ag_invariants(a)
    assert len(orbits) == 2
    mouths = {m.thread: m for m in mouth_objects(a)}
    X = mouths[orbits[0].members[0][0]].complex
    Y = mouths[orbits[1].members[0][0]].complex
    assert graded_profile(X, Y).nonzero() == {}
    assert graded_profile(Y, X).nonzero() == {}


def test_ag_invariants_stable_under_relabeling(algebras):
    # permuting vertex and arrow names must not move the orbit pairs
    relabeled = """
    algebra pent_relabeled
    vertex q4 q0 q3 q1 q2
    arrow z2 : q2 -> q0
    arrow z1 : q1 -> q2
    arrow z0 : q0 -> q1
    arrow z5 : q3 -> q0
    arrow z4 : q4 -> q3
    arrow z3 : q0 -> q4
    relation z1 z0
    relation z2 z1
    relation z0 z2
    relation z4 z3
    relation z5 z4
    relation z3 z5
    """
    b = load_algebra(relabeled)
    orig = sorted((o.n, o.m) for o in ag_invariants(algebras["pent"]))
    assert sorted((o.n, o.m) for o in ag_invariants(b)) == orig


def test_long_cycle_members_are_noncritical_mouths(algebras):
    # away from the line-of-three shape, every entry of a longer cycle is
    # the complex of a non-critical forbidden thread
    from gentle import enumerate_threads, canonical_string
    for name in ["pent", "a2", "kronecker", "dual_numbers"]:
        a = algebras[name]
        tables = enumerate_threads(a)
        mouth_keys = {canonical_string(thread_string(a, t))
                      for t in tables.noncritical_forbidden()}
        for c in classify_exceptional_cycles(a):
            if c.n >= 2:
                for w, _ in c.entries:
                    assert canonical_string(w) in mouth_keys


def test_default_bounds_cover_threads(algebras, random_corpus_small):
    from gentle import enumerate_threads
    for a in list(algebras.values()) + random_corpus_small:
        max_letters, window = default_search_bounds(a)
        longest = max((t.length for t in enumerate_threads(a).forbidden), default=0)
        assert max_letters > longest
        assert window >= 2
