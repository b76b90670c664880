"""Group-theoretic machinery: closure, generation, Frattini, structure."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_closure
from gengraph.build import build_group
from gengraph.errors import NotNilpotentError
from gengraph.groups import (
    ElementSet,
    closure,
    coset_section,
    derived_subgroup,
    frattini,
    is_generating_pair,
    is_nilpotent,
    maximal_subgroups,
    nilpotent_structure,
    p_part,
    quotient_mod_frattini,
    subgroup_as_group,
    subgroup_lattice,
    totient_profile,
)


def test_closure_examples(group):
    c12 = group("C12")
    assert closure(c12, [4, 6]).size == 6  # gcd(4,6,12) = 2, so <g^2>
    c2sq = group("C2^2")
    assert closure(c2sq, [1, 2]).size == 4
    assert closure(c2sq, [0]).indices == frozenset({0})
    assert closure(c2sq, []).indices == frozenset({0})


def test_closure_matches_brute_force(group):
    for spec in ["C12", "C2^2 x C3", "Heis3"]:
        g = group(spec)
        table = g.table.tolist()
        rng = np.random.default_rng(7)
        for _ in range(10):
            seeds = rng.integers(0, g.n, size=2).tolist()
            assert closure(g, seeds).indices == frozenset(brute_closure(table, seeds))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 24), data=st.data())
def test_closure_monotone_idempotent(n, data):
    g = build_group(f"C{n}")
    seeds = data.draw(st.lists(st.integers(0, n - 1), min_size=0, max_size=3))
    first = closure(g, seeds)
    again = closure(g, sorted(first.indices))
    assert set(seeds) <= first.indices
    assert again.indices == first.indices


def test_generating_pairs(group):
    c6 = group("C6")
    assert is_generating_pair(c6, 1, 5)
    assert not is_generating_pair(c6, 2, 4)
    c2sq = group("C2^2")
    assert not is_generating_pair(c2sq, 1, 1)
    assert is_generating_pair(c2sq, 1, 2)
    assert is_generating_pair(c6, 1, 1)  # single generator allowed


def test_frattini_c12_both_methods(group):
    c12 = group("C12")
    lat = frattini(c12, "lattice")
    frm = frattini(c12, "nilpotentFormula")
    assert sorted(lat.indices) == sorted(frm.indices) == [0, 6]


def test_frattini_elementary_abelian_trivial(group):
    assert frattini(group("C2^2"), "lattice").indices == frozenset({0})


def test_frattini_heisenberg_is_centre(group):
    h = group("Heis3")
    lat = frattini(h, "lattice")
    frm = frattini(h, "nilpotentFormula")
    assert lat.indices == frm.indices
    centre = {z for z in range(27)
              if all(h.mul(z, x) == h.mul(x, z) for x in range(27))}
    assert lat.indices == frozenset(centre)
    assert lat.size == 3


def test_frattini_methods_agree_on_catalog(group):
    for spec in ["C4", "C8", "C9", "C12", "C16", "C18", "C2^2", "C3^2",
                 "C2^2 x C3", "C2^2 x C9", "C4 x C3^2", "Heis3"]:
        g = group(spec)
        assert frattini(g, "lattice").indices == \
            frattini(g, "nilpotentFormula").indices, spec


def test_frattini_formula_requires_nilpotent(group):
    with pytest.raises(NotNilpotentError):
        frattini(group("Ex(1)"), "nilpotentFormula")


def test_frattini_example_family_trivial(group):
    # maximal subgroups N:<h_j> and (coordinate hyperplane):H intersect trivially
    assert frattini(group("Ex(1)"), "lattice").indices == frozenset({0})


def test_subgroup_lattice_c12(group):
    subs = subgroup_lattice(group("C12"))
    assert sorted(len(s) for s in subs) == [1, 2, 3, 4, 6, 12]
    maxs = maximal_subgroups(group("C12"))
    assert sorted(len(s) for s in maxs) == [4, 6]


def test_nilpotent_structure_examples(group):
    st_ = nilpotent_structure(group("C2^2 x C9"))
    assert st_.cyclic_sylow == ((3, 2),)
    assert st_.noncyclic_sylow == ((2, 2),)
    assert st_.r == 1 and st_.s == 1 and st_.two_generated

    st12 = nilpotent_structure(group("C12"))
    assert st12.r == 2 and st12.s == 0
    assert st12.cyclic_primes == (2, 3)

    with pytest.raises(NotNilpotentError):
        nilpotent_structure(group("Ex(1)"))


def test_nilpotent_structure_trivial(group):
    st1 = nilpotent_structure(group("C1"))
    assert st1.r == 0 and st1.s == 0 and st1.is_cyclic and st1.two_generated


def test_not_two_generated(group):
    g = group("C2^3")
    st_ = nilpotent_structure(g)
    assert not st_.two_generated


def test_quotient_mod_frattini(group):
    c12 = group("C12")
    Q, cmap, phi = quotient_mod_frattini(c12)
    assert Q.n == 6 and Q.is_cyclic
    assert phi.size == 2
    assert cmap[0] == 0
    sec = coset_section(c12, cmap)
    assert int(sec[0]) == 0

    c2sq = group("C2^2")
    Q2, cmap2, phi2 = quotient_mod_frattini(c2sq)
    assert Q2.n == 4 and phi2.size == 1
    assert cmap2.tolist() == [0, 1, 2, 3]

    h = group("Heis3")
    Q3, _, phi3 = quotient_mod_frattini(h)
    assert Q3.n == 9 and phi3.size == 3
    assert Q3.is_abelian and Q3.exponent == 3


def test_quotient_structure_is_squarefree(group):
    # nilpotent 2-generated: G/Frat = prod C_p x prod C_q^2, so every cyclic
    # Sylow is C_p and every noncyclic Sylow is elementary abelian C_q^2
    for spec in ["C12", "C2^2 x C9", "Heis3", "C4 x C3^2"]:
        g = group(spec)
        Q, _, _ = quotient_mod_frattini(g)
        stq = nilpotent_structure(Q)
        st_g = nilpotent_structure(g)
        assert stq.cyclic_primes == st_g.cyclic_primes, spec
        assert stq.noncyclic_primes == st_g.noncyclic_primes, spec
        assert all(a == 1 for _, a in stq.cyclic_sylow), spec
        assert all(b == 2 for _, b in stq.noncyclic_sylow), spec
        from gengraph.groups import radical
        assert Q.exponent == radical(Q.n), spec


def test_generation_descends_to_quotient(group):
    # G = <g,h> iff the Frattini cosets generate G/Frat
    for spec in ["C12", "C2^2 x C9", "Heis3"]:
        g = group(spec)
        Q, cmap, _ = quotient_mod_frattini(g)
        rng = np.random.default_rng(11)
        for _ in range(40):
            a, b = rng.integers(0, g.n, size=2)
            lhs = is_generating_pair(g, int(a), int(b))
            rhs = is_generating_pair(Q, int(cmap[a]), int(cmap[b]))
            assert lhs == rhs, (spec, a, b)


def test_totient_profile():
    assert totient_profile(12) == (((2, 2), (3, 1)), 4, 2)
    assert totient_profile(1) == ((), 1, 0)
    factors, phi, pi = totient_profile(108)
    assert factors == ((2, 2), (3, 3)) and phi == 36 and pi == 2
    # brute-force unit count oracle
    assert phi == sum(1 for k in range(1, 108) if np.gcd(k, 108) == 1)


def test_p_part(group):
    c12 = group("C12")
    g = 1  # generator of C12
    g3 = p_part(c12, g, 3)
    g2 = p_part(c12, g, 2)
    assert c12.orders[g3] == 3 and c12.orders[g2] == 4
    assert c12.mul(g3, g2) == g or c12.mul(g2, g3) == g


def test_derived_subgroup(group):
    assert derived_subgroup(group("C12")).size == 1
    h = group("Heis3")
    der = derived_subgroup(h)
    assert der.size == 3
    ex = group("Ex(1)")
    assert derived_subgroup(ex).size == 27  # the normal C_3^3


def test_subgroup_as_group(group):
    h = group("Heis3")
    der = derived_subgroup(h)
    D, emap = subgroup_as_group(h, sorted(der.indices))
    assert D.n == 3 and D.is_cyclic
    assert emap.tolist() == sorted(der.indices)


def test_element_set_mask(group):
    es = ElementSet(frozenset({0, 2}), subgroup=False)
    m = es.mask(4)
    assert m.tolist() == [True, False, True, False]
    assert 2 in es and 1 not in es


def test_group_laws_validated():
    from gengraph.errors import GroupLawError
    from gengraph.groups import Group
    with pytest.raises(GroupLawError):
        Group(np.array([[0, 1], [1, 1]]))  # no inverse for element 1
    with pytest.raises(GroupLawError):
        Group(np.array([[1, 0], [0, 1]]))  # index 0 not the identity
