import random

from hypothesis import given, settings
from hypothesis import strategies as st

from zsplines import (
    Spline,
    forced_equal_classes,
    gens_mod_m,
    gens_mod_prime_power,
    integer_basis,
    is_spline,
    multable_distinct_primes,
    multable_general,
    multable_prime_power,
    multiply,
    rank,
    reduce_labels,
    support,
)
from zsplines.arith import factorize
from zsplines.oracle import (
    agreement_classes,
    check_bt_criteria,
    enumerate_splines,
    min_leading_oracle,
    span_mod_m,
    verify_generating,
)
from zsplines.splines import integer_modulus

from corpus import random_connected


def graph_strategy(moduli, max_n=5, max_edges=8):
    return st.builds(
        lambda seed, n, m: (random_connected(random.Random(seed), n, max_edges, range(0, m + 1), m), m),
        st.integers(0, 2**32), st.integers(1, max_n), moduli,
    )


any_modulus = graph_strategy(st.integers(2, 400), max_n=7, max_edges=12)
small_modulus = graph_strategy(st.sampled_from([2, 3, 4, 5, 6, 8, 9, 10, 12]))


@settings(max_examples=200, deadline=None)
@given(any_modulus)
def test_generators_are_flow_up_splines_of_rank_size(gm):
    g, m = gm
    basis = gens_mod_m(g, m)
    assert basis.modulus == m
    assert all(is_spline(g, s) for s in basis.splines)
    leads = basis.leading_vertices
    assert leads[0] == 0
    assert list(leads) == sorted(set(leads))
    assert len(basis) == rank(g, m)


@settings(max_examples=200, deadline=None)
@given(any_modulus)
def test_prime_power_sets_are_chains_with_nested_supports(gm):
    g, m = gm
    for p, e in factorize(m):
        part = gens_mod_prime_power(reduce_labels(g, p**e), p, e)
        assert check_bt_criteria(part)
        gens = list(part)
        for a in gens:
            for b in gens:
                sa, sb = support(a.spline), support(b.spline)
                if a is b or not (sa & sb):
                    continue
                assert sa <= sb or sb <= sa
                if a.level < b.level:
                    assert sb <= sa


@settings(max_examples=200, deadline=None)
@given(any_modulus)
def test_closed_form_tables_hold(gm):
    g, m = gm
    fac = factorize(m)
    basis = gens_mod_m(g, m)
    general = multable_general(basis)
    assert general.is_symmetric()
    if fac.is_prime_power:
        assert multable_prime_power(basis).entries == general.entries
    if fac.is_squarefree:
        assert multable_distinct_primes(basis).entries == general.entries
        splines = basis.splines
        for i, a in enumerate(splines):
            for j, b in enumerate(splines):
                assert multiply(a, b) == (a if i == j else Spline.zero(len(a), m))


@settings(max_examples=120, deadline=None)
@given(small_modulus)
def test_span_equals_enumeration(gm):
    g, m = gm
    basis = gens_mod_m(g, m)
    assert verify_generating(basis, g, m)
    assert forced_equal_classes(g, m) == agreement_classes(enumerate_splines(g, m), g.n)


@settings(max_examples=120, deadline=None)
@given(small_modulus)
def test_crt_round_trip(gm):
    g, m = gm
    basis = gens_mod_m(g, m)
    for p, e in factorize(m):
        q = p**e
        span = span_mod_m(gens_mod_prime_power(reduce_labels(g, q), p, e), q)
        assert all(Spline(s.values, q) in span for s in basis.splines)


integer_graphs = st.builds(
    lambda seed, n: random_connected(random.Random(seed), n, 5, range(1, 7)),
    st.integers(0, 2**32), st.integers(2, 3),
)


@settings(max_examples=60, deadline=None)
@given(integer_graphs)
def test_integer_basis_leads_are_minimal(g):
    basis = integer_basis(g)
    assert len(basis) == g.n
    assert all(is_spline(g, s) for s in basis.splines)
    m = integer_modulus(g)
    for s in basis.splines:
        i = s.leading_vertex
        expected = 1 if m is None else min_leading_oracle(g, i, m)
        assert s[i] == expected
