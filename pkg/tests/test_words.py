import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from betanum import Params, words, zbeta


def test_substitute_examples(p52):
    assert words.substitute("A", p52) == "AAAAAB"
    assert words.substitute("B", p52) == "AAB"
    assert words.substitute("", p52) == ""


def test_u_prefix_examples(p52):
    assert words.u_prefix(0, p52) == ""
    assert words.u_prefix(1, p52) == "A"
    assert words.u_prefix(7, p52) == "AAAAABA"
    assert words.u_prefix(12, p52) == "AAAAABAAAAAB"


def test_w_n_examples(p52):
    assert words.w_n(1, p52) == "B"
    assert words.w_n(2, p52) == "BAAB"
    w3 = words.w_n(3, p52)
    assert w3 == "B" + "AAB" + "AAAAAB" + "AAAAAB" + "AAB" and len(w3) == 19
    assert words.w_len(3, p52) == 19


def test_d_sequence_examples():
    assert words.d_sequence(5, Params(5, 2), "bruteforce") == [1, 2, 2, 2, 2]
    assert words.d_sequence(6, Params(4, 1), "bruteforce") == [1, 2, 2, 3, 3, 3]
    for p, q in [(3, 1), (9, 4), (12, 11)]:
        assert words.d_sequence(1, Params(p, q), "recurrence") == [1]
    with pytest.raises(ValueError):
        words.d_sequence(3, Params(5, 2), "guess")


@pytest.mark.parametrize("p,q", [(5, 2), (4, 1), (7, 2), (6, 4), (9, 3)])
def test_d_sequence_methods_agree(p, q):
    P = Params(p, q)
    n = 1
    while words.w_len(n + 1, P) <= 50_000:
        n += 1
    seqs = {m: words.d_sequence(n, P, m) for m in ("bruteforce", "recurrence", "closed_form")}
    assert seqs["bruteforce"] == seqs["recurrence"] == seqs["closed_form"]


def test_suffix_form_examples(p52):
    assert words.u_prefix(1, p52).endswith("A")
    assert words.u_prefix(words.w_len(2, p52), p52) == "AAAA"
    assert all(words.suffix_form_check(n, p52) for n in (1, 2, 3, 4))


@pytest.mark.parametrize("p,q", [(4, 1), (7, 2), (8, 3), (10, 3)])
def test_suffix_forms(p, q):
    P = Params(p, q)
    n = 1
    while words.w_len(n, P) <= 100_000:
        assert words.suffix_form_check(n, P)
        n += 1


def test_balance_examples():
    assert words.balance_scan(10_000, 500, Params(5, 2)).max_spread == 2
    assert words.balance_scan(10_000, 500, Params(4, 1)).max_spread == 3
    for p, q in [(3, 1), (6, 5), (11, 4)]:
        assert words.balance_scan(1000, 1, Params(p, q)).spread[0] == 1


def test_balance_scan_matches_direct_count():
    P = Params(4, 1)
    u = words.u_prefix(600, P)
    scan = words.balance_scan(600, 40, P)
    for k in (1, 2, 7, 13, 40):
        counts = [u[i:i + k].count("A") for i in range(len(u) - k + 1)]
        assert (scan.min_a[k - 1], scan.max_a[k - 1]) == (min(counts), max(counts))


def test_beta_integer_from_prefix_examples(p52):
    assert words.beta_integer_from_prefix(0, p52) == p52.fin(0)
    assert words.beta_integer_from_prefix(6, p52) == p52.fin(0, 1)
    assert words.beta_integer_from_prefix(7, p52) == p52.fin(1, 1)


@pytest.mark.parametrize("p,q", [(5, 2), (3, 1), (6, 5)])
def test_prefix_values_enumerate_beta_integers(p, q):
    P = Params(p, q)
    xs = zbeta.enumerate_beta_integers(300, P)
    assert [words.beta_integer_from_prefix(n, P) for n in range(300)] == xs


@pytest.mark.parametrize("p,q", [(5, 2), (4, 1)])
def test_structure_checks(p, q):
    rep = words.structure_checks(10_000, Params(p, q))
    assert rep.ok
    assert rep.a_run_lengths <= {p, q}
    # the longest w(n) that fits may first occur beyond the budget; that is not a refutation
    assert all(rep.w_factors[n] for n in range(1, 5))
    assert rep.w_not_found == [max(rep.w_factors)]


def test_w2_is_a_factor(p52):
    assert "BAAB" in words.u_prefix(1000, p52)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12).flatmap(lambda p: st.tuples(st.just(p), st.integers(1, p - 1))),
       st.integers(1, 3000))
def test_fixed_point_identities(pq, n):
    P = Params(*pq)
    u = words.u_prefix(n, P)
    assert words.substitute(u, P)[:n] == u
    w = words.w_prefix(n, P)
    assert ("B" + words.substitute(w, P))[:n] == w


@pytest.mark.parametrize("p", range(2, 21))
def test_incidence(p):
    for q in range(1, p):
        assert words.incidence_check(Params(p, q))


def test_letters_array():
    assert words.letters_array("ABBA").tolist() == [1, 0, 0, 1]
    assert words.letters_array("").dtype == np.uint8


def test_preimage(p52):
    assert words.preimage("AAAAABAAB", p52) == "AB"
    assert words.preimage("AAAB", p52) is None
    assert words.preimage("AAB" "A", p52) is None
