import numpy as np
import pytest
from hypothesis import given, strategies as st

from cpnsurf.chain import build_chain, veronese_curve
from cpnsurf.words import (alternating_word, claim_residual, evaluate_word, letter_counts, parse_word,
                           projector_word_claims, random_word, surface_word_claims)
from cpnsurf.surfaces import weierstrass_surface

tokens_p = st.lists(st.sampled_from(["P", "dP", "dbP"]), min_size=1, max_size=8).map(tuple)
tokens_x = st.lists(st.sampled_from(["X", "dX", "dbX"]), min_size=1, max_size=8).map(tuple)


def letters_p(n, k, xi=0.3 + 0.4j):
    c = build_chain(veronese_curve(n), xi)
    a = np.arange(n * n).reshape(n, n) * (1 + 0.5j) + np.eye(n)
    return {"P": c.P(k), "dP": c.P(k, 1, 0), "dbP": c.P(k, 0, 1), "A": a}


def test_parse_word():
    assert parse_word("P dP dbP") == ("P", "dP", "dbP")
    with pytest.raises(ValueError, match="malformed"):
        parse_word("P dQ")
    with pytest.raises(ValueError, match="malformed"):
        parse_word("")
    with pytest.raises(ValueError, match="malformed"):
        evaluate_word("dP", {"P": np.eye(2)})


def test_counts_and_generators():
    assert letter_counts(("P", "dP", "dbP", "dP")) == (1, 2, 1)
    assert alternating_word(3, "X", "db") == ("dbX", "dX", "dbX")
    w = random_word(np.random.default_rng(1), "P", 5)
    assert 1 <= len(w) <= 5


def test_claim_classes():
    kinds = {c.kind for c in projector_word_claims(("dP", "dbP", "P"))}
    assert kinds == {"rank_one", "factorize", "commute"}
    assert {c.kind for c in projector_word_claims(("dP",))} == {"trace_zero", "commute"}
    # the documented exception: dP P dP is not claimed to vanish
    assert "product_zero" not in {c.kind for c in projector_word_claims(("dP", "P", "dP"))}
    assert "product_zero" in {c.kind for c in projector_word_claims(("P", "dP", "dP"))}


@pytest.mark.parametrize("n,k", [(2, 0), (3, 1), (4, 2), (4, 3)])
@given(tokens_p)
def test_projector_claims_hold(n, k, w):
    L = letters_p(n, k)
    for cl in projector_word_claims(w):
        assert claim_residual(cl, L) < 1e-9, cl


def test_exception_word_is_generically_nonzero():
    L = letters_p(3, 1)
    assert np.linalg.norm(evaluate_word("dP P dP", L)) > 1e-3


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 0)])
@given(tokens_x)
def test_surface_claims_hold(n, k, w):
    s = weierstrass_surface(build_chain(veronese_curve(n), 0.2 - 0.5j), k)
    for cl in surface_word_claims(w):
        assert claim_residual(cl, s.letters()) < 1e-9, cl
