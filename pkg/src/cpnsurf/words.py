"""Matrix words over a field and its derivatives.

A word is a tuple of tokens.  Projector-level tokens are ``P``, ``dP``,
``dbP``, ``d2P``, ``ddbP``, ``db2P``; surface-level tokens use ``X`` in place
of ``P``.  ``A`` stands for an auxiliary fixed matrix supplied by the caller.

The classifiers below encode which identity each word is claimed to satisfy.
They count letters rather than assume any particular ordering inside the
ellipses of the printed products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .linalg import rel_residual

__all__ = [
    "DERIV_TOKENS",
    "parse_word",
    "evaluate_word",
    "letter_counts",
    "alternating_word",
    "random_word",
    "projector_word_claims",
    "surface_word_claims",
    "WordClaim",
    "claim_residual",
]

# (d-order, dbar-order) of each token suffix
DERIV_TOKENS = {"": (0, 0), "d": (1, 0), "db": (0, 1), "d2": (2, 0), "ddb": (1, 1), "db2": (0, 2)}


def parse_word(word) -> tuple:
    """Accept either a tuple of tokens or a space separated string."""
    if isinstance(word, str):
        tokens = tuple(word.split())
    else:
        tokens = tuple(word)
    if not tokens:
        raise ValueError("malformed word descriptor: empty word")
    for t in tokens:
        if t == "A":
            continue
        base, prefix = t[-1], t[:-1]
        if base not in "PX" or prefix not in DERIV_TOKENS:
            raise ValueError(f"malformed word descriptor: unknown token {t!r}")
    return tokens


def evaluate_word(word, letters: Mapping[str, np.ndarray]) -> np.ndarray:
    tokens = parse_word(word)
    try:
        out = letters[tokens[0]]
        for t in tokens[1:]:
            out = out @ letters[t]
    except KeyError as exc:
        raise ValueError(f"malformed word descriptor: no value for token {exc.args[0]!r}") from None
    return out


def letter_counts(tokens: Sequence[str]) -> tuple[int, int, int]:
    """(number of base letters, number of d-letters M, number of dbar-letters Mbar)."""
    base = sum(1 for t in tokens if t in ("P", "X"))
    m = sum(1 for t in tokens if t in ("dP", "dX"))
    mb = sum(1 for t in tokens if t in ("dbP", "dbX"))
    return base, m, mb


def alternating_word(length: int, base: str = "P", start: str = "d") -> tuple:
    """Strictly alternating derivative word ``d, db, d, ...`` of the given length."""
    other = "db" if start == "d" else "d"
    return tuple((start if i % 2 == 0 else other) + base for i in range(length))


def random_word(rng: np.random.Generator, base: str = "P", max_len: int = 8) -> tuple:
    length = int(rng.integers(1, max_len + 1))
    alphabet = (base, "d" + base, "db" + base)
    return tuple(alphabet[i] for i in rng.integers(0, 3, size=length))


@dataclass(frozen=True)
class WordClaim:
    """One asserted identity for a word.

    ``kind`` is one of ``trace_zero``, ``product_zero``, ``rank_one``
    (``W = tr(W) P``), ``factorize`` (``tr(A W) = tr(A P) tr(W)``),
    ``commute`` (``P W = W P`` or ``W (I - P)``), ``shift``
    (``X W = W (X + i(M - Mbar))``).
    """

    kind: str
    word: tuple
    anchor: str


def projector_word_claims(tokens: Sequence[str]) -> list[WordClaim]:
    """Identities asserted for a word over {P, dP, dbP}."""
    tokens = tuple(tokens)
    nP, m, mb = letter_counts(tokens)
    nd = m + mb
    claims: list[WordClaim] = []
    if nd % 2 == 1:
        claims.append(WordClaim("trace_zero", tokens, "odd derivative count"))
    elif nd >= 2 and tokens[-1] == "P":
        claims.append(WordClaim("rank_one", tokens, "even derivative count"))
        claims.append(WordClaim("factorize", tokens, "trace factorization"))
    derivs = tuple(t for t in tokens if t != "P")
    if derivs:
        claims.append(WordClaim("commute", derivs, "projector exchange"))
    if nd >= 2 and (m == 0 or mb == 0):
        if nd >= 3:
            claims.append(WordClaim("product_zero", tokens, "identical derivatives"))
        elif nP >= 1:
            first = min(i for i, t in enumerate(tokens) if t != "P")
            last = max(i for i, t in enumerate(tokens) if t != "P")
            p_pos = [i for i, t in enumerate(tokens) if t == "P"]
            # the stated exception: d P . P . d P with every P between the derivatives
            if not all(first < i < last for i in p_pos):
                claims.append(WordClaim("product_zero", tokens, "identical derivatives"))
    return claims


def surface_word_claims(tokens: Sequence[str]) -> list[WordClaim]:
    """Identities asserted for a word over {X, dX, dbX}."""
    tokens = tuple(tokens)
    _, m, mb = letter_counts(tokens)
    nd = m + mb
    claims: list[WordClaim] = []
    if nd >= 1 and (m == 0 or mb == 0):
        claims.append(WordClaim("trace_zero", tokens, "identical derivative traces"))
        if nd >= 3:
            claims.append(WordClaim("product_zero", tokens, "identical derivative products"))
    elif m != mb:
        claims.append(WordClaim("trace_zero", tokens, "unbalanced mixed traces"))
    derivs = tuple(t for t in tokens if t != "X")
    if derivs:
        claims.append(WordClaim("shift", derivs, "shift rule"))
    return claims


def claim_residual(claim: WordClaim, letters: Mapping[str, np.ndarray]) -> float:
    """Relative residual of ``claim`` given numerical values for each token."""
    W = evaluate_word(claim.word, letters)
    n = W.shape[0]
    eye = np.eye(n)
    kind = claim.kind
    if kind == "trace_zero":
        return float(abs(np.trace(W)))
    if kind == "product_zero":
        return float(np.linalg.norm(W))
    if kind == "rank_one":
        P = letters["P"]
        return rel_residual(W, np.trace(W) * P)
    if kind == "factorize":
        P, A = letters["P"], letters["A"]
        lhs = np.trace(A @ W)
        rhs = np.trace(A @ P) * np.trace(W)
        return float(abs(lhs - rhs) / max(1.0, abs(rhs)))
    if kind == "commute":
        P = letters["P"]
        nd = len(claim.word)
        rhs = W @ P if nd % 2 == 0 else W @ (eye - P)
        return rel_residual(P @ W, rhs)
    if kind == "shift":
        X = letters["X"]
        _, m, mb = letter_counts(claim.word)
        return rel_residual(X @ W, W @ (X + 1j * (m - mb) * eye))
    raise ValueError(f"malformed word descriptor: unknown claim kind {kind!r}")
