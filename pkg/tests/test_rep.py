from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from partalg.diagram import AlgebraElement, Poly, concat, enumerate_diagrams, identity, multiply, parse_diagram
from partalg.rep import (
    PermWord,
    SparseMat,
    act,
    entry,
    eval_at,
    matrix,
    perm_matrix,
    tuple_rank,
    unrank_tuple,
)

D2 = list(enumerate_diagrams(2))


def test_tuple_rank_roundtrip():
    assert tuple_rank((1, 1), 3) == 0
    assert tuple_rank((1, 2), 3) == 1
    assert tuple_rank((2, 1), 3) == 3
    assert tuple_rank((3, 3), 3) == 8
    for n, k in ((2, 1), (3, 2), (4, 3)):
        for r in range(n**k):
            t = unrank_tuple(r, n, k)
            assert len(t) == k and all(1 <= v <= n for v in t)
            assert tuple_rank(t, n) == r
    with pytest.raises(ValueError):
        tuple_rank((0, 1), 3)
    with pytest.raises(ValueError):
        tuple_rank((1, 4), 3)


def test_entry_is_the_block_constancy_indicator():
    d = parse_diagram("1,1',2'|2")
    assert entry(d, (3, 7), (3, 5)) == 0
    assert entry(d, (3, 7), (3, 3)) == 1
    assert entry(d, (4, 4), (4, 4)) == 1
    wide = parse_diagram("1,2,1'|3|4,2',3',4'")
    assert entry(wide, (1, 2, 2, 3), (1, 3, 3, 3)) == 0
    assert entry(wide, (1, 1, 2, 3), (1, 3, 3, 3)) == 1
    with pytest.raises(ValueError):
        entry(wide, (1, 1), (1, 1, 1, 1))
    with pytest.raises(ValueError):
        entry(wide, (1, 1, 2, 0), (1, 1, 1, 1))


def test_matrix_against_entry_by_entry_oracle():
    n = 3
    for d in D2:
        m = matrix(d, n)
        dense = m.to_dense()
        for top in product(range(1, n + 1), repeat=2):
            for bot in product(range(1, n + 1), repeat=2):
                assert dense[tuple_rank(top, n)][tuple_rank(bot, n)] == entry(d, top, bot)


def test_matrix_golden_swap():
    swap = parse_diagram("1,2'|2,1'")
    assert matrix(swap, 2).to_dense() == [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ]


def test_matrix_golden_rank_one_projector():
    d = parse_diagram("1,2,1',2'")
    m = matrix(d, 3)
    assert m.nnz == 3
    assert all(m.entry(i, i) == 1 for i in (0, 4, 8))


def test_matrix_column_support_counts():
    # each admissible column carries one nonzero per free top block
    n, k = 3, 2
    for d in D2:
        free = sum(1 for block in d.part.blocks if all(v < k for v in block))
        m = matrix(d, n)
        per_col: dict[int, int] = {}
        for r, c, _ in m.triples:
            per_col[c] = per_col.get(c, 0) + 1
        assert all(count == n**free for count in per_col.values())


def test_perm_word_basics():
    s = PermWord((2, 1, 3))
    assert s.n == 3 and s(1) == 2 and s(3) == 3
    assert s.apply((1, 2, 3, 1)) == (2, 1, 3, 2)
    assert PermWord.identity(4) == PermWord((1, 2, 3, 4))
    assert PermWord.transposition(4, 2, 4) == PermWord((1, 4, 3, 2))
    assert PermWord.cycle(4) == PermWord((2, 3, 4, 1))
    with pytest.raises(ValueError):
        PermWord((1, 1, 2))
    with pytest.raises(ValueError):
        PermWord((0, 1))


def test_perm_compose_convention():
    s = PermWord((2, 1, 3))
    t = PermWord((2, 3, 1))
    st = s * t
    for i in (1, 2, 3):
        assert st(i) == s(t(i))


def test_perm_matrix_is_a_homomorphism():
    rng = random.Random(17)
    n, k = 4, 2
    perms = [PermWord(tuple(rng.sample(range(1, n + 1), n))) for _ in range(8)]
    for s, t in zip(perms, perms[1:]):
        assert perm_matrix(s, k) @ perm_matrix(t, k) == perm_matrix(s * t, k)
    ident = SparseMat.identity(n**k)
    assert perm_matrix(PermWord.identity(n), k) == ident
    for s in perms:
        inv = PermWord(tuple(sorted(range(1, n + 1), key=s)))
        assert perm_matrix(s, k) @ perm_matrix(inv, k) == ident


def test_diagram_matrices_commute_with_permutation_action():
    n, k = 3, 2
    perms = [PermWord(p) for p in ((2, 1, 3), (2, 3, 1), (3, 1, 2))]
    for d in D2:
        m = matrix(d, n)
        for s in perms:
            p = perm_matrix(s, k)
            assert p @ m == m @ p


def test_representation_property_exhaustive_small():
    for k in (1, 2):
        diagrams = list(enumerate_diagrams(k))
        for n in (2, 3):
            mats = {d: matrix(d, n) for d in diagrams}
            for d1, d2 in product(diagrams, repeat=2):
                d, middles = concat(d1, d2)
                assert mats[d1] @ mats[d2] == mats[d].scaled(Fraction(n) ** middles)


def test_representation_property_random_k3():
    rng = random.Random(29)
    diagrams = list(enumerate_diagrams(3))
    n = 3
    for _ in range(25):
        d1, d2 = rng.choice(diagrams), rng.choice(diagrams)
        d, middles = concat(d1, d2)
        assert matrix(d1, n) @ matrix(d2, n) == matrix(d, n).scaled(Fraction(n) ** middles)


def test_eval_at_identity_and_scalars():
    one = AlgebraElement.identity(2)
    assert eval_at(one, 3) == SparseMat.identity(9)
    doubled = 2 * one
    assert eval_at(doubled, 3) == SparseMat.identity(9).scaled(2)
    with pytest.raises(ValueError):
        eval_at(one, 0)


def test_eval_at_golden_product():
    lhs = AlgebraElement.from_diagram(parse_diagram("1,2|3|4,3',4'|1',2'"))
    rhs = AlgebraElement.from_diagram(parse_diagram("1|2|3,1'|4,2',3',4'"))
    prod = multiply(lhs, rhs)
    for n in (2, 3):
        assert eval_at(lhs, n) @ eval_at(rhs, n) == eval_at(prod, n)


def test_eval_at_substitutes_the_marker():
    d = parse_diagram("1|1'")
    elem = AlgebraElement.from_diagram(d, Poly.x_power(1))
    for n in (2, 3, 5):
        assert eval_at(elem, n) == matrix(d, n).scaled(n)


def test_act_applies_matrix_to_coordinates():
    swap = matrix(parse_diagram("1,2'|2,1'"), 2)
    vec = [Fraction(i) for i in (1, 2, 3, 4)]
    assert act(swap, vec) == [Fraction(v) for v in (1, 3, 2, 4)]
    with pytest.raises(ValueError):
        act(swap, vec[:3])


def test_sparse_mat_accumulates_and_drops_zeros():
    m = SparseMat(2, [(0, 0, Fraction(1)), (0, 0, Fraction(-1)), (1, 0, Fraction(2))])
    assert m.nnz == 1 and m.entry(1, 0) == 2 and m.entry(0, 0) == 0
    assert SparseMat(2, {}) == SparseMat(2, [])
    with pytest.raises(ValueError):
        SparseMat(2, [(2, 0, Fraction(1))])


def test_sparse_mat_algebra_matches_dense_oracle():
    rng = random.Random(41)

    def random_mat(dim: int) -> SparseMat:
        triples = [
            (r, c, Fraction(rng.randint(-4, 4)))
            for r in range(dim)
            for c in range(dim)
            if rng.random() < 0.4
        ]
        return SparseMat(dim, triples)

    def dense_mul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
        dim = len(a)
        return [
            [sum((a[i][j] * b[j][l] for j in range(dim)), Fraction(0)) for l in range(dim)]
            for i in range(dim)
        ]

    for _ in range(10):
        a, b = random_mat(5), random_mat(5)
        assert (a @ b).to_dense() == dense_mul(a.to_dense(), b.to_dense())
        assert (a + b).to_dense() == [
            [x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.to_dense(), b.to_dense())
        ]
        assert (a - a).nnz == 0


def test_sparse_mat_json_form():
    m = SparseMat(2, [(1, 0, Fraction(1, 2)), (0, 1, Fraction(3))])
    assert m.to_json() == {"dim": 2, "triples": [[0, 1, "3/1"], [1, 0, "1/2"]]}
