"""This module hosts unit tests for the TEDS score."""

from functools import lru_cache

import pytest

from table_reward.exc import GoldUnparseable
from table_reward.reference import TABLE, TBODY, TD, THEAD, TR, TableFormat
from table_reward.table import GridTable, TableNode, TableTree, grid_to_tree
from table_reward.teds import (
    normalized_levenshtein,
    teds,
    teds_from_strings,
    tree_edit_distance,
    TedsCostModel,
    TedsScore,
)

GOLD = '| Name | Score |\n| --- | --- |\n| Ann | 3 |'


def forest_distance(cost):
    """Provides a brute force ordered forest edit distance built from the recursive definition."""

    @lru_cache(maxsize=None)
    def distance(first, second):
        if not first and not second:
            return 0.
        if not first:
            return sum(cost.insert(node) for tree in second for node in tree.iter())
        if not second:
            return sum(cost.delete(node) for tree in first for node in tree.iter())
        v, w = first[-1], second[-1]
        return min(
            distance(first[:-1] + v.children, second) + cost.delete(v),
            distance(first, second[:-1] + w.children) + cost.insert(w),
            distance(v.children, w.children) + distance(first[:-1], second[:-1]) + cost.rename(v, w),
        )

    return distance


@lru_cache(maxsize=None)
def subtrees(n):
    """Enumerates every non-root node with exactly n nodes in its subtree."""
    if n == 1:
        return (TableNode(TABLE), TableNode(TR), TableNode(TD, text='a'), TableNode(TD, text='b'))
    return tuple(TableNode(label, children=forest) for label in (TABLE, TR) for forest in forests(n - 1))


@lru_cache(maxsize=None)
def forests(n):
    """Enumerates every ordered forest with exactly n nodes."""
    if n == 0:
        return ((),)
    result = []
    for first in range(1, n + 1):
        for head in subtrees(first):
            for tail in forests(n - first):
                result.append((head,) + tail)
    return tuple(result)


def all_trees(max_size):
    """Enumerates every table tree with at most max_size nodes."""
    return [TableTree(TableNode(TABLE, children=forest)) for n in range(max_size) for forest in forests(n)]


def random_subtree(rng, budget):
    """Builds a random node using at most budget nodes."""
    label = [TABLE, TR, TD][int(rng.integers(0, 3))]
    if label == TD or budget == 1:
        return TableNode(TD, text=['a', 'b', 'ab'][int(rng.integers(0, 3))]), 1
    children = []
    used = 1
    for _ in range(int(rng.integers(0, 3))):
        if used >= budget:
            break
        child, size = random_subtree(rng, budget - used)
        children.append(child)
        used += size
    return TableNode(label, children=children), used


def random_tree(rng, max_size=6):
    """Builds a random table tree with at most max_size nodes."""
    children = []
    used = 1
    while used < max_size and rng.random() < 0.7:
        child, size = random_subtree(rng, max_size - used)
        children.append(child)
        used += size
    return TableTree(TableNode(TABLE, children=children))


def test_normalized_levenshtein():
    """Verify normalized_levenshtein works correctly."""
    assert normalized_levenshtein('', '') == 0.
    assert normalized_levenshtein('abc', 'abc') == 0.
    assert normalized_levenshtein('abc', '') == 1.
    assert normalized_levenshtein('kitten', 'sitting') == pytest.approx(3 / 7)
    assert normalized_levenshtein('Ann', 'Anne') == pytest.approx(1 / 4)


def test_cost_model():
    """Verify the default cost model works correctly."""
    cost = TedsCostModel()
    cell = TableNode(TD, text='abcd')
    assert cost.insert(cell) == 1.
    assert cost.delete(cell) == 1.
    assert cost.rename(TableNode(TR), TableNode(TR)) == 0.
    assert cost.rename(TableNode(TR), cell) == 1.
    assert cost.rename(cell, TableNode(TD, text='abce')) == pytest.approx(0.25)
    assert cost.rename(cell, TableNode(TD, text='abce', colspan=2)) == 1.
    assert cost.rename(cell, TableNode(TD, text='abcd', rowspan=3)) == 1.


def test_identical_tables(simple_tree):
    """Verify identical tables have a similarity of 1."""
    score = teds(simple_tree, simple_tree)
    assert isinstance(score, TedsScore)
    assert score.similarity == 1.
    assert score.distance == 0.
    assert score.max_size == 9


def test_cell_text_change(simple_tree):
    """Verify a changed cell costs its normalized Levenshtein distance."""
    pred = grid_to_tree(GridTable([['Name', 'Score'], ['Anne', '3']], header_rows=1))
    score = teds(pred, simple_tree)
    assert score.distance == pytest.approx(0.25)
    assert score.similarity == pytest.approx(1 - 0.25 / 9)


def test_missing_row(simple_tree):
    """Verify a missing body costs one deletion per node."""
    header = TableNode(TR, children=[TableNode(TD, text='Name'), TableNode(TD, text='Score')])
    pred = TableTree(TableNode(TABLE, children=[TableNode(THEAD, children=[header])]))
    score = teds(pred, simple_tree)
    assert score.distance == 4.
    assert score.similarity == pytest.approx(5 / 9)
    assert teds(simple_tree, pred).similarity == pytest.approx(5 / 9)


def test_similarity_is_clamped():
    """Verify the similarity never drops below 0."""
    gold = TableTree(TableNode(TABLE, children=[TableNode(TR, children=[TableNode(TD, text='x')])]))
    pred = TableTree(TableNode(TABLE, children=[TableNode(TBODY)]))
    score = teds(pred, gold)
    assert 0. <= score.similarity <= 1.


def test_custom_cost_model(simple_tree):
    """Verify a custom cost model is used when provided."""

    class StructureOnly(TedsCostModel):
        def rename(self, first, second):
            return 0. if first.label == second.label else 1.

    pred = grid_to_tree(GridTable([['x', 'y'], ['z', 'w']], header_rows=1))
    assert teds(pred, simple_tree, StructureOnly()).similarity == 1.
    assert teds(pred, simple_tree).similarity < 1.


def test_score_as_dict():
    """Verify the TedsScore dictionary works correctly."""
    assert TedsScore(0.5, 2, 4).as_dict() == {'similarity': 0.5, 'distance': 2., 'max_size': 4}


@pytest.mark.slow
def test_distance_matches_brute_force_exhaustive():
    """Verify the tree edit distance matches a brute force search for every pair of tiny trees."""
    cost = TedsCostModel()
    brute = forest_distance(cost)
    trees = all_trees(4)
    for first in trees:
        for second in trees:
            expected = brute((first.root,), (second.root,))
            assert tree_edit_distance(first, second, cost) == pytest.approx(expected, abs=1e-12)


@pytest.mark.slow
def test_distance_matches_brute_force_up_to_six_nodes():
    """Verify every tree of up to 6 nodes against every tree of up to 3 nodes, in both directions."""
    cost = TedsCostModel()
    brute = forest_distance(cost)
    small = all_trees(3)
    for first in all_trees(6):
        for second in small:
            expected = brute((first.root,), (second.root,))
            assert tree_edit_distance(first, second, cost) == pytest.approx(expected, abs=1e-12)
            expected = brute((second.root,), (first.root,))
            assert tree_edit_distance(second, first, cost) == pytest.approx(expected, abs=1e-12)


def test_distance_matches_brute_force(rng):
    """Verify the tree edit distance matches a brute force search on random trees of up to 6 nodes."""
    cost = TedsCostModel()
    brute = forest_distance(cost)
    for _ in range(300):
        first, second = random_tree(rng), random_tree(rng)
        expected = brute((first.root,), (second.root,))
        assert tree_edit_distance(first, second, cost) == pytest.approx(expected)


@pytest.mark.slow
def test_perturbed_tables(rng):
    """Verify replacing k cell texts of an n node table scores exactly 1 - k/n."""
    for _ in range(500):
        n_rows, n_cols = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        cells = [[f'c{r}{c}' for c in range(n_cols)] for r in range(n_rows)]
        gold = grid_to_tree(GridTable(cells, header_rows=1))
        assert teds(gold, gold).similarity == 1.

        k = int(rng.integers(1, n_rows * n_cols + 1))
        for index in rng.choice(n_rows * n_cols, size=k, replace=False):
            r, c = divmod(int(index), n_cols)
            cells[r][c] = 'zzz'
        pred = grid_to_tree(GridTable(cells, header_rows=1))
        score = teds(pred, gold)
        assert score.similarity == pytest.approx(1 - k / gold.size)
        assert score.similarity == pytest.approx(teds(gold, pred).similarity)


def test_documented_distances():
    """Verify the distances of a few hand checked table pairs."""
    one_row = TableTree(TableNode(TABLE, children=[TableNode(TR, children=[TableNode(TD, text='a')])]))
    two_cells = TableTree(TableNode(TABLE, children=[
        TableNode(TR, children=[TableNode(TD, text='a'), TableNode(TD, text='a')])
    ]))
    assert tree_edit_distance(two_cells, one_row) == 1.

    gold = grid_to_tree(GridTable([['a', 'b'], ['c', 'd']]))
    assert gold.size == 7
    pred = grid_to_tree(GridTable([['a', 'b'], ['c', 'x']]))
    assert teds(pred, gold).similarity == pytest.approx(1 - 1 / 7)
    bare = TableTree(TableNode(TABLE))
    score = teds(bare, gold)
    assert score.distance == 6.
    assert score.similarity == pytest.approx(1 - 6 / 7)

    first = '| a | b |\n| --- | --- |\n| c | d |'
    second = '| a | b |\n| --- | --- |\n| c | x |'
    assert teds_from_strings(first, second, 'markdown').similarity == pytest.approx(1 - 1 / 9)


def test_teds_from_strings():
    """Verify table strings are parsed and scored."""
    assert teds_from_strings(GOLD, GOLD, TableFormat.MARKDOWN).similarity == 1.
    pred = '<table><tr><td>Name</td><td>Score</td></tr><tr><td>Ann</td><td>3</td></tr></table>'
    gold = '<table><thead><tr><td>Name</td><td>Score</td></tr></thead>' \
           '<tbody><tr><td>Ann</td><td>3</td></tr></tbody></table>'
    assert teds_from_strings(pred, gold, 'html').similarity == pytest.approx(7 / 9)


def test_teds_from_strings_unparseable_pred():
    """Test the case where the prediction can't be parsed."""
    score = teds_from_strings('I cannot read the table.', GOLD, 'markdown')
    assert score.similarity == 0.
    assert score.distance == 9.
    assert score.max_size == 9


def test_teds_from_strings_unparseable_gold():
    """Test the case where the golden table can't be parsed."""
    with pytest.raises(GoldUnparseable):
        teds_from_strings(GOLD, 'no table', 'markdown')
    with pytest.raises(GoldUnparseable):
        teds_from_strings('<table></table>', '<table><tr>', 'html')
