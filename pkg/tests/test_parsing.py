"""This module hosts unit tests for the table parsers and serializers."""

import pytest

from table_reward.exc import MalformedMarkup, NoTableFound, SpansNotRepresentable, TableParseError
from table_reward.parsing import MAX_SPAN, parse_html_table, parse_markdown_table, parse_table, serialize
from table_reward.reference import TABLE, TD, TR, TableFormat
from table_reward.table import GridTable, TableNode, TableTree, grid_to_tree

ALPHABET = list('ab1 |<&')


def random_text(rng):
    """Builds a normalized cell text from a small alphabet."""
    text = ''.join(rng.choice(ALPHABET, size=int(rng.integers(0, 5))))
    return ' '.join(text.split())


def random_grid(rng, header_rows=1):
    """Builds a random grid with at least one row and one column."""
    n_rows = int(rng.integers(1, 5))
    n_cols = int(rng.integers(1, 5))
    cells = [[random_text(rng) for _ in range(n_cols)] for _ in range(n_rows)]
    return GridTable(cells, header_rows=min(header_rows, n_rows))


def test_parse_html_table(simple_tree):
    """Verify a plain HTML table is parsed correctly."""
    src = """
    <p>Results</p>
    <table>
      <thead><tr><th>Name</th><th>Score</th></tr></thead>
      <tbody><tr><td>Ann</td><td>3</td></tr></tbody>
    </table>
    """
    assert parse_html_table(src) == simple_tree


def test_parse_html_table_implied_close():
    """Verify missing td and tr closing tags are implied."""
    tree = parse_html_table('<table><tr><th>a<td>b<tr><td>c<td>d</table>')
    assert [[cell.text for cell in row.children] for row in tree.rows()] == [['a', 'b'], ['c', 'd']]


def test_parse_html_table_text_normalization():
    """Verify cell text is whitespace normalized and entities are decoded."""
    tree = parse_html_table('<table><tr><td>  a\n  &amp; <b>b</b><br>c </td></tr></table>')
    assert tree.rows()[0].children[0].text == 'a & b c'


def test_parse_html_table_spans():
    """Verify span attributes are read, defaulted, and clamped."""
    src = '<table><tr><td rowspan="2" colspan="3">a</td><td colspan="abc">b</td>' \
          '<td colspan="0">c</td><td rowspan="5000">d</td></tr></table>'
    cells = parse_html_table(src).rows()[0].children
    assert [(cell.rowspan, cell.colspan) for cell in cells] == [(2, 3), (1, 1), (1, 1), (MAX_SPAN, 1)]


def test_parse_html_table_first_table_only():
    """Verify only the first table of the document is parsed."""
    tree = parse_html_table('<table><tr><td>a</td></tr></table><table><tr><td>b</td></tr></table>')
    assert tree.size == 3
    assert tree.rows()[0].children[0].text == 'a'


def test_parse_html_table_nested():
    """Verify a nested table is flattened into the outer table."""
    tree = parse_html_table(
        '<table><tr><td>x<table><tr><td>y</td></tr></table></td></tr></table>'
    )
    assert [[cell.text for cell in row.children] for row in tree.rows()] == [['x'], ['y']]


def test_parse_html_table_ignores_stray_text():
    """Verify text outside of cells is ignored."""
    tree = parse_html_table('<table>junk<tr>more<td>a</td></tr></table>')
    assert tree == TableTree(TableNode(TABLE, children=[TableNode(TR, children=[TableNode(TD, text='a')])]))


def test_parse_html_table_self_closing_cell():
    """Test the case where a cell is written as a self closing tag."""
    tree = parse_html_table('<table><tr><td/><td>a</td></tr></table>')
    assert [cell.text for cell in tree.rows()[0].children] == ['', 'a']


def test_parse_html_table_errors():
    """Test the case where there is no table or the table is never closed."""
    with pytest.raises(NoTableFound):
        parse_html_table('<p>no table here</p>')
    with pytest.raises(NoTableFound):
        parse_html_table('')
    with pytest.raises(MalformedMarkup):
        parse_html_table('<table><tr><td>a')
    with pytest.raises(TableParseError):
        parse_html_table('<table><tr><td>a')


def test_parse_markdown_table():
    """Verify a plain Markdown table is parsed correctly."""
    src = 'Here is the table:\n\n| Name | Score |\n|:-----|------:|\n| Ann | 3 |\n| Bob | 4 |\n\nDone.'
    grid = parse_markdown_table(src)
    assert grid.cells == (('Name', 'Score'), ('Ann', '3'), ('Bob', '4'))
    assert grid.header_rows == 1


def test_parse_markdown_table_without_outer_pipes():
    """Verify a table without leading and trailing pipes is parsed correctly."""
    grid = parse_markdown_table('a | b\n--- | ---\n1 | 2')
    assert grid.cells == (('a', 'b'), ('1', '2'))


def test_parse_markdown_table_ragged_rows():
    """Verify short rows are padded and long rows are truncated to the header width."""
    grid = parse_markdown_table('| a | b |\n| --- | --- |\n| 1 |\n| 2 | 3 | 4 |')
    assert grid.cells == (('a', 'b'), ('1', ''), ('2', '3'))


def test_parse_markdown_table_escaped_pipe():
    """Verify escaped pipes stay inside a cell."""
    grid = parse_markdown_table('| a \\| b | c |\n| --- | --- |')
    assert grid.cells == (('a | b', 'c'),)


def test_parse_markdown_table_single_column():
    """Verify a single column table is parsed correctly."""
    grid = parse_markdown_table('| a |\n| --- |\n| 1 |')
    assert grid.cells == (('a',), ('1',))


def test_parse_markdown_table_no_table():
    """Test the case where there is no delimiter row."""
    with pytest.raises(NoTableFound):
        parse_markdown_table('| a | b |\n| 1 | 2 |')
    with pytest.raises(NoTableFound):
        parse_markdown_table('just text')


def test_parse_table(simple_tree):
    """Verify parse_table dispatches on the format."""
    assert parse_table('| Name | Score |\n| --- | --- |\n| Ann | 3 |', TableFormat.MARKDOWN) == simple_tree
    assert parse_table('| Name | Score |\n| --- | --- |\n| Ann | 3 |', 'Markdown') == simple_tree
    html = '<table><thead><tr><td>Name</td><td>Score</td></tr></thead>' \
           '<tbody><tr><td>Ann</td><td>3</td></tr></tbody></table>'
    assert parse_table(html, 'html') == simple_tree
    with pytest.raises(ValueError):
        parse_table(html, 'latex')


def test_serialize_html(simple_tree, spanned_tree):
    """Verify trees are serialized to canonical HTML."""
    assert serialize(simple_tree, TableFormat.HTML) == (
        '<table><thead><tr><td>Name</td><td>Score</td></tr></thead>'
        '<tbody><tr><td>Ann</td><td>3</td></tr></tbody></table>'
    )
    assert serialize(spanned_tree, 'html') == (
        '<table><tr><td colspan="2">Total</td></tr><tr><td>a</td><td>b</td></tr></table>'
    )
    escaped = TableTree(TableNode(TABLE, children=[TableNode(TR, children=[TableNode(TD, text='a<b & c')])]))
    assert serialize(escaped, 'html') == '<table><tr><td>a&lt;b &amp; c</td></tr></table>'


def test_serialize_markdown(simple_tree, spanned_tree):
    """Verify trees are serialized to Markdown and spans are rejected."""
    assert serialize(simple_tree, TableFormat.MARKDOWN) == '| Name | Score |\n| --- | --- |\n| Ann | 3 |'
    with pytest.raises(SpansNotRepresentable):
        serialize(spanned_tree, TableFormat.MARKDOWN)


def test_html_round_trip(rng, spanned_tree):
    """Verify parsing a serialized tree gives back the same tree."""
    assert parse_html_table(serialize(spanned_tree, 'html')) == spanned_tree
    for index in range(1000):
        tree = grid_to_tree(random_grid(rng, header_rows=index % 3))
        text = serialize(tree, TableFormat.HTML)
        assert parse_html_table(text) == tree
        assert serialize(parse_html_table(text), TableFormat.HTML) == text


def test_markdown_round_trip(rng):
    """Verify parsing a serialized span free grid gives back the same grid."""
    for _ in range(1000):
        grid = random_grid(rng)
        text = serialize(grid_to_tree(grid), TableFormat.MARKDOWN)
        assert parse_markdown_table(text) == grid
        assert serialize(parse_table(text, TableFormat.MARKDOWN), TableFormat.MARKDOWN) == text
