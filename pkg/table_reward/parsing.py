"""This module hosts the HTML and Markdown table parsers and serializers."""
import html
from html.parser import HTMLParser
import re

from table_reward.exc import EmptyGrid, MalformedMarkup, NoTableFound, SpansNotRepresentable
from table_reward.reference import TABLE, TBODY, TD, THEAD, TR, TableFormat
from table_reward.table import GridTable, TableNode, TableTree, grid_to_tree, tree_to_grid

MAX_SPAN = 1000

_DELIMITER_ROW = re.compile(r'^\s*\|?\s*:?-+:?\s*(\|\s*:?-+:?\s*)*\|?\s*$')
_UNESCAPED_PIPE = re.compile(r'(?<!\\)\|')


def _normalize(text):
    return ' '.join(text.split())


def _span(value):
    try:
        span = int(str(value).strip())
    except (TypeError, ValueError):
        return 1
    return min(max(span, 1), MAX_SPAN)


class _Builder:
    """A mutable stand-in for a TableNode while the markup is still being read."""

    __slots__ = ['label', 'rowspan', 'colspan', 'children', 'parts']

    def __init__(self, label, rowspan=1, colspan=1):
        self.label = label
        self.rowspan = rowspan
        self.colspan = colspan
        self.children = []
        self.parts = []

    def build(self):
        if self.label == TD:
            return TableNode(TD, text=_normalize(''.join(self.parts)), rowspan=self.rowspan, colspan=self.colspan)
        return TableNode(self.label, children=[child.build() for child in self.children])


class _TableHTMLParser(HTMLParser):
    """Collects the first table of an HTML document into a tree.

    Closing td and tr tags are implied by the next cell, row, or section. Tags outside the table alphabet are
    ignored while their text content is kept.
    """

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = None
        self.closed = False
        self._depth = 0
        self._stack = []

    @property
    def _active(self):
        return self.root is not None and not self.closed

    def _close_to(self, *labels):
        """Pops open builders until the top of the stack has one of the labels."""
        while self._stack and self._stack[-1].label not in labels:
            self._stack.pop()

    def _open(self, builder):
        self._stack[-1].children.append(builder)
        self._stack.append(builder)

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        if tag == TABLE:
            if self.root is None:
                self.root = _Builder(TABLE)
                self._stack = [self.root]
                self._depth = 1
            elif self._active:
                # Nested tables are flattened into the outer one.
                self._depth += 1
            return
        if not self._active:
            return
        if tag in (THEAD, TBODY):
            self._close_to(TABLE)
            self._open(_Builder(tag))
        elif tag == TR:
            self._close_to(TABLE, THEAD, TBODY)
            self._open(_Builder(TR))
        elif tag in (TD, 'th'):
            self._close_to(TABLE, THEAD, TBODY, TR)
            if self._stack[-1].label != TR:
                self._open(_Builder(TR))
            attrs = dict(attrs)
            self._open(_Builder(TD, rowspan=_span(attrs.get('rowspan', 1)), colspan=_span(attrs.get('colspan', 1))))
        elif tag == 'br' and self._stack[-1].label == TD:
            self._stack[-1].parts.append(' ')

    def handle_startendtag(self, tag, attrs):
        if tag.lower() in (TD, 'th'):
            self.handle_starttag(tag, attrs)
            self.handle_endtag(tag)
        else:
            self.handle_starttag(tag, attrs)

    def handle_endtag(self, tag):
        tag = tag.lower()
        if not self._active:
            return
        if tag == TABLE:
            self._depth -= 1
            if self._depth == 0:
                self._stack = []
                self.closed = True
        elif tag in (TD, 'th'):
            if self._stack[-1].label == TD:
                self._stack.pop()
        elif tag == TR:
            if any(builder.label == TR for builder in self._stack):
                self._close_to(TR)
                self._stack.pop()
        elif tag in (THEAD, TBODY):
            if any(builder.label == tag for builder in self._stack):
                self._close_to(tag)
                self._stack.pop()

    def handle_data(self, data):
        if self._active and self._stack[-1].label == TD:
            self._stack[-1].parts.append(data)


def parse_html_table(src):
    """Parses the first table element of an HTML string.

    :param str src: The HTML source.
    :rtype: TableTree
    :return: The parsed table tree.
    """
    parser = _TableHTMLParser()
    try:
        parser.feed(str(src))
        parser.close()
    except Exception as err:
        raise MalformedMarkup(exception=err)
    if parser.root is None:
        raise NoTableFound(message='no <table> element')
    if not parser.closed:
        raise MalformedMarkup(message='the <table> element is never closed')
    return TableTree(parser.root.build())


def _split_row(line):
    line = line.strip()
    if line.startswith('|'):
        line = line[1:]
    if line.endswith('|') and not line.endswith('\\|'):
        line = line[:-1]
    return [_normalize(cell.replace('\\|', '|')) for cell in _UNESCAPED_PIPE.split(line)]


def parse_markdown_table(src):
    """Parses the first pipe table of a Markdown string.

    The row above the delimiter row is the header. Alignment colons are ignored.

    :param str src: The Markdown source.
    :rtype: GridTable
    :return: The parsed grid with one header row.
    """
    lines = str(src).splitlines()
    for index in range(1, len(lines)):
        header, delimiter = lines[index - 1], lines[index]
        if '|' not in header or not _DELIMITER_ROW.match(delimiter):
            continue
        columns = _split_row(header)
        width = len(columns)
        rows = [columns]
        for line in lines[index + 1:]:
            if not line.strip() or '|' not in line:
                break
            cells = _split_row(line)[:width]
            rows.append(cells + [''] * (width - len(cells)))
        return GridTable(rows, header_rows=1)
    raise NoTableFound(message='no Markdown delimiter row')


def parse_table(src, fmt):
    """Parses a table string of either format into a tree.

    :param str src: The table source.
    :param TableFormat|str fmt: The source format.
    :rtype: TableTree
    :return: The parsed table tree.
    """
    fmt = TableFormat.coerce(fmt)
    if fmt == TableFormat.HTML:
        return parse_html_table(src)
    return grid_to_tree(parse_markdown_table(src))


def _html_node(node):
    if node.label == TD:
        attrs = ''
        if node.rowspan > 1:
            attrs += f' rowspan="{node.rowspan}"'
        if node.colspan > 1:
            attrs += f' colspan="{node.colspan}"'
        return f'<td{attrs}>{html.escape(node.text, quote=False)}</td>'
    inner = ''.join(_html_node(child) for child in node.children)
    return f'<{node.label}>{inner}</{node.label}>'


def _markdown_row(cells):
    return '| ' + ' | '.join(cell.replace('|', '\\|') for cell in cells) + ' |'


def serialize(tree, fmt):
    """Renders a table tree in canonical form.

    HTML output has no whitespace between tags and only writes span attributes greater than 1. Markdown output
    always uses the first row as the header row, so trees with a different header block don't round trip.

    :param TableTree tree: The tree to render.
    :param TableFormat|str fmt: The target format.
    :rtype: str
    :return: The serialized table.
    """
    fmt = TableFormat.coerce(fmt)
    if fmt == TableFormat.HTML:
        return _html_node(tree.root)
    spanned = [node for node in tree.iter() if node.label == TD and (node.rowspan > 1 or node.colspan > 1)]
    if spanned:
        raise SpansNotRepresentable(message=f'{len(spanned)} spanning cell(s) in Markdown')
    grid = tree_to_grid(tree)
    if grid.n_rows == 0 or grid.n_cols == 0:
        raise EmptyGrid(message=f'{grid.n_rows} rows, {grid.n_cols} columns')
    lines = [_markdown_row(grid.cells[0]), '| ' + ' | '.join(['---'] * grid.n_cols) + ' |']
    lines.extend(_markdown_row(row) for row in grid.cells[1:])
    return '\n'.join(lines)
