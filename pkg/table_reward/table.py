"""This module hosts the table tree and grid representations."""

from table_reward.exc import EmptyGrid
from table_reward.reference import LABELS, TABLE, TBODY, TD, THEAD, TR


class TableNode:
    """An immutable node of a table tree."""

    __slots__ = ['_label', '_text', '_rowspan', '_colspan', '_children']

    def __init__(self, label, text=None, rowspan=1, colspan=1, children=()):
        """Instantiates a new TableNode object.

        :param str label: One of table, thead, tbody, tr, td.
        :param str|None text: The cell text. Required for td nodes, forbidden otherwise.
        :param int rowspan: The number of rows a td spans.
        :param int colspan: The number of columns a td spans.
        :param children: The child nodes in order.
        """
        if label not in LABELS:
            raise ValueError(f'Invalid node label: {label}')
        if label == TD:
            if text is None:
                raise ValueError('A td node requires text.')
            if children:
                raise ValueError('A td node cannot have children.')
        elif text is not None:
            raise ValueError(f'A {label} node cannot have text.')
        if int(rowspan) < 1 or int(colspan) < 1:
            raise ValueError('Spans must be at least 1.')
        if label != TD and (rowspan != 1 or colspan != 1):
            raise ValueError(f'A {label} node cannot span.')
        self._label = label
        self._text = text
        self._rowspan = int(rowspan)
        self._colspan = int(colspan)
        self._children = tuple(children)

    def __repr__(self):
        if self._label == TD:
            return f'TableNode({self._label!r}, {self._text!r}, rowspan={self._rowspan}, colspan={self._colspan})'
        return f'TableNode({self._label!r}, children={len(self._children)})'

    def __eq__(self, other):
        if not isinstance(other, TableNode):
            return NotImplemented
        return (
            self._label == other._label
            and self._text == other._text
            and self._rowspan == other._rowspan
            and self._colspan == other._colspan
            and self._children == other._children
        )

    def __hash__(self):
        return hash((self._label, self._text, self._rowspan, self._colspan, self._children))

    @property
    def label(self):
        """The node label."""
        return self._label

    @property
    def text(self):
        """The cell text for td nodes, otherwise None."""
        return self._text

    @property
    def rowspan(self):
        """The number of rows the cell spans."""
        return self._rowspan

    @property
    def colspan(self):
        """The number of columns the cell spans."""
        return self._colspan

    @property
    def children(self):
        """The ordered child nodes."""
        return self._children

    def iter(self):
        """Yields the nodes of the subtree in pre-order.

        :rtype: Iterator[TableNode]
        """
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    @property
    def size(self):
        """The number of nodes in the subtree."""
        return sum(1 for _ in self.iter())


class TableTree:
    """A table represented as a rooted, ordered, labeled tree."""

    __slots__ = ['_root']

    def __init__(self, root):
        """Instantiates a new TableTree object.

        :param TableNode root: The root node. Must be labeled table.
        """
        if not isinstance(root, TableNode) or root.label != TABLE:
            raise ValueError('The root of a table tree must be a table node.')
        self._root = root

    def __repr__(self):
        return f'TableTree(size={self.size})'

    def __eq__(self, other):
        if not isinstance(other, TableTree):
            return NotImplemented
        return self._root == other._root

    def __hash__(self):
        return hash(self._root)

    @property
    def root(self):
        """The table node at the root of the tree."""
        return self._root

    @property
    def size(self):
        """The number of nodes in the tree."""
        return self._root.size

    def iter(self):
        """Yields every node of the tree in pre-order."""
        return self._root.iter()

    def rows(self):
        """Provides the tr nodes in document order.

        :rtype: list[TableNode]
        """
        return [node for node in self.iter() if node.label == TR]


class GridTable:
    """A rectangular grid of cell strings with a leading block of header rows."""

    __slots__ = ['_cells', '_header_rows']

    def __init__(self, cells, header_rows=0):
        """Instantiates a new GridTable object.

        :param list[list[str]] cells: The cell strings in row-major order.
        :param int header_rows: How many of the leading rows are header rows.
        """
        cells = tuple(tuple(str(cell) for cell in row) for row in cells)
        if cells and len({len(row) for row in cells}) != 1:
            raise ValueError('Every grid row must have the same number of columns.')
        if not 0 <= header_rows <= len(cells):
            raise ValueError(f'header_rows must be between 0 and {len(cells)}.')
        self._cells = cells
        self._header_rows = int(header_rows)

    def __repr__(self):
        return f'GridTable(n_rows={self.n_rows}, n_cols={self.n_cols}, header_rows={self.header_rows})'

    def __eq__(self, other):
        if not isinstance(other, GridTable):
            return NotImplemented
        return self._cells == other._cells and self._header_rows == other._header_rows

    def __hash__(self):
        return hash((self._cells, self._header_rows))

    @property
    def cells(self):
        """The cell strings as a tuple of row tuples."""
        return self._cells

    @property
    def header_rows(self):
        """The number of leading header rows."""
        return self._header_rows

    @property
    def n_rows(self):
        """The number of rows."""
        return len(self._cells)

    @property
    def n_cols(self):
        """The number of columns."""
        return len(self._cells[0]) if self._cells else 0


def tree_size(tree):
    """Counts the nodes of a table tree.

    :param TableTree|TableNode tree: The tree to measure.
    :rtype: int
    :return: The node count.
    """
    return tree.size


def _row(cells):
    return TableNode(TR, children=[TableNode(TD, text=cell) for cell in cells])


def grid_to_tree(grid):
    """Converts a grid into a table tree without spans.

    :param GridTable grid: The grid to convert.
    :rtype: TableTree
    :return: The equivalent table tree.
    """
    if grid.n_rows == 0 or grid.n_cols == 0:
        raise EmptyGrid(message=f'{grid.n_rows} rows, {grid.n_cols} columns')
    rows = [_row(cells) for cells in grid.cells]
    if grid.header_rows == 0:
        return TableTree(TableNode(TABLE, children=rows))
    sections = [TableNode(THEAD, children=rows[:grid.header_rows])]
    if grid.n_rows > grid.header_rows:
        sections.append(TableNode(TBODY, children=rows[grid.header_rows:]))
    return TableTree(TableNode(TABLE, children=sections))


def tree_to_grid(tree):
    """Expands a table tree into a grid.

    Spanned cells are filled with the text of the cell that spans them. Rows shorter than the widest row
    are padded with empty strings.

    :param TableTree tree: The tree to expand.
    :rtype: GridTable
    :return: The expanded grid.
    """
    header_rows = 0
    rows = []
    for section in tree.root.children:
        if section.label == TR:
            rows.append(section)
        else:
            section_rows = [node for node in section.children if node.label == TR]
            if section.label == THEAD:
                header_rows += len(section_rows)
            rows.extend(section_rows)

    occupied = {}
    width = 0
    for r, row in enumerate(rows):
        c = 0
        for cell in row.children:
            while (r, c) in occupied:
                c += 1
            for dr in range(cell.rowspan):
                for dc in range(cell.colspan):
                    occupied.setdefault((r + dr, c + dc), cell.text)
            c += cell.colspan
        width = max(width, c)

    n_rows = max([r for r, _ in occupied] + [len(rows) - 1]) + 1 if rows else 0
    width = max([c for _, c in occupied] + [width - 1]) + 1 if occupied else 0
    cells = [[occupied.get((r, c), '') for c in range(width)] for r in range(n_rows)]
    return GridTable(cells, header_rows=min(header_rows, n_rows))
