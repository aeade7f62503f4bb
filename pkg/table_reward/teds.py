"""This module hosts the tree edit distance based similarity (TEDS) score for tables."""
import nltk
import zss

from table_reward.exc import GoldUnparseable, TableParseError
from table_reward.reference import TD
from table_reward.parsing import parse_table


def normalized_levenshtein(first, second):
    """Calculates the Levenshtein distance divided by the length of the longer string.

    :param str first: The first string.
    :param str second: The second string.
    :rtype: float
    :return: A value between 0 and 1. Two empty strings have a distance of 0.
    """
    longest = max(len(first), len(second))
    if longest == 0:
        return 0.
    return nltk.edit_distance(first, second) / longest


class TedsCostModel:
    """Edit operation costs for table trees.

    Subclass and override the methods to plug in a different cost model.
    """

    insert_cost = 1.
    delete_cost = 1.

    def insert(self, node):
        """The cost of inserting a node.

        :param TableNode node: The inserted node.
        :rtype: float
        """
        return self.insert_cost

    def delete(self, node):
        """The cost of deleting a node.

        :param TableNode node: The deleted node.
        :rtype: float
        """
        return self.delete_cost

    def rename(self, first, second):
        """The cost of relabeling one node into another.

        Differing labels cost 1. Cells cost the normalized Levenshtein distance of their text, plus 1 when the
        spans differ, capped at 1.

        :param TableNode first: The source node.
        :param TableNode second: The target node.
        :rtype: float
        """
        if first.label != second.label:
            return 1.
        if first.label != TD:
            return 0.
        cost = normalized_levenshtein(first.text, second.text)
        if first.rowspan != second.rowspan or first.colspan != second.colspan:
            cost = min(1., cost + 1.)
        return cost


class TedsScore:
    """The result of comparing a predicted table against a golden table."""

    __slots__ = ['_similarity', '_distance', '_max_size']

    def __init__(self, similarity, distance, max_size):
        """Instantiates a new TedsScore object.

        :param float similarity: The similarity between 0 and 1.
        :param float distance: The tree edit distance.
        :param int max_size: The node count of the larger tree.
        """
        self._similarity = float(similarity)
        self._distance = float(distance)
        self._max_size = int(max_size)

    def __repr__(self):
        return f'TedsScore(similarity={self._similarity:.4f}, distance={self._distance}, max_size={self._max_size})'

    @property
    def similarity(self):
        """The similarity between 0 and 1."""
        return self._similarity

    @property
    def distance(self):
        """The tree edit distance."""
        return self._distance

    @property
    def max_size(self):
        """The node count of the larger tree."""
        return self._max_size

    def as_dict(self):
        """Provides the score as a JSON serializable dictionary.

        :rtype: dict
        """
        return {'similarity': self._similarity, 'distance': self._distance, 'max_size': self._max_size}


def _children(node):
    return list(node.children)


def tree_edit_distance(first, second, cost=None):
    """Calculates the exact ordered tree edit distance with the Zhang-Shasha algorithm.

    :param TableTree first: The source tree.
    :param TableTree second: The target tree.
    :param TedsCostModel|None cost: The cost model. The default model is used when None.
    :rtype: float
    :return: The minimum total cost of an edit script turning first into second.
    """
    cost = cost or TedsCostModel()
    return float(
        zss.distance(
            first.root,
            second.root,
            _children,
            insert_cost=cost.insert,
            remove_cost=cost.delete,
            update_cost=cost.rename,
        )
    )


def teds(pred, gold, cost=None):
    """Scores a predicted table tree against a golden table tree.

    :param TableTree pred: The predicted table.
    :param TableTree gold: The golden table.
    :param TedsCostModel|None cost: The cost model.
    :rtype: TedsScore
    :return: The similarity score.
    """
    max_size = max(pred.size, gold.size)
    distance = tree_edit_distance(pred, gold, cost)
    similarity = min(1., max(0., 1. - distance / max_size))
    return TedsScore(similarity, distance, max_size)


def teds_from_strings(pred_src, gold_src, fmt, cost=None):
    """Parses and scores a predicted table string against a golden table string.

    A prediction that can't be parsed scores 0.

    :param str pred_src: The predicted table.
    :param str gold_src: The golden table.
    :param TableFormat|str fmt: The format of both strings.
    :param TedsCostModel|None cost: The cost model.
    :rtype: TedsScore
    :return: The similarity score.
    """
    try:
        gold = parse_table(gold_src, fmt)
    except TableParseError as err:
        raise GoldUnparseable(exception=err)
    try:
        pred = parse_table(pred_src, fmt)
    except TableParseError:
        return TedsScore(0., gold.size, gold.size)
    return teds(pred, gold, cost)
