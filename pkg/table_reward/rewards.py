"""This module hosts the reasoning and perception reward functions."""
import math
import re

from table_reward.reference import ABS_TOL, REL_TOL, AnswerMode, TableFormat, TaskType
from table_reward.teds import teds_from_strings

_ANSWER = re.compile(r'<answer>(.*?)</answer>', re.DOTALL)
_BLOCK = r'((?:(?!</?(?:think|answer)>).)*)'
_ENVELOPE = re.compile(rf'\A\s*<think>{_BLOCK}</think>\s*<answer>{_BLOCK}</answer>\s*\Z', re.DOTALL)
_NUMBER = re.compile(r'^[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?$')
_UNIT = re.compile(r'^[^\W\d][\w/^°.]*$')
_STRIPPED = str.maketrans('', '', ',$€£¥%')


class ModelOutput:
    """The full text generated by a policy for one prompt."""

    __slots__ = ['_raw']

    def __init__(self, raw):
        """Instantiates a new ModelOutput object.

        :param str raw: The generated text.
        """
        self._raw = str(raw)

    def __repr__(self):
        return f'ModelOutput({self._raw!r})'

    def __str__(self):
        return self._raw

    @property
    def raw(self):
        """The generated text."""
        return self._raw


class RewardBreakdown:
    """The accuracy and format components of a reasoning reward."""

    __slots__ = ['_accuracy', '_format']

    def __init__(self, accuracy, format):
        """Instantiates a new RewardBreakdown object.

        :param int accuracy: 1 if the answer is correct, otherwise 0.
        :param int format: 1 if the output follows the think/answer envelope, otherwise 0.
        """
        self._accuracy = int(accuracy)
        self._format = int(format)

    def __repr__(self):
        return f'RewardBreakdown(accuracy={self._accuracy}, format={self._format}, total={self.total})'

    def __eq__(self, other):
        if not isinstance(other, RewardBreakdown):
            return NotImplemented
        return (self._accuracy, self._format) == (other._accuracy, other._format)

    @property
    def accuracy(self):
        """The accuracy reward."""
        return self._accuracy

    @property
    def format(self):
        """The format reward."""
        return self._format

    @property
    def total(self):
        """The sum of the accuracy and format rewards."""
        return float(self._accuracy + self._format)

    def as_dict(self):
        """Provides the breakdown as a JSON serializable dictionary.

        :rtype: dict
        """
        return {'accuracy': self._accuracy, 'format': self._format, 'total': self.total}


class AnswerComparison:
    """The outcome of comparing a predicted answer with the golden answer."""

    __slots__ = ['_mode', '_matched', '_normalized_pred', '_normalized_gold']

    def __init__(self, mode, matched, normalized_pred, normalized_gold):
        """Instantiates a new AnswerComparison object.

        :param AnswerMode mode: The comparison that decided the outcome.
        :param bool matched: Whether the answers are equivalent.
        :param str normalized_pred: The predicted answer after normalization.
        :param str normalized_gold: The golden answer after normalization.
        """
        self._mode = AnswerMode.coerce(mode)
        self._matched = bool(matched)
        self._normalized_pred = normalized_pred
        self._normalized_gold = normalized_gold

    def __repr__(self):
        return (
            f'AnswerComparison(mode={self._mode.value}, matched={self._matched}, '
            f'normalized_pred={self._normalized_pred!r}, normalized_gold={self._normalized_gold!r})'
        )

    @property
    def mode(self):
        """The comparison mode."""
        return self._mode

    @property
    def matched(self):
        """Whether the answers are equivalent."""
        return self._matched

    @property
    def normalized_pred(self):
        """The normalized predicted answer."""
        return self._normalized_pred

    @property
    def normalized_gold(self):
        """The normalized golden answer."""
        return self._normalized_gold


def _raw(output):
    return output.raw if isinstance(output, ModelOutput) else str(output)


def extract_answer(output):
    """Extracts the content of the first complete answer tag pair.

    :param ModelOutput|str output: The generated text.
    :rtype: str|None
    :return: The trimmed answer or None if there is no complete answer tag pair.
    """
    match = _ANSWER.search(_raw(output))
    if match is None:
        return None
    return match.group(1).strip()


def format_reward(output):
    """Checks that the output is exactly one think block followed by one answer block.

    :param ModelOutput|str output: The generated text.
    :rtype: int
    :return: 1 if the envelope matches, otherwise 0.
    """
    return int(_ENVELOPE.fullmatch(_raw(output)) is not None)


def normalize_answer(answer):
    """Removes whitespace, thousands separators, currency and percent signs.

    :param str answer: The answer to normalize.
    :rtype: str
    """
    return ' '.join(str(answer).translate(_STRIPPED).split())


def _as_number(normalized, allow_unit):
    if _NUMBER.match(normalized):
        return float(normalized)
    if allow_unit:
        tokens = normalized.split(' ')
        if len(tokens) > 1 and _UNIT.match(tokens[-1]):
            return _as_number(' '.join(tokens[:-1]), allow_unit=False)
    return None


def _numbers(pred, gold):
    """Parses both answers as numbers, stripping a trailing unit only if both sides then parse."""
    first, second = _as_number(pred, False), _as_number(gold, False)
    if first is not None and second is not None:
        return first, second
    first, second = _as_number(pred, True), _as_number(gold, True)
    if first is not None and second is not None:
        return first, second
    return None


def _math_equal(pred, gold):
    from math_verify import parse, verify

    def wrap(answer):
        return answer if '$' in answer else f'${answer}$'

    try:
        return bool(verify(parse(wrap(gold)), parse(wrap(pred))))
    except Exception:
        return False


def compare_answers(pred, gold, mode=None):
    """Compares a predicted answer with the golden answer.

    Without a mode, answers that both parse as numbers are compared with a relative tolerance of 1e-6 and an
    absolute tolerance of 1e-9, everything else with case-insensitive string equality. The math mode compares
    symbolic expressions with math-verify.

    :param str pred: The predicted answer.
    :param str gold: The golden answer.
    :param AnswerMode|str|None mode: Forces a comparison mode.
    :rtype: AnswerComparison
    :return: The comparison outcome.
    """
    mode = AnswerMode.coerce(mode) if mode is not None else None
    if mode == AnswerMode.MATH_EXPR:
        pred, gold = str(pred).strip(), str(gold).strip()
        return AnswerComparison(mode, _math_equal(pred, gold), pred, gold)

    normalized_pred, normalized_gold = normalize_answer(pred), normalize_answer(gold)
    if mode in (None, AnswerMode.NUMERIC):
        numbers = _numbers(normalized_pred, normalized_gold)
        if numbers is not None:
            first, second = numbers
            if math.isfinite(first) and math.isfinite(second):
                matched = abs(first - second) <= max(ABS_TOL, REL_TOL * abs(second))
            else:
                # Overflowed answers only match the same infinity.
                matched = first == second
            return AnswerComparison(AnswerMode.NUMERIC, matched, normalized_pred, normalized_gold)
        if mode == AnswerMode.NUMERIC:
            return AnswerComparison(mode, False, normalized_pred, normalized_gold)
    matched = normalized_pred.casefold() == normalized_gold.casefold()
    return AnswerComparison(AnswerMode.EXACT_STRING, matched, normalized_pred, normalized_gold)


def accuracy_reward(output, gold, mode=None):
    """Rewards an output whose extracted answer equals the golden answer.

    :param ModelOutput|str output: The generated text.
    :param str gold: The golden answer.
    :param AnswerMode|str|None mode: Forces a comparison mode.
    :rtype: int
    :return: 1 if the answer matches, otherwise 0.
    """
    if not str(gold).strip():
        raise ValueError('The golden answer must not be empty.')
    answer = extract_answer(output)
    if answer is None:
        return 0
    return int(compare_answers(answer, gold, mode).matched)


def reasoning_reward(output, gold, mode=None):
    """Calculates the combined accuracy and format reward for a reasoning task.

    :param ModelOutput|str output: The generated text.
    :param str gold: The golden answer.
    :param AnswerMode|str|None mode: Forces a comparison mode.
    :rtype: RewardBreakdown
    """
    return RewardBreakdown(accuracy_reward(output, gold, mode), format_reward(output))


def perception_prediction(output):
    """Unwraps a perception output's answer envelope, leaving bare tables untouched.

    :param ModelOutput|str output: The generated text.
    :rtype: str
    """
    answer = extract_answer(output)
    return _raw(output) if answer is None else answer


def perception_reward(pred_src, gold_src, fmt):
    """Scores a predicted table against the golden table.

    :param str pred_src: The predicted table.
    :param str gold_src: The golden table.
    :param TableFormat|str fmt: The table format.
    :rtype: float
    :return: The TEDS similarity.
    """
    return teds_from_strings(pred_src, gold_src, fmt).similarity


def reward_record(record, mode=None):
    """Scores one batch record of either task.

    :param dict record: A record with id, output, gold, task and, for perception records, an optional format.
    :param AnswerMode|str|None mode: Forces a comparison mode for reasoning records.
    :rtype: dict
    :return: The id followed by the reward components and the total.
    """
    task = TaskType.coerce(record['task'])
    if task == TaskType.PERCEPTION:
        fmt = TableFormat.coerce(record.get('format') or TableFormat.MARKDOWN)
        similarity = perception_reward(perception_prediction(record['output']), record['gold'], fmt)
        return {'id': record['id'], 'similarity': similarity, 'total': similarity}
    breakdown = reasoning_reward(record['output'], record['gold'], mode)
    return {'id': record['id'], **breakdown.as_dict()}
