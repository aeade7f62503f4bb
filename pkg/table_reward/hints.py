"""This module hosts the hint-completion splitter for reasoning records."""
import numpy as np

from table_reward.dataset import DatasetRecord
from table_reward.exc import SolutionTooShort
from table_reward.reference import DEFAULT_HINT_PAIRS, HINT_MARKER, TaskType


class SteppedSolution:
    """A question with a multi-step solution and its final answer."""

    __slots__ = ['_question', '_steps', '_gold_answer', '_image_ref', '_image_width', '_image_height',
                 '_source_dataset', '_id']

    def __init__(
            self,
            question,
            steps,
            gold_answer,
            image_ref='',
            image_width=None,
            image_height=None,
            source_dataset='',
            id='',
    ):
        """Instantiates a new SteppedSolution object.

        :param str question: The question.
        :param list[str] steps: The ordered solution steps. At least one, none empty.
        :param str gold_answer: The final answer.
        :param str image_ref: A reference to the table image.
        :param int|None image_width: The image width in pixels.
        :param int|None image_height: The image height in pixels.
        :param str source_dataset: The dataset the solution came from.
        :param str id: The solution id.
        """
        steps = tuple(str(step) for step in steps)
        if not steps:
            raise ValueError('A solution needs at least one step.')
        if any(not step.strip() for step in steps):
            raise ValueError('Solution steps must not be empty.')
        self._question = str(question)
        self._steps = steps
        self._gold_answer = str(gold_answer)
        self._image_ref = str(image_ref or '')
        self._image_width = image_width
        self._image_height = image_height
        self._source_dataset = str(source_dataset or '')
        self._id = str(id or '')

    def __repr__(self):
        return f'SteppedSolution(id={self._id!r}, steps={len(self._steps)})'

    @property
    def question(self):
        """The question."""
        return self._question

    @property
    def steps(self):
        """The ordered solution steps."""
        return self._steps

    @property
    def gold_answer(self):
        """The final answer."""
        return self._gold_answer

    @property
    def image_ref(self):
        """A reference to the table image."""
        return self._image_ref

    @property
    def image_width(self):
        """The image width in pixels."""
        return self._image_width

    @property
    def image_height(self):
        """The image height in pixels."""
        return self._image_height

    @property
    def source_dataset(self):
        """The dataset the solution came from."""
        return self._source_dataset

    @property
    def id(self):
        """The solution id."""
        return self._id

    @classmethod
    def from_dict(cls, values):
        """Creates a solution from a JSONL object with image, question, steps, and answer.

        :param dict values: The solution fields.
        :rtype: SteppedSolution
        """
        return cls(
            question=values['question'],
            steps=values['steps'],
            gold_answer=values['answer'],
            image_ref=values.get('image', ''),
            image_width=values.get('image_width'),
            image_height=values.get('image_height'),
            source_dataset=values.get('source_dataset', ''),
            id=values.get('id', ''),
        )


def build_augmented_question(question, hint_steps):
    """Appends the hint steps to a question below a hint marker.

    :param str question: The question.
    :param list[str] hint_steps: The leading solution steps.
    :rtype: str
    """
    return '\n'.join([question, HINT_MARKER, *hint_steps])


class HintCompletionPair:
    """A solution split into the hint given with the question and the completion the policy must produce."""

    __slots__ = ['_image_ref', '_question', '_hint_steps', '_completion_steps', '_split_j', '_gold_answer',
                 '_image_width', '_image_height', '_source_dataset', '_solution_id']

    def __init__(
            self,
            image_ref,
            question,
            hint_steps,
            completion_steps,
            split_j,
            gold_answer,
            image_width=None,
            image_height=None,
            source_dataset='',
            solution_id='',
    ):
        """Instantiates a new HintCompletionPair object.

        :param str image_ref: A reference to the table image.
        :param str question: The original question.
        :param list[str] hint_steps: The first split_j steps.
        :param list[str] completion_steps: The remaining steps.
        :param int split_j: The number of hint steps.
        :param str gold_answer: The final answer.
        :param int|None image_width: The image width in pixels.
        :param int|None image_height: The image height in pixels.
        :param str source_dataset: The dataset the solution came from.
        :param str solution_id: The id of the source solution.
        """
        hint_steps, completion_steps = tuple(hint_steps), tuple(completion_steps)
        if not 1 <= split_j or len(hint_steps) != split_j or not completion_steps:
            raise ValueError(
                f'Invalid split: j={split_j}, {len(hint_steps)} hint and {len(completion_steps)} completion steps.'
            )
        self._image_ref = str(image_ref or '')
        self._question = str(question)
        self._hint_steps = hint_steps
        self._completion_steps = completion_steps
        self._split_j = int(split_j)
        self._gold_answer = str(gold_answer)
        self._image_width = image_width
        self._image_height = image_height
        self._source_dataset = str(source_dataset or '')
        self._solution_id = str(solution_id or '')

    def __repr__(self):
        return f'HintCompletionPair(split_j={self._split_j}, completion={len(self._completion_steps)})'

    @property
    def image_ref(self):
        """A reference to the table image."""
        return self._image_ref

    @property
    def question(self):
        """The original question."""
        return self._question

    @property
    def augmented_question(self):
        """The question followed by the hint steps."""
        return build_augmented_question(self._question, self._hint_steps)

    @property
    def hint_steps(self):
        """The hint steps."""
        return self._hint_steps

    @property
    def completion_steps(self):
        """The completion steps."""
        return self._completion_steps

    @property
    def split_j(self):
        """The number of hint steps."""
        return self._split_j

    @property
    def gold_answer(self):
        """The final answer."""
        return self._gold_answer

    @property
    def image_width(self):
        """The image width in pixels."""
        return self._image_width

    @property
    def image_height(self):
        """The image height in pixels."""
        return self._image_height

    @property
    def source_dataset(self):
        """The dataset the solution came from."""
        return self._source_dataset

    @property
    def solution_id(self):
        """The id of the source solution."""
        return self._solution_id

    def as_dict(self):
        """Provides the pair as a JSON serializable dictionary.

        :rtype: dict
        """
        return {
            'image': self._image_ref,
            'question_aug': self.augmented_question,
            'hint': list(self._hint_steps),
            'completion': list(self._completion_steps),
            'split_j': self._split_j,
            'answer': self._gold_answer,
        }


def split_solution(sol, n_pairs=DEFAULT_HINT_PAIRS, rng=None):
    """Splits a solution at distinct, uniformly sampled step boundaries.

    When the solution has fewer interior boundaries than n_pairs, every boundary is used once.

    :param SteppedSolution sol: The solution to split.
    :param int n_pairs: The number of pairs to create.
    :param numpy.random.Generator|int|None rng: A generator or a seed.
    :rtype: list[HintCompletionPair]
    :return: The pairs ordered by split point.
    """
    if n_pairs < 1:
        raise ValueError(f'n_pairs must be at least 1, got {n_pairs}')
    steps = sol.steps
    m = len(steps)
    if m < 2:
        raise SolutionTooShort(message=f'{m} step(s), at least 2 are required')
    boundaries = np.arange(1, m)
    if len(boundaries) > n_pairs:
        boundaries = np.sort(np.random.default_rng(rng).choice(boundaries, size=n_pairs, replace=False))
    return [
        HintCompletionPair(
            image_ref=sol.image_ref,
            question=sol.question,
            hint_steps=steps[:j],
            completion_steps=steps[j:],
            split_j=int(j),
            gold_answer=sol.gold_answer,
            image_width=sol.image_width,
            image_height=sol.image_height,
            source_dataset=sol.source_dataset,
            solution_id=sol.id,
        )
        for j in boundaries
    ]


def solution_rng(seed, index):
    """Derives the generator of one solution from the run seed and the solution's position.

    :param int seed: The run seed.
    :param int index: The position of the solution in the input.
    :rtype: numpy.random.Generator
    """
    return np.random.default_rng([int(seed), int(index)])


def split_solutions(solutions, n_pairs=DEFAULT_HINT_PAIRS, seed=0):
    """Splits many solutions with per-solution generators.

    :param list[SteppedSolution] solutions: The solutions to split.
    :param int n_pairs: The number of pairs per solution.
    :param int seed: The run seed.
    :rtype: tuple[list[HintCompletionPair], list[int]]
    :return: The pairs in input order and the positions of solutions too short to split.
    """
    pairs, skipped = [], []
    for index, sol in enumerate(solutions):
        try:
            pairs.extend(split_solution(sol, n_pairs, solution_rng(seed, index)))
        except SolutionTooShort:
            skipped.append(index)
    return pairs, skipped


def assemble_reasoning_record(pair, position=None):
    """Creates a reasoning record whose target completes the hint in the think/answer envelope.

    The record id is the solution id and the split point. A solution without an id falls back to its image and
    its input position, so several questions on one table keep distinct ids.

    :param HintCompletionPair pair: The hint-completion pair.
    :param int|None position: The position of the source solution in the input.
    :rtype: DatasetRecord
    """
    base = pair.solution_id
    if not base:
        base = pair.image_ref or 'solution'
        if position is not None:
            base = f'{base}-{position}'
    completion = '\n'.join(pair.completion_steps)
    return DatasetRecord(
        id=f'{base}-j{pair.split_j}',
        image_width=pair.image_width,
        image_height=pair.image_height,
        question=pair.augmented_question,
        target=f'<think>{completion}</think><answer>{pair.gold_answer}</answer>',
        task=TaskType.REASONING,
        source_dataset=pair.source_dataset,
        image=pair.image_ref,
    )
