"""This module hosts the dataset records, filters, and table-first sampling."""
from nltk.tokenize import WhitespaceTokenizer
import numpy as np

from table_reward.exc import ValidationError
from table_reward.reference import (
    DEFAULT_MAX_PIXELS,
    DEFAULT_MAX_TARGET_TOKENS,
    DEFAULT_SAMPLE_SIZE,
    PERCEPTION_VARIANTS,
    TaskType,
)

_TOKENIZER = WhitespaceTokenizer()


def whitespace_token_count(text):
    """Counts whitespace delimited tokens.

    :param str text: The text to count.
    :rtype: int
    """
    return len(_TOKENIZER.tokenize(text))


def _dimension(value, name):
    if value is None:
        return None
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise ValueError(f'{name} must be a positive integer, got {value!r}')
    return int(value)


class DatasetRecord:
    """One training example: a table image, a question, and the expected output."""

    __slots__ = ['_id', '_image_width', '_image_height', '_question', '_target', '_task', '_source_dataset', '_image']

    def __init__(self, id, image_width, image_height, question, target, task, source_dataset='', image=''):
        """Instantiates a new DatasetRecord object.

        :param str id: The record id.
        :param int|None image_width: The image width in pixels, None if unknown.
        :param int|None image_height: The image height in pixels, None if unknown.
        :param str question: The prompt question.
        :param str target: The expected output. Must not be empty.
        :param TaskType|str task: The training task.
        :param str source_dataset: The dataset the record came from.
        :param str image: A reference to the table image.
        """
        if not str(target).strip():
            raise ValueError(f'Record {id} has an empty target.')
        self._id = str(id)
        self._image_width = _dimension(image_width, 'image_width')
        self._image_height = _dimension(image_height, 'image_height')
        self._question = str(question)
        self._target = str(target)
        self._task = TaskType.coerce(task)
        self._source_dataset = str(source_dataset or '')
        self._image = str(image or '')

    def __repr__(self):
        return f'DatasetRecord(id={self._id!r}, task={self._task.value}, pixels={self.pixels})'

    def __eq__(self, other):
        if not isinstance(other, DatasetRecord):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    @property
    def id(self):
        """The record id."""
        return self._id

    @property
    def image_width(self):
        """The image width in pixels."""
        return self._image_width

    @property
    def image_height(self):
        """The image height in pixels."""
        return self._image_height

    @property
    def pixels(self):
        """The total pixel count or None if the dimensions are unknown."""
        if self._image_width is None or self._image_height is None:
            return None
        return self._image_width * self._image_height

    @property
    def question(self):
        """The prompt question."""
        return self._question

    @property
    def target(self):
        """The expected output."""
        return self._target

    @property
    def task(self):
        """The training task."""
        return self._task

    @property
    def source_dataset(self):
        """The dataset the record came from."""
        return self._source_dataset

    @property
    def image(self):
        """A reference to the table image."""
        return self._image

    @property
    def table_key(self):
        """Identifies the table the record asks about. Falls back to the id when there is no image."""
        return self._image or self._id

    @classmethod
    def from_dict(cls, values):
        """Creates a record from a JSONL object.

        :param dict values: The record fields.
        :rtype: DatasetRecord
        """
        return cls(
            id=values['id'],
            image_width=values.get('image_width'),
            image_height=values.get('image_height'),
            question=values.get('question', ''),
            target=values['target'],
            task=values['task'],
            source_dataset=values.get('source_dataset', ''),
            image=values.get('image', ''),
        )

    def as_dict(self):
        """Provides the record as a JSON serializable dictionary.

        :rtype: dict
        """
        return {
            'id': self._id,
            'image': self._image,
            'image_width': self._image_width,
            'image_height': self._image_height,
            'question': self._question,
            'target': self._target,
            'task': self._task.value,
            'source_dataset': self._source_dataset,
        }


class FilterConfig:
    """Thresholds and sample size of the dataset pipeline."""

    __slots__ = ['_max_pixels', '_max_target_tokens', '_sample_size', '_seed']

    def __init__(
            self,
            max_pixels=DEFAULT_MAX_PIXELS,
            max_target_tokens=DEFAULT_MAX_TARGET_TOKENS,
            sample_size=DEFAULT_SAMPLE_SIZE,
            seed=0,
    ):
        """Instantiates a new FilterConfig object.

        :param int max_pixels: The largest pixel count kept.
        :param int max_target_tokens: The largest perception target token count kept.
        :param int sample_size: The number of records to sample.
        :param int seed: The random seed of the sampler.
        """
        for name, value in (
                ('max_pixels', max_pixels), ('max_target_tokens', max_target_tokens), ('sample_size', sample_size)
        ):
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ValidationError(message=f'{name} must be a positive integer, got {value!r}')
        if int(seed) < 0:
            raise ValidationError(message=f'seed must not be negative, got {seed!r}')
        self._max_pixels = int(max_pixels)
        self._max_target_tokens = int(max_target_tokens)
        self._sample_size = int(sample_size)
        self._seed = int(seed)

    def __repr__(self):
        return (
            f'FilterConfig(max_pixels={self._max_pixels}, max_target_tokens={self._max_target_tokens}, '
            f'sample_size={self._sample_size}, seed={self._seed})'
        )

    @property
    def max_pixels(self):
        """The largest pixel count kept."""
        return self._max_pixels

    @property
    def max_target_tokens(self):
        """The largest perception target token count kept."""
        return self._max_target_tokens

    @property
    def sample_size(self):
        """The number of records to sample."""
        return self._sample_size

    @property
    def seed(self):
        """The random seed of the sampler."""
        return self._seed

    @classmethod
    def from_dict(cls, values):
        """Creates a config from the filter section of a config file.

        :param dict|None values: The config values. Missing keys fall back to the defaults.
        :rtype: FilterConfig
        """
        return cls(**(values or {}))

    def as_dict(self):
        """Provides the config as a JSON serializable dictionary.

        :rtype: dict
        """
        return {
            'max_pixels': self._max_pixels,
            'max_target_tokens': self._max_target_tokens,
            'sample_size': self._sample_size,
            'seed': self._seed,
        }


def pixel_filter(records, cfg):
    """Drops records whose image has more pixels than the threshold.

    Records without known dimensions are kept.

    :param list[DatasetRecord] records: The records to filter.
    :param FilterConfig cfg: The filter config.
    :rtype: tuple[list[DatasetRecord], list[DatasetRecord]]
    :return: The kept and the dropped records.
    """
    kept, dropped = [], []
    for record in records:
        if record.pixels is not None and record.pixels > cfg.max_pixels:
            dropped.append(record)
        else:
            kept.append(record)
    return kept, dropped


def length_filter(records, cfg, token_counter=whitespace_token_count):
    """Drops perception records whose target has more tokens than the threshold.

    Reasoning records always pass.

    :param list[DatasetRecord] records: The records to filter.
    :param FilterConfig cfg: The filter config.
    :param Callable[[str], int] token_counter: Counts the tokens of a target.
    :rtype: tuple[list[DatasetRecord], list[DatasetRecord]]
    :return: The kept and the dropped records.
    """
    kept, dropped = [], []
    for record in records:
        if record.task == TaskType.PERCEPTION and token_counter(record.target) > cfg.max_target_tokens:
            dropped.append(record)
        else:
            kept.append(record)
    return kept, dropped


def sample_records(records, cfg):
    """Samples tables first, then their questions, until the sample size is reached.

    :param list[DatasetRecord] records: The records to sample from.
    :param FilterConfig cfg: The filter config.
    :rtype: list[DatasetRecord]
    :return: At most sample_size records in sampled order.
    """
    tables = {}
    for record in records:
        tables.setdefault(record.table_key, []).append(record)
    groups = list(tables.values())
    rng = np.random.default_rng(cfg.seed)
    sampled = []
    for table in rng.permutation(len(groups)):
        questions = groups[table]
        for question in rng.permutation(len(questions)):
            if len(sampled) == cfg.sample_size:
                return sampled
            sampled.append(questions[question])
    return sampled


def make_perception_records(images, variants=PERCEPTION_VARIANTS, seed=0):
    """Pairs every table image with a uniformly chosen instruction variant.

    :param list[dict] images: Objects with image, table, and optionally id, image_width, image_height and
        source_dataset.
    :param list[str] variants: The instruction variants.
    :param int seed: The random seed.
    :rtype: list[DatasetRecord]
    """
    variants = list(variants)
    if not variants:
        raise ValidationError(message='at least one instruction variant is required')
    choices = np.random.default_rng(seed).integers(len(variants), size=len(images))
    return [
        DatasetRecord(
            id=image.get('id') or image['image'],
            image_width=image.get('image_width'),
            image_height=image.get('image_height'),
            question=variants[choice],
            target=image['table'],
            task=TaskType.PERCEPTION,
            source_dataset=image.get('source_dataset', ''),
            image=image['image'],
        )
        for image, choice in zip(images, choices)
    ]


def run_pipeline(records, cfg, token_counter=whitespace_token_count):
    """Runs the pixel filter, the length filter and the sampler in order.

    :param list[DatasetRecord] records: The input records.
    :param FilterConfig cfg: The filter config.
    :param Callable[[str], int] token_counter: Counts the tokens of a target.
    :rtype: tuple[list[DatasetRecord], dict]
    :return: The sampled records and a summary of the counts.
    """
    records = list(records)
    kept, dropped_pixel = pixel_filter(records, cfg)
    kept, dropped_length = length_filter(kept, cfg, token_counter)
    sampled = sample_records(kept, cfg)
    summary = {
        'input_count': len(records),
        'kept': len(kept),
        'dropped_pixel': len(dropped_pixel),
        'dropped_length': len(dropped_length),
        'sampled': len(sampled),
    }
    return sampled, summary
