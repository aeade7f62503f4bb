"""This module hosts enums and other constants used by table-reward."""
import enum
from enum import Enum, unique


class EnumExt(Enum):
    """Extension for the builtin Enum class."""

    @classmethod
    def names(cls):
        """Provides a tuple of the enum names.

        :rtype: tuple[str]
        :return: A tuple of Enum names.
        """
        return tuple(cls.__members__)

    @classmethod
    def available(cls):
        """Provides the Enum values as a tuple.

        :rtype: tuple[Any]
        :return: A list of available Enum values.
        """
        return tuple([src.value for src in cls])

    @classmethod
    def values(cls):
        """An alias for the available property.

        :rtype: tuple[Any]
        :return: A list of available Enum values.
        """
        return cls.available()

    @classmethod
    def coerce(cls, value):
        """Looks up a member by member, value, or case-insensitive name.

        :param Any value: The member, value, or name to look up.
        :rtype: EnumExt
        :return: The matching Enum member.
        """
        if isinstance(value, cls):
            return value
        for member in cls:
            if value == member.value:
                return member
        if isinstance(value, str) and value.upper() in cls.__members__:
            return cls[value.upper()]
        raise ValueError(f'{value!r} is not one of {", ".join(str(v) for v in cls.available())}.')


@unique
class TableFormat(EnumExt):
    """Serialization formats for structured tables."""

    HTML = 'html'
    MARKDOWN = 'markdown'


@unique
class TaskType(EnumExt):
    """Training task a dataset record belongs to."""

    PERCEPTION = 'perception'
    REASONING = 'reasoning'


@unique
class AnswerMode(EnumExt):
    """How a predicted answer was compared against the golden answer."""

    EXACT_STRING = 'exact'
    NUMERIC = 'numeric'
    MATH_EXPR = 'math'


@unique
class DegeneracyPolicy(EnumExt):
    """What to do with a rollout group whose rewards are all equal."""

    ZERO_OUT = 'zero_out'
    SKIP = 'skip'


@unique
class OutputTypes(EnumExt):
    """Mapping of valid output type options to the corresponding Output subclass."""

    BASIC = 'Basic'
    TTY = 'Tty'
    SILENT = 'Silent'


@unique
class ExitCode(enum.IntEnum):
    """Valid table-reward exit codes."""

    PASSED = 0
    INPUT_ERROR = 1
    DATA_ERROR = 2
    INTERRUPTED = 4


@unique
class OutputMethod(enum.Enum):
    """Valid table-reward output methods."""

    JOB_START = 'start_job'
    JOB_END = 'end_job'
    SUMMARY = 'summary'
    RECORD_ERROR = 'record_error'
    ERROR = 'error'
    INFO = 'info'
    SKIP = 'skip'


# Node labels of a table tree. th is folded into td by the parsers.
TABLE = 'table'
THEAD = 'thead'
TBODY = 'tbody'
TR = 'tr'
TD = 'td'
LABELS = (TABLE, THEAD, TBODY, TR, TD)

# Pixel capacity of the Qwen2-VL vision encoder.
MODEL_MAX_PIXELS = 12_845_056
DEFAULT_MAX_PIXELS = MODEL_MAX_PIXELS // 8
DEFAULT_MAX_TARGET_TOKENS = 2048
DEFAULT_SAMPLE_SIZE = 8000

DEFAULT_GROUP_SIZE = 4
DEFAULT_CLIP_EPSILON = 0.2
DEFAULT_KL_BETA = 0.04
DEFAULT_HINT_PAIRS = 3
DEFAULT_LEARNING_RATE = 0.05
DEFAULT_SIM_STEPS = 30

REL_TOL = 1e-6
ABS_TOL = 1e-9

HINT_MARKER = 'Hints:'

PERCEPTION_PROMPT = (
    'A conversation between User and Assistant. The user asks a question, and the Assistant solves it. '
    'This task is a simple perception task, and the Assistant directly provides the answer within the '
    '<answer> </answer> tags. For example: <answer> answer here </answer>'
)

HINT_COMPLETION_PROMPT = (
    'A conversation between User and Assistant. The user asks a question, and the Assistant solves it. '
    'The assistant first thinks about the reasoning process in the mind and then provides the user with '
    'the answer. The reasoning process and answer are enclosed within <think> </think> and <answer> </answer> '
    'tags, respectively, i.e., <think> reasoning process here </think><answer> answer here without unit </answer>'
)

PERCEPTION_VARIANTS = (
    'Please read the table in this image and return a markdown-style reconstructed table in text.',
    'Take a look at the table in this image and provide me with the markdown representation of the table in '
    'text format.',
    'Read the shown table in this image and give me the reconstructed table in the markdown text format.',
    'Watch the table in this image and convert it into a Markdown table in the text form.',
    'Given a table image, can you convert the table into a Markdown table in text form?',
    'Reconstruct the table in this picture as a markdown-style table in text.',
    'Please review this table image and return a text representation of the table in the markdown format.',
    'Examine the table in the shown picture and generate a markdown text representation of the table.',
    'Watch this table and show a markdown-style reconstructed table in text.',
    'This picture illustrates a table. Please represent this table with the markdown format in text.',
    'Recognize the table in the presented picture and represent it in the markdown format.',
    'Recognize the table in this picture and return a markdown-style reconstructed table in text.',
    'Can you interpret the table in this image and return it as a markdown table in text?',
    'Look at the table in this image and reconstruct it as a markdown table in text format.',
    'Identify the table in this image and provide its markdown text representation.',
    'Please examine the table in this image and return it as a markdown table in text format.',
    'Can you read the table in this image and give me the markdown table in text?',
    'Please look at the table in this image and provide the markdown table in text format.',
)
