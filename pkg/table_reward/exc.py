"""This module hosts the table-reward exceptions."""


class TableRewardException(Exception):
    """table-reward base exception class."""

    msg = 'table-reward error'

    def __init__(self, exception=None, message=''):
        """Instantiates a TableRewardException object.

        :param Exception exception: An exception to wrap.
        :param str message: An error message to display.
        """
        if exception:
            super().__init__(f'{self.msg}: {str(exception)}')
        elif message:
            super().__init__(f'{self.msg}: {message}')
        else:
            super().__init__(f'{self.msg}')


class EmptyGrid(TableRewardException):
    """A grid without rows or columns cannot become a table tree."""

    msg = 'Grid has no rows or columns'


class TableParseError(TableRewardException):
    """A table string could not be parsed."""

    msg = 'Table parsing failed'


class NoTableFound(TableParseError):
    """The source string doesn't contain a table."""

    msg = 'No table found'


class MalformedMarkup(TableParseError):
    """The table markup is structurally broken, i.e. the table element is never closed."""

    msg = 'Malformed table markup'


class SpansNotRepresentable(TableRewardException):
    """The table has row or column spans that the target format can't express."""

    msg = 'Spans cannot be represented in this format'


class GoldUnparseable(TableRewardException):
    """The golden table of a dataset record could not be parsed."""

    msg = 'Gold table is unparseable'


class GroupTooSmall(TableRewardException):
    """A rollout group needs at least two outputs for relative advantages."""

    msg = 'Rollout group is too small'


class DegenerateGroupSkipped(TableRewardException):
    """Every reward in the group is equal and the skip policy is active."""

    msg = 'Degenerate rollout group skipped'


class SolutionTooShort(TableRewardException):
    """A solution needs at least two steps to be split into a hint and a completion."""

    msg = 'Solution is too short to split'


class DomainError(TableRewardException):
    """A numeric argument is outside of its mathematical domain."""

    msg = 'Value outside of domain'


class ValidationError(TableRewardException):
    """Parameter validation failed."""

    msg = 'Validation failed'


class RecordSchemaError(TableRewardException):
    """A JSONL record doesn't match the expected schema."""

    msg = 'Record schema violation'

    def __init__(self, exception=None, message='', line_number=None):
        """Instantiates a RecordSchemaError object.

        :param Exception exception: An exception to wrap.
        :param str message: An error message to display.
        :param int|None line_number: The 1-based line number of the offending record.
        """
        self.line_number = line_number
        if line_number is not None:
            detail = message or (str(exception) if exception else 'invalid record')
            message = f'line {line_number}: {detail}'
            exception = None
        super().__init__(exception=exception, message=message)
