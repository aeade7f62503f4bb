"""Module for defining table-reward console output.

Standard output carries data, so every method here writes to standard error.
"""

from datetime import datetime
import sys

from colorama import Fore, init, Style

from table_reward import __version__ as version
from table_reward.reference import ExitCode, OutputMethod


def _stats(stats):
    return ', '.join(
        f'{key}={value:.4f}' if isinstance(value, float) else f'{key}={value}' for key, value in stats.items()
    )


class Output:
    """Interface for defining output methods."""

    def __init__(self):
        """Instantiates a new Output class."""
        self.timer = None

    def start_job(self, *args, **kwargs):
        """Indicates the beginning of a command."""
        raise NotImplementedError

    def end_job(self, *args, **kwargs):
        """Indicates the end of a command."""
        raise NotImplementedError

    def summary(self, *args, **kwargs):
        """Reports the aggregate results of a command."""
        raise NotImplementedError

    def record_error(self, *args, **kwargs):
        """Reports a record that couldn't be processed."""
        raise NotImplementedError

    def error(self, *args, **kwargs):
        """Communicates an error message."""
        raise NotImplementedError

    def info(self, *args, **kwargs):
        """Communicates a general information message."""
        raise NotImplementedError

    def skip(self, *args, **kwargs):
        """Communicates a skipping message."""
        raise NotImplementedError

    @staticmethod
    def _display(line):
        """Prints a message to stderr.

        :param str line: The message to print.
        :return: None
        """
        print(line, file=sys.stderr, flush=True)

    def log(self, method, *args, **kwargs):
        """Generic method for calling valid output methods.

        :param str|table_reward.reference.OutputMethod method: The output method to use.
        :param args: Optional arguments to pass to the output method.
        :param kwargs: Optional kwargs to pass to the output method.
        :return: None
        """
        if isinstance(method, OutputMethod):
            method = method.value
        func = getattr(self, method)
        func(*args, **kwargs)


class Basic(Output):
    """Timestamped plain text output for logs and CI."""

    @staticmethod
    def _line(level, msg):
        return f'{datetime.now().isoformat()} table-reward [ {level:<5} ] {msg}'

    def start_job(self, command=''):
        """Indicates the beginning of a command.

        :param str command: The command name.
        :return: None
        """
        message = f'version {version}'
        if command:
            message = f'{message} {command}'
        self._display(self._line('INFO', message))
        self.timer = datetime.now()

    def end_job(self, status_code=ExitCode.PASSED):
        """Indicates the end of a command.

        :param int status_code: The exit code of the command.
        :return: None
        """
        message = 'Finished'
        if self.timer:
            delta = datetime.now() - self.timer
            message = f'{message} in {delta.total_seconds():.3f}'
        message = f'{message} with exit code {int(status_code)}'
        self._display(self._line('INFO', message))

    def summary(self, title, stats):
        """Reports the aggregate results of a command.

        :param str title: What the numbers describe.
        :param dict stats: The named numbers.
        :return: None
        """
        self._display(self._line('INFO', f'{title}: {_stats(stats)}'))

    def record_error(self, location, err):
        """Reports a record that couldn't be processed.

        :param str|int location: The record id or line number.
        :param str|Exception err: The reason.
        :return: None
        """
        self._display(self._line('ERROR', f'{location}: {err}'))

    def error(self, err):
        """Communicates an error message.

        :param str|Exception err: The error message to display.
        :return: None
        """
        self._display(self._line('ERROR', err))

    def info(self, msg):
        """Communicates a general information message.

        :param str msg: The message to print.
        :return: None
        """
        self._display(self._line('INFO', str(msg).rstrip()))

    def skip(self, msg):
        """Communicates a skipping message.

        :param str msg: The message to print.
        :return: None
        """
        self._display(self._line('SKIP', str(msg).rstrip()))


class Tty(Output):
    """Fancy output when using a Terminal."""

    def __init__(self):
        """Instantiates a new Tty class."""
        super().__init__()
        init()

    def start_job(self, command=''):
        """Indicates the beginning of a command.

        :param str command: The command name.
        :return: None
        """
        message = Fore.CYAN + Style.BRIGHT + f'table-reward {version}' + Style.RESET_ALL
        if command:
            message += Fore.CYAN + f' {command}' + Style.RESET_ALL
        self._display(message)
        self.timer = datetime.now()

    def end_job(self, status_code=ExitCode.PASSED):
        """Indicates the end of a command.

        :param int status_code: The exit code of the command.
        :return: None
        """
        if status_code == ExitCode.PASSED:
            result = Fore.GREEN + Style.BRIGHT + 'DONE' + Style.RESET_ALL
        else:
            result = Fore.RED + Style.BRIGHT + f'FAILED ({int(status_code)})' + Style.RESET_ALL
        if self.timer:
            delta = datetime.now() - self.timer
            message = f'{result} in {delta.total_seconds():.3f} seconds'
        else:
            message = result
        self._display(message)

    def summary(self, title, stats):
        """Reports the aggregate results of a command.

        :param str title: What the numbers describe.
        :param dict stats: The named numbers.
        :return: None
        """
        self._display(f'{Style.BRIGHT}{title}:{Style.RESET_ALL} {_stats(stats)}')

    def record_error(self, location, err):
        """Reports a record that couldn't be processed.

        :param str|int location: The record id or line number.
        :param str|Exception err: The reason.
        :return: None
        """
        self._display(Fore.RED + f'{location}: {err}' + Style.RESET_ALL)

    def error(self, err):
        """Communicates an error message.

        :param str|Exception err: The error message to display.
        :return: None
        """
        self._display(Fore.RED + Style.BRIGHT + str(err) + Style.RESET_ALL)

    def info(self, msg):
        """Communicates a general information message.

        :param str msg: The message to print.
        :return: None
        """
        self._display(str(msg).rstrip())

    def skip(self, msg):
        """Communicates a skipping message.

        :param str msg: The message to print.
        :return: None
        """
        self._display(Fore.YELLOW + str(msg).rstrip() + Style.RESET_ALL)


class Silent(Output):
    """Silent output that suppresses output."""

    def start_job(self, *args, **kwargs):
        """Indicates the beginning of a command."""
        return

    def end_job(self, *args, **kwargs):
        """Indicates the end of a command."""
        return

    def summary(self, *args, **kwargs):
        """Reports the aggregate results of a command."""
        return

    def record_error(self, *args, **kwargs):
        """Reports a record that couldn't be processed."""
        return

    def error(self, *args, **kwargs):
        """Communicates an error message."""
        return

    def info(self, *args, **kwargs):
        """Communicates a general information message."""
        return

    def skip(self, *args, **kwargs):
        """Communicates a skipping message."""
        return
