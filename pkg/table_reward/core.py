"""Module for defining table-reward config handling, JSONL I/O, run manifests, and batch execution."""

from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
import hashlib
import json
from pathlib import Path

from jsonschema import ValidationError, validate as jsvalidator
import yaml

from table_reward import __version__ as version
from table_reward.dataset import FilterConfig
from table_reward.exc import RecordSchemaError
from table_reward.grpo import GrpoConfig
from table_reward.reference import DEFAULT_HINT_PAIRS, DEFAULT_LEARNING_RATE, DEFAULT_SIM_STEPS

STATIC = Path(__file__).parent / 'static'
TEMPLATE_FILENAME = 'table-reward_template.yaml'


def generate_config_template():
    """Reads the static config file template and writes the contents to a template in the current directory.

    :rtype: Path
    :return: The newly created config file.
    """
    current = Path().cwd().resolve()
    file = current / TEMPLATE_FILENAME
    if file.exists():
        raise FileExistsError

    template = STATIC / TEMPLATE_FILENAME
    content = template.read_text()
    file.write_text(content)
    return file


def validate_config(config):
    """High-level function for validating a config file.

    :param dict config: The config file to validate.
    :return: None is returned if the config file is valid, otherwise a ValueError is raised.
    """
    schema = get_config_schema()
    try:
        validate_config_against_schema(config, schema)
    except ValidationError as err:
        raise ValueError(err)


def get_config_schema():
    """Reads the config schema from disk.

    :rtype: dict
    :return: A Python dictionary representing the config schema loaded from disk.
    """
    with open(STATIC / 'config_schema.json', 'r') as file:
        schema = json.load(file)
    return schema


def validate_config_against_schema(config, schema):
    """Validates a config file against the config file schema.

    :param dict config: The config to validate.
    :param dict schema: The config schema to validate against.
    :return: None is returned if the config file is valid, otherwise a ValidationError is raised.
    """
    try:
        jsvalidator(config, schema=schema)
    except ValidationError as err:
        truncated = str(err).split('\n', 3)
        if len(truncated) > 2 and truncated[2].endswith(':'):
            truncated[2] = truncated[2][0:-1]
        raise ValidationError('Config validation failed: {}'.format("\n".join(truncated[0:3])))


def load_config(file):
    """Reads and validates a YAML config file.

    :param io.TextIOBase|None file: The open config file.
    :rtype: dict
    :return: The config, empty if there is no file.
    """
    if file is None:
        return {}
    try:
        config = yaml.safe_load(file)
    except yaml.YAMLError as err:
        raise ValueError(f'Cannot parse config file: {err}')
    config = config or {}
    validate_config(config)
    return config


def effective_config(config=None, **overrides):
    """Merges the defaults, a config file, and command line flags.

    :param dict|None config: The validated config file contents.
    :param overrides: Per section overrides, for example grpo={'group_size': 8}. None values are ignored.
    :rtype: dict
    :return: Every section with every key filled in.
    """
    config = config or {}
    sections = {}
    for section in ('grpo', 'filter', 'split', 'simulate'):
        values = dict(config.get(section) or {})
        values.update({key: value for key, value in (overrides.get(section) or {}).items() if value is not None})
        sections[section] = values
    split = {'pairs': DEFAULT_HINT_PAIRS, 'seed': 0}
    split.update(sections['split'])
    simulate = {'lr': DEFAULT_LEARNING_RATE, 'steps': DEFAULT_SIM_STEPS, 'seeds': 1}
    simulate.update(sections['simulate'])
    return {
        'grpo': GrpoConfig.from_dict(sections['grpo']).as_dict(),
        'filter': FilterConfig.from_dict(sections['filter']).as_dict(),
        'split': split,
        'simulate': simulate,
    }


def config_hash(config):
    """Hashes a config serialized as canonical JSON.

    :param dict config: The config to hash.
    :rtype: str
    :return: The SHA-256 hex digest.
    """
    canonical = json.dumps(config, sort_keys=True, separators=(',', ':'), ensure_ascii=True)
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def get_record_schema(name):
    """Reads the JSONL record schema of a command from disk.

    :param str name: The command name.
    :rtype: dict
    """
    with open(STATIC / 'record_schemas.json', 'r') as file:
        schemas = json.load(file)
    return schemas[name]


def read_jsonl(file, schema=None):
    """Reads JSON objects from a file with one object per line. Blank lines are ignored.

    :param io.TextIOBase file: The open file.
    :param dict|None schema: A JSON schema every object must satisfy.
    :rtype: Iterator[tuple[int, dict]]
    :return: The 1-based line number and the object of every record.
    """
    for line_number, line in enumerate(file, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as err:
            raise RecordSchemaError(message=f'invalid JSON ({err.msg})', line_number=line_number)
        if schema is not None:
            try:
                jsvalidator(record, schema=schema)
            except ValidationError as err:
                raise RecordSchemaError(message=err.message, line_number=line_number)
        yield line_number, record


def write_jsonl(records, file):
    """Writes one JSON object per line.

    :param Iterable[dict] records: The objects to write.
    :param io.TextIOBase file: The open file.
    :return: The number of written records.
    """
    count = 0
    for record in records:
        file.write(json.dumps(record, ensure_ascii=False) + '\n')
        count += 1
    return count


def run_batch(func, items, jobs=1):
    """Applies a function to every item, optionally on a thread pool.

    :param Callable func: The function to apply.
    :param Iterable items: The inputs.
    :param int jobs: The number of worker threads.
    :rtype: list
    :return: The results in input order.
    """
    if jobs <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(func, items))


class RunManifest:
    """Describes one command invocation for reproducibility."""

    __slots__ = ['_command', '_config_hash', '_input_count', '_output_count', '_seed', '_wall_time', '_details']

    def __init__(self, command, config_hash, input_count=0, output_count=0, seed=0, wall_time=0., details=None):
        """Instantiates a new RunManifest object.

        :param str command: The command name.
        :param str config_hash: The hash of the effective config.
        :param int input_count: The number of input records.
        :param int output_count: The number of output records.
        :param int seed: The random seed.
        :param float wall_time: The run time in seconds.
        :param dict|None details: Command specific counts.
        """
        self._command = command
        self._config_hash = config_hash
        self._input_count = int(input_count)
        self._output_count = int(output_count)
        self._seed = int(seed)
        self._wall_time = float(wall_time)
        self._details = dict(details or {})

    def __repr__(self):
        return f'RunManifest(command={self._command!r}, input_count={self._input_count}, ' \
               f'output_count={self._output_count})'

    @property
    def command(self):
        """The command name."""
        return self._command

    @property
    def config_hash(self):
        """The hash of the effective config."""
        return self._config_hash

    @property
    def input_count(self):
        """The number of input records."""
        return self._input_count

    @property
    def output_count(self):
        """The number of output records."""
        return self._output_count

    @property
    def seed(self):
        """The random seed."""
        return self._seed

    @property
    def wall_time(self):
        """The run time in seconds."""
        return self._wall_time

    @property
    def details(self):
        """Command specific counts."""
        return self._details

    def as_dict(self):
        """Provides the manifest as a JSON serializable dictionary.

        :rtype: dict
        """
        return {
            'command': self._command,
            'version': version,
            'config_hash': self._config_hash,
            'input_count': self._input_count,
            'output_count': self._output_count,
            'seed': self._seed,
            'wall_time': self._wall_time,
            'created': datetime.now(timezone.utc).isoformat(),
            'details': self._details,
        }

    def write(self, path):
        """Writes the manifest as JSON.

        :param str|Path path: The output file.
        :rtype: Path
        """
        path = Path(path)
        path.write_text(json.dumps(self.as_dict(), indent=2, sort_keys=True) + '\n')
        return path
