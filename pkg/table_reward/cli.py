"""Click CLI for running table-reward."""
from collections import Counter
from datetime import datetime
import sys

import click
import numpy as np
import yaml

from table_reward import __version__ as ver
from table_reward import core, output, reference
from table_reward.dataset import DatasetRecord, FilterConfig, make_perception_records, run_pipeline
from table_reward.exc import GoldUnparseable, GroupTooSmall, RecordSchemaError, SolutionTooShort, TableRewardException
from table_reward.grpo import GrpoConfig, group_advantages, is_degenerate
from table_reward.hints import SteppedSolution, assemble_reasoning_record, solution_rng, split_solution
from table_reward.rewards import reward_record
from table_reward.simulate import run_sweep, write_summary_csv, write_trajectory_csv
from table_reward.teds import teds_from_strings

# Get a list of table formats.
FORMATS = click.Choice(reference.TableFormat.available(), case_sensitive=False)


# Get a list of answer comparison modes.
MODES = click.Choice(reference.AnswerMode.available(), case_sensitive=False)


# Get a list of degenerate group policies.
POLICIES = click.Choice(reference.DegeneracyPolicy.available(), case_sensitive=False)


# Defines the type for the config file.
CONFIG = click.File(mode='r', encoding='utf-8', errors='strict', lazy=False)


# Defines the type for JSONL and table input files. A dash reads stdin.
INPUT = click.File(mode='r', encoding='utf-8', errors='strict', lazy=False)


# Defines the type for auxiliary output files.
OUTPUT = click.File(mode='w', encoding='utf-8', lazy=True)


# Defines the type for the manifest file.
MANIFEST = click.Path(exists=False, file_okay=True, dir_okay=False, writable=True, resolve_path=False)


ADVANTAGE_REWARDS_HELP = 'Comma separated rewards of a single group.'
AS_RECORDS_HELP = 'Emit assembled reasoning records instead of hint-completion pairs.'
CONFIG_HELP = 'The config file to load parameters from.'
FANCY_HELP = 'Enables output with colors. Ideal for an interactive terminal session.'
FORMAT_HELP = 'The table format of records without a format field.'
GOLD_HELP = 'A file containing the golden table.'
GROUP_SIZE_HELP = 'The number of rollouts per group.'
JOBS_HELP = 'The number of records to score in parallel.'
LR_HELP = 'The learning rate of the toy policy.'
MANIFEST_HELP = 'Write a JSON run manifest to this path.'
MAX_PIXELS_HELP = 'Drop records whose image has more pixels than this.'
MAX_TOKENS_HELP = 'Drop perception records whose target has more tokens than this.'
MODE_HELP = 'Force an answer comparison mode for reasoning records.'
P_INIT_HELP = 'Comma separated initial accuracies.'
PAIRS_HELP = 'The number of hint-completion pairs per solution.'
PLAIN_HELP = 'Enables basic output. Ideal for logging and automation.'
POLICY_HELP = 'What to do with groups whose rewards are all equal.'
PRED_HELP = 'A file containing the predicted table.'
QUIET_HELP = 'Suppresses all console output from table-reward.'
SAMPLE_HELP = 'The number of records to sample.'
SEED_HELP = 'The random seed.'
SEEDS_HELP = 'The number of seeds per initial accuracy.'
STEPS_HELP = 'The number of training steps.'
TEMPLATE_HELP = 'Generates a config file template in the current directory.'
TRAJECTORIES_HELP = 'Write per-step trajectories as CSV to this path.'
VALIDATE_HELP = 'Validate a config file by name.'
VARIANTS_HELP = 'A YAML file with a list of instruction variants.'


class Session:
    """Shared state of a table-reward invocation."""

    __slots__ = ['config', 'out', 'started']

    def __init__(self, config, out):
        """Instantiates a new Session object.

        :param dict config: The validated config file contents.
        :param output.Output out: The console output.
        """
        self.config = config
        self.out = out
        self.started = datetime.now()


def error(ctx, msg, code):
    """High-level function for printing an error message and providing an error code.

    :param click.Context ctx: The click Context to use.
    :param str msg: The error message to print.
    :param int code: The exit code to return.
    """
    click.secho(str(msg), fg='red', err=True)
    ctx.exit(code)


def get_template(ctx, _, value):
    """Callback that generates a table-reward config file template and exits.

    :param click.Context ctx: The context of the click command.
    :param click.Parameter _: The template parameter object.
    :param bool value: True if the --template flag is set.
    :return: None
    """
    if not value:
        return
    try:
        core.generate_config_template()
        ctx.exit()
    except FileExistsError:
        error(
            ctx=ctx,
            msg='Cannot generate the config template because it already exists!',
            code=reference.ExitCode.INPUT_ERROR,
        )
    except PermissionError:
        error(
            ctx=ctx,
            msg="Cannot generate the config template because table-reward doesn't have permission.",
            code=reference.ExitCode.INPUT_ERROR,
        )


def validate_config(ctx, _, value):
    """Tests to see if the config file is valid.

    :param click.Context ctx: The context of the click command.
    :param click.Parameter _: The validate parameter object.
    :param TextIOWrapper value: The config file path.
    :return: None
    """
    if not value:
        return
    try:
        core.load_config(value)
        ctx.exit()
    except ValueError as err:
        error(
            ctx=ctx,
            msg=str(err),
            code=reference.ExitCode.INPUT_ERROR,
        )


def set_silent(_, param, value):
    """Callback that sets the quiet output type.

    :param click.Context _: The context of the click command.
    :param click.Parameter param: The quiet parameter object.
    :param bool value: True if the --quiet flag is set.
    :rtype: str
    :return: The table-reward Silent output type.
    """
    if value or param.default is True:
        return reference.OutputTypes.SILENT


def set_basic(_, param, value):
    """Callback that sets the plain output type.

    :param click.Context _: The context of the click command.
    :param click.Parameter param: The plain parameter object.
    :param bool value: True if the --plain flag is set.
    :rtype: str
    :return: The table-reward Basic output type.
    """
    if value or param.default is True:
        return reference.OutputTypes.BASIC


def set_tty(_, param, value):
    """Callback that sets the fancy output type.

    :param click.Context _: The context of the click command.
    :param click.Parameter param: The fancy parameter object.
    :param bool value: True if the --fancy flag is set.
    :rtype: str
    :return: The table-reward TTY output type.
    """
    if value or param.default is True:
        return reference.OutputTypes.TTY


def parse_floats(ctx, param, value):
    """Callback that splits a comma separated option into floats.

    :param click.Context ctx: The context of the click command.
    :param click.Parameter param: The option.
    :param str|None value: The raw option value.
    :rtype: list[float]|None
    """
    if value is None:
        return None
    try:
        return [float(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise click.BadParameter(f'{value!r} is not a comma separated list of numbers.', ctx=ctx, param=param)


@click.group()
@click.option('--config', '-C', help=CONFIG_HELP, type=CONFIG, default=None)
@click.option('--template', help=TEMPLATE_HELP, is_flag=True, is_eager=True, expose_value=False, callback=get_template)
@click.option('--validate', help=VALIDATE_HELP, type=CONFIG, expose_value=False, callback=validate_config)
@click.option('--plain', help=PLAIN_HELP, is_flag=True, default=False, callback=set_basic)
@click.option('--fancy', help=FANCY_HELP, is_flag=True, default=True, callback=set_tty)
@click.option('--quiet', help=QUIET_HELP, is_flag=True, default=False, callback=set_silent)
@click.version_option(version=ver, message='%(version)s')
@click.pass_context
def table_reward(ctx, config, plain, fancy, quiet):
    """Table rewards, GRPO kernels, and dataset tools for training table-understanding models.

    Data goes to stdout as JSONL or CSV. Progress, summaries and errors go to stderr.
    """
    # Get the output type.
    out = quiet or plain or fancy
    try:
        loaded = core.load_config(config)
    except ValueError as err:
        error(ctx=ctx, msg=str(err), code=reference.ExitCode.INPUT_ERROR)
    ctx.obj = Session(config=loaded, out=getattr(output, out.value)())


def effective_config(ctx, **overrides):
    """Merges the config file with command line flags, exiting on invalid values.

    :param click.Context ctx: The context of the click command.
    :param overrides: Per section overrides.
    :rtype: dict
    """
    try:
        return core.effective_config(ctx.obj.config, **overrides)
    except (TableRewardException, ValueError, TypeError) as err:
        error(ctx=ctx, msg=str(err), code=reference.ExitCode.INPUT_ERROR)


def load_records(ctx, file, name):
    """Reads and validates a JSONL input file, exiting on the first invalid record.

    :param click.Context ctx: The context of the click command.
    :param TextIOWrapper file: The open input file.
    :param str name: The record schema name.
    :rtype: list[tuple[int, dict]]
    """
    try:
        return list(core.read_jsonl(file, core.get_record_schema(name)))
    except RecordSchemaError as err:
        ctx.obj.out.log(reference.OutputMethod.JOB_END, reference.ExitCode.INPUT_ERROR)
        error(ctx=ctx, msg=str(err), code=reference.ExitCode.INPUT_ERROR)


def emit(records):
    """Writes records as JSONL to stdout.

    :param Iterable[dict] records: The records to write.
    :rtype: int
    :return: The number of written records.
    """
    return core.write_jsonl(records, sys.stdout)


def finish(ctx, command, config, input_count, output_count, seed, manifest, status=reference.ExitCode.PASSED,
           details=None):
    """Ends a command: logs the end of the job, writes the manifest if requested, and exits.

    :param click.Context ctx: The context of the click command.
    :param str command: The command name.
    :param dict config: The effective config of the command.
    :param int input_count: The number of input records.
    :param int output_count: The number of output records.
    :param int seed: The random seed.
    :param str|None manifest: The manifest path.
    :param int status: The exit code.
    :param dict|None details: Command specific counts.
    """
    session = ctx.obj
    if manifest:
        wall_time = (datetime.now() - session.started).total_seconds()
        run = core.RunManifest(
            command=command,
            config_hash=core.config_hash(config),
            input_count=input_count,
            output_count=output_count,
            seed=seed,
            wall_time=wall_time,
            details=details,
        )
        try:
            run.write(manifest)
        except OSError as err:
            error(ctx=ctx, msg=f'Cannot write the manifest: {err}', code=reference.ExitCode.INPUT_ERROR)
    session.out.log(reference.OutputMethod.JOB_END, status)
    ctx.exit(status)


@table_reward.command()
@click.argument('records', type=INPUT, required=False)
@click.option('--pred', help=PRED_HELP, type=INPUT)
@click.option('--gold', help=GOLD_HELP, type=INPUT)
@click.option('--format', 'fmt', help=FORMAT_HELP, type=FORMATS, default=reference.TableFormat.MARKDOWN.value)
@click.option('--jobs', help=JOBS_HELP, type=click.IntRange(min=1), default=1)
@click.option('--manifest', help=MANIFEST_HELP, type=MANIFEST)
@click.pass_context
def teds(ctx, records, pred, gold, fmt, jobs, manifest):
    """Score predicted tables against golden tables with TEDS.

    RECORDS is a JSONL file of {id, pred, gold, format} objects. Use --pred and --gold to score a single pair.
    """
    out = ctx.obj.out
    if (pred is None) != (gold is None):
        error(ctx=ctx, msg='--pred and --gold must be used together.', code=reference.ExitCode.INPUT_ERROR)
    if pred is not None and records is not None:
        error(ctx=ctx, msg='Use either RECORDS or --pred and --gold.', code=reference.ExitCode.INPUT_ERROR)
    if pred is None and records is None:
        error(ctx=ctx, msg='Nothing to score. Use --help for usage.', code=reference.ExitCode.INPUT_ERROR)

    out.log(reference.OutputMethod.JOB_START, 'teds')
    if pred is not None:
        items = [(1, {'id': gold.name, 'pred': pred.read(), 'gold': gold.read()})]
    else:
        items = load_records(ctx, records, 'teds')

    def score(item):
        line_number, record = item
        try:
            result = teds_from_strings(record['pred'], record['gold'], record.get('format') or fmt)
        except GoldUnparseable as err:
            return line_number, record.get('id', line_number), err
        return line_number, record.get('id', line_number), result

    status = reference.ExitCode.PASSED
    rows = []
    for line_number, id_, result in core.run_batch(score, items, jobs):
        if isinstance(result, GoldUnparseable):
            out.log(reference.OutputMethod.RECORD_ERROR, f'line {line_number} ({id_})', result)
            status = reference.ExitCode.DATA_ERROR
            continue
        rows.append({'id': id_, **result.as_dict()})
    emit(rows)
    similarities = [row['similarity'] for row in rows]
    stats = {'records': len(items), 'scored': len(rows)}
    if similarities:
        stats['mean_similarity'] = float(np.mean(similarities))
    out.log(reference.OutputMethod.SUMMARY, 'TEDS', stats)
    finish(ctx, 'teds', {'format': fmt}, len(items), len(rows), 0, manifest, status)


@table_reward.command()
@click.argument('records', type=INPUT)
@click.option('--mode', help=MODE_HELP, type=MODES, default=None)
@click.option('--jobs', help=JOBS_HELP, type=click.IntRange(min=1), default=1)
@click.option('--manifest', help=MANIFEST_HELP, type=MANIFEST)
@click.pass_context
def reward(ctx, records, mode, jobs, manifest):
    """Compute rewards for model outputs.

    RECORDS is a JSONL file of {id, output, gold, task, format} objects. Reasoning records get accuracy, format,
    and total. Perception records get the TEDS similarity as total.
    """
    out = ctx.obj.out
    out.log(reference.OutputMethod.JOB_START, 'reward')
    items = load_records(ctx, records, 'reward')

    def score(item):
        line_number, record = item
        try:
            return line_number, reward_record(record, mode)
        except (GoldUnparseable, ValueError) as err:
            return line_number, err

    status = reference.ExitCode.PASSED
    rows = []
    for line_number, result in core.run_batch(score, items, jobs):
        if isinstance(result, Exception):
            out.log(reference.OutputMethod.RECORD_ERROR, f'line {line_number}', result)
            failed = isinstance(result, GoldUnparseable)
            status = max(status, reference.ExitCode.DATA_ERROR if failed else reference.ExitCode.INPUT_ERROR)
            continue
        rows.append(result)
    emit(rows)
    totals = [row['total'] for row in rows]
    histogram = Counter(f'{total:.1f}' for total in totals)
    stats = {'records': len(items), 'scored': len(rows)}
    if totals:
        stats['mean_total'] = float(np.mean(totals))
    stats.update({f'total[{key}]': histogram[key] for key in sorted(histogram)})
    out.log(reference.OutputMethod.SUMMARY, 'Rewards', stats)
    finish(ctx, 'reward', {'mode': mode}, len(items), len(rows), 0, manifest, status)


@table_reward.command()
@click.argument('records', type=INPUT)
@click.option('--pairs', help=PAIRS_HELP, type=click.IntRange(min=1), default=None)
@click.option('--seed', help=SEED_HELP, type=click.IntRange(min=0), default=None)
@click.option('--as-records', help=AS_RECORDS_HELP, is_flag=True)
@click.option('--manifest', help=MANIFEST_HELP, type=MANIFEST)
@click.pass_context
def split(ctx, records, pairs, seed, as_records, manifest):
    """Split stepped solutions into hint-completion pairs.

    RECORDS is a JSONL file of {image, question, steps, answer} objects.
    """
    out = ctx.obj.out
    config = effective_config(ctx, split={'pairs': pairs, 'seed': seed})['split']
    out.log(reference.OutputMethod.JOB_START, 'split')
    items = load_records(ctx, records, 'split')

    status = reference.ExitCode.PASSED
    rows = []
    skipped = 0
    for index, (line_number, record) in enumerate(items):
        try:
            solution = SteppedSolution.from_dict(record)
        except ValueError as err:
            out.log(reference.OutputMethod.RECORD_ERROR, f'line {line_number}', err)
            status = reference.ExitCode.INPUT_ERROR
            continue
        try:
            solution_pairs = split_solution(solution, config['pairs'], solution_rng(config['seed'], index))
        except SolutionTooShort as err:
            out.log(reference.OutputMethod.SKIP, f'line {line_number}: {err}')
            skipped += 1
            continue
        for pair in solution_pairs:
            rows.append(assemble_reasoning_record(pair, index).as_dict() if as_records else pair.as_dict())
    emit(rows)
    out.log(reference.OutputMethod.SUMMARY, 'Split', {'solutions': len(items), 'pairs': len(rows), 'skipped': skipped})
    finish(ctx, 'split', config, len(items), len(rows), config['seed'], manifest, status, {'skipped': skipped})


@table_reward.command(name='filter')
@click.argument('records', type=INPUT)
@click.option('--max-pixels', help=MAX_PIXELS_HELP, type=click.IntRange(min=1), default=None)
@click.option('--max-tokens', help=MAX_TOKENS_HELP, type=click.IntRange(min=1), default=None)
@click.option('--sample', help=SAMPLE_HELP, type=click.IntRange(min=1), default=None)
@click.option('--seed', help=SEED_HELP, type=click.IntRange(min=0), default=None)
@click.option('--manifest', help=MANIFEST_HELP, type=MANIFEST)
@click.pass_context
def filter_(ctx, records, max_pixels, max_tokens, sample, seed, manifest):
    """Filter dataset records by image size and target length, then sample them.

    RECORDS is a JSONL file of {id, image, image_width, image_height, question, target, task} objects.
    """
    out = ctx.obj.out
    overrides = {'max_pixels': max_pixels, 'max_target_tokens': max_tokens, 'sample_size': sample, 'seed': seed}
    config = effective_config(ctx, filter=overrides)['filter']
    out.log(reference.OutputMethod.JOB_START, 'filter')
    items = load_records(ctx, records, 'filter')

    try:
        dataset = [DatasetRecord.from_dict(record) for _, record in items]
    except ValueError as err:
        error(ctx=ctx, msg=str(err), code=reference.ExitCode.INPUT_ERROR)
    sampled, summary = run_pipeline(dataset, FilterConfig.from_dict(config))
    emit(record.as_dict() for record in sampled)
    out.log(reference.OutputMethod.SUMMARY, 'Filter', summary)
    finish(ctx, 'filter', config, len(items), len(sampled), config['seed'], manifest, details=summary)


def read_variants(ctx, file):
    """Reads instruction variants from a YAML list or a mapping with a variants key.

    :param click.Context ctx: The context of the click command.
    :param TextIOWrapper|None file: The open variants file.
    :rtype: tuple[str]
    """
    if file is None:
        return reference.PERCEPTION_VARIANTS
    try:
        variants = yaml.safe_load(file)
    except yaml.YAMLError as err:
        error(ctx=ctx, msg=str(err), code=reference.ExitCode.INPUT_ERROR)
    if isinstance(variants, dict):
        variants = variants.get('variants')
    if not isinstance(variants, list) or not all(isinstance(variant, str) for variant in variants):
        error(ctx=ctx, msg='The variants file must contain a list of strings.', code=reference.ExitCode.INPUT_ERROR)
    return tuple(variants)


@table_reward.command()
@click.argument('images', type=INPUT)
@click.option('--variants', help=VARIANTS_HELP, type=INPUT, default=None)
@click.option('--seed', help=SEED_HELP, type=click.IntRange(min=0), default=0)
@click.option('--manifest', help=MANIFEST_HELP, type=MANIFEST)
@click.pass_context
def perception(ctx, images, variants, seed, manifest):
    """Pair table images with instruction variants to build perception records.

    IMAGES is a JSONL file of {image, table} objects, where table is the golden table.
    """
    out = ctx.obj.out
    variants = read_variants(ctx, variants)
    out.log(reference.OutputMethod.JOB_START, 'perception')
    items = load_records(ctx, images, 'perception')
    try:
        created = make_perception_records([record for _, record in items], variants, seed)
    except (TableRewardException, ValueError) as err:
        error(ctx=ctx, msg=str(err), code=reference.ExitCode.INPUT_ERROR)
    emit(record.as_dict() for record in created)
    out.log(reference.OutputMethod.SUMMARY, 'Perception', {'images': len(items), 'variants': len(variants)})
    config = {'variants': list(variants), 'seed': seed}
    finish(ctx, 'perception', config, len(items), len(created), seed, manifest)


@table_reward.command()
@click.option('--p-init', help=P_INIT_HELP, default='0.2,0.55,0.8', callback=parse_floats)
@click.option('--steps', help=STEPS_HELP, type=click.IntRange(min=0), default=None)
@click.option('--group-size', help=GROUP_SIZE_HELP, type=click.IntRange(min=2), default=None)
@click.option('--seeds', help=SEEDS_HELP, type=click.IntRange(min=1), default=None)
@click.option('--seed', help=SEED_HELP, type=click.IntRange(min=0), default=None)
@click.option('--lr', help=LR_HELP, type=click.FloatRange(min=0, min_open=True), default=None)
@click.option('--policy', help=POLICY_HELP, type=POLICIES, default=None)
@click.option('--trajectories', help=TRAJECTORIES_HELP, type=OUTPUT, default=None)
@click.option('--manifest', help=MANIFEST_HELP, type=MANIFEST)
@click.pass_context
def simulate(ctx, p_init, steps, group_size, seeds, seed, lr, policy, trajectories, manifest):
    """Train a one-parameter Bernoulli policy with GRPO from several initial accuracies.

    Writes one summary CSV row per run to stdout.
    """
    out = ctx.obj.out
    config = effective_config(
        ctx,
        grpo={'group_size': group_size, 'seed': seed, 'degenerate_advantage_policy': policy},
        simulate={'steps': steps, 'seeds': seeds, 'lr': lr},
    )
    grpo = GrpoConfig.from_dict(config['grpo'])
    settings = config['simulate']
    out.log(reference.OutputMethod.JOB_START, 'simulate')
    try:
        reports = run_sweep(p_init, settings['steps'], grpo, settings['lr'], settings['seeds'], grpo.seed)
    except TableRewardException as err:
        error(ctx=ctx, msg=str(err), code=reference.ExitCode.INPUT_ERROR)
    write_summary_csv(reports, sys.stdout)
    if trajectories is not None:
        write_trajectory_csv(reports, trajectories)
    for p in p_init:
        deltas = [report.delta for report in reports if report.p_init == p]
        stats = {'runs': len(deltas), 'median_delta': float(np.median(deltas))}
        out.log(reference.OutputMethod.SUMMARY, f'p_init={p}', stats)
    config['p_init'] = p_init
    finish(ctx, 'simulate', config, len(p_init), len(reports), grpo.seed, manifest)


@table_reward.command()
@click.argument('records', type=INPUT, required=False)
@click.option('--rewards', help=ADVANTAGE_REWARDS_HELP, default=None, callback=parse_floats)
@click.option('--policy', help=POLICY_HELP, type=POLICIES, default=None)
@click.option('--manifest', help=MANIFEST_HELP, type=MANIFEST)
@click.pass_context
def advantages(ctx, records, rewards, policy, manifest):
    """Compute group relative advantages.

    RECORDS is a JSONL file of {id, rewards} objects. Use --rewards to compute a single group.
    """
    out = ctx.obj.out
    if (rewards is None) == (records is None):
        error(ctx=ctx, msg='Use either RECORDS or --rewards.', code=reference.ExitCode.INPUT_ERROR)
    config = effective_config(ctx, grpo={'degenerate_advantage_policy': policy})['grpo']
    out.log(reference.OutputMethod.JOB_START, 'advantages')
    items = [(1, {'id': 1, 'rewards': rewards})] if rewards is not None else load_records(ctx, records, 'advantages')

    status = reference.ExitCode.PASSED
    rows = []
    degenerate = 0
    for line_number, record in items:
        try:
            values = group_advantages(record['rewards'], config['degenerate_advantage_policy'])
        except GroupTooSmall as err:
            out.log(reference.OutputMethod.RECORD_ERROR, f'line {line_number}', err)
            status = reference.ExitCode.INPUT_ERROR
            continue
        flagged = is_degenerate(record['rewards'])
        degenerate += flagged
        rows.append({
            'id': record.get('id', line_number),
            'advantages': [float(value) for value in values] if len(values) else None,
            'degenerate': flagged,
        })
    emit(rows)
    out.log(reference.OutputMethod.SUMMARY, 'Advantages', {'groups': len(items), 'degenerate': degenerate})
    finish(ctx, 'advantages', config, len(items), len(rows), 0, manifest, status)


def main(args=None):
    """Runs the CLI, mapping usage errors to exit code 1 and interrupts to exit code 4.

    :param list[str]|None args: The command line arguments. Defaults to sys.argv.
    """
    try:
        code = table_reward.main(args=args, prog_name='table-reward', standalone_mode=False)
    except click.ClickException as err:
        err.show()
        sys.exit(reference.ExitCode.INPUT_ERROR)
    except click.exceptions.Abort:
        click.secho('\ntable-reward interrupted and exiting....', fg='red', err=True)
        sys.exit(reference.ExitCode.INTERRUPTED)
    sys.exit(code or reference.ExitCode.PASSED)
