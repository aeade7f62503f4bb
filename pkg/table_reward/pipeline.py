"""This module hosts the two stage runner that scores rollout groups and evaluates the GRPO objective."""
import numpy as np

from table_reward.grpo import GrpoConfig, grpo_loss, is_degenerate, RolloutGroup
from table_reward.reference import TableFormat, TaskType
from table_reward.rewards import perception_prediction, perception_reward, reasoning_reward


class PromptRollouts:
    """The outputs sampled for one prompt together with the gold they're scored against."""

    __slots__ = ['_task', '_outputs', '_gold', '_fmt', '_ratio', '_ref_ratio']

    def __init__(self, task, outputs, gold, fmt=TableFormat.MARKDOWN, ratio=None, ref_ratio=None):
        """Instantiates a new PromptRollouts object.

        :param TaskType|str task: The stage the prompt belongs to.
        :param outputs: The generated texts.
        :param str gold: The golden table for perception prompts or the golden answer for reasoning prompts.
        :param TableFormat|str fmt: The table format of perception prompts.
        :param ratio: The current to old policy probability ratios. Defaults to all ones.
        :param ref_ratio: The reference to current policy probability ratios. Defaults to all ones.
        """
        self._task = TaskType.coerce(task)
        self._outputs = tuple(outputs)
        self._gold = gold
        self._fmt = TableFormat.coerce(fmt)
        self._ratio = ratio
        self._ref_ratio = ref_ratio

    def __repr__(self):
        return f'PromptRollouts(task={self._task.value}, outputs={len(self._outputs)})'

    @property
    def task(self):
        """The stage the prompt belongs to."""
        return self._task

    @property
    def outputs(self):
        """The generated texts."""
        return self._outputs

    @property
    def gold(self):
        """The golden table or answer."""
        return self._gold

    def rewards(self, mode=None):
        """Scores every output.

        :param AnswerMode|str|None mode: Forces a comparison mode for reasoning prompts.
        :rtype: numpy.ndarray
        """
        if self._task == TaskType.PERCEPTION:
            return np.array([
                perception_reward(perception_prediction(output), self._gold, self._fmt) for output in self._outputs
            ])
        return np.array([reasoning_reward(output, self._gold, mode).total for output in self._outputs])

    def to_group(self, mode=None):
        """Provides the scored rollout group.

        :param AnswerMode|str|None mode: Forces a comparison mode for reasoning prompts.
        :rtype: RolloutGroup
        """
        return RolloutGroup(self.rewards(mode), self._ratio, self._ref_ratio)


class StageResult:
    """Aggregates of one stage over its rollout groups."""

    __slots__ = ['_task', '_n_groups', '_n_degenerate', '_mean_reward', '_objectives']

    def __init__(self, task, n_groups, n_degenerate, mean_reward, objectives):
        """Instantiates a new StageResult object.

        :param TaskType task: The stage.
        :param int n_groups: The number of rollout groups.
        :param int n_degenerate: The number of groups whose rewards are all equal.
        :param float mean_reward: The mean reward over every output.
        :param list[float] objectives: The objective of every group that wasn't skipped.
        """
        self._task = task
        self._n_groups = n_groups
        self._n_degenerate = n_degenerate
        self._mean_reward = mean_reward
        self._objectives = tuple(objectives)

    def __repr__(self):
        return f'StageResult(task={self._task.value}, n_groups={self._n_groups})'

    @property
    def task(self):
        """The stage."""
        return self._task

    @property
    def n_groups(self):
        """The number of rollout groups."""
        return self._n_groups

    @property
    def n_degenerate(self):
        """The number of groups whose rewards are all equal."""
        return self._n_degenerate

    @property
    def n_skipped(self):
        """The number of groups left out of the objective."""
        return self._n_groups - len(self._objectives)

    @property
    def mean_reward(self):
        """The mean reward over every output."""
        return self._mean_reward

    @property
    def objectives(self):
        """The objective of every group that wasn't skipped."""
        return self._objectives

    @property
    def mean_objective(self):
        """The mean objective or None when every group was skipped."""
        if not self._objectives:
            return None
        return float(np.mean(self._objectives))

    def as_dict(self):
        """Provides the aggregates as a dictionary.

        :rtype: dict
        """
        return {
            'task': self._task.value,
            'n_groups': self._n_groups,
            'n_degenerate': self._n_degenerate,
            'n_skipped': self.n_skipped,
            'mean_reward': self._mean_reward,
            'mean_objective': self.mean_objective,
        }


def run_stage(task, prompts, cfg=None, mode=None):
    """Scores the rollout groups of one stage and evaluates the GRPO objective of each.

    Perception groups are rewarded with the TEDS similarity and reasoning groups with accuracy plus format.
    Degenerate groups count toward the objective with zero advantages unless the config skips them.

    :param TaskType|str task: The stage.
    :param list[PromptRollouts] prompts: The rollout groups of the stage.
    :param GrpoConfig|None cfg: The GRPO config.
    :param AnswerMode|str|None mode: Forces a comparison mode for reasoning prompts.
    :rtype: StageResult
    """
    task = TaskType.coerce(task)
    cfg = cfg or GrpoConfig()
    if not prompts:
        raise ValueError(f'The {task.value} stage has no rollout groups.')
    degenerate = 0
    rewards = []
    objectives = []
    for prompt in prompts:
        if prompt.task != task:
            raise ValueError(f'A {prompt.task.value} prompt was given to the {task.value} stage.')
        group = prompt.to_group(mode).with_advantages(cfg.degenerate_advantage_policy)
        rewards.extend(group.rewards)
        if is_degenerate(group.rewards):
            degenerate += 1
        if len(group.advantages) == 0:
            continue
        objectives.append(grpo_loss(group, cfg))
    return StageResult(task, len(prompts), degenerate, float(np.mean(rewards)), objectives)


def run_stages(perception, reasoning, cfg=None, mode=None):
    """Runs the perception stage followed by the reasoning stage.

    Both stages start from an already warmed up policy; the rollout groups are sampled by the caller.

    :param list[PromptRollouts] perception: The table transcription rollout groups.
    :param list[PromptRollouts] reasoning: The hint completion rollout groups.
    :param GrpoConfig|None cfg: The GRPO config shared by both stages.
    :param AnswerMode|str|None mode: Forces a comparison mode for reasoning prompts.
    :rtype: list[StageResult]
    """
    return [
        run_stage(TaskType.PERCEPTION, perception, cfg),
        run_stage(TaskType.REASONING, reasoning, cfg, mode),
    ]
