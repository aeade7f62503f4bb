"""This module hosts the group relative policy optimization (GRPO) objective."""
import numpy as np

from table_reward.exc import DegenerateGroupSkipped, DomainError, GroupTooSmall, ValidationError
from table_reward.reference import (
    DEFAULT_CLIP_EPSILON,
    DEFAULT_GROUP_SIZE,
    DEFAULT_KL_BETA,
    DegeneracyPolicy,
)


class GrpoConfig:
    """Hyperparameters of the GRPO objective."""

    __slots__ = ['_group_size', '_clip_epsilon', '_kl_beta', '_degenerate_advantage_policy', '_seed']

    def __init__(
            self,
            group_size=DEFAULT_GROUP_SIZE,
            clip_epsilon=DEFAULT_CLIP_EPSILON,
            kl_beta=DEFAULT_KL_BETA,
            degenerate_advantage_policy=DegeneracyPolicy.ZERO_OUT,
            seed=0,
    ):
        """Instantiates a new GrpoConfig object.

        :param int group_size: The number of rollouts per prompt. Must be at least 2.
        :param float clip_epsilon: The clip range of the probability ratio. Must be between 0 and 1 exclusive.
        :param float kl_beta: The KL penalty coefficient. Must not be negative.
        :param DegeneracyPolicy|str degenerate_advantage_policy: What to do with groups of equal rewards.
        :param int seed: The random seed.
        """
        if isinstance(group_size, bool) or int(group_size) != group_size or group_size < 2:
            raise ValidationError(message=f'group_size must be an integer of at least 2, got {group_size}')
        if not 0 < clip_epsilon < 1:
            raise ValidationError(message=f'clip_epsilon must be between 0 and 1, got {clip_epsilon}')
        if kl_beta < 0:
            raise ValidationError(message=f'kl_beta must not be negative, got {kl_beta}')
        try:
            policy = DegeneracyPolicy.coerce(degenerate_advantage_policy)
        except ValueError as err:
            raise ValidationError(exception=err)
        self._group_size = int(group_size)
        self._clip_epsilon = float(clip_epsilon)
        self._kl_beta = float(kl_beta)
        self._degenerate_advantage_policy = policy
        self._seed = int(seed)

    def __repr__(self):
        return (
            f'GrpoConfig(group_size={self._group_size}, clip_epsilon={self._clip_epsilon}, '
            f'kl_beta={self._kl_beta}, degenerate_advantage_policy={self._degenerate_advantage_policy.value}, '
            f'seed={self._seed})'
        )

    def __eq__(self, other):
        if not isinstance(other, GrpoConfig):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    @property
    def group_size(self):
        """The number of rollouts per prompt."""
        return self._group_size

    @property
    def clip_epsilon(self):
        """The clip range of the probability ratio."""
        return self._clip_epsilon

    @property
    def kl_beta(self):
        """The KL penalty coefficient."""
        return self._kl_beta

    @property
    def degenerate_advantage_policy(self):
        """What to do with groups of equal rewards."""
        return self._degenerate_advantage_policy

    @property
    def seed(self):
        """The random seed."""
        return self._seed

    @classmethod
    def from_dict(cls, values):
        """Creates a config from the grpo section of a config file.

        :param dict|None values: The config values. Missing keys fall back to the defaults.
        :rtype: GrpoConfig
        """
        return cls(**(values or {}))

    def as_dict(self):
        """Provides the config as a JSON serializable dictionary.

        :rtype: dict
        """
        return {
            'group_size': self._group_size,
            'clip_epsilon': self._clip_epsilon,
            'kl_beta': self._kl_beta,
            'degenerate_advantage_policy': self._degenerate_advantage_policy.value,
            'seed': self._seed,
        }


def _positive(values, name):
    values = np.asarray(values, dtype=float)
    if np.any(values <= 0) or np.any(~np.isfinite(values)):
        raise DomainError(message=f'{name} must be finite and strictly positive')
    return values


class RolloutGroup:
    """The rewards and probability ratios of the outputs sampled for one prompt."""

    __slots__ = ['_rewards', '_ratio', '_ref_ratio', '_advantages']

    def __init__(self, rewards, ratio=None, ref_ratio=None, advantages=None):
        """Instantiates a new RolloutGroup object.

        :param rewards: The reward of every output.
        :param ratio: The probability of every output under the current policy divided by the old policy.
            Defaults to all ones.
        :param ref_ratio: The probability of every output under the reference policy divided by the current
            policy. Defaults to all ones.
        :param advantages: Precomputed advantages, if any.
        """
        self._rewards = np.asarray(rewards, dtype=float)
        size = len(self._rewards)
        self._ratio = _positive(np.ones(size) if ratio is None else ratio, 'ratio')
        self._ref_ratio = _positive(np.ones(size) if ref_ratio is None else ref_ratio, 'ref_ratio')
        self._advantages = None if advantages is None else np.asarray(advantages, dtype=float)
        lengths = {size, len(self._ratio), len(self._ref_ratio)}
        if self._advantages is not None and len(self._advantages):
            lengths.add(len(self._advantages))
        if len(lengths) != 1:
            raise ValueError('rewards, ratio, ref_ratio, and advantages must have the same length.')

    def __repr__(self):
        return f'RolloutGroup(size={self.size})'

    def __len__(self):
        return self.size

    @property
    def size(self):
        """The number of outputs in the group."""
        return len(self._rewards)

    @property
    def rewards(self):
        """The reward of every output."""
        return self._rewards

    @property
    def ratio(self):
        """The current to old policy probability ratios."""
        return self._ratio

    @property
    def ref_ratio(self):
        """The reference to current policy probability ratios."""
        return self._ref_ratio

    @property
    def advantages(self):
        """The advantages or None if they haven't been computed."""
        return self._advantages

    def with_advantages(self, policy=DegeneracyPolicy.ZERO_OUT):
        """Provides a copy of the group with group relative advantages.

        :param DegeneracyPolicy|str policy: What to do when every reward is equal.
        :rtype: RolloutGroup
        """
        return RolloutGroup(self._rewards, self._ratio, self._ref_ratio, group_advantages(self._rewards, policy))


def is_degenerate(rewards):
    """Checks whether every reward in a group is equal.

    :param rewards: The group rewards.
    :rtype: bool
    """
    return float(np.ptp(np.asarray(rewards, dtype=float))) == 0.


def group_advantages(rewards, policy=DegeneracyPolicy.ZERO_OUT):
    """Normalizes rewards by the group mean and population standard deviation.

    A group of equal rewards yields all zeros under the zero out policy and an empty array under the skip
    policy.

    :param rewards: The group rewards.
    :param DegeneracyPolicy|str policy: What to do when every reward is equal.
    :rtype: numpy.ndarray
    :return: One advantage per reward.
    """
    rewards = np.asarray(rewards, dtype=float)
    if rewards.ndim != 1 or len(rewards) < 2:
        raise GroupTooSmall(message=f'{rewards.size} reward(s), at least 2 are required')
    if is_degenerate(rewards):
        if DegeneracyPolicy.coerce(policy) == DegeneracyPolicy.SKIP:
            return np.empty(0)
        return np.zeros_like(rewards)
    # Centering twice keeps the mean at zero when the rewards are nearly equal.
    centered = rewards - rewards.mean()
    centered -= centered.mean()
    return centered / centered.std()


def clip_term(ratio, advantage, epsilon=DEFAULT_CLIP_EPSILON):
    """Calculates the clipped surrogate min(r * A, clip(r, 1 - eps, 1 + eps) * A).

    Works elementwise on arrays.

    :param float|numpy.ndarray ratio: The probability ratio.
    :param float|numpy.ndarray advantage: The advantage.
    :param float epsilon: The clip range.
    :rtype: float|numpy.ndarray
    """
    ratio = _positive(ratio, 'ratio')
    advantage = np.asarray(advantage, dtype=float)
    value = np.minimum(ratio * advantage, np.clip(ratio, 1. - epsilon, 1. + epsilon) * advantage)
    return float(value) if value.ndim == 0 else value


def kl_penalty(ref_ratio):
    """Estimates the KL divergence with r - ln(r) - 1 where r is the reference to current probability ratio.

    :param float|numpy.ndarray ref_ratio: The probability ratio.
    :rtype: float|numpy.ndarray
    """
    ref_ratio = _positive(ref_ratio, 'ref_ratio')
    value = ref_ratio - np.log(ref_ratio) - 1.
    return float(value) if value.ndim == 0 else value


def grpo_loss(group, cfg=None):
    """Calculates the GRPO objective of one rollout group.

    The value is the mean clipped surrogate minus beta times the mean KL penalty. Trainers maximize it, or
    equivalently minimize its negation.

    :param RolloutGroup group: The rollout group. Advantages are computed if missing.
    :param GrpoConfig|None cfg: The GRPO config.
    :rtype: float
    :return: The objective value.
    """
    cfg = cfg or GrpoConfig()
    if group.size < 2:
        raise GroupTooSmall(message=f'{group.size} output(s), at least 2 are required')
    advantages = group.advantages
    if advantages is None:
        advantages = group_advantages(group.rewards, cfg.degenerate_advantage_policy)
    if len(advantages) == 0:
        raise DegenerateGroupSkipped(message=f'all {group.size} rewards equal {group.rewards[0]}')
    surrogate = np.mean(clip_term(group.ratio, advantages, cfg.clip_epsilon))
    penalty = np.mean(kl_penalty(group.ref_ratio))
    return float(surrogate - cfg.kl_beta * penalty)
