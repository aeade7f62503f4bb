"""This module hosts a toy GRPO training simulator with a one-parameter Bernoulli policy.

The policy answers correctly with probability p = logistic(theta). Sampling groups of rewards from it shows how
the reward variance at the initial accuracy controls how much GRPO can improve the policy.
"""
import csv
import itertools

import numpy as np

from table_reward.exc import DomainError, ValidationError
from table_reward.grpo import GrpoConfig, RolloutGroup, group_advantages, grpo_loss, is_degenerate
from table_reward.reference import DEFAULT_LEARNING_RATE, DEFAULT_SIM_STEPS

SUMMARY_COLUMNS = ('p_init', 'seed', 'steps', 'p_final', 'delta', 'variance_init', 'zero_variance_fraction')
TRAJECTORY_COLUMNS = ('p_init', 'seed', 'step', 'p')


def _logistic(theta):
    return float(1. / (1. + np.exp(-theta)))


def _check_probability(p, open_interval=False):
    if open_interval and not 0 < p < 1:
        raise DomainError(message=f'accuracy must be strictly between 0 and 1, got {p}')
    if not 0 <= p <= 1:
        raise DomainError(message=f'accuracy must be between 0 and 1, got {p}')


class BernoulliPolicy:
    """A policy that answers correctly with probability logistic(theta)."""

    __slots__ = ['_theta']

    def __init__(self, theta=0.):
        """Instantiates a new BernoulliPolicy object.

        :param float theta: The logit of the accuracy.
        """
        self._theta = float(theta)

    def __repr__(self):
        return f'BernoulliPolicy(theta={self._theta}, accuracy={self.accuracy:.4f})'

    @property
    def theta(self):
        """The logit of the accuracy."""
        return self._theta

    @property
    def accuracy(self):
        """The probability of a correct answer."""
        return _logistic(self._theta)

    @classmethod
    def from_accuracy(cls, p):
        """Creates a policy with the given accuracy.

        :param float p: The accuracy, strictly between 0 and 1.
        :rtype: BernoulliPolicy
        """
        _check_probability(p, open_interval=True)
        return cls(np.log(p / (1. - p)))

    def probability(self, rewards, theta=None):
        """Calculates the probability of each reward under the policy.

        :param numpy.ndarray rewards: Rewards of 0 or 1.
        :param float|None theta: Evaluates a different parameter instead of the policy's own.
        :rtype: numpy.ndarray
        """
        p = _logistic(self._theta if theta is None else theta)
        rewards = np.asarray(rewards, dtype=float)
        return np.where(rewards > 0, p, 1. - p)

    def sample(self, rng, size):
        """Samples rewards of 0 or 1.

        :param numpy.random.Generator rng: The random generator.
        :param int|tuple size: The output shape.
        :rtype: numpy.ndarray
        """
        return (rng.random(size) < self.accuracy).astype(float)


class SimReport:
    """The outcome of one toy training run."""

    __slots__ = ['_p_init', '_p_final', '_zero_variance_group_fraction', '_trajectory', '_seed', '_steps']

    def __init__(self, p_init, p_final, zero_variance_group_fraction, trajectory, seed=0, steps=None):
        """Instantiates a new SimReport object.

        :param float p_init: The initial accuracy.
        :param float p_final: The final accuracy.
        :param float zero_variance_group_fraction: The share of sampled groups whose rewards were all equal.
        :param list[tuple[int, float]] trajectory: The accuracy after every step, starting at step 0.
        :param int seed: The random seed of the run.
        :param int|None steps: The number of training steps. Defaults to the trajectory length minus one.
        """
        self._p_init = float(p_init)
        self._p_final = float(p_final)
        self._zero_variance_group_fraction = float(zero_variance_group_fraction)
        self._trajectory = list(trajectory)
        self._seed = int(seed)
        self._steps = len(self._trajectory) - 1 if steps is None else int(steps)

    def __repr__(self):
        return f'SimReport(p_init={self._p_init}, p_final={self._p_final:.4f}, steps={self._steps})'

    @property
    def p_init(self):
        """The initial accuracy."""
        return self._p_init

    @property
    def p_final(self):
        """The final accuracy."""
        return self._p_final

    @property
    def delta(self):
        """The accuracy gained by training."""
        return self._p_final - self._p_init

    @property
    def variance_init(self):
        """The reward variance at the initial accuracy."""
        return reward_variance(self._p_init)

    @property
    def zero_variance_group_fraction(self):
        """The share of sampled groups whose rewards were all equal."""
        return self._zero_variance_group_fraction

    @property
    def trajectory(self):
        """The (step, accuracy) points of the run."""
        return self._trajectory

    @property
    def seed(self):
        """The random seed of the run."""
        return self._seed

    @property
    def steps(self):
        """The number of training steps."""
        return self._steps

    def summary(self):
        """Provides the summary row of the run.

        :rtype: dict
        """
        return {
            'p_init': self._p_init,
            'seed': self._seed,
            'steps': self._steps,
            'p_final': self._p_final,
            'delta': self.delta,
            'variance_init': self.variance_init,
            'zero_variance_fraction': self._zero_variance_group_fraction,
        }


def reward_variance(p):
    """Calculates the variance p * (1 - p) of a Bernoulli reward.

    :param float p: The accuracy.
    :rtype: float
    """
    _check_probability(p)
    return p * (1. - p)


def expected_zero_variance_fraction(p, group_size):
    """Calculates the probability p^G + (1 - p)^G that a group of rewards is all equal.

    :param float p: The accuracy.
    :param int group_size: The group size.
    :rtype: float
    """
    _check_probability(p)
    return p ** group_size + (1. - p) ** group_size


def zero_variance_fraction(p, group_size, n_groups, seed=0):
    """Estimates the share of groups whose rewards are all equal by sampling.

    :param float p: The accuracy.
    :param int group_size: The group size. Must be at least 2.
    :param int n_groups: The number of groups to sample.
    :param int seed: The random seed.
    :rtype: float
    """
    _check_probability(p)
    if group_size < 2:
        raise ValidationError(message=f'group_size must be at least 2, got {group_size}')
    if n_groups < 1:
        raise ValidationError(message=f'n_groups must be at least 1, got {n_groups}')
    rewards = np.random.default_rng(seed).random((n_groups, group_size)) < p
    degenerate = rewards.all(axis=1) | ~rewards.any(axis=1)
    return float(degenerate.mean())


def score_direction(rewards, advantages, p):
    """Calculates mean(A * (r - p)), the log-likelihood gradient of the surrogate at ratio 1.

    :param numpy.ndarray rewards: The group rewards.
    :param numpy.ndarray advantages: The group advantages. Empty for skipped groups.
    :param float p: The accuracy the rewards were sampled with.
    :rtype: float
    """
    if len(advantages) == 0:
        return 0.
    return float(np.mean(advantages * (np.asarray(rewards, dtype=float) - p)))


def train_toy_policy(p_init, steps=DEFAULT_SIM_STEPS, cfg=None, lr=DEFAULT_LEARNING_RATE, seed=0):
    """Trains a Bernoulli policy with one sampled group per step.

    Every step applies theta += lr * mean(A * (r - p)). Degenerate groups leave theta unchanged.

    :param float p_init: The initial accuracy, strictly between 0 and 1.
    :param int steps: The number of training steps.
    :param GrpoConfig|None cfg: The GRPO config.
    :param float lr: The learning rate.
    :param int seed: The random seed.
    :rtype: SimReport
    """
    _check_probability(p_init, open_interval=True)
    if steps < 0:
        raise ValidationError(message=f'steps must not be negative, got {steps}')
    cfg = cfg or GrpoConfig()
    rng = np.random.default_rng(seed)
    policy = BernoulliPolicy.from_accuracy(p_init)
    trajectory = [(0, p_init)]
    degenerate = 0
    for step in range(1, steps + 1):
        p = policy.accuracy
        rewards = policy.sample(rng, cfg.group_size)
        degenerate += is_degenerate(rewards)
        advantages = group_advantages(rewards, cfg.degenerate_advantage_policy)
        policy = BernoulliPolicy(policy.theta + lr * score_direction(rewards, advantages, p))
        trajectory.append((step, policy.accuracy))
    fraction = degenerate / steps if steps else 0.
    return SimReport(p_init, trajectory[-1][1], fraction, trajectory, seed=seed, steps=steps)


def _outcomes(group_size):
    return np.array(list(itertools.product((0., 1.), repeat=group_size)))


def expected_objective(theta_eval, theta, cfg=None):
    """Calculates the exact expected GRPO objective of a Bernoulli policy.

    Groups are sampled by the policy at theta. The ratios compare the policy at theta_eval against it, and the
    reference policy is the one at theta. Every one of the 2^G reward outcomes is enumerated.

    :param float theta_eval: The parameter being evaluated.
    :param float theta: The parameter that sampled the groups.
    :param GrpoConfig|None cfg: The GRPO config.
    :rtype: float
    """
    cfg = cfg or GrpoConfig()
    policy = BernoulliPolicy(theta)
    total = 0.
    for rewards in _outcomes(cfg.group_size):
        advantages = group_advantages(rewards, cfg.degenerate_advantage_policy)
        if len(advantages) == 0:
            continue
        probability = policy.probability(rewards)
        ratio = policy.probability(rewards, theta_eval) / probability
        group = RolloutGroup(rewards, ratio, 1. / ratio, advantages)
        total += float(np.prod(probability)) * grpo_loss(group, cfg)
    return total


def analytic_direction(theta, cfg=None):
    """Calculates the exact expected update direction E[mean(A * (r - p))] of the toy trainer.

    :param float theta: The policy parameter.
    :param GrpoConfig|None cfg: The GRPO config.
    :rtype: float
    """
    cfg = cfg or GrpoConfig()
    policy = BernoulliPolicy(theta)
    p = policy.accuracy
    total = 0.
    for rewards in _outcomes(cfg.group_size):
        advantages = group_advantages(rewards, cfg.degenerate_advantage_policy)
        total += float(np.prod(policy.probability(rewards))) * score_direction(rewards, advantages, p)
    return total


def finite_difference_direction(theta, cfg=None, h=1e-5):
    """Calculates the central finite difference of the expected objective around theta.

    :param float theta: The policy parameter.
    :param GrpoConfig|None cfg: The GRPO config.
    :param float h: The step size.
    :rtype: float
    """
    return (expected_objective(theta + h, theta, cfg) - expected_objective(theta - h, theta, cfg)) / (2. * h)


def run_sweep(p_inits, steps=DEFAULT_SIM_STEPS, cfg=None, lr=DEFAULT_LEARNING_RATE, seeds=1, seed=0):
    """Trains the toy policy from several initial accuracies with a shared bank of seeds.

    :param list[float] p_inits: The initial accuracies.
    :param int steps: The number of training steps per run.
    :param GrpoConfig|None cfg: The GRPO config.
    :param float lr: The learning rate.
    :param int seeds: The number of seeds per initial accuracy.
    :param int seed: The first seed.
    :rtype: list[SimReport]
    """
    if seeds < 1:
        raise ValidationError(message=f'seeds must be at least 1, got {seeds}')
    return [
        train_toy_policy(p_init, steps, cfg, lr, seed + offset)
        for p_init in p_inits
        for offset in range(seeds)
    ]


def _format(value):
    if isinstance(value, float):
        return f'{value:.6f}'
    return str(value)


def write_summary_csv(reports, stream):
    """Writes one summary row per run.

    :param list[SimReport] reports: The runs.
    :param io.TextIOBase stream: The output stream.
    """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(SUMMARY_COLUMNS)
    for report in reports:
        summary = report.summary()
        writer.writerow([_format(summary[column]) for column in SUMMARY_COLUMNS])


def write_trajectory_csv(reports, stream):
    """Writes one row per run and step.

    :param list[SimReport] reports: The runs.
    :param io.TextIOBase stream: The output stream.
    """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(TRAJECTORY_COLUMNS)
    for report in reports:
        for step, p in report.trajectory:
            writer.writerow([_format(report.p_init), report.seed, step, _format(p)])
