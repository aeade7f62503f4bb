"""This module hosts unit tests for the GRPO objective."""

import math

import numpy as np
import pytest

from table_reward.exc import DegenerateGroupSkipped, DomainError, GroupTooSmall, ValidationError
from table_reward.grpo import (
    clip_term,
    group_advantages,
    GrpoConfig,
    grpo_loss,
    is_degenerate,
    kl_penalty,
    RolloutGroup,
)
from table_reward.reference import DegeneracyPolicy


def test_grpo_config_defaults():
    """Verify the GrpoConfig defaults work correctly."""
    cfg = GrpoConfig()
    assert cfg.group_size == 4
    assert cfg.clip_epsilon == 0.2
    assert cfg.kl_beta == 0.04
    assert cfg.degenerate_advantage_policy == DegeneracyPolicy.ZERO_OUT
    assert cfg.seed == 0
    assert cfg.as_dict() == {
        'group_size': 4,
        'clip_epsilon': 0.2,
        'kl_beta': 0.04,
        'degenerate_advantage_policy': 'zero_out',
        'seed': 0,
    }


def test_grpo_config_from_dict():
    """Verify a GrpoConfig can be created from a config section."""
    cfg = GrpoConfig.from_dict({'group_size': 8, 'degenerate_advantage_policy': 'skip'})
    assert cfg.group_size == 8
    assert cfg.degenerate_advantage_policy == DegeneracyPolicy.SKIP
    assert GrpoConfig.from_dict(None) == GrpoConfig()
    assert GrpoConfig.from_dict(cfg.as_dict()) == cfg


@pytest.mark.parametrize(
    'values',
    [
        {'group_size': 1},
        {'group_size': 2.5},
        {'group_size': True},
        {'clip_epsilon': 0},
        {'clip_epsilon': 1},
        {'kl_beta': -0.1},
        {'degenerate_advantage_policy': 'drop'},
    ],
)
def test_grpo_config_validation(values):
    """Test the case where a GrpoConfig value is out of range."""
    with pytest.raises(ValidationError):
        GrpoConfig(**values)


def test_group_advantages():
    """Verify advantages are normalized by the group mean and population std."""
    assert group_advantages([1, 0, 0, 1]).tolist() == [1., -1., -1., 1.]
    expected = [-1 / math.sqrt(5), 1 / math.sqrt(5), 3 / math.sqrt(5), -3 / math.sqrt(5)]
    assert group_advantages([0.5, 0.7, 0.9, 0.3]) == pytest.approx(expected, abs=1e-4)


def test_group_advantages_degenerate():
    """Test the case where every reward in the group is equal."""
    assert group_advantages([1, 1, 1, 1]).tolist() == [0., 0., 0., 0.]
    assert group_advantages([0, 0], DegeneracyPolicy.ZERO_OUT).tolist() == [0., 0.]
    assert len(group_advantages([1, 1, 1, 1], DegeneracyPolicy.SKIP)) == 0
    assert len(group_advantages([0.3, 0.3], 'skip')) == 0


def test_group_advantages_too_small():
    """Test the case where the group has fewer than two rewards."""
    with pytest.raises(GroupTooSmall):
        group_advantages([1])
    with pytest.raises(GroupTooSmall):
        group_advantages([])


def test_group_advantages_normalization(rng):
    """Verify random non-degenerate groups have zero mean and unit std."""
    checked = 0
    while checked < 10000:
        size = int(rng.integers(2, 17))
        rewards = rng.random(size) if checked % 2 else rng.integers(0, 2, size).astype(float)
        if is_degenerate(rewards):
            continue
        advantages = group_advantages(rewards)
        assert abs(advantages.mean()) <= 1e-12
        assert abs(advantages.std() - 1.) < 1e-9
        checked += 1


def test_group_advantages_nearly_equal_rewards():
    """Test the case where the rewards of a group differ only in the fifth decimal."""
    advantages = group_advantages([0.5662466658059435, 0.5661721579718783])
    assert abs(advantages.mean()) <= 1e-12
    assert abs(advantages.std() - 1.) <= 1e-9
    assert advantages[0] > 0 > advantages[1]


def test_group_advantages_affine_invariance(rng):
    """Verify advantages don't change under positive affine reward transforms."""
    for _ in range(100):
        rewards = rng.random(6)
        scale, shift = rng.uniform(0.1, 10.), rng.uniform(-5., 5.)
        assert group_advantages(scale * rewards + shift) == pytest.approx(group_advantages(rewards), abs=1e-9)


def test_is_degenerate():
    """Verify is_degenerate works correctly."""
    assert is_degenerate([1, 1, 1])
    assert is_degenerate(np.zeros(4))
    assert not is_degenerate([0, 1, 1])


def test_clip_term():
    """Verify the clipped surrogate works correctly."""
    assert clip_term(1.0, 2.0, 0.2) == pytest.approx(2.0)
    assert clip_term(1.3, 1.0, 0.2) == pytest.approx(1.2)
    assert clip_term(0.5, -1.0, 0.2) == pytest.approx(-0.8)
    assert clip_term(0.5, 1.0, 0.2) == pytest.approx(0.5)
    assert clip_term(1.5, -1.0, 0.2) == pytest.approx(-1.5)
    assert clip_term(np.array([1.0, 1.3]), np.array([2.0, 1.0])) == pytest.approx([2.0, 1.2])
    with pytest.raises(DomainError):
        clip_term(0., 1.)


def test_kl_penalty():
    """Verify the KL estimator works correctly."""
    assert kl_penalty(1.) == 0.
    assert kl_penalty(2.) == pytest.approx(0.30685, abs=1e-5)
    assert kl_penalty(0.5) == pytest.approx(0.19315, abs=1e-5)
    assert np.all(kl_penalty(np.linspace(0.01, 10, 50)) >= 0)
    with pytest.raises(DomainError):
        kl_penalty(-1.)


def test_rollout_group():
    """Verify the RolloutGroup class works correctly."""
    group = RolloutGroup([1, 0, 0, 1])
    assert group.size == 4
    assert len(group) == 4
    assert group.ratio.tolist() == [1.] * 4
    assert group.ref_ratio.tolist() == [1.] * 4
    assert group.advantages is None
    assert group.with_advantages().advantages.tolist() == [1., -1., -1., 1.]


def test_rollout_group_validation():
    """Test the case where a RolloutGroup has mismatched lengths or invalid ratios."""
    with pytest.raises(ValueError):
        RolloutGroup([1, 0], ratio=[1.])
    with pytest.raises(ValueError):
        RolloutGroup([1, 0], advantages=[1., -1., 0.])
    with pytest.raises(DomainError):
        RolloutGroup([1, 0], ratio=[1., 0.])
    with pytest.raises(DomainError):
        RolloutGroup([1, 0], ref_ratio=[1., np.inf])


def test_grpo_loss():
    """Verify the GRPO objective works correctly."""
    assert grpo_loss(RolloutGroup([1, 0, 0, 1])) == pytest.approx(0.)

    cfg = GrpoConfig(kl_beta=0.)
    group = RolloutGroup([1, 0], ratio=[1.2, 1.2], advantages=[1., 0.])
    assert grpo_loss(group, cfg) == pytest.approx(0.6)

    cfg = GrpoConfig(kl_beta=0.5)
    group = RolloutGroup([1, 1, 1, 1], ref_ratio=[2., 2., 0.5, 0.5])
    expected = -0.5 * ((2 - math.log(2) - 1) + (0.5 + math.log(2) - 1)) / 2
    assert grpo_loss(group, cfg) == pytest.approx(expected)


def test_grpo_loss_precomputed_advantages():
    """Verify precomputed advantages are used as is."""
    group = RolloutGroup([1, 0], advantages=[2., 2.])
    assert grpo_loss(group, GrpoConfig(kl_beta=0.)) == pytest.approx(2.)


def test_grpo_loss_errors():
    """Test the case where the group is too small or skipped."""
    with pytest.raises(GroupTooSmall):
        grpo_loss(RolloutGroup([1]))
    cfg = GrpoConfig(degenerate_advantage_policy=DegeneracyPolicy.SKIP)
    with pytest.raises(DegenerateGroupSkipped):
        grpo_loss(RolloutGroup([1, 1, 1]), cfg)
    with pytest.raises(DegenerateGroupSkipped):
        grpo_loss(RolloutGroup([0, 0]).with_advantages('skip'), cfg)
