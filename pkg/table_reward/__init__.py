"""table-reward

    * TableTree - A table as an ordered tree of table, thead, tbody, tr, and td nodes.
    * teds - Tree edit distance based similarity between a predicted and a golden table.
    * reasoning_reward - The accuracy plus format reward of a think/answer output.
    * grpo_loss - The clipped, KL penalized GRPO objective of a rollout group.
    * split_solution - Splits a stepped solution into hint-completion pairs.
    * run_pipeline - Filters and samples dataset records.
    * train_toy_policy - Trains a one-parameter Bernoulli policy with GRPO.
"""

__version__ = '0.1.0'

__all__ = [
    'cli',
    'core',
    'dataset',
    'grpo',
    'hints',
    'output',
    'parsing',
    'rewards',
    'simulate',
    'table',
    'teds',
    '__version__',
]
