from setuptools import setup

from table_reward import __version__ as version

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name='table-reward',
    version=version,
    packages=[
        'table_reward',
    ],
    license='MIT',
    description='Table rewards, GRPO kernels, and dataset tools for training table-understanding models.',
    long_description=long_description,
    long_description_content_type="text/markdown",
    python_requires='>=3.10',
    entry_points={
        'console_scripts': [
            'table-reward=table_reward.cli:main',
        ],
    },
    package_data={
        'table_reward': [
            'static/*',
        ],
    },
    install_requires=[
        'click==8.0.3',
        'colorama==0.4.4',
        'jsonschema==3.2.0',
        'math-verify[antlr4_13_2]>=0.5.2',
        'nltk==3.6.7',
        'numpy>=1.22',
        'PyYAML==6.0',
        'zss==1.2.0',
    ],
    tests_require=[
        'pytest',
        'pytest-mock',
        'pytest-cov',
        'freezegun',
        'flake8',
        'scipy',
    ],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
    ],
)
