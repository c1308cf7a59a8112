#!/usr/bin/env python
# coding=utf-8

from setuptools import setup, find_packages
from codecs import open
import os


CLASSIFIERS = """
Development Status :: 3 - Alpha
Intended Audience :: Science/Research
License :: OSI Approved :: MIT License
Programming Language :: Python :: 3
Programming Language :: Python :: 3.7
Programming Language :: Python :: 3.8
Programming Language :: Python :: 3.9
Programming Language :: Python :: Implementation :: CPython
Topic :: Scientific/Engineering :: Mathematics
Operating System :: Microsoft :: Windows
Operating System :: POSIX
Operating System :: Unix
Operating System :: MacOS
"""

INSTALL_REQUIRES = [
    'click',
    'numpy>=1.17',
    'scipy',
    'ruamel.yaml>=0.15',
    'loguru',
    'tqdm',
]

EXTRAS_REQUIRE = {
    'test': ['pytest', 'pytest-cov']
}
EXTRAS_REQUIRE['all'] = sorted(set(sum(EXTRAS_REQUIRE.values(), [])))

CONSOLE_SCRIPTS = [
    'sparsedetect = sparsedetect.cli.sparsedetect:cli',
]

here = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

with open(os.path.join(here, 'sparsedetect', '_version.py'), encoding='utf-8') as f:
    version_info = {}
    exec(f.read(), version_info)

setup(
    name='sparsedetect',
    license='MIT',
    keywords='hypothesis-testing sparse-regression higher-criticism '
             'detection-boundary monte-carlo minimax',
    description='Detection tests, detection boundaries and lower-bound oracles for sparse linear regression.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    python_requires='>=3.7',
    version=version_info['__version__'],
    packages=find_packages(exclude=['test', 'test.*']),
    install_requires=INSTALL_REQUIRES,
    extras_require=EXTRAS_REQUIRE,
    entry_points={
        'console_scripts': CONSOLE_SCRIPTS,
    },
    classifiers=[c for c in CLASSIFIERS.split('\n') if c]
)
