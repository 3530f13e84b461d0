#!/usr/bin/env python
# coding: utf-8

import re

from setuptools import setup

# Parse version from the package
with open('orlicz/__init__.py') as init:
    version = re.search(
        r'^__version__ = "(.+)"', init.read(), re.MULTILINE).group(1)

# Prepare install requires and extra requires
install_requires = [
    'numpy>=1.22',
    'scipy>=1.9',
    ]
extras_require = {
    'docs': ['sphinx>3', 'sphinx_rtd_theme'],
    'tests': ['pytest', 'pre-commit'],
    }
extras_require['all'] = [
    dependency
    for extra in extras_require.values()
    for dependency in extra]

# Prepare the long description from readme
with open('README.rst') as readme:
    description = readme.read()

setup(
    name='orlicz',
    description='orlicz - Orlicz norms of random orthonormal subsystems',
    long_description=description,

    version=version,
    provides=['orlicz'],
    packages=['orlicz', 'orlicz.experiments'],
    scripts=['bin/orlicz'],
    install_requires=install_requires,
    extras_require=extras_require,
    python_requires='>=3.8',

    license='GPLv2+',

    keywords=['orlicz', 'luxemburg', 'fourier', 'random', 'subsystems'],
    classifiers=[
        'License :: OSI Approved :: '
            'GNU General Public License v2 or later (GPLv2+)',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
        ],

    data_files=[],
    dependency_links=[],
    package_dir={},
    zip_safe=False,
)
