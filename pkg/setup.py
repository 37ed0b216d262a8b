#!/usr/bin/env python

import io
import os
import re

from setuptools import setup

HERE = os.path.abspath(os.path.dirname(__file__))


def read(name):
    with io.open(os.path.join(HERE, name), encoding='utf-8') as f:
        return f.read()


def version():
    match = re.search(
        r"^__version__ = '([^']+)'",
        read(os.path.join('flagcheck', '__init__.py')),
        re.M
    )
    if match is None:
        raise RuntimeError('no __version__ in flagcheck/__init__.py')
    return match.group(1)


def requirements(name):
    """the requirement lines of a pip requirements file"""
    lines = (line.split('#', 1)[0].strip() for line in read(name).splitlines())
    return [line for line in lines if line]


setup(
    name='flagcheck',
    version=version(),
    description=(
        'Curvature checks, hyperbolicity and isometry analysis for flag '
        'simplicial complexes'
    ),
    long_description=read('README.rst'),
    keywords=[
        'simplicial complex', 'systolic', '8-located', 'SD-prime',
        'gromov hyperbolicity', 'automorphism', 'minimal displacement',
    ],
    license='MPL 2.0',
    python_requires='>=3.6',
    packages=['flagcheck', 'flagcheck.tests'],
    package_data={'flagcheck.tests': ['anchors.json']},
    install_requires=requirements('requirements.txt'),
    tests_require=requirements('test-requirements.txt'),
    test_suite='nose.collector',
    entry_points={
        'console_scripts': ['flagcheck = flagcheck.app:local_main']
    },
    zip_safe=False,
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Mozilla Public License 2.0 (MPL 2.0)',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
