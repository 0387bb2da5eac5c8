#!/usr/bin/env python

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

# Requirements to be installed along `pip install sumfreetools`
requirements = [
    'numpy==1.26.4',
    'scipy==1.11.4',
    'sympy==1.12',
    'networkx==3.2.1',
    'matplotlib==3.8.4',
    ]

# Compiles the Jacobi sweep kernel when present
extras_requirements = {'jit': ['numba==0.59.1']}

setup_requirements = ['pytest-runner']

test_requirements = ['pytest>=7']

setup(
    author="Tim Skov Jacobsen",
    author_email='timskovjacobsen@gmail.com',
    python_requires='>=3.10',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    description="Sum-free sets in finite Abelian groups and the Schur hypergraph",
    entry_points={
        'console_scripts': ['sumfreetools=sumfreetools.cli:main'],
    },
    extras_require=extras_requirements,
    install_requires=requirements,
    license="MIT license",
    long_description=readme + '\n\n' + history,
    include_package_data=True,
    keywords='sumfreetools sum-free additive-combinatorics hypergraph',
    name='sumfreetools',
    packages=find_packages(include=['sumfreetools', 'sumfreetools.*']),
    setup_requires=setup_requirements,
    test_suite='tests',
    tests_require=test_requirements,
    version='0.2.0',
    zip_safe=False,
)
