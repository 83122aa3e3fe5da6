#!/usr/bin/env python

from setuptools import setup


with open('README.rst') as f:
    README = f.read()

with open('VERSION') as f:
    VERSION = f.read().strip()


setup(
    name='msca',
    version=VERSION,
    install_requires=['cysignals>=1.7', 'networkx>=2.6', 'pydot>=1.4'],
    python_requires='>=3.8',
    description="Composition and orchestration synthesis of modal service contract automata",
    long_description=README,
    author="The msca developers",
    license='GNU General Public License, version 2 or later',
    keywords='contract automata orchestration synthesis controllability',
    packages=['msca'],
    package_dir={'msca': 'msca'},
    package_data={'msca': ['data/*.msca.json']},
    entry_points={'console_scripts': ['msca = msca.cli:main']},
)
