# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 Graz University of Technology.
#
# subchain is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Local surjectivity and subdifferential chain rules of factorizations."""

import os

from setuptools import find_packages, setup

readme = open("README.rst").read()
history = open("CHANGES.rst").read()

tests_require = [
    "check-manifest>=0.42",
    "pytest>=6.0",
    "pytest-cov>=2.10",
    "pytest-isort>=1.2.0",
    "pytest-pycodestyle>=2.2.0",
    "pytest-pydocstyle>=2.2.0",
]

extras_require = {
    "docs": [
        "Sphinx>=3",
        "sphinx-click>=2.5.0",
    ],
    "tests": tests_require,
}

extras_require["all"] = []
for reqs in extras_require.values():
    extras_require["all"].extend(reqs)

install_requires = [
    "click>=8.0",
    "numpy>=1.20",
    "scipy>=1.6",
]

packages = find_packages(exclude=["tests", "tests.*", "examples",
                                  "examples.*"])


# Get the version string. Cannot be done with import!
g = {}
with open(os.path.join("subchain", "version.py"), "rt") as fp:
    exec(fp.read(), g)
    version = g["__version__"]

setup(
    name="subchain",
    version=version,
    description=__doc__,
    long_description=readme + "\n\n" + history,
    keywords="factorization surjectivity clarke subdifferential chain rule",
    license="MIT",
    author="Graz University of Technology",
    author_email="info@tugraz.at",
    url="https://github.com/tu-graz-library/subchain",
    packages=packages,
    zip_safe=False,
    include_package_data=True,
    platforms="any",
    entry_points={
        "console_scripts": ["subchain = subchain.cli:subchain"],
    },
    extras_require=extras_require,
    install_requires=install_requires,
    tests_require=tests_require,
    python_requires=">=3.7",
    classifiers=[
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Development Status :: 3 - Alpha",
    ],
)
