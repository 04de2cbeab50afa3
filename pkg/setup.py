"""setuptools module for skasp."""

from setuptools import find_packages, setup

extras_require = {
    "solver": ["clingo>=5.4"],
    "dev": [
        "black",
        "pytest",
        "pylint",
        "mypy",
        "pydocstyle",
        "flake8",
        "isort",
        "sphinx",
        "twine",
        "setuptools",
    ],
}

with open("README.md", "r") as file_handle:
    README_MD = file_handle.read()

setup(
    name="skasp",
    version="0.1.0",
    description="""Sketched answer set programming: complete ASP sketches from examples.""",
    long_description=README_MD,
    long_description_content_type="text/markdown",
    include_package_data=True,
    install_requires=[
        "pyparsing>=3.1.0, <4.0.0",
        "networkx>=2.5",
        "typing_extensions",
    ],
    extras_require=extras_require,
    python_requires=">=3.8, <4",
    keywords="answer set programming asp synthesis sketching",
    license="MIT",
    package_data={"skasp": ["py.typed", "bench/data/*"]},
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    entry_points={"console_scripts": ["skasp = skasp.cli:main"]},
    zip_safe=False,  # required per mypy
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
    ],
)
