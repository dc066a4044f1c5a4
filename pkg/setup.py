#!/usr/bin/env python3
"""
Setup script for PIR Analytics
"""

from pathlib import Path

from setuptools import find_packages, setup

HERE = Path(__file__).parent

RUNTIME = [
    "pydantic>=2.5,<3",
    "pydantic-settings>=2.1",
    "numpy>=1.24",
    "pandas>=2.1",
    "airium>=0.2.6",
    "structlog>=23.2",
    "python-dotenv>=1.0",
    "click>=8.1,<8.2",
]

DEV = [
    "pytest>=7.4",
    "hypothesis>=6.92",
    "black>=23.11",
    "isort>=5.12",
    "flake8>=6.1",
    "mypy>=1.7",
]

setup(
    name="pir-analytics",
    version="1.0.0",
    description="Performance index rating (PIR) and rescaled variants for basketball player seasons",
    long_description=(HERE / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"pir_analytics.data": ["*.csv", "README.md"]},
    python_requires=">=3.9",
    install_requires=RUNTIME,
    extras_require={"dev": DEV},
    entry_points={"console_scripts": ["pir-analytics=pir_analytics.main:cli"]},
)
