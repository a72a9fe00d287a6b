"""
Adaptive Thresholds for Time Series Anomaly Detection
Setup configuration
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="adaptive-thresholds",
    version="0.1.0-dev",
    description="Segment-wise and multi-scale adaptive thresholds for anomaly scores",
    long_description=long_description,
    long_description_content_type="text/markdown",
    # modules import each other as src.<package>, so src itself is the top package
    packages=find_packages(include=["src", "src.*"]),
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Information Analysis",
    ],
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "pandas>=2.0.0",
        "scikit-learn>=1.3.0",
        "pyyaml>=6.0",
    ],
    entry_points={
        "console_scripts": [
            "adaptive-thresholds=src.cli.main:main",
        ],
    },
)
