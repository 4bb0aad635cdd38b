#!/usr/bin/env python3
"""
Setup script for wsym, exact checks on reductive pseudo-Riemannian homogeneous spaces.
"""

from setuptools import setup
from pathlib import Path

# Read README
readme_path = Path(__file__).parent / "QUICK_START.md"
long_description = readme_path.read_text(encoding="utf-8") if readme_path.exists() else ""

# Read requirements
requirements_path = Path(__file__).parent / "requirements.txt"
requirements = []
if requirements_path.exists():
    requirements = requirements_path.read_text().strip().split('\n')
    requirements = [req.strip() for req in requirements if req.strip() and not req.startswith('#')]

setup(
    name="wsym",
    version="0.1.0",
    description="Exact Lie algebra and pseudo-Riemannian homogeneous space checks",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"": "src"},
    py_modules=[
        "catalog",
        "cli",
        "config",
        "errors",
        "exact",
        "expdemo",
        "forms",
        "geodesic",
        "homogeneous",
        "lie_core",
        "report",
        "serialization",
        "weak_symmetry",
    ],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    extras_require={
        "dev": [
            "pytest>=7.0",
            "hypothesis>=6.0",
            "black>=22.0",
            "flake8>=4.0",
            "mypy>=0.900",
        ],
    },
    entry_points={
        "console_scripts": [
            "wsym=cli:main",
        ],
    },
)
