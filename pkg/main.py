#!/usr/bin/env python3
"""
wsym - Application Entry Point

Runs the wsym command line from a source checkout without installing the package.
The installed console script "wsym" calls the same cli.main().

Application Structure:
    main.py: Entry point (this file)
    src/cli.py: Argument parsing, command dispatch and report output
    src/exact.py, src/lie_core.py, src/forms.py: Exact algebra
    src/homogeneous.py, src/geodesic.py, src/weak_symmetry.py: Geometry checks
    src/catalog.py: Example spaces
    src/expdemo.py: Exponential image of SL(3,R) (floating point)

Example Usage:
    python main.py catalog list
    python main.py check go --space heisenberg --p 1 --q 1 --samples 20
    python main.py demo exp-image --matrix "[[-2,0,0],[0,-0.5,0],[0,0,1]]"

Return Codes:
    0: every check passed
    1: a check failed (a counterexample or an internal contradiction)
    2: usage or input error
"""

import sys
from pathlib import Path

# Add src directory to Python path for modular source organization
src_dir = Path(__file__).parent / "src"
sys.path.insert(0, str(src_dir))

from cli import main


if __name__ == "__main__":
    # Execute main function and pass exit code to system
    result = main()
    sys.exit(result)
