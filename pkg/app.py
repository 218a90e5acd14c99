"""
Main entry point for the keyboard LED channel toolkit.
Dispatches to the command-line application in src.ui.app.
"""

import sys
import os

# Make the project root importable when run as a script
project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.ui.app import main

if __name__ == '__main__':
    sys.exit(main())
