"""
Data module for the keyboard LED channel toolkit.

This module holds path constants for the bundled configuration files:
- profiles.ini: keyboard timing/power profiles, calibrated noise, link defaults
- linkbudget.ini: example link-budget parameter file
"""
import os

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(__file__)))  # Go up to project root
DATA_DIR = os.path.join(PROJECT_ROOT, 'data')
PROFILES_PATH = os.path.join(DATA_DIR, 'profiles.ini')
LINKBUDGET_PATH = os.path.join(DATA_DIR, 'linkbudget.ini')

__all__ = ['PROJECT_ROOT', 'DATA_DIR', 'PROFILES_PATH', 'LINKBUDGET_PATH']
