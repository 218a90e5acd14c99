"""
Tests Module - unit, property and end-to-end tests for the LED channel toolkit
"""
