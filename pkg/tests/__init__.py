"""
Test package for rlab.
"""
