"""
Scripts package.
"""
