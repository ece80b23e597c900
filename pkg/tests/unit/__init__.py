"""
Harmonia unit tests package.
"""
