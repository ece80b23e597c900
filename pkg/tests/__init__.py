"""
Harmonia tests package.
"""
