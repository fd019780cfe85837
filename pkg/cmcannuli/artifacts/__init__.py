"""
Mesh files, JSON reports and sweep tables.
"""
