"""
Storage package.

JSON document storage for specs, graphs, models and reports.
"""
