"""
Integration and acceptance tests for complete band-structure runs.
"""
