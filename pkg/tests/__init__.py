"""
Test suite for the pcband photonic band-structure engine.
"""
