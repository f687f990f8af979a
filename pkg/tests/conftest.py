"""Keeps the tests directory importable so oracles.py can be shared."""
