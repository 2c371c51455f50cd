"""Shipped example inputs and run profiles, located through ``config.library_path``."""
