"""Logging setup and content-addressed hashing."""
