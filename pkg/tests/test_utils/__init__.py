"""Logging and hashing tests."""
