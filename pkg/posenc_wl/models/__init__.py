"""Immutable domain types and pydantic report schemas."""
