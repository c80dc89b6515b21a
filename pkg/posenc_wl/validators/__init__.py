"""Parsers and validators for edge-list and corpus files."""
